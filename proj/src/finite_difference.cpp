#include "dsusy/finite_difference.hpp"

#include <array>
#include <stdexcept>

namespace dsusy {

std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> nodes,
                                                  int max_order) {
    const std::size_t n = nodes.size();
    const auto M = static_cast<std::size_t>(max_order);
    std::vector<std::vector<double>> c(M + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, M);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (double(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - double(k) * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace {

constexpr std::size_t kWidth = 2 * kStencilHalfWidth + 1;

// Weights for unit spacing, evaluation point at offset `at` within the 7 nodes 0..6.
struct StencilTable {
    std::array<std::array<std::array<double, kWidth>, kWidth>, 2> w{};

    StencilTable() {
        std::array<double, kWidth> nodes{};
        for (std::size_t j = 0; j < kWidth; ++j) nodes[j] = double(j);
        for (std::size_t at = 0; at < kWidth; ++at) {
            const auto c = fornberg_weights(double(at), nodes, 2);
            for (int m = 0; m < 2; ++m) {
                for (std::size_t j = 0; j < kWidth; ++j) w[m][at][j] = c[m + 1][j];
            }
        }
    }
};

const StencilTable& table() {
    static const StencilTable t;
    return t;
}

}  // namespace

std::vector<double> differentiate(std::span<const double> v, double h, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("differentiate: order must be 1 or 2");
    const std::size_t n = v.size();
    if (n < kWidth) throw std::invalid_argument("differentiate: fewer than 7 samples");
    const auto& w = table().w[order - 1];
    const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t start = 0;
        if (i >= kStencilHalfWidth) start = i - kStencilHalfWidth;
        if (start + kWidth > n) start = n - kWidth;
        const auto& row = w[i - start];
        double acc = 0.0;
        for (std::size_t j = 0; j < kWidth; ++j) acc += row[j] * v[start + j];
        out[i] = acc * scale;
    }
    return out;
}

}  // namespace dsusy

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace dsusy {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Integral of fn over [a, b] with one application of `rule`.
template <class Fn>
double integrate_panel(const GaussRule& rule, Fn&& fn, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * fn(mid + half * rule.nodes[k]);
    return sum * half;
}

}  // namespace dsusy

#include "dsusy/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dsusy/error.hpp"

namespace dsusy {

GridFunction::GridFunction(Interval interval, std::vector<double> values, Coordinate coordinate)
    : interval_(interval), values_(std::move(values)), coordinate_(coordinate) {
    if (values_.size() < kMinPoints) {
        throw Error(ErrorKind::GridTooCoarse,
                    "grid needs at least 16 points, got " + std::to_string(values_.size()));
    }
    if (!interval_.finite() || !(interval_.x1 < interval_.x2)) {
        throw Error(ErrorKind::OutOfDomain, "grid interval must be finite with x1 < x2");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::OutOfDomain, "non-finite grid sample");
    }
}

double GridFunction::sup_norm() const { return sup_norm(0, values_.size()); }

double GridFunction::sup_norm(std::size_t begin, std::size_t end) const {
    double m = 0.0;
    for (std::size_t i = begin; i < end && i < values_.size(); ++i) m = std::max(m, std::abs(values_[i]));
    return m;
}

void write_two_column(std::ostream& os, const GridFunction& g) {
    const auto old = os.precision(17);
    for (std::size_t i = 0; i < g.size(); ++i) os << g.node(i) << ' ' << g[i] << '\n';
    os.precision(old);
}

IndexRange central_range(std::size_t n, double fraction) {
    const auto cut = static_cast<std::size_t>(std::ceil(0.5 * (1.0 - fraction) * double(n)));
    if (2 * cut >= n) return {n / 2, n / 2 + 1};
    return {cut, n - cut};
}

}  // namespace dsusy

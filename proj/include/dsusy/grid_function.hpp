#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "dsusy/model_catalog.hpp"

namespace dsusy {

/// Which variable the uniform grid is laid out in: the physical x or the
/// canonical u = integral of dx / f.  Values are always psi, never sqrt(f) psi.
enum class Coordinate { X, U };

/// Real samples on a uniform grid including both interval endpoints.
class GridFunction {
public:
    static constexpr std::size_t kMinPoints = 16;

    GridFunction() = default;
    /// Throws GridTooCoarse for fewer than 16 points, OutOfDomain for non-finite samples.
    GridFunction(Interval interval, std::vector<double> values, Coordinate coordinate = Coordinate::X);

    static GridFunction sample(Interval interval, std::size_t n_points, Coordinate coordinate,
                               const auto& fn) {
        std::vector<double> v(n_points);
        const double h = (interval.x2 - interval.x1) / double(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i) v[i] = fn(interval.x1 + double(i) * h);
        return GridFunction(interval, std::move(v), coordinate);
    }

    const Interval& interval() const { return interval_; }
    Coordinate coordinate() const { return coordinate_; }
    std::size_t size() const { return values_.size(); }
    double spacing() const { return (interval_.x2 - interval_.x1) / double(values_.size() - 1); }
    double node(std::size_t i) const { return interval_.x1 + double(i) * spacing(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Nodes at each end whose values came from one-sided stencils.
    std::size_t edge_width() const { return edge_width_; }
    void set_edge_width(std::size_t w) { edge_width_ = w; }

    double sup_norm() const;
    /// Sup norm over nodes [begin, end).
    double sup_norm(std::size_t begin, std::size_t end) const;

private:
    Interval interval_{};
    std::vector<double> values_;
    Coordinate coordinate_ = Coordinate::X;
    std::size_t edge_width_ = 0;
};

/// Two-column "node value" text, one node per line.
void write_two_column(std::ostream& os, const GridFunction& g);

/// Index range [begin, end) of the central `fraction` of the nodes.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};
IndexRange central_range(std::size_t n, double fraction);

}  // namespace dsusy

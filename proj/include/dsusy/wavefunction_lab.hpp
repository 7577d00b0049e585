#pragma once

#include <string>

#include "dsusy/eigensolver.hpp"
#include "dsusy/grid_function.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

/// Uniform sampling grid for wavefunctions: node interval, node count and
/// the coordinate the nodes are laid out in.
struct WaveGrid {
    Interval nodes;
    std::size_t points = 0;
    Coordinate coordinate = Coordinate::U;
};

/// The grid the eigensolver's finest level used, so states compare node by node.
WaveGrid grid_of(const EigenSolution& solution);

/// psi_0 = N f^{-1/2} exp(-int W / (hbar f) dx), based at the grid midpoint,
/// unit norm.  Throws NonNormalizable when the density grows towards an end.
GridFunction ground_state(const ModelSpec& spec, const WaveGrid& grid);

/// A+(a_0) ... A+(a_{n-1}) psi_0(a_n), unit norm.
GridFunction ladder_state(const ModelSpec& spec, int n, const WaveGrid& grid);

/// Integral of a b dx over nodes [range.begin, range.end).
double inner_product(const ModelSpec& spec, const GridFunction& a, const GridFunction& b, IndexRange range);

/// |<a, b>| / (|a| |b|) over the given nodes.
double overlap(const ModelSpec& spec, const GridFunction& a, const GridFunction& b, IndexRange range);

/// Nodes where |psi|^2 f exceeds kSupportFloor of its peak, trimmed to the
/// central `fraction`.  Comparisons run here: edge stencils and the
/// neighbourhood of singular walls stay out.
inline constexpr double kSupportFloor = 1e-12;
IndexRange support_range(const ModelSpec& spec, const GridFunction& psi, double fraction = 0.9);

/// Rescales to unit norm over all nodes.
GridFunction normalized(const ModelSpec& spec, const GridFunction& psi);

/// Relative threshold on the extrapolated endpoint value of |psi|^2 f.
inline constexpr double kHermiticityThreshold = 1e-6;

struct BoundaryReport {
    double endpoint = 0.0;           // x value of the end (may be infinite)
    bool truncated = false;          // the grid stops short of the end
    double exponent = 0.0;           // fitted power of |psi|^2 f against distance to the end
    double limit_estimate = 0.0;     // extrapolated |psi|^2 f at the end
    double peak = 0.0;               // max of |psi|^2 f over the grid
    bool square_integrable = false;
    bool hermiticity_ok = false;
    std::string details;
};

struct BoundaryPair {
    BoundaryReport lower;
    BoundaryReport upper;
    bool ok() const {
        return lower.square_integrable && lower.hermiticity_ok && upper.square_integrable &&
               upper.hermiticity_ok;
    }
};

/// Normalizability and Hermiticity at both ends from the last ten samples.
BoundaryPair boundary_check(const ModelSpec& spec, const GridFunction& psi);

/// A- H_- psi - H_+ A- psi for a compact smooth bump centred on the peak of
/// psi_0, with H in direct form.  Returns max |residual| over the grid and
/// the largest |term| as scale.
struct IntertwiningResult {
    double max_residual = 0.0;
    double scale = 0.0;
    double relative() const { return scale > 0.0 ? max_residual / scale : max_residual; }
};
IntertwiningResult intertwining_residual(const ModelSpec& spec, const WaveGrid& grid);

}  // namespace dsusy

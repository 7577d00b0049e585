#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dsusy/canonical_map.hpp"
#include "dsusy/grid_function.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

struct GridSettings {
    /// Interior nodes of the coarsest level for the initial window.  Windows
    /// that grow by auto-extension keep the spacing, so the count grows with them.
    std::size_t n_points = 1000;
    /// Boundary amplitude (relative to the peak) required at truncated ends.
    double truncation_tol = 1e-10;
    /// Initial length in u given to an infinite end.
    double initial_extent = 16.0;
    int max_extensions = 6;
    bool extrapolate = true;
    /// NonConvergent is raised when the extrapolation error estimate exceeds
    /// tolerance * (1 + |E|).
    double tolerance = 1e-6;
};

struct EigenSolution {
    std::vector<double> eigenvalues;       // extrapolated (or finest raw), ascending
    std::vector<double> error_estimates;   // change between the two finest extrapolations
    std::vector<double> finest_raw;        // eigenvalues on the finest grid
    std::vector<GridFunction> eigenvectors;  // psi on the finest u-grid, unit norm
    Interval u_window;                     // truncated u-interval (Dirichlet ends)
    std::vector<double> exponents;         // error powers of h removed by extrapolation
    std::vector<std::size_t> level_points; // interior nodes per level
};

/// Lowest k+1 eigenvalues of the symmetric tridiagonal matrix (diag, off),
/// by Sturm-sequence bisection in extended precision.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> off,
                                            std::size_t k);

/// Unit-2-norm eigenvector for an eigenvalue of the same matrix, by inverse iteration.
std::vector<double> tridiagonal_eigenvector(std::span<const double> diag, std::span<const double> off,
                                            double eigenvalue);

/// -hbar^2 phi'' + V_-(x(u)) phi = E phi on a uniform u-grid with Dirichlet ends.
/// Returns levels 0..n_max, or fewer when higher levels never pass the
/// boundary-amplitude test (finite bound spectra).
EigenSolution solve_levels(const ModelSpec& spec, int n_max, const GridSettings& settings = {});

/// Interior sign changes, ignoring samples below 1e-8 of the peak.
int count_nodes(const GridFunction& g);

/// Two-column export of an eigenvector in u or in x.
void write_eigenvector(std::ostream& os, const ModelSpec& spec, const GridFunction& psi,
                       Coordinate coordinate);

}  // namespace dsusy

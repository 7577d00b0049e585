#pragma once

#include <span>
#include <vector>

namespace dsusy {

/// Fornberg weights: w[m][j] approximates the m-th derivative at z from
/// samples at nodes[j], for m = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> nodes,
                                                  int max_order);

/// Half-width of the stencils used by differentiate().
inline constexpr std::size_t kStencilHalfWidth = 3;

/// First or second derivative of uniformly spaced samples: 7-point centered
/// stencils in the interior, 7-point one-sided stencils on the 3 nodes at each end.
std::vector<double> differentiate(std::span<const double> v, double h, int order);

}  // namespace dsusy

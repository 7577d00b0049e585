#pragma once

#include <vector>

#include "dsusy/dsi_verifier.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

// hbar expansion W = sum_n hbar^n W_n(x, a) of the DRHO_EXT1 superpotential.
// All entry points throw WrongModel for any other family.

/// D(x, a) = 4 b f^2 + 2a - 2b.
double series_denominator(double x, double a, const ModelSpec& spec);

/// W_n(x, a).
double series_term(int n, double x, double a, const ModelSpec& spec);

/// sum_{k=0}^{s} W_k W_{s-k}.
double pair_sum(int s, double x, double a, const ModelSpec& spec);

/// Closed form of the even pair sums.
double F_s(int s, double x, double a, const ModelSpec& spec);

/// d^{n-s}/da^{n-s} pair_sum(s) against (-2)^{n-s} (n-2)!/(s-2)! F_n.
ResidualSample derivative_identity_residual(int n, int s, double x, double a, const ModelSpec& spec);

/// The four pieces of the order-n relation (n >= 3), each evaluated directly
/// from the series terms:
///   flow     = 2 f dW_{n-1}/dx
///   pairs    = sum_{s=1}^{n-1} sum_k 1/(n-s)! d^{n-s}/da^{n-s} W_k W_{s-k}
///   w0_term  = (n-2)/n! f d^n W_0 / da^{n-1} dx
///   k_sum    = f sum_{k=2}^{n-1} 1/(k-1)! d^k W_{n-k} / da^{k-1} dx
struct OrderTerms {
    double flow = 0.0;
    double pairs = 0.0;
    double w0_term = 0.0;
    double k_sum = 0.0;
    double F_n = 0.0;
};
OrderTerms order_terms(int n, double x, double a, const ModelSpec& spec);

/// Parity-case closed values of flow, pairs and k_sum as multiples of F_n.
/// `flip` swaps the even/odd branches (negative control).
OrderTerms parity_closed_terms(int n, double x, double a, const ModelSpec& spec, bool flip = false);

/// Residual of the coefficient-of-hbar^n relation.  n = 1 uses g = 4 a^2 |lambda|;
/// n = 2 is the W_1 relation; n >= 3 assembles order_terms().
ResidualSample order_n_residual(int n, double x, double a, const ModelSpec& spec);

/// Same relation assembled from parity_closed_terms().
ResidualSample parity_assembled_residual(int n, double x, double a, const ModelSpec& spec,
                                         bool flip = false);

/// |sum_{n=0}^{N} hbar^n W_n - W| with W the resummed closed form at the spec's hbar.
/// Throws DivergentSeries when hbar >= D(x).
double partial_sum_error(int N, double x, const ModelSpec& spec);

/// Geometric sum of the correction terms against the closed bracket, at the given hbar.
ResidualSample resummation_residual(double x, double hbar, const ModelSpec& spec);

struct ConvergenceRow {
    int N = 0;
    double error = 0.0;
};
std::vector<ConvergenceRow> convergence_table(double x, const ModelSpec& spec, int N_max = 20);

}  // namespace dsusy

#pragma once

#include <vector>

#include "dsusy/dual.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

struct ResidualSample {
    double x = 0.0;
    double residual = 0.0;
    double scale = 1.0;  // magnitude of the largest term in the identity

    double relative() const { return std::abs(residual) / scale; }
};

/// [W^2 + hbar f W' + g](a) - [W^2 - hbar f W' + g](a + hbar) at x.
/// `g_offset` is added to g(a) only; it exists for negative controls.
ResidualSample dsi_residual(const ModelSpec& spec, double x, double g_offset = 0.0);

/// W dW/da - f dW/dx + (1/2) dg/da.  Throws ExplicitHbarModel for DRHO_EXT1.
ResidualSample condition1_residual(const ModelSpec& spec, double x);

/// d^3 W / da^2 dx.  Throws ExplicitHbarModel for DRHO_EXT1.
ResidualSample condition2_residual(const ModelSpec& spec, double x);

/// d^3 F / da^2 dx for any callable F(x, a) generic over the scalar type.
template <class F>
double third_mixed_partial(const F& fn, double x, double a) {
    using T1 = Dual<double>;
    using T2 = Dual<T1>;
    using T3 = Dual<T2>;
    const T3 X{T2{T1{x, 1.0}}};
    const T3 A{T2{T1{a}, T1{1.0}}, T2{T1{1.0}}};
    const T3 r = fn(X, A);
    return r.d.d.d;
}

struct ResidualScan {
    std::vector<ResidualSample> samples;
    double max_relative = 0.0;
    double max_abs = 0.0;
};

enum class Identity { Dsi, Condition1, Condition2 };

/// Evaluates one identity on the deterministic interior mesh.
ResidualScan scan_identity(const ModelSpec& spec, Identity which, int points, double g_offset = 0.0);

}  // namespace dsusy

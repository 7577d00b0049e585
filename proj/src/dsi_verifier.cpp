#include "dsusy/dsi_verifier.hpp"

#include <algorithm>
#include <cmath>

#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"

namespace dsusy {

namespace {

void require_hbar_free(const ModelSpec& spec) {
    if (has_explicit_hbar(spec.id)) {
        throw Error(ErrorKind::ExplicitHbarModel,
                    std::string(to_string(spec.id)) + " has an explicitly hbar-dependent superpotential");
    }
}

}  // namespace

ResidualSample dsi_residual(const ModelSpec& spec, double x, double g_offset) {
    const double hb = spec.hbar();
    const double a = spec.a();
    const auto side = [&](double ai, double sign, double& scale) {
        const Dual<double> W = superpotential(spec, variable(x), Dual<double>(ai));
        const double term = hb * eval_f(spec, x) * W.d;
        const double g = g_of_a(spec, ai);
        scale = std::max({scale, W.v * W.v, std::abs(term), std::abs(g)});
        return W.v * W.v + sign * term + g;
    };
    double scale = 0.0;
    const double lhs = side(a, +1.0, scale) + g_offset;
    const double rhs = side(a + hb, -1.0, scale);
    return {x, lhs - rhs, scale > 0.0 ? scale : 1.0};
}

ResidualSample condition1_residual(const ModelSpec& spec, double x) {
    require_hbar_free(spec);
    const double a = spec.a();
    const Dual<double> Wa = superpotential(spec, Dual<double>(x), variable(a));
    const double wx = eval_W_prime(spec, x);
    const double t1 = Wa.v * Wa.d;
    const double t2 = eval_f(spec, x) * wx;
    const double t3 = 0.5 * g_prime(spec, a);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    return {x, t1 - t2 + t3, scale > 0.0 ? scale : 1.0};
}

ResidualSample condition2_residual(const ModelSpec& spec, double x) {
    require_hbar_free(spec);
    const double a = spec.a();
    const double v = third_mixed_partial(
        [&spec](const auto& X, const auto& A) { return superpotential(spec, X, A); }, x, a);
    const Dual<double> Wa = superpotential(spec, Dual<double>(x), variable(a));
    const double scale = std::max({std::abs(Wa.v), std::abs(Wa.d), std::abs(eval_W_prime(spec, x)), 1.0});
    return {x, v, scale};
}

ResidualScan scan_identity(const ModelSpec& spec, Identity which, int points, double g_offset) {
    ResidualScan scan;
    for (double x : interior_samples(spec, points)) {
        ResidualSample s;
        switch (which) {
            case Identity::Dsi: s = dsi_residual(spec, x, g_offset); break;
            case Identity::Condition1: s = condition1_residual(spec, x); break;
            case Identity::Condition2: s = condition2_residual(spec, x); break;
        }
        scan.max_relative = std::max(scan.max_relative, s.relative());
        scan.max_abs = std::max(scan.max_abs, std::abs(s.residual));
        scan.samples.push_back(s);
    }
    return scan;
}

}  // namespace dsusy

#pragma once

#include <functional>
#include <span>

#include "dsusy/dual.hpp"
#include "dsusy/error.hpp"
#include "dsusy/grid_function.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

namespace detail {

inline void check_domain(const ModelSpec& spec, double x) {
    if (!spec.domain.contains(x)) {
        throw Error(ErrorKind::OutOfDomain, std::string(to_string(spec.id)) + ": x = " +
                                                std::to_string(x) + " outside the domain");
    }
}

template <class S> S sec(const S& x) { return 1.0 / cos(x); }

}  // namespace detail

/// Deforming function f(x).  S is double or a (nested) Dual.
template <class S>
S eval_f(const ModelSpec& spec, const S& x) {
    detail::check_domain(spec, value_of(x));
    const RawParams& r = spec.raw;
    switch (spec.id) {
        case ModelId::PT: return 1.0 + r.alpha * square(sin(x));
        case ModelId::RHO: return 1.0 + r.alpha * x * x;
        case ModelId::S: return 1.0 + r.alpha * sin(x);
        case ModelId::C: return 1.0 + r.alpha * x;
        case ModelId::M: return 1.0 + r.alpha * exp(-x);
        case ModelId::E: return 1.0 + r.alpha * exp(-x) * sinh(x);
        case ModelId::RM: return 1.0 + sin(x) * (r.alpha * cos(x) + r.beta * sin(x));
        case ModelId::SHO: return 1.0 + r.alpha * x * x + 2.0 * r.beta * x;
        case ModelId::DRHO:
        case ModelId::DC:
        case ModelId::DRHO_EXT1: return sqrt(1.0 + r.lambda * x * x);
    }
    throw Error(ErrorKind::UnknownFamily, "eval_f");
}

/// W(x, a) with b and hbar taken from the spec.  `a` may carry infinitesimals.
template <class S>
S superpotential(const ModelSpec& spec, const S& x, const S& a) {
    const S f = eval_f(spec, x);
    const RawParams& r = spec.raw;
    const double b = spec.b();
    const double hb = spec.hbar();
    const double al = r.alpha;
    switch (spec.id) {
        case ModelId::PT: return (1.0 + al) * a * tan(x);
        case ModelId::RHO: return a * (al * x - 1.0 / x) - b * (1.0 / x + al * x);
        case ModelId::S: {
            const S t = tan(x), s = detail::sec(x);
            return a * (t + al * s) + b * (t - al * s);
        }
        case ModelId::C: return -(a + b) / x + 2.0 * b / (a + b) - 0.5 * al * (a + b);
        case ModelId::M:
            return -al * (a + b) * exp(-x) - 0.5 * (a + b) + 2.0 * hb * b / (al * (a + b));
        case ModelId::E:
            return -(a + b) / tanh(x) + 2.0 * hb * b / (a + b) - 0.5 * al * (a + b);
        case ModelId::RM:
            return -(a + b) * cos(x) / sin(x) + 2.0 * hb * b / (a + b) - 0.5 * al * (a + b);
        case ModelId::SHO:
            return (a + b) * (al * x + r.beta) - 2.0 * b / (hb * hb * al * (a + b));
        case ModelId::DRHO: {
            const double lam = r.lambda;
            return a * (-f / x - lam * x / f) + b * (-f / x + lam * x / f);
        }
        case ModelId::DC: return -a * f / x + r.e2 / (2.0 * a);
        case ModelId::DRHO_EXT1: {
            const double lam = spec.abs_lambda();
            const S D = 4.0 * b * f * f + 2.0 * a - 2.0 * b;
            if (value_of(D) - hb <= 0.0) {
                throw Error(ErrorKind::PoleEncountered, "DRHO_EXT1 denominator vanishes");
            }
            return (a - b) * lam * x / f - (a + b) * f / x -
                   8.0 * hb * b * lam * x * f * (1.0 / (D - hb) - 1.0 / (D + hb));
        }
    }
    throw Error(ErrorKind::UnknownFamily, "superpotential");
}

template <class S>
S eval_W(const ModelSpec& spec, const S& x) {
    return superpotential(spec, x, S(spec.a()));
}

/// Potential V(x) as listed in the catalog (ground level not shifted to zero).
template <class S>
S table_potential(const ModelSpec& spec, const S& x) {
    detail::check_domain(spec, value_of(x));
    const RawParams& r = spec.raw;
    const double hb = r.hbar;
    const double A = r.A, B = r.B;
    const double l1 = spec.derived.l_plus_one;
    const double wall = l1 * (l1 - hb);
    switch (spec.id) {
        case ModelId::PT: return A * (A - hb) * square(detail::sec(x));
        case ModelId::RHO: return 0.25 * r.omega * r.omega * x * x + wall / (x * x);
        case ModelId::S: {
            const S s = detail::sec(x);
            return (A * (A - hb) + B * B) * s * s - B * (2.0 * A - hb) * s * tan(x);
        }
        case ModelId::C: return -r.e2 / x + wall / (x * x);
        case ModelId::M: return B * B * exp(-2.0 * x) - B * (2.0 * A + hb) * exp(-x);
        case ModelId::E: return A * (A - hb) / square(sinh(x)) - 2.0 * B / tanh(x);
        case ModelId::RM: return A * (A - hb) / square(sin(x)) + 2.0 * B * cos(x) / sin(x);
        case ModelId::SHO: return 0.25 * r.omega * r.omega * square(x - 2.0 * r.d / r.omega);
        case ModelId::DRHO:
            return r.omega * (r.omega + 2.0 * hb * r.lambda) * x * x /
                       (4.0 * (1.0 + r.lambda * x * x)) +
                   wall / (x * x);
        case ModelId::DC: return -r.e2 / x * sqrt(1.0 + r.lambda * x * x) + wall / (x * x);
        case ModelId::DRHO_EXT1: {
            const double lam = spec.abs_lambda();
            const double om = r.omega;
            const S den = (om - 2.0 * lam * l1) * x * x + 2.0 * l1 - hb;
            return om * (om - 2.0 * hb * lam) * x * x / (4.0 * (1.0 - lam * x * x)) +
                   wall / (x * x) +
                   4.0 * hb * hb *
                       ((om + 2.0 * lam * (l1 - hb)) / den -
                        2.0 * (2.0 * l1 - hb) * (om - hb * lam) / (den * den));
        }
    }
    throw Error(ErrorKind::UnknownFamily, "table_potential");
}

/// W^2 + sign * hbar f W' at parameter a; sign = -1 gives V_-, +1 gives V_+.
template <class S>
S partner_potential(const ModelSpec& spec, const S& x, const S& a, int sign) {
    const Dual<S> X(x, S(1.0));
    const Dual<S> W = superpotential(spec, X, Dual<S>(a));
    const S f = eval_f(spec, x);
    return W.v * W.v + double(sign) * spec.hbar() * f * W.d;
}

template <class S>
S eval_V_minus(const ModelSpec& spec, const S& x) {
    return partner_potential(spec, x, S(spec.a()), -1);
}

template <class S>
S eval_V_plus(const ModelSpec& spec, const S& x) {
    return partner_potential(spec, x, S(spec.a()), +1);
}

/// dW/dx at the spec's a.
double eval_W_prime(const ModelSpec& spec, double x);

/// E0 = V - V_-, after checking it is constant over a 100-point interior sample.
/// Throws NotFlat when the spread exceeds 1e-9 (1 + |E0|).
double ground_energy_shift(const ModelSpec& spec);

/// Same flatness probe against a caller-supplied V_- (used for negative controls).
double flatness_shift(const ModelSpec& spec, const std::function<double(double)>& v_minus);

enum class LadderSign { Plus, Minus };
enum class Partner { Minus, Plus };
enum class HamiltonianForm { Factorized, Direct };

/// (-/+ hbar sqrt(f) d/dx sqrt(f) + W) psi on the grid, at parameter a.
/// Sixth-order stencils; the returned grid marks low-accuracy edge nodes.
GridFunction apply_ladder(const ModelSpec& spec, LadderSign sign, const GridFunction& psi);

/// H_- = A+ A-, H_+ = A- A+.  The direct form discretizes
/// -hbar^2 sqrt(f) d/dx f d/dx sqrt(f) + V_-/+ with a second-derivative stencil.
GridFunction apply_hamiltonian(const ModelSpec& spec, Partner which, const GridFunction& psi,
                               HamiltonianForm form = HamiltonianForm::Factorized);

}  // namespace dsusy

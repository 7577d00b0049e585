#include "dsusy/hbar_series.hpp"

#include <algorithm>
#include <cmath>

#include "dsusy/dual.hpp"
#include "dsusy/error.hpp"
#include "dsusy/jet.hpp"
#include "dsusy/operators.hpp"

namespace dsusy {

namespace {

void require_ext1(const ModelSpec& spec) {
    if (spec.id != ModelId::DRHO_EXT1) {
        throw Error(ErrorKind::WrongModel, "the hbar series is defined for DRHO_EXT1 only, got " +
                                               std::string(to_string(spec.id)));
    }
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// W_n with x-scalar X (double or Dual) and a-scalar S (X or Jet<X>).
template <class X, class S>
S term(int n, const X& x, const S& a, const ModelSpec& spec) {
    const double lam = spec.abs_lambda();
    const double b = spec.b();
    const X f = sqrt(1.0 - lam * x * x);
    const S zero = a - a;
    if (n < 0 || n % 2 == 1) return zero;
    if (n == 0) return (a - b) * X(lam * x / f) - (a + b) * X(f / x);
    const S D = X(4.0 * b * f * f) + 2.0 * a - 2.0 * b;
    const S Dn = int_pow(D, n, zero + X(1.0));
    return X(-(f * (16.0 * b * lam) * x)) / Dn;
}

template <class X, class S>
S pair_sum_t(int s, const X& x, const S& a, const ModelSpec& spec) {
    S acc = a - a;
    for (int k = 0; k <= s; ++k) acc = acc + term(k, x, a, spec) * term(s - k, x, a, spec);
    return acc;
}

double f_of(double x, const ModelSpec& spec) { return std::sqrt(1.0 - spec.abs_lambda() * x * x); }

ResidualSample make_sample(double x, double residual, std::initializer_list<double> terms) {
    double scale = 0.0;
    for (double t : terms) scale = std::max(scale, std::abs(t));
    return {x, residual, scale > 0.0 ? scale : 1.0};
}

}  // namespace

double series_denominator(double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    const double f = f_of(x, spec);
    const double b = spec.b();
    return 4.0 * b * f * f + 2.0 * a - 2.0 * b;
}

double series_term(int n, double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    return term(n, x, a, spec);
}

double pair_sum(int s, double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    return pair_sum_t(s, x, a, spec);
}

double F_s(int s, double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    const double lam = spec.abs_lambda();
    const double b = spec.b();
    const double f2 = 1.0 - lam * x * x;
    const double D = series_denominator(x, a, spec);
    const double sm2 = s - 2.0;
    return 32.0 * b * lam / std::pow(D, s) *
           (-4.0 * b * sm2 * f2 * f2 + (2.0 * a + 4.0 * b * sm2) * f2 - a + b);
}

ResidualSample derivative_identity_residual(int n, int s, double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    const int m = n - s;
    const auto A = Jet<double>::variable(static_cast<std::size_t>(std::max(m, 0)), a);
    const double lhs = factorial(m) * pair_sum_t(s, x, A, spec)[static_cast<std::size_t>(m)];
    const double rhs = std::pow(-2.0, m) * factorial(n - 2) / factorial(s - 2) * F_s(n, x, a, spec);
    return make_sample(x, lhs - rhs, {lhs, rhs});
}

OrderTerms order_terms(int n, double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    using X = Dual<double>;
    const X xs = variable(x);
    const double f = f_of(x, spec);
    const auto K = static_cast<std::size_t>(n - 1);
    const auto A = Jet<X>::variable(K, X(a));

    OrderTerms t;
    t.flow = 2.0 * f * term(n - 1, xs, X(a), spec).d;
    for (int s = 1; s <= n - 1; ++s) {
        t.pairs += pair_sum_t(s, xs, A, spec)[static_cast<std::size_t>(n - s)].v;
    }
    t.w0_term = (n - 2.0) / n * f * term(0, xs, A, spec)[K].d;
    for (int k = 2; k <= n - 1; ++k) {
        t.k_sum += f * term(n - k, xs, A, spec)[static_cast<std::size_t>(k - 1)].d;
    }
    t.F_n = F_s(n, x, a, spec);
    return t;
}

OrderTerms parity_closed_terms(int n, double x, double a, const ModelSpec& spec, bool flip) {
    require_ext1(spec);
    OrderTerms t;
    const double F = F_s(n, x, a, spec);
    const double p = std::pow(3.0, n - 2);
    const bool even = n % 2 == 0;
    t.flow = even ? 0.0 : -2.0 * F;
    t.pairs = (even != flip) ? 0.5 * (p - 1.0) * F : -0.5 * (p + 1.0) * F;
    t.k_sum = even ? 0.5 * (p - 1.0) * F : -0.5 * (p - 3.0) * F;
    t.F_n = F;
    return t;
}

namespace {

ResidualSample assemble(const OrderTerms& t, double x) {
    return make_sample(x, t.flow - t.pairs + t.w0_term + t.k_sum,
                       {t.flow, t.pairs, t.w0_term, t.k_sum, t.F_n});
}

}  // namespace

ResidualSample order_n_residual(int n, double x, double a, const ModelSpec& spec) {
    require_ext1(spec);
    if (n < 1) throw Error(ErrorKind::LevelOutOfRange, "series order must be >= 1");
    using X = Dual<double>;
    const double f = f_of(x, spec);
    if (n == 1) {
        const X w0x = term(0, variable(x), X(a), spec);
        const X w0a = term(0, X(x), variable(a), spec);
        const double lam = spec.abs_lambda();
        const double t1 = 2.0 * f * w0x.d;
        const double t2 = 2.0 * w0a.v * w0a.d;
        const double t3 = 8.0 * a * lam;
        return make_sample(x, t1 - t2 - t3, {t1, t2, t3});
    }
    if (n == 2) {
        const X w1x = term(1, variable(x), X(a), spec);
        const X w0a = term(0, X(x), variable(a), spec);
        const X w1a = term(1, X(x), variable(a), spec);
        const double t1 = f * w1x.d;
        const double t2 = w0a.d * w1a.v + w0a.v * w1a.d;
        return make_sample(x, t1 - t2, {t1, t2, w0a.v});
    }
    return assemble(order_terms(n, x, a, spec), x);
}

ResidualSample parity_assembled_residual(int n, double x, double a, const ModelSpec& spec, bool flip) {
    return assemble(parity_closed_terms(n, x, a, spec, flip), x);
}

double partial_sum_error(int N, double x, const ModelSpec& spec) {
    require_ext1(spec);
    const double hb = spec.hbar();
    const double a = spec.a();
    const double D = series_denominator(x, a, spec);
    if (hb >= D) {
        throw Error(ErrorKind::DivergentSeries, "hbar = " + std::to_string(hb) +
                                                    " is not below D(x) = " + std::to_string(D));
    }
    double sum = 0.0;
    double hp = 1.0;
    for (int n = 0; n <= N; ++n) {
        sum += hp * series_term(n, x, a, spec);
        hp *= hb;
    }
    return std::abs(sum - superpotential(spec, x, a));
}

ResidualSample resummation_residual(double x, double hbar, const ModelSpec& spec) {
    require_ext1(spec);
    const double a = spec.a();
    const double b = spec.b();
    const double lam = spec.abs_lambda();
    const double f = f_of(x, spec);
    const double D = series_denominator(x, a, spec);
    if (hbar >= D) throw Error(ErrorKind::DivergentSeries, "hbar is not below D(x)");
    double sum = 0.0;
    double hp = hbar * hbar;
    for (int nu = 1; nu < 10000; ++nu) {
        const double t = hp * series_term(2 * nu, x, a, spec);
        sum += t;
        if (std::abs(t) <= 1e-18 * std::abs(sum)) break;
        hp *= hbar * hbar;
    }
    const double bracket = -8.0 * hbar * b * lam * x * f * (1.0 / (D - hbar) - 1.0 / (D + hbar));
    return make_sample(x, sum - bracket, {sum, bracket});
}

std::vector<ConvergenceRow> convergence_table(double x, const ModelSpec& spec, int N_max) {
    std::vector<ConvergenceRow> rows;
    for (int N = 0; N <= N_max; N += 2) rows.push_back({N, partial_sum_error(N, x, spec)});
    return rows;
}

}  // namespace dsusy

#include "dsusy/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "dsusy/operators.hpp"

namespace dsusy {

double g_prime(const ModelSpec& spec, double a) { return g_of_a(spec, variable(a)).d; }

double g_difference(const ModelSpec& spec, int n) {
    const double a = spec.a();
    return g_of_a(spec, a + n * spec.hbar()) - g_of_a(spec, a);
}

int validity_limit(const ModelSpec& spec, int n_cap) {
    double prev = 0.0;
    for (int n = 1; n <= n_cap; ++n) {
        const double e = g_difference(spec, n);
        if (!(e > prev) || !std::isfinite(e)) return n - 1;
        prev = e;
    }
    return n_cap;
}

double energy_level(const ModelSpec& spec, int n) {
    if (n < 0 || n > validity_limit(spec, std::max(n, 1))) {
        throw Error(ErrorKind::LevelOutOfRange, std::string(to_string(spec.id)) + ": level " +
                                                    std::to_string(n) + " is not a bound level");
    }
    return g_difference(spec, n);
}

double printed_energy(const ModelSpec& spec, int n) {
    const RawParams& r = spec.raw;
    const double hb = r.hbar;
    const double al = r.alpha;
    const double be = r.beta;
    const double A = r.A, B = r.B;
    const double om = r.omega;
    const double l1 = spec.derived.l_plus_one;
    const double N = n;
    const DerivedParams& dp = spec.derived;
    switch (spec.id) {
        case ModelId::PT: return hb * hb * (1.0 + al) * N * (N + 1.0) + hb * *dp.delta * N;
        case ModelId::RHO:
            return 4.0 * hb * al * N * ((N + 0.5) * hb + l1) + 2.0 * hb * N * *dp.delta;
        case ModelId::S:
            return hb * hb * (1.0 - al * al) * N * (N + 1.0) +
                   hb * ((1.0 + al) * *dp.delta_plus + (1.0 - al) * *dp.delta_minus) * N;
        case ModelId::C: {
            const double e2 = r.e2;
            return hb * N * (hb * N + 2.0 * l1) * (e2 - hb * al * l1 * (N + 1.0)) *
                   (e2 + al * l1 * (hb * N + 2.0 * l1 - hb)) /
                   (4.0 * l1 * l1 * square(l1 + N * hb));
        }
        case ModelId::M: {
            const double D = *dp.delta;
            return hb * N * (D + hb * al * (N + 1.0)) *
                   (2.0 * B * (2.0 * A + hb) - hb * (D + al * hb) * (N + 1.0)) *
                   (4.0 * B * B + 2.0 * al * B * (2.0 * A + hb) + hb * al * (D + hb * al) * (N + 1.0)) /
                   (square(D + hb * al) * square(D + (2.0 * N + 1.0) * hb * al));
        }
        case ModelId::E:
            return hb * N * (2.0 * A + N * hb) / (4.0 * A * A * square(A + N * hb)) *
                   (2.0 * B + 2.0 * A * (A + N * hb) + al * A * (2.0 * A + (N - 1.0) * hb)) *
                   (2.0 * B - 2.0 * A * (A + N * hb) - hb * al * A * (N + 1.0));
        case ModelId::RM:
            return hb * N * (2.0 * A + N * hb) / (4.0 * A * A * square(A + N * hb)) *
                   (4.0 * A * A * square(A + N * hb) + 4.0 * B * B - 4.0 * al * B * A * (A - hb) -
                    hb * al * al * A * A * (2.0 * A - hb + N * (2.0 * A + N * hb)) -
                    4.0 * be * A * A * square(A + N * hb));
        case ModelId::SHO: {
            const double D = *dp.delta;
            const double d = r.d;
            return 4.0 * N * (D + (N + 1.0) * hb * al) /
                   square((D + hb * al) * (D + hb * al * (2.0 * N + 1.0))) *
                   (hb * hb * hb * al * (al - be * be) * (N + 1.0) *
                        (2.0 * hb * hb * al * al * (N + 1.0) + om * om * (N + 2.0)) +
                    d * om * om * (be + hb * al * d) + 0.25 * hb * om * om * om * om +
                    hb * hb * D * (al - be * be) * (N + 1.0) *
                        (2.0 * hb * hb * al * al * (N + 1.0) + om * om));
        }
        case ModelId::DRHO: return 2.0 * N * hb * om - 4.0 * hb * r.lambda * N * (l1 + hb * N);
        case ModelId::DC:
            return N * hb * (2.0 * l1 + N * hb) *
                   (-r.lambda + r.e2 * r.e2 / (4.0 * l1 * l1 * square(l1 + N * hb)));
        case ModelId::DRHO_EXT1:
            return 4.0 * hb * spec.abs_lambda() * N * (N * hb + 2.0 * spec.a());
    }
    throw Error(ErrorKind::UnknownFamily, "printed_energy");
}

TableCheck table_cross_check(const ModelSpec& spec, int n) {
    TableCheck t;
    t.n = n;
    t.g_difference = g_difference(spec, n);
    t.printed = printed_energy(spec, n);
    const double scale = std::max(std::abs(t.g_difference), std::abs(t.printed));
    const double diff = std::abs(t.g_difference - t.printed);
    t.rel_diff = scale > 0.0 ? diff / scale : 0.0;
    t.match = t.rel_diff <= kTableTolerance;
    return t;
}

double energy_level_strict(const ModelSpec& spec, int n) {
    const double e = energy_level(spec, n);
    const TableCheck t = table_cross_check(spec, n);
    if (!t.match) {
        throw Error(ErrorKind::TableMismatch,
                    std::string(to_string(spec.id)) + ": tabulated E_" + std::to_string(n) +
                        " differs from g(a+n hbar)-g(a) by " + std::to_string(t.rel_diff) + " relative");
    }
    return e;
}

double absolute_energy(const ModelSpec& spec, int n) {
    return energy_level(spec, n) + ground_energy_shift(spec);
}

SpectrumResult compute_spectrum(const ModelSpec& spec, int n_max) {
    SpectrumResult res;
    res.model = spec.id;
    res.e0 = ground_energy_shift(spec);
    const int top = std::min(n_max, validity_limit(spec, std::max(n_max, 1)));
    for (int n = 0; n <= top; ++n) {
        const double e = g_difference(spec, n);
        res.levels.push_back({n, e, e + res.e0});
    }
    return res;
}

}  // namespace dsusy

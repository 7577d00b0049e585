#pragma once

#include <optional>
#include <vector>

#include "dsusy/dual.hpp"
#include "dsusy/error.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

/// g(a) with b, hbar and raw parameters from the spec.  Additive constants as tabulated.
template <class S>
S g_of_a(const ModelSpec& spec, const S& a) {
    const RawParams& r = spec.raw;
    const double b = spec.b();
    const double hb = spec.hbar();
    const double al = r.alpha;
    switch (spec.id) {
        case ModelId::PT: return (1.0 + al) * a * a;
        case ModelId::RHO: return 4.0 * al * a * a;
        case ModelId::S: return (1.0 - al * al) * a * a + 2.0 * (1.0 + al * al) * a * b;
        case ModelId::C: return -4.0 * b * b / square(a + b) - 0.25 * al * al * a * (a + 2.0 * b);
        case ModelId::M:
            return -4.0 * hb * hb * b * b / (al * al * square(a + b)) - 0.25 * a * (a + 2.0 * b);
        case ModelId::E:
            return -4.0 * hb * hb * b * b / square(a + b) - 0.25 * square(al + 2.0) * a * (a + 2.0 * b);
        case ModelId::RM:
            return -4.0 * hb * hb * b * b / square(a + b) -
                   0.25 * (al * al - 4.0 * r.beta - 4.0) * a * (a + 2.0 * b);
        case ModelId::SHO:
            return -4.0 * b * b / (hb * hb * hb * hb * al * al * square(a + b)) +
                   (al - r.beta * r.beta) * a * (a + 2.0 * b);
        case ModelId::DRHO: return -4.0 * r.lambda * a * a;
        case ModelId::DC: return -r.lambda * a * a - r.e2 * r.e2 / (4.0 * a * a);
        case ModelId::DRHO_EXT1: return 4.0 * spec.abs_lambda() * a * a;
    }
    throw Error(ErrorKind::UnknownFamily, "g_of_a");
}

/// dg/da at the given a.
double g_prime(const ModelSpec& spec, double a);

/// g(a + n hbar) - g(a), no range check.
double g_difference(const ModelSpec& spec, int n);

/// Highest n (capped at n_cap) such that the levels 0..n are strictly increasing.
int validity_limit(const ModelSpec& spec, int n_cap = 64);

/// E_n^(-) = g(a + n hbar) - g(a).  Throws LevelOutOfRange for n < 0 or beyond validity_limit.
double energy_level(const ModelSpec& spec, int n);

/// The tabulated closed form for E_n^(-), transcribed as printed.
double printed_energy(const ModelSpec& spec, int n);

struct TableCheck {
    int n = 0;
    double g_difference = 0.0;
    double printed = 0.0;
    double rel_diff = 0.0;
    bool match = true;
};

inline constexpr double kTableTolerance = 1e-10;

TableCheck table_cross_check(const ModelSpec& spec, int n);

/// energy_level that additionally throws TableMismatch when the printed form disagrees.
double energy_level_strict(const ModelSpec& spec, int n);

/// E_n^(-) + E0 with E0 from the flatness probe.
double absolute_energy(const ModelSpec& spec, int n);

struct SpectrumLevel {
    int n = 0;
    double e_minus = 0.0;
    double e_abs = 0.0;
};

struct NumericLevel {
    int n = 0;
    double eigenvalue = 0.0;
    double abs_error = 0.0;
};

struct SpectrumResult {
    ModelId model = ModelId::PT;
    std::vector<SpectrumLevel> levels;
    double e0 = 0.0;
    std::optional<std::vector<NumericLevel>> numeric;
};

/// Levels 0..min(n_max, validity_limit).
SpectrumResult compute_spectrum(const ModelSpec& spec, int n_max);

}  // namespace dsusy

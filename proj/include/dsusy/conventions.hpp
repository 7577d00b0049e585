#pragma once

#include <string>
#include <vector>

#include "dsusy/model_catalog.hpp"

namespace dsusy {

/// Whether a relation carries a factor hbar^2 or none.
enum class Scale { One, HbarSquared };

inline double scale_value(Scale s, double hbar) { return s == Scale::One ? 1.0 : hbar * hbar; }

/// Parameters in the older (barred) conventions, where hbar is absorbed.
/// Only the fields of the family's own entry are meaningful.
struct BarredParams {
    ModelId model = ModelId::PT;
    double A = 0.0;
    double B = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double omega = 0.0;
    double l = 0.0;  // real: (l + 1)/hbar - 1
    double Z = 0.0;  // Coulomb: e^2 / (2 hbar)
    double Q = 0.0;  // deformed Coulomb: e^2 / hbar
    double d = 0.0;
    double lambda = 0.0;
};

struct ConventionMap {
    ModelId model = ModelId::PT;
    /// Map entries, e.g. "A-bar = A/hbar", in the order of the family's entry.
    std::vector<std::string> param_map;
    /// x-bar = x / variable_scale(hbar): 1 for the trigonometric and
    /// exponential families, hbar for the radial ones and SHO.
    bool x_scaled_by_hbar = false;
    Scale potential_scale = Scale::One;
    Scale energy_scale = Scale::One;

    double x_bar(double x, double hbar) const { return x_scaled_by_hbar ? x / hbar : x; }
};

/// The translation entry for a family.  DRHO_EXT1 shares the DRHO entry.
ConventionMap convention_map(ModelId id);

BarredParams to_barred(const ModelSpec& spec);
RawParams from_barred(const BarredParams& barred, double hbar);

/// Largest relative difference between the fields of two raw parameter sets
/// that the family's map touches.
double round_trip_error(const ModelSpec& spec);

/// V-bar(x-bar) exactly as the older convention writes it.
double barred_potential(const BarredParams& barred, double x_bar);

/// f-bar(x-bar) exactly as the older convention writes it.
double barred_deforming(const BarredParams& barred, double x_bar);

/// V(x) - scale * V-bar(x-bar).  Throws UnknownFamily for DRHO_EXT1.
double check_potential_relation(const ModelSpec& spec, double x);

/// f(x) - f-bar(x-bar).  Throws UnknownFamily for DRHO_EXT1.
double check_deforming_relation(const ModelSpec& spec, double x);

/// The barred system as a model at hbar = 1 (l + 1 may be non-integer).
ModelSpec barred_model(const ModelSpec& spec);

/// (E_n - E_0) - scale * (E-bar_n - E-bar_0), each side from absolute
/// energies of its own convention.
double check_energy_relation(const ModelSpec& spec, int n);

}  // namespace dsusy

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsusy {

/// Catalog families.  DRHO_EXT1 is the m = 1 rational extension of the
/// deformed radial oscillator (lambda < 0 branch only).
enum class ModelId { PT, RHO, S, C, M, E, RM, SHO, DRHO, DC, DRHO_EXT1 };

inline constexpr std::array<ModelId, 11> kAllModels = {
    ModelId::PT, ModelId::RHO, ModelId::S,    ModelId::C,  ModelId::M,        ModelId::E,
    ModelId::RM, ModelId::SHO, ModelId::DRHO, ModelId::DC, ModelId::DRHO_EXT1};

std::string_view to_string(ModelId id);
std::optional<ModelId> model_from_string(std::string_view name);

/// True for the one family whose superpotential carries explicit hbar dependence.
constexpr bool has_explicit_hbar(ModelId id) { return id == ModelId::DRHO_EXT1; }

/// Raw physical parameters.  Each family reads only its own subset:
///   PT: A, alpha          RHO: omega, l, alpha     S: A, B, alpha
///   C: e2, l, alpha       M: A, B, alpha           E: A, B, alpha
///   RM: A, B, alpha, beta SHO: omega, d, alpha, beta
///   DRHO: omega, l, lambda   DC: e2, l, lambda   DRHO_EXT1: omega, l, lambda
struct RawParams {
    double hbar = 1.0;
    double A = 0.0;
    double B = 0.0;
    double omega = 0.0;
    int l = 0;
    double e2 = 0.0;
    double d = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 0.0;

    bool operator==(const RawParams&) const = default;
};

struct DerivedParams {
    double a = 0.0;  // shifted a -> a + hbar for the partner
    double b = 0.0;  // held fixed under the partner shift
    std::optional<double> delta;
    std::optional<double> delta_plus;
    std::optional<double> delta_minus;
    double l_plus_one = 1.0;  // raw.l + 1, or a real value from build_model_continued
};

/// Open interval (x1, x2); endpoints may be infinite.
struct Interval {
    double x1 = 0.0;
    double x2 = 0.0;

    bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
    double length() const { return x2 - x1; }
    bool contains(double x) const { return x > x1 && x < x2; }
    double midpoint() const { return 0.5 * (x1 + x2); }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ModelSpec {
    ModelId id = ModelId::PT;
    RawParams raw;
    DerivedParams derived;
    Interval domain;

    double hbar() const { return raw.hbar; }
    double a() const { return derived.a; }
    double b() const { return derived.b; }
    /// |lambda| for the deformed radial families.
    double abs_lambda() const { return std::abs(raw.lambda); }
};

/// Validates the family constraints and computes the derived combinations.
/// Throws Error{ConstraintViolation} naming the violated inequality.
ModelSpec build_model(ModelId id, const RawParams& raw);

/// Same as build_model with the angular combination l + 1 given as a positive
/// real.  Barred parameter sets need this: l-bar = (l + 1)/hbar - 1 is in
/// general not an integer.  raw.l is ignored.
ModelSpec build_model_continued(ModelId id, const RawParams& raw, double l_plus_one);

/// a -> a + hbar; b and the raw parameters are untouched.
ModelSpec partner_shift(const ModelSpec& spec, int steps = 1);

struct CatalogEntry {
    ModelId id;
    RawParams reference;
};

/// All eleven families with their fixed reference parameter sets (hbar = 1).
std::vector<CatalogEntry> list_catalog();
RawParams reference_params(ModelId id);

/// Reference set moved to another hbar.  Families whose constraints tie A
/// (and B) to hbar keep A/hbar and B/hbar (B/hbar^2 for E and RM) fixed;
/// the rest only change hbar.
RawParams reference_params_at_hbar(ModelId id, double hbar);

/// Finite window used for sampling: the domain with infinite ends cut off.
Interval probe_window(const ModelSpec& spec);

/// Deterministic interior mesh on probe_window, avoiding the 2% nearest each end.
std::vector<double> interior_samples(const ModelSpec& spec, int count);

}  // namespace dsusy

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsusy/eigensolver.hpp"
#include "dsusy/model_catalog.hpp"

namespace dsusy {

inline const std::vector<std::string> kAllChecks = {"dsi",      "conditions", "series",     "spectrum",
                                                    "eigen",    "wavefunction", "conventions"};

/// Pass thresholds per check name.
struct Tolerances {
    double dsi = 1e-11;
    double condition1 = 1e-12;
    double condition2 = 1e-13;
    double series_order = 1e-10;
    double series_pair = 1e-13;
    double series_derivative = 1e-11;
    double series_ratio = 0.2;
    double series_resummation = 1e-10;
    double table = 1e-10;
    double eigen = 1e-6;
    double annihilation = 1e-8;
    double overlap = 1e-6;
    double intertwining = 1e-6;
    double round_trip = 1e-14;
    double potential_relation = 1e-12;
    double energy_relation = 1e-12;
};

/// Sets the tolerance called `name` (the JSON key).  Throws ConfigError for
/// unknown names or non-positive values.
void set_tolerance(Tolerances& tol, const std::string& name, double value);

/// Field-by-field replacement of a reference parameter set.
struct ParamOverride {
    std::optional<double> hbar, A, B, omega, e2, d, alpha, beta, lambda;
    std::optional<int> l;
};

struct SuiteConfig {
    std::vector<ModelId> models{kAllModels.begin(), kAllModels.end()};
    std::vector<std::string> checks = kAllChecks;
    /// hbar values for the algebraic checks (dsi, conditions, series, spectrum, conventions).
    std::vector<double> hbar = {0.5, 1.0, 2.0};
    /// hbar values for the grid-based checks (eigen, wavefunction).
    std::vector<double> numeric_hbar = {1.0};
    std::map<ModelId, ParamOverride> overrides;
    int n_max = 4;
    GridSettings grid;
    Tolerances tol;
    /// Added to g(a) in the dsi check of the listed models (negative control).
    double inject_g_offset = 0.0;
    std::vector<ModelId> inject_models;
    /// Printed-table discrepancies count as failures when set.
    bool strict_tables = false;
    int threads = 0;  // 0: hardware concurrency
    std::string out_path;
    std::string format = "json";
};

/// Parses and validates a JSON config; unspecified keys keep their defaults.
/// Throws ConfigError.
SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);
void validate(const SuiteConfig& config);

/// pass == (max_residual <= tolerance).  status is one of pass, fail, error,
/// table_mismatch, not_applicable.
struct CheckReport {
    std::string suite;
    ModelId model = ModelId::PT;
    std::string check;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string status;
    std::string details;
};

/// Reference parameters at hbar with the config's override applied.
RawParams params_for(const SuiteConfig& config, ModelId id, double hbar);

/// Runs the selected checks; module errors become failed reports.
/// Output is sorted by (model, check).
std::vector<CheckReport> run_suite(const SuiteConfig& config);

/// True when no report counts as a failure under the config's table policy.
bool all_passed(const std::vector<CheckReport>& reports, bool strict_tables = false);

enum class ReportFormat { Json, Csv, Text };
ReportFormat parse_format(const std::string& name);

inline constexpr const char* kCsvHeader = "suite,model,check,max_residual,tolerance,pass";

void write_report(std::ostream& os, const std::vector<CheckReport>& reports, ReportFormat format);

/// Writes the report file and a `<path>.meta.json` sidecar holding the
/// timestamp and run time.  Throws IoError.
void emit_report(const std::vector<CheckReport>& reports, ReportFormat format, const std::string& path,
                 double seconds);

}  // namespace dsusy

#include "dsusy/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "dsusy/conventions.hpp"
#include "dsusy/dsi_verifier.hpp"
#include "dsusy/error.hpp"
#include "dsusy/hbar_series.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"
#include "dsusy/wavefunction_lab.hpp"

namespace dsusy {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct TolEntry {
    const char* name;
    double Tolerances::*field;
};

constexpr TolEntry kTolEntries[] = {
    {"dsi", &Tolerances::dsi},
    {"condition1", &Tolerances::condition1},
    {"condition2", &Tolerances::condition2},
    {"series_order", &Tolerances::series_order},
    {"series_pair", &Tolerances::series_pair},
    {"series_derivative", &Tolerances::series_derivative},
    {"series_ratio", &Tolerances::series_ratio},
    {"series_resummation", &Tolerances::series_resummation},
    {"table", &Tolerances::table},
    {"eigen", &Tolerances::eigen},
    {"annihilation", &Tolerances::annihilation},
    {"overlap", &Tolerances::overlap},
    {"intertwining", &Tolerances::intertwining},
    {"round_trip", &Tolerances::round_trip},
    {"potential_relation", &Tolerances::potential_relation},
    {"energy_relation", &Tolerances::energy_relation},
};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

ModelId parse_model(const std::string& name) {
    const auto id = model_from_string(name);
    if (!id) config_error("unknown model '" + name + "'");
    return *id;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) config_error(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            config_error("unknown key '" + key + "' in " + where);
        }
    }
}

std::vector<double> number_list(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) config_error(key + " must be a number or an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) config_error(key + " must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::string> name_list(const json& v, const std::string& key) {
    if (v.is_string()) return {v.get<std::string>()};
    if (!v.is_array()) config_error(key + " must be a string or an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) config_error(key + " must contain strings only");
        out.push_back(e.get<std::string>());
    }
    return out;
}

ParamOverride parse_override(const json& obj, const std::string& where) {
    check_keys(obj, {"hbar", "A", "B", "omega", "e2", "d", "alpha", "beta", "lambda", "l"}, where);
    ParamOverride o;
    const auto num = [&](const char* k, std::optional<double>& dst) {
        if (!obj.contains(k)) return;
        if (!obj[k].is_number()) config_error(where + "." + k + " must be a number");
        dst = obj[k].get<double>();
    };
    num("hbar", o.hbar);
    num("A", o.A);
    num("B", o.B);
    num("omega", o.omega);
    num("e2", o.e2);
    num("d", o.d);
    num("alpha", o.alpha);
    num("beta", o.beta);
    num("lambda", o.lambda);
    if (obj.contains("l")) {
        if (!obj["l"].is_number_integer()) config_error(where + ".l must be an integer");
        o.l = obj["l"].get<int>();
    }
    return o;
}

std::string hbar_tag(double hbar) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "@hbar=%g", hbar);
    return buf;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Runs one check and converts any library error into a failed report.
class Collector {
public:
    explicit Collector(ModelId id) : id_(id) {}

    void add(const std::string& suite, const std::string& check, double residual, double tol,
             std::string details = {}) {
        CheckReport r{suite, id_, check, residual, tol, residual <= tol, {}, std::move(details)};
        r.status = r.pass ? "pass" : "fail";
        out_.push_back(std::move(r));
    }
    void not_applicable(const std::string& suite, const std::string& check, double tol, std::string why) {
        out_.push_back({suite, id_, check, 0.0, tol, true, "not_applicable", std::move(why)});
    }
    void error(const std::string& suite, const std::string& check, double tol, const std::string& what) {
        out_.push_back({suite, id_, check, std::numeric_limits<double>::infinity(), tol, false, "error", what});
    }
    template <class Fn>
    void guarded(const std::string& suite, const std::string& check, double tol, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            error(suite, check, tol, e.what());
        }
    }
    std::vector<CheckReport>& reports() { return out_; }

private:
    ModelId id_;
    std::vector<CheckReport> out_;
};

bool wants(const SuiteConfig& c, const char* check) {
    return std::find(c.checks.begin(), c.checks.end(), check) != c.checks.end();
}

void run_dsi(const SuiteConfig& c, ModelId id, double hb, Collector& out) {
    const std::string check = "dsi" + hbar_tag(hb);
    out.guarded("dsi", check, c.tol.dsi, [&] {
        const ModelSpec spec = build_model(id, params_for(c, id, hb));
        const bool inject =
            std::find(c.inject_models.begin(), c.inject_models.end(), id) != c.inject_models.end();
        const double offset = inject ? c.inject_g_offset : 0.0;
        const ResidualScan scan = scan_identity(spec, Identity::Dsi, 200, offset);
        out.add("dsi", check, scan.max_relative, c.tol.dsi,
                "200 interior points" + std::string(offset != 0.0 ? ", injected g offset " + fmt(offset) : ""));
    });
}

void run_conditions(const SuiteConfig& c, ModelId id, double hb, Collector& out) {
    const std::string tag = hbar_tag(hb);
    if (has_explicit_hbar(id)) {
        out.not_applicable("conditions", "condition1" + tag, c.tol.condition1, "W depends on hbar explicitly");
        out.not_applicable("conditions", "condition2" + tag, c.tol.condition2, "W depends on hbar explicitly");
        return;
    }
    out.guarded("conditions", "condition1" + tag, c.tol.condition1, [&] {
        const ModelSpec spec = build_model(id, params_for(c, id, hb));
        out.add("conditions", "condition1" + tag, scan_identity(spec, Identity::Condition1, 200).max_relative,
                c.tol.condition1, "200 interior points");
    });
    out.guarded("conditions", "condition2" + tag, c.tol.condition2, [&] {
        const ModelSpec spec = build_model(id, params_for(c, id, hb));
        out.add("conditions", "condition2" + tag, scan_identity(spec, Identity::Condition2, 100).max_relative,
                c.tol.condition2, "100 interior points");
    });
}

void run_series(const SuiteConfig& c, ModelId id, double hb, Collector& out) {
    if (!has_explicit_hbar(id)) return;
    const std::string tag = hbar_tag(hb);
    const auto spec_at = [&] { return build_model(id, params_for(c, id, hb)); };

    out.guarded("series", "series.order" + tag, c.tol.series_order, [&] {
        const ModelSpec spec = spec_at();
        double worst = 0.0;
        for (double x : interior_samples(spec, 50)) {
            for (int n = 1; n <= 8; ++n) worst = std::max(worst, order_n_residual(n, x, spec.a(), spec).relative());
        }
        out.add("series", "series.order" + tag, worst, c.tol.series_order, "n = 1..8 at 50 interior points");
    });
    out.guarded("series", "series.pair_sum" + tag, c.tol.series_pair, [&] {
        const ModelSpec spec = spec_at();
        double worst = 0.0;
        for (double x : interior_samples(spec, 50)) {
            for (int s = 2; s <= 8; ++s) {
                const double p = pair_sum(s, x, spec.a(), spec);
                // Scaled by the largest product in the sum: F_s can cancel internally.
                double scale = 0.0;
                for (int k = 0; k <= s; ++k) {
                    scale = std::max(scale, std::abs(series_term(k, x, spec.a(), spec) *
                                                     series_term(s - k, x, spec.a(), spec)));
                }
                const double target = s % 2 ? 0.0 : F_s(s, x, spec.a(), spec);
                worst = std::max(worst, std::abs(p - target) / scale);
            }
        }
        out.add("series", "series.pair_sum" + tag, worst, c.tol.series_pair, "s = 2..8 at 50 interior points, relative to the largest product W_k W_{s-k}");
    });
    out.guarded("series", "series.derivative" + tag, c.tol.series_derivative, [&] {
        const ModelSpec spec = spec_at();
        double worst = 0.0;
        for (double x : interior_samples(spec, 50)) {
            for (int n = 2; n <= 8; ++n) {
                for (int s = 2; s <= n; s += 2) {
                    worst = std::max(worst, derivative_identity_residual(n, s, x, spec.a(), spec).relative());
                }
            }
        }
        out.add("series", "series.derivative" + tag, worst, c.tol.series_derivative,
                "even s <= n <= 8 at 50 interior points");
    });

    const auto probe_x = [](const ModelSpec& spec) {
        return spec.domain.contains(1.0) ? 1.0 : spec.domain.midpoint();
    };
    out.guarded("series", "series.ratio" + tag, c.tol.series_ratio, [&] {
        const ModelSpec spec = spec_at();
        const double x = probe_x(spec);
        const auto rows = convergence_table(x, spec, 20);
        // Geometric mean of successive ratios over the span clear of round-off.
        const double floor = 1e-12 * rows.front().error;
        std::size_t last = 1;
        while (last + 1 < rows.size() && rows[last + 1].error > floor) ++last;
        const double measured = std::pow(rows[last].error / rows[1].error, 1.0 / double(last - 1));
        const double D = series_denominator(x, spec.a(), spec);
        const double expected = (hb / D) * (hb / D);
        out.add("series", "series.ratio" + tag, std::abs(measured / expected - 1.0), c.tol.series_ratio,
                "x = " + fmt(x) + ", ratio " + fmt(measured) + " vs (hbar/D)^2 = " + fmt(expected));
    });
    out.guarded("series", "series.resummation" + tag, c.tol.series_resummation, [&] {
        const ModelSpec spec = spec_at();
        const double x = probe_x(spec);
        out.add("series", "series.resummation" + tag, partial_sum_error(20, x, spec), c.tol.series_resummation,
                "N = 20 partial sum against the closed form at x = " + fmt(x));
    });
}

void run_spectrum(const SuiteConfig& c, ModelId id, double hb, Collector& out) {
    const std::string check = "table" + hbar_tag(hb);
    out.guarded("spectrum", check, c.tol.table, [&] {
        const ModelSpec spec = build_model(id, params_for(c, id, hb));
        const int top = std::min(5, validity_limit(spec));
        double worst = 0.0;
        std::string mismatches;
        for (int n = 0; n <= top; ++n) {
            const TableCheck t = table_cross_check(spec, n);
            worst = std::max(worst, t.rel_diff);
            if (!t.match) {
                mismatches += (mismatches.empty() ? "" : "; ") + std::string("E_") + std::to_string(n) +
                              ": printed " + fmt(t.printed) + " vs g-difference " + fmt(t.g_difference);
            }
        }
        out.add("spectrum", check, worst, c.tol.table, "n = 0.." + std::to_string(top));
        if (!mismatches.empty()) {
            CheckReport& r = out.reports().back();
            r.status = "table_mismatch";
            r.details = "TableMismatch: " + mismatches;
        }
    });
}

void run_numeric(const SuiteConfig& c, ModelId id, double hb, Collector& out) {
    const bool eigen = wants(c, "eigen");
    const bool wave = wants(c, "wavefunction");
    const std::string tag = hbar_tag(hb);
    ModelSpec spec;
    EigenSolution sol;
    try {
        spec = build_model(id, params_for(c, id, hb));
        sol = solve_levels(spec, std::max(c.n_max, wave ? 3 : 0), c.grid);
    } catch (const std::exception& e) {
        if (eigen) out.error("eigen", "eigen" + tag, c.tol.eigen, e.what());
        if (wave) out.error("wavefunction", "wave" + tag, c.tol.overlap, e.what());
        return;
    }

    if (eigen) {
        out.guarded("eigen", "eigen" + tag, c.tol.eigen, [&] {
            const int wanted = std::min(c.n_max, validity_limit(spec));
            double worst = 0.0;
            std::string notes;
            for (int n = 0; n <= wanted; ++n) {
                if (std::size_t(n) >= sol.eigenvalues.size()) {
                    worst = std::numeric_limits<double>::infinity();
                    notes += " level " + std::to_string(n) + " not resolved;";
                    continue;
                }
                const double exact = energy_level(spec, n);
                worst = std::max(worst, std::abs(sol.eigenvalues[n] - exact) / (1.0 + std::abs(exact)));
                if (count_nodes(sol.eigenvectors[n]) != n) {
                    worst = std::numeric_limits<double>::infinity();
                    notes += " level " + std::to_string(n) + " has the wrong node count;";
                }
            }
            out.add("eigen", "eigen" + tag, worst, c.tol.eigen,
                    "n = 0.." + std::to_string(wanted) + ", |E_num - E| / (1 + |E|), " +
                        std::to_string(sol.level_points.back()) + " nodes" + notes);
        });
    }
    if (!wave) return;

    const WaveGrid grid = grid_of(sol);
    const int top = std::min<int>(3, int(sol.eigenvectors.size()) - 1);
    out.guarded("wavefunction", "wave.annihilation" + tag, c.tol.annihilation, [&] {
        const GridFunction psi0 = ground_state(spec, grid);
        const GridFunction am = apply_ladder(spec, LadderSign::Minus, psi0);
        const IndexRange r = support_range(spec, psi0);
        out.add("wavefunction", "wave.annihilation" + tag, am.sup_norm(r.begin, r.end) / psi0.sup_norm(),
                c.tol.annihilation, "sup |A- psi_0| / sup |psi_0|");
    });
    out.guarded("wavefunction", "wave.overlap" + tag, c.tol.overlap, [&] {
        double worst = 0.0;
        for (int n = 0; n <= top; ++n) {
            const GridFunction psi = ladder_state(spec, n, grid);
            const GridFunction& ref = sol.eigenvectors[n];
            worst = std::max(worst, 1.0 - overlap(spec, psi, ref, support_range(spec, ref)));
        }
        out.add("wavefunction", "wave.overlap" + tag, worst, c.tol.overlap,
                "1 - |<ladder, eigenvector>| for n = 0.." + std::to_string(top));
    });
    out.guarded("wavefunction", "wave.boundary" + tag, 0.0, [&] {
        int failures = 0;
        std::string notes;
        for (int n = 0; n <= top; ++n) {
            for (const GridFunction& psi : {ladder_state(spec, n, grid), sol.eigenvectors[n]}) {
                const BoundaryPair b = boundary_check(spec, psi);
                for (const BoundaryReport* e : {&b.lower, &b.upper}) {
                    const int bad = int(!e->square_integrable) + int(!e->hermiticity_ok);
                    if (bad) notes += " n=" + std::to_string(n) + " " + e->details + ";";
                    failures += bad;
                }
            }
        }
        out.add("wavefunction", "wave.boundary" + tag, failures, 0.0,
                "failed end conditions over ladder and eigensolver states n = 0.." + std::to_string(top) + notes);
    });
    out.guarded("wavefunction", "wave.intertwining" + tag, c.tol.intertwining, [&] {
        const IntertwiningResult r = intertwining_residual(spec, grid);
        out.add("wavefunction", "wave.intertwining" + tag, r.relative(), c.tol.intertwining,
                "max |A- H- phi - H+ A- phi| / max term");
    });
}

void run_conventions(const SuiteConfig& c, ModelId id, double hb, Collector& out) {
    const std::string tag = hbar_tag(hb);
    if (has_explicit_hbar(id)) {
        for (const char* k : {"conventions.round_trip", "conventions.potential", "conventions.energy"}) {
            out.not_applicable("conventions", k + tag, 0.0, "no older-convention entry");
        }
        return;
    }
    const auto spec_at = [&] { return build_model(id, params_for(c, id, hb)); };
    out.guarded("conventions", "conventions.round_trip" + tag, c.tol.round_trip, [&] {
        out.add("conventions", "conventions.round_trip" + tag, round_trip_error(spec_at()), c.tol.round_trip,
                "from_barred(to_barred(p)) against p");
    });
    out.guarded("conventions", "conventions.potential" + tag, c.tol.potential_relation, [&] {
        const ModelSpec spec = spec_at();
        double worst = 0.0;
        for (double x : interior_samples(spec, 50)) {
            worst = std::max(worst,
                             std::abs(check_potential_relation(spec, x)) / (1.0 + std::abs(table_potential(spec, x))));
        }
        out.add("conventions", "conventions.potential" + tag, worst, c.tol.potential_relation,
                "|V - scale V-bar| / (1 + |V|) at 50 interior points");
    });
    out.guarded("conventions", "conventions.energy" + tag, c.tol.energy_relation, [&] {
        const ModelSpec spec = spec_at();
        const int top = std::min(3, validity_limit(spec));
        double worst = 0.0;
        for (int n = 1; n <= top; ++n) {
            worst = std::max(worst, std::abs(check_energy_relation(spec, n)) / (1.0 + std::abs(energy_level(spec, n))));
        }
        out.add("conventions", "conventions.energy" + tag, worst, c.tol.energy_relation,
                "(E_n - E_0) against scale (E-bar_n - E-bar_0), n <= " + std::to_string(top));
    });
}

std::vector<double> hbars_for(const SuiteConfig& c, ModelId id, const std::vector<double>& list) {
    const auto it = c.overrides.find(id);
    if (it != c.overrides.end() && it->second.hbar) return {*it->second.hbar};
    return list;
}

std::vector<CheckReport> run_model(const SuiteConfig& c, ModelId id) {
    Collector out(id);
    for (double hb : hbars_for(c, id, c.hbar)) {
        if (wants(c, "dsi")) run_dsi(c, id, hb, out);
        if (wants(c, "conditions")) run_conditions(c, id, hb, out);
        if (wants(c, "conventions")) run_conventions(c, id, hb, out);
    }
    for (double hb : hbars_for(c, id, c.numeric_hbar)) {
        if (wants(c, "series")) run_series(c, id, hb, out);
        if (wants(c, "spectrum")) run_spectrum(c, id, hb, out);
        if (wants(c, "eigen") || wants(c, "wavefunction")) run_numeric(c, id, hb, out);
    }
    return std::move(out.reports());
}

ordered_json to_json(const CheckReport& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["model"] = std::string(to_string(r.model));
    j["check"] = r.check;
    j["max_residual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["status"] = r.status;
    j["details"] = r.details;
    return j;
}

std::string csv_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return json(v).dump();  // shortest round-trip form
}

}  // namespace

void set_tolerance(Tolerances& tol, const std::string& name, double value) {
    const auto* e = std::find_if(std::begin(kTolEntries), std::end(kTolEntries),
                                 [&](const TolEntry& te) { return name == te.name; });
    if (e == std::end(kTolEntries)) config_error("unknown tolerance '" + name + "'");
    if (!(value > 0.0)) config_error("tolerance '" + name + "' must be positive");
    tol.*(e->field) = value;
}

SuiteConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    check_keys(j,
               {"models", "checks", "hbar", "identity_hbar", "numeric_hbar", "overrides", "n_max", "grid",
                "tolerances", "inject", "strict_tables", "threads", "output"},
               "config");
    SuiteConfig c;
    if (j.contains("models")) {
        const auto names = name_list(j["models"], "models");
        c.models.clear();
        if (names.size() == 1 && names[0] == "all") {
            c.models.assign(kAllModels.begin(), kAllModels.end());
        } else {
            for (const auto& n : names) c.models.push_back(parse_model(n));
        }
    }
    if (j.contains("checks")) {
        const auto names = name_list(j["checks"], "checks");
        if (names.size() == 1 && names[0] == "all") {
            c.checks = kAllChecks;
        } else {
            c.checks = names;
        }
    }
    if (j.contains("hbar")) c.hbar = c.numeric_hbar = number_list(j["hbar"], "hbar");
    if (j.contains("identity_hbar")) c.hbar = number_list(j["identity_hbar"], "identity_hbar");
    if (j.contains("numeric_hbar")) c.numeric_hbar = number_list(j["numeric_hbar"], "numeric_hbar");
    if (j.contains("overrides")) {
        if (!j["overrides"].is_object()) config_error("overrides must be an object keyed by model");
        for (const auto& [name, obj] : j["overrides"].items()) {
            c.overrides[parse_model(name)] = parse_override(obj, "overrides." + name);
        }
    }
    if (j.contains("n_max")) {
        if (!j["n_max"].is_number_integer()) config_error("n_max must be an integer");
        c.n_max = j["n_max"].get<int>();
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, {"n_points", "truncation_tol", "initial_extent", "max_extensions", "extrapolate", "tolerance"},
                   "grid");
        if (g.contains("n_points")) c.grid.n_points = g["n_points"].get<std::size_t>();
        if (g.contains("truncation_tol")) c.grid.truncation_tol = g["truncation_tol"].get<double>();
        if (g.contains("initial_extent")) c.grid.initial_extent = g["initial_extent"].get<double>();
        if (g.contains("max_extensions")) c.grid.max_extensions = g["max_extensions"].get<int>();
        if (g.contains("extrapolate")) c.grid.extrapolate = g["extrapolate"].get<bool>();
        if (g.contains("tolerance")) c.grid.tolerance = g["tolerance"].get<double>();
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) config_error("tolerances must be an object");
        for (const auto& [name, value] : t.items()) {
            if (!value.is_number()) config_error("tolerance '" + name + "' must be a number");
            set_tolerance(c.tol, name, value.get<double>());
        }
    }
    if (j.contains("inject")) {
        const json& in = j["inject"];
        check_keys(in, {"models", "g_offset"}, "inject");
        if (in.contains("models")) {
            for (const auto& n : name_list(in["models"], "inject.models")) c.inject_models.push_back(parse_model(n));
        }
        if (in.contains("g_offset")) c.inject_g_offset = in["g_offset"].get<double>();
    }
    if (j.contains("strict_tables")) c.strict_tables = j["strict_tables"].get<bool>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    if (j.contains("output")) {
        const json& o = j["output"];
        check_keys(o, {"path", "format"}, "output");
        if (o.contains("path")) c.out_path = o["path"].get<std::string>();
        if (o.contains("format")) c.format = o["format"].get<std::string>();
    }
    validate(c);
    return c;
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const json::exception& e) {
        config_error(std::string("bad value type: ") + e.what());
    }
}

void validate(const SuiteConfig& c) {
    if (c.models.empty()) config_error("no models selected");
    if (c.checks.empty()) config_error("no checks selected");
    for (const auto& k : c.checks) {
        if (std::find(kAllChecks.begin(), kAllChecks.end(), k) == kAllChecks.end()) {
            config_error("unknown check '" + k + "'");
        }
    }
    for (const auto* list : {&c.hbar, &c.numeric_hbar}) {
        if (list->empty()) config_error("hbar list is empty");
        for (double h : *list) {
            if (!(h > 0.0) || !std::isfinite(h)) config_error("hbar values must be positive");
        }
    }
    for (const auto& e : kTolEntries) {
        if (!(c.tol.*(e.field) > 0.0)) config_error(std::string("tolerance '") + e.name + "' must be positive");
    }
    if (c.n_max < 0) config_error("n_max must be >= 0");
    if (c.grid.n_points < GridFunction::kMinPoints) config_error("grid.n_points must be >= 16");
    if (!(c.grid.truncation_tol > 0.0) || !(c.grid.tolerance > 0.0) || !(c.grid.initial_extent > 0.0)) {
        config_error("grid tolerances and extent must be positive");
    }
    if (c.grid.max_extensions < 0) config_error("grid.max_extensions must be >= 0");
    if (c.threads < 0) config_error("threads must be >= 0");
    parse_format(c.format);
}

RawParams params_for(const SuiteConfig& config, ModelId id, double hbar) {
    RawParams r = reference_params_at_hbar(id, hbar);
    const auto it = config.overrides.find(id);
    if (it == config.overrides.end()) return r;
    const ParamOverride& o = it->second;
    if (o.hbar) r.hbar = *o.hbar;
    if (o.A) r.A = *o.A;
    if (o.B) r.B = *o.B;
    if (o.omega) r.omega = *o.omega;
    if (o.e2) r.e2 = *o.e2;
    if (o.d) r.d = *o.d;
    if (o.alpha) r.alpha = *o.alpha;
    if (o.beta) r.beta = *o.beta;
    if (o.lambda) r.lambda = *o.lambda;
    if (o.l) r.l = *o.l;
    return r;
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
    validate(config);
    std::vector<ModelId> models = config.models;
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(models.size(), config.threads > 0 ? config.threads : hw);
    std::vector<std::vector<CheckReport>> parts(models.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < models.size(); i = next++) parts[i] = run_model(config, models[i]);
        }));
    }
    for (auto& f : pool) f.get();

    std::vector<CheckReport> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::stable_sort(all.begin(), all.end(), [](const CheckReport& a, const CheckReport& b) {
        return std::tie(a.model, a.check) < std::tie(b.model, b.check);
    });
    return all;
}

bool all_passed(const std::vector<CheckReport>& reports, bool strict_tables) {
    return std::all_of(reports.begin(), reports.end(), [&](const CheckReport& r) {
        if (r.status == "table_mismatch") return !strict_tables;
        return r.pass;
    });
}

ReportFormat parse_format(const std::string& name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw Error(ErrorKind::ConfigError, "unknown format '" + name + "' (json, csv or text)");
}

void write_report(std::ostream& os, const std::vector<CheckReport>& reports, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: {
            ordered_json arr = ordered_json::array();
            for (const auto& r : reports) arr.push_back(to_json(r));
            os << arr.dump(2) << '\n';
            break;
        }
        case ReportFormat::Csv:
            os << kCsvHeader << '\n';
            for (const auto& r : reports) {
                os << r.suite << ',' << to_string(r.model) << ',' << r.check << ',' << csv_number(r.max_residual)
                   << ',' << csv_number(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
            }
            break;
        case ReportFormat::Text: {
            std::size_t failed = 0, mismatched = 0;
            for (const auto& r : reports) {
                char line[256];
                std::snprintf(line, sizeof line, "%-14s %-10s %-32s %-14s %11.3e <= %9.2e\n", r.status.c_str(),
                              std::string(to_string(r.model)).c_str(), r.check.c_str(), r.suite.c_str(),
                              r.max_residual, r.tolerance);
                os << line;
                if (!r.pass && r.status != "table_mismatch") ++failed;
                if (r.status == "table_mismatch") {
                    ++mismatched;
                    os << "    " << r.details << '\n';
                } else if (r.status == "error") {
                    os << "    " << r.details << '\n';
                }
            }
            os << reports.size() << " checks, " << failed << " failed, " << mismatched
               << " printed-table mismatches\n";
            break;
        }
    }
}

void emit_report(const std::vector<CheckReport>& reports, ReportFormat format, const std::string& path,
                 double seconds) {
    if (reports.empty()) throw Error(ErrorKind::IoError, "no reports to write");
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
        write_report(out, reports, format);
        if (!out) throw Error(ErrorKind::IoError, "write to " + path + " failed");
    }
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    ordered_json meta;
    meta["report"] = path;
    meta["generated_at"] = stamp;
    meta["wall_seconds"] = seconds;
    meta["checks"] = reports.size();
    std::ofstream side(path + ".meta.json");
    if (!side) throw Error(ErrorKind::IoError, "cannot open " + path + ".meta.json for writing");
    side << meta.dump(2) << '\n';
}

}  // namespace dsusy

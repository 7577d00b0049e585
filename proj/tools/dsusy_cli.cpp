// Command-line front end: runs verification suites and writes reports and plot data.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "dsusy/conventions.hpp"
#include "dsusy/eigensolver.hpp"
#include "dsusy/error.hpp"
#include "dsusy/hbar_series.hpp"
#include "dsusy/report.hpp"
#include "dsusy/spectrum.hpp"

namespace {

using namespace dsusy;
namespace fs = std::filesystem;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string config_path;
    std::vector<std::string> models;
    bool all = false;
    std::vector<double> hbar;
    int n_max = -1;
    std::size_t grid_points = 0;
    std::vector<std::string> tol;
    std::vector<std::string> checks;
    std::string out;
    std::string format;
    std::string plot_dir;
    double inject_offset = 0.0;
    std::vector<std::string> inject_models;
    bool strict_tables = false;
    int threads = -1;
};

void add_suite_options(CLI::App* cmd, Options& o, bool with_checks) {
    cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--model", o.models, "model id (repeatable)");
    cmd->add_flag("--all", o.all, "every catalog model (the default)");
    cmd->add_option("--hbar", o.hbar, "hbar values for every check")->delimiter(',');
    cmd->add_option("--n-max", o.n_max, "highest level for eigen checks");
    cmd->add_option("--grid", o.grid_points, "interior nodes of the coarsest eigensolver grid");
    cmd->add_option("--tol", o.tol, "tolerance override name=value (repeatable)");
    if (with_checks) cmd->add_option("--check", o.checks, "restrict to these checks")->delimiter(',');
    cmd->add_option("--out", o.out, "report file (stdout when omitted)");
    cmd->add_option("--format", o.format, "json, csv or text");
    cmd->add_option("--plot-dir", o.plot_dir, "directory for two-column .dat plot data");
    cmd->add_option("--inject-g-offset", o.inject_offset, "add this to g(a) in the dsi check (negative control)");
    cmd->add_option("--inject-model", o.inject_models, "models receiving the injected offset (default: all)");
    cmd->add_flag("--strict-tables", o.strict_tables, "count printed-table mismatches as failures");
    cmd->add_option("--threads", o.threads, "worker threads, 0 for hardware concurrency");
}

ModelId model_or_throw(const std::string& name) {
    const auto id = model_from_string(name);
    if (!id) throw Error(ErrorKind::ConfigError, "unknown model '" + name + "'");
    return *id;
}

SuiteConfig build_config(const Options& o, std::vector<std::string> default_checks) {
    SuiteConfig c = o.config_path.empty() ? SuiteConfig{} : load_config(o.config_path);
    if (!default_checks.empty()) c.checks = std::move(default_checks);
    if (!o.checks.empty()) c.checks = o.checks;
    if (!o.models.empty() && !o.all) {
        c.models.clear();
        for (const auto& m : o.models) c.models.push_back(model_or_throw(m));
    } else if (o.all) {
        c.models.assign(kAllModels.begin(), kAllModels.end());
    }
    if (!o.hbar.empty()) c.hbar = c.numeric_hbar = o.hbar;
    if (o.n_max >= 0) c.n_max = o.n_max;
    if (o.grid_points > 0) c.grid.n_points = o.grid_points;
    for (const auto& kv : o.tol) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::ConfigError, "--tol expects name=value, got " + kv);
        double value = 0.0;
        try {
            value = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ConfigError, "--tol value is not a number: " + kv);
        }
        set_tolerance(c.tol, kv.substr(0, eq), value);
    }
    if (o.inject_offset != 0.0) {
        c.inject_g_offset = o.inject_offset;
        c.inject_models.clear();
        if (o.inject_models.empty()) {
            c.inject_models.assign(kAllModels.begin(), kAllModels.end());
        } else {
            for (const auto& m : o.inject_models) c.inject_models.push_back(model_or_throw(m));
        }
    }
    if (o.strict_tables) c.strict_tables = true;
    if (o.threads >= 0) c.threads = o.threads;
    if (!o.out.empty()) c.out_path = o.out;
    if (!o.format.empty()) c.format = o.format;
    validate(c);
    return c;
}

std::string dat_name(ModelId id, const std::string& what, double hbar) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_hbar%g.dat", hbar);
    return std::string(to_string(id)) + "_" + what + buf;
}

std::ofstream open_dat(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + (dir / name).string());
    out.precision(17);
    return out;
}

void plot_spectrum(const SuiteConfig& c, const fs::path& dir) {
    for (ModelId id : c.models) {
        for (double hb : c.numeric_hbar) {
            try {
                const ModelSpec spec = build_model(id, params_for(c, id, hb));
                const SpectrumResult s = compute_spectrum(spec, c.n_max);
                auto out = open_dat(dir, dat_name(id, "levels", hb));
                out << "# n E_n^(-)\n";
                for (const auto& l : s.levels) out << l.n << ' ' << l.e_minus << '\n';
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::IoError) throw;
                std::cerr << to_string(id) << ": " << e.what() << '\n';
            }
        }
    }
}

void plot_eigen(const SuiteConfig& c, const fs::path& dir) {
    for (ModelId id : c.models) {
        for (double hb : c.numeric_hbar) {
            try {
                const ModelSpec spec = build_model(id, params_for(c, id, hb));
                const EigenSolution sol = solve_levels(spec, c.n_max, c.grid);
                for (std::size_t n = 0; n < sol.eigenvectors.size(); ++n) {
                    auto out = open_dat(dir, dat_name(id, "psi" + std::to_string(n), hb));
                    write_eigenvector(out, spec, sol.eigenvectors[n], Coordinate::X);
                }
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::IoError) throw;
                std::cerr << to_string(id) << ": " << e.what() << '\n';
            }
        }
    }
}

void plot_series(const SuiteConfig& c, const fs::path& dir) {
    for (ModelId id : c.models) {
        if (!has_explicit_hbar(id)) continue;
        for (double hb : c.numeric_hbar) {
            try {
                const ModelSpec spec = build_model(id, params_for(c, id, hb));
                const double x = spec.domain.contains(1.0) ? 1.0 : spec.domain.midpoint();
                auto out = open_dat(dir, dat_name(id, "series_error", hb));
                out << "# N |partial sum - closed form| at x = " << x << '\n';
                for (const auto& row : convergence_table(x, spec, 20)) out << row.N << ' ' << row.error << '\n';
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::IoError) throw;
                std::cerr << to_string(id) << ": " << e.what() << '\n';
            }
        }
    }
}

int run_and_emit(const SuiteConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    const auto reports = run_suite(c);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const ReportFormat fmt = parse_format(c.format);
    if (reports.empty()) {
        std::cerr << "no checks apply to the selected models\n";
        return kExitUsage;
    }
    if (c.out_path.empty()) {
        write_report(std::cout, reports, fmt);
    } else {
        emit_report(reports, fmt, c.out_path, seconds);
    }
    return all_passed(reports, c.strict_tables) ? kExitPass : kExitFail;
}

int print_catalog(const std::string& format) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : list_catalog()) {
        const RawParams& r = e.reference;
        nlohmann::ordered_json j;
        j["model"] = std::string(to_string(e.id));
        j["hbar"] = r.hbar;
        j["A"] = r.A;
        j["B"] = r.B;
        j["omega"] = r.omega;
        j["l"] = r.l;
        j["e2"] = r.e2;
        j["d"] = r.d;
        j["alpha"] = r.alpha;
        j["beta"] = r.beta;
        j["lambda"] = r.lambda;
        const ModelSpec spec = build_model(e.id, r);
        j["a"] = spec.a();
        j["b"] = spec.b();
        j["domain"] = {spec.domain.x1, spec.domain.x2};
        arr.push_back(std::move(j));
    }
    if (format == "json" || format.empty()) {
        std::cout << arr.dump(2) << '\n';
    } else if (format == "text") {
        for (const auto& j : arr) {
            std::cout << j["model"].get<std::string>() << "  a=" << j["a"].get<double>()
                      << "  b=" << j["b"].get<double>() << "  domain=(" << j["domain"][0].get<double>() << ", "
                      << j["domain"][1].get<double>() << ")\n";
        }
    } else {
        throw Error(ErrorKind::ConfigError, "catalog supports json or text output");
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed shape-invariance verification toolkit"};
    app.require_subcommand(1);

    Options o;
    std::string catalog_format = "json";
    auto* catalog = app.add_subcommand("catalog", "list the model families and reference parameters");
    catalog->add_option("--format", catalog_format, "json or text");

    struct Sub {
        const char* name;
        const char* help;
        std::vector<std::string> checks;
        bool with_checks;
    };
    const std::vector<Sub> subs = {
        {"verify", "run the verification suites", {}, true},
        {"spectrum", "algebraic spectra and printed-table cross-check", {"spectrum"}, false},
        {"eigen", "eigensolver comparison against the algebraic spectra", {"eigen"}, false},
        {"series", "hbar-series identities of the rational extension", {"series"}, false},
        {"conventions", "translation to the older conventions", {"conventions"}, false},
        {"report", "full suite written to a report file with a metadata sidecar", {}, true},
    };
    std::map<const CLI::App*, const Sub*> by_cmd;
    for (const Sub& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.help);
        add_suite_options(cmd, o, s.with_checks);
        by_cmd[cmd] = &s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (catalog->parsed()) return print_catalog(catalog_format);
        for (const auto& [cmd, sub] : by_cmd) {
            if (!cmd->parsed()) continue;
            SuiteConfig c = build_config(o, sub->checks);
            if (std::string(sub->name) == "report" && c.out_path.empty()) c.out_path = "report." + c.format;
            if (!o.plot_dir.empty()) {
                const fs::path dir = o.plot_dir;
                const auto has = [&](const char* k) {
                    return std::find(c.checks.begin(), c.checks.end(), k) != c.checks.end();
                };
                if (has("spectrum")) plot_spectrum(c, dir);
                if (has("eigen")) plot_eigen(c, dir);
                if (has("series")) plot_series(c, dir);
            }
            return run_and_emit(c);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

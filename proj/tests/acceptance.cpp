// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "dsusy/conventions.hpp"
#include "dsusy/dsi_verifier.hpp"
#include "dsusy/eigensolver.hpp"
#include "dsusy/error.hpp"
#include "dsusy/hbar_series.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"
#include "dsusy/wavefunction_lab.hpp"

#ifndef DSUSY_CLI_PATH
#error "DSUSY_CLI_PATH must name the CLI executable"
#endif

using namespace dsusy;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

class Criterion {
public:
    Criterion(int id, std::string title, double budget_s) : id_(id), title_(std::move(title)), budget_(budget_s) {}

    bool run(const std::function<Outcome()>& body) const {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = budget_ <= 0.0 || s < budget_;
        const bool ok = o.pass && in_time;
        std::printf("[%s] criterion %d: %s | %s | %.2f s", ok ? "PASS" : "FAIL", id_, title_.c_str(),
                    o.summary.c_str(), s);
        if (budget_ > 0.0) std::printf(" (budget %.0f s%s)", budget_, in_time ? "" : ", EXCEEDED");
        std::printf("\n");
        std::fflush(stdout);
        return ok;
    }

private:
    int id_;
    std::string title_;
    double budget_;
};

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

ModelSpec at_hbar(ModelId id, double hb) { return build_model(id, reference_params_at_hbar(id, hb)); }

template <class Fn>
auto per_model(Fn fn) {
    using R = decltype(fn(ModelId::PT));
    std::vector<std::future<R>> jobs;
    for (ModelId id : kAllModels) jobs.push_back(std::async(std::launch::async, fn, id));
    std::vector<R> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

Outcome dsi_identity() {
    double worst = 0.0;
    for (ModelId id : kAllModels) {
        for (double hb : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, scan_identity(at_hbar(id, hb), Identity::Dsi, 200).max_relative);
        }
    }
    return {worst < 1e-11, "max relative residual " + sci(worst) + " < 1e-11 (11 models x 3 hbar x 200 points)"};
}

Outcome reductions() {
    double c1 = 0.0, c2 = 0.0;
    for (ModelId id : kAllModels) {
        if (has_explicit_hbar(id)) continue;
        const ModelSpec s = at_hbar(id, 1.0);
        c1 = std::max(c1, scan_identity(s, Identity::Condition1, 200).max_relative);
        c2 = std::max(c2, scan_identity(s, Identity::Condition2, 200).max_relative);
    }
    return {c1 < 1e-12 && c2 < 1e-13,
            "condition 1 " + sci(c1) + " < 1e-12, condition 2 " + sci(c2) + " < 1e-13 (relative to scale)"};
}

struct EigenRun {
    ModelId id;
    ModelSpec spec;
    EigenSolution sol;
    std::string error;
};

std::vector<EigenRun> eigen_runs;

Outcome spectrum_oracle() {
    eigen_runs = per_model([](ModelId id) {
        EigenRun r{id, at_hbar(id, 1.0), {}, {}};
        try {
            r.sol = solve_levels(r.spec, 4);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        return r;
    });
    double worst = 0.0;
    std::string notes;
    bool ok = true;
    double pt_e1 = kInf, ext_e1 = kInf;
    for (const auto& r : eigen_runs) {
        if (!r.error.empty() || r.sol.eigenvalues.size() < 5) {
            ok = false;
            notes += " " + std::string(to_string(r.id)) + ": " + (r.error.empty() ? "fewer than 5 levels" : r.error);
            continue;
        }
        for (int n = 0; n <= 4; ++n) {
            const double exact = energy_level(r.spec, n);
            worst = std::max(worst, std::abs(r.sol.eigenvalues[n] - exact) / (1.0 + std::abs(exact)));
        }
        if (r.id == ModelId::PT) pt_e1 = r.sol.eigenvalues[1];
        if (r.id == ModelId::DRHO_EXT1) ext_e1 = r.sol.eigenvalues[1];
    }
    const double pt_target = 4.0 + 2.0 * std::sqrt(3.0);
    const double pt_rel = std::abs(pt_e1 - pt_target) / pt_target;
    const double ext_rel = std::abs(ext_e1 - 6.0) / 6.0;
    ok = ok && worst <= 1e-6 && pt_rel <= 1e-6 && ext_rel <= 1e-6;
    return {ok, "max |E_num - E|/(1+|E|) " + sci(worst) + " <= 1e-6 for n <= 4; PT E1 rel " + sci(pt_rel) +
                    ", DRHO_EXT1 E1 rel " + sci(ext_rel) + notes};
}

Outcome table_check() {
    bool ok = true;
    std::string mismatches;
    double worst_matching = 0.0;
    for (ModelId id : kAllModels) {
        const ModelSpec s = at_hbar(id, 1.0);
        const int top = std::min(5, validity_limit(s));
        for (int n = 0; n <= top; ++n) {
            const TableCheck t = table_cross_check(s, n);
            if (t.match) {
                worst_matching = std::max(worst_matching, t.rel_diff);
                continue;
            }
            // A disagreement must surface as a TableMismatch naming the entry.
            try {
                energy_level_strict(s, n);
                ok = false;
            } catch (const Error& e) {
                const std::string what = e.what();
                const bool named = e.kind() == ErrorKind::TableMismatch &&
                                   what.find(std::string(to_string(id))) != std::string::npos &&
                                   what.find("E_" + std::to_string(n) + " ") != std::string::npos;
                ok = ok && named;
                if (mismatches.find(std::string(to_string(id))) == std::string::npos) {
                    mismatches += std::string(mismatches.empty() ? "" : ", ") + std::string(to_string(id));
                }
            }
        }
    }
    return {ok && worst_matching <= 1e-10, "agreeing entries within " + sci(worst_matching) +
                                               " <= 1e-10; TableMismatch reported for " +
                                               (mismatches.empty() ? std::string("none") : mismatches)};
}

Outcome series_suite() {
    const ModelSpec s = at_hbar(ModelId::DRHO_EXT1, 1.0);
    const double a = s.a();
    double order = 0.0, pair = 0.0;
    for (double x : interior_samples(s, 50)) {
        for (int n = 1; n <= 8; ++n) order = std::max(order, order_n_residual(n, x, a, s).relative());
        for (int k = 2; k <= 8; k += 2) {
            double scale = 0.0;
            for (int j = 0; j <= k; ++j) scale = std::max(scale, std::abs(series_term(j, x, a, s) * series_term(k - j, x, a, s)));
            pair = std::max(pair, std::abs(pair_sum(k, x, a, s) - F_s(k, x, a, s)) / scale);
        }
    }
    const double x = 1.0;
    const double D = series_denominator(x, a, s);
    const double expected = 1.0 / (D * D);
    double ratio_dev = 0.0;
    for (int N = 0; N <= 8; N += 2) {
        const double r = partial_sum_error(N + 2, x, s) / partial_sum_error(N, x, s);
        ratio_dev = std::max(ratio_dev, std::abs(r / expected - 1.0));
    }
    const double tail = partial_sum_error(20, x, s);
    const bool ok = order < 1e-10 && pair < 1e-13 && ratio_dev <= 0.2 && tail < 1e-10;
    return {ok, "order-n " + sci(order) + " < 1e-10; pair sums " + sci(pair) + " < 1e-13; ratio within " +
                    sci(100.0 * ratio_dev) + "% of (hbar/D)^2; N=20 error " + sci(tail) + " < 1e-10"};
}

struct WaveRun {
    ModelId id;
    double annihilation = kInf;
    double overlap_gap = kInf;
    int boundary_failures = 0;
    double intertwining = kInf;
    std::string error;
};

Outcome wavefunction_suite() {
    const auto runs = per_model([](ModelId id) {
        WaveRun w{id};
        const EigenRun* er = nullptr;
        for (const auto& r : eigen_runs) {
            if (r.id == id) er = &r;
        }
        try {
            if (!er || !er->error.empty()) throw std::runtime_error("no eigensolver states");
            const ModelSpec& s = er->spec;
            const WaveGrid g = grid_of(er->sol);
            const GridFunction psi0 = ground_state(s, g);
            const IndexRange r0 = support_range(s, psi0);
            w.annihilation = apply_ladder(s, LadderSign::Minus, psi0).sup_norm(r0.begin, r0.end) / psi0.sup_norm();
            w.overlap_gap = 0.0;
            for (int n = 0; n <= 3; ++n) {
                const GridFunction lad = ladder_state(s, n, g);
                const GridFunction& ref = er->sol.eigenvectors[n];
                w.overlap_gap = std::max(w.overlap_gap, 1.0 - overlap(s, lad, ref, support_range(s, ref)));
                for (const GridFunction* psi : {&lad, &ref}) {
                    const BoundaryPair b = boundary_check(s, *psi);
                    w.boundary_failures += !b.ok();
                }
            }
            w.intertwining = intertwining_residual(s, g).relative();
        } catch (const std::exception& e) {
            w.error = e.what();
        }
        return w;
    });
    double ann = 0.0, gap = 0.0, inter = 0.0;
    int bfail = 0;
    std::string notes;
    for (const auto& w : runs) {
        ann = std::max(ann, w.annihilation);
        gap = std::max(gap, w.overlap_gap);
        inter = std::max(inter, w.intertwining);
        bfail += w.boundary_failures;
        if (!w.error.empty()) notes += " " + std::string(to_string(w.id)) + ": " + w.error;
    }
    const bool ok = ann < 1e-8 && gap <= 1e-6 && bfail == 0 && inter < 1e-6 && notes.empty();
    return {ok, "annihilation " + sci(ann) + " < 1e-8; 1 - overlap " + sci(gap) + " <= 1e-6 (n <= 3); " +
                    std::to_string(bfail) + " boundary failures over 88 states; intertwining " + sci(inter) +
                    " < 1e-6" + notes};
}

Outcome appendix_maps() {
    double trip = 0.0, pot = 0.0;
    for (ModelId id : kAllModels) {
        if (has_explicit_hbar(id)) continue;
        for (double hb : {0.5, 1.0, 2.0}) {
            const ModelSpec s = at_hbar(id, hb);
            trip = std::max(trip, round_trip_error(s));
            for (double x : interior_samples(s, 50)) {
                pot = std::max(pot, std::abs(check_potential_relation(s, x)) / (1.0 + std::abs(table_potential(s, x))));
            }
        }
    }
    return {trip <= 1e-14 && pot < 1e-12,
            "round trip " + sci(trip) + " <= 1e-14; potential relation " + sci(pot) + " < 1e-12 (1 + |V|)"};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + DSUSY_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_contract() {
    const auto dir = std::filesystem::temp_directory_path() / "dsusy_acceptance";
    std::filesystem::create_directories(dir);
    const auto a = dir / "run_a.json", b = dir / "run_b.json";
    const int rc_a = run_cli("report --all --out " + a.string());
    const int rc_b = run_cli("report --all --out " + b.string());
    const std::string ja = slurp(a), jb = slurp(b);
    const bool identical = !ja.empty() && ja == jb;

    bool schema = false;
    std::size_t count = 0;
    try {
        const auto j = nlohmann::json::parse(ja);
        schema = j.is_array() && !j.empty();
        for (const auto& o : j) {
            for (const char* k : {"suite", "model", "check", "max_residual", "tolerance", "pass", "details"}) {
                schema = schema && o.contains(k);
            }
        }
        count = j.size();
    } catch (const std::exception&) {
        schema = false;
    }
    const int rc_inject = run_cli("verify --all --check dsi --inject-g-offset 1e-3 --inject-model PT --format csv");
    const int rc_usage = run_cli("verify --tol dsi=-1");
    const bool ok = rc_a == 0 && rc_b == 0 && identical && schema && rc_inject == 1 && rc_usage == 2;
    return {ok, std::string("full-suite JSON ") + (identical ? "byte-identical" : "DIFFERS") + " across runs (" +
                    std::to_string(count) + " reports, schema " + (schema ? "ok" : "BAD") + "); exit codes clean " +
                    std::to_string(rc_a) + ", injected failure " + std::to_string(rc_inject) + ", bad config " +
                    std::to_string(rc_usage)};
}

}  // namespace

int main() {
    bool ok = true;
    ok &= Criterion(1, "DSI identity, all models, hbar in {0.5, 1, 2}", 5).run(dsi_identity);
    ok &= Criterion(2, "hbar-independent reductions", 2).run(reductions);
    ok &= Criterion(3, "spectrum oracle", 30).run(spectrum_oracle);
    ok &= Criterion(4, "printed-table cross-check", 1).run(table_check);
    ok &= Criterion(5, "hbar-series relations", 2).run(series_suite);
    ok &= Criterion(6, "wavefunction suite", 20).run(wavefunction_suite);
    ok &= Criterion(7, "convention maps", 1).run(appendix_maps);
    ok &= Criterion(8, "CLI determinism and exit codes", 0).run(cli_contract);
    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return ok ? 0 : 1;
}

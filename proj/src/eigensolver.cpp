#include "dsusy/eigensolver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <ostream>

#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"

namespace dsusy {

namespace {

using Real = long double;

std::size_t count_below(std::span<const double> d, std::span<const double> e, Real x) {
    const Real tiny = LDBL_MIN * 1e10L;
    std::size_t count = 0;
    Real q = Real(d[0]) - x;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0) q = tiny;
        const Real off = e[i - 1];
        q = Real(d[i]) - x - off * off / q;
        if (q < 0) ++count;
    }
    return count;
}

void gershgorin(std::span<const double> d, std::span<const double> e, Real& lo, Real& hi) {
    lo = hi = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        Real r = 0;
        if (i > 0) r += std::abs(Real(e[i - 1]));
        if (i + 1 < d.size()) r += std::abs(Real(e[i]));
        lo = std::min(lo, Real(d[i]) - r);
        hi = std::max(hi, Real(d[i]) + r);
    }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> off,
                                            std::size_t k) {
    const std::size_t n = diag.size();
    k = std::min(k, n - 1);
    Real glo, ghi;
    gershgorin(diag, off, glo, ghi);
    std::vector<double> out;
    Real floor = glo;
    for (std::size_t j = 0; j <= k; ++j) {
        Real lo = floor, hi = ghi;
        for (int it = 0; it < 400; ++it) {
            const Real mid = 0.5L * (lo + hi);
            if (count_below(diag, off, mid) >= j + 1) {
                hi = mid;
            } else {
                lo = mid;
            }
            if (hi - lo <= 4 * LDBL_EPSILON * std::max(std::abs(lo), std::abs(hi))) break;
        }
        const Real lam = 0.5L * (lo + hi);
        out.push_back(double(lam));
        floor = lo;
    }
    return out;
}

std::vector<double> tridiagonal_eigenvector(std::span<const double> diag, std::span<const double> off,
                                            double eigenvalue) {
    const std::size_t n = diag.size();
    Real norm = 0;
    for (double v : diag) norm = std::max(norm, std::abs(Real(v)));
    const Real guard = LDBL_EPSILON * std::max(norm, Real(1));
    const Real sigma = eigenvalue;

    // LU of (T - sigma I) without pivoting, with tiny pivots nudged away from zero.
    std::vector<Real> piv(n), mult(n);
    piv[0] = Real(diag[0]) - sigma;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(piv[i - 1]) < guard) piv[i - 1] = piv[i - 1] < 0 ? -guard : guard;
        mult[i] = Real(off[i - 1]) / piv[i - 1];
        piv[i] = Real(diag[i]) - sigma - mult[i] * Real(off[i - 1]);
    }
    if (std::abs(piv[n - 1]) < guard) piv[n - 1] = guard;

    std::vector<Real> y(n, 1.0L);
    for (int iter = 0; iter < 3; ++iter) {
        for (std::size_t i = 1; i < n; ++i) y[i] -= mult[i] * y[i - 1];
        y[n - 1] /= piv[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) y[i] = (y[i] - Real(off[i]) * y[i + 1]) / piv[i];
        Real s = 0;
        for (Real v : y) s += v * v;
        s = std::sqrt(s);
        for (Real& v : y) v /= s;
    }
    // Leftmost significant lobe positive.
    Real peak = 0;
    for (Real v : y) peak = std::max(peak, std::abs(v));
    for (Real v : y) {
        if (std::abs(v) > 1e-3L * peak) {
            if (v < 0) {
                for (Real& w : y) w = -w;
            }
            break;
        }
    }
    return {y.begin(), y.end()};
}

namespace {

struct Level {
    std::vector<double> diag, off, x, f;
    double h = 0.0;
    Interval nodes;  // first and last interior node
};

Level discretize(const ModelSpec& spec, const CanonicalMap& map, Interval window, std::size_t n) {
    Level L;
    const double hb = spec.hbar();
    L.h = window.length() / double(n + 1);
    const double k = hb * hb / (L.h * L.h);
    L.diag.resize(n);
    L.off.assign(n - 1, -k);
    L.x.resize(n);
    L.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = window.x1 + double(i + 1) * L.h;
        L.x[i] = map.inverse(u);
        L.f[i] = map.f_at(u);
        L.diag[i] = 2.0 * k + partner_potential(spec, L.x[i], spec.a(), -1);
    }
    L.nodes = {window.x1 + L.h, window.x1 + double(n) * L.h};
    return L;
}

// Exponent of the h^p eigenvalue error from an inverse-square wall at a finite end.
std::optional<double> wall_exponent(const ModelSpec& spec, const CanonicalMap& map, double end,
                                    double inward, double length) {
    const double hb = spec.hbar();
    const auto q = [&](double delta) {
        const double x = map.inverse(end + inward * delta);
        return delta * delta * partner_potential(spec, x, spec.a(), -1);
    };
    const double d1 = 1e-6 * length;
    const double c = 3.0 * q(d1) - 3.0 * q(2.0 * d1) + q(3.0 * d1);
    const double disc = 0.25 + c / (hb * hb);
    if (!(disc > 0.0)) return std::nullopt;
    const double s = 0.5 + std::sqrt(disc);
    const double p = 2.0 * s - 1.0;
    if (std::abs(s - std::round(s)) < 1e-3) return std::nullopt;
    if (std::abs(p - 2.0) < 0.05 || std::abs(p - 4.0) < 0.05 || p <= 0.5 || p >= 5.9) return std::nullopt;
    return p;
}

// E(h) = E + sum_j c_j h^{p_j}; exact fit through len(p)+1 levels.
double extrapolate(std::span<const double> hs, std::span<const double> es, std::span<const double> ps) {
    const std::size_t m = ps.size() + 1;
    std::vector<std::vector<long double>> M(m, std::vector<long double>(m + 1));
    const long double href = hs[0];
    for (std::size_t r = 0; r < m; ++r) {
        M[r][0] = 1.0L;
        for (std::size_t j = 0; j < ps.size(); ++j) M[r][j + 1] = std::pow((long double)(hs[r]) / href, (long double)ps[j]);
        M[r][m] = es[r];
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < m; ++r) {
            if (std::abs(M[r][c]) > std::abs(M[p][c])) p = r;
        }
        std::swap(M[c], M[p]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c) continue;
            const long double fct = M[r][c] / M[c][c];
            for (std::size_t j = c; j <= m; ++j) M[r][j] -= fct * M[c][j];
        }
    }
    return double(M[0][m] / M[0][0]);
}

double edge_ratio(std::span<const double> v, bool lower) {
    double peak = 0.0;
    for (double a : v) peak = std::max(peak, std::abs(a));
    const double edge = lower ? std::abs(v.front()) : std::abs(v.back());
    return peak > 0.0 ? edge / peak : 1.0;
}

// Distance from `from` (moving by `dir`) at which the WKB tail of a level at
// energy e has decayed by exp(-target).  nullopt when the level is not bound
// within `cap`.
std::optional<double> wkb_end(const ModelSpec& spec, const CanonicalMap& map, double from, double dir,
                              double e, double step, double target, double cap) {
    const double hb = spec.hbar();
    double S = 0.0;
    for (double t = 0.0; t < cap; t += step) {
        const double x = map.inverse(from + dir * t);
        if (!std::isfinite(x)) return std::nullopt;
        const double V = partner_potential(spec, x, spec.a(), -1);
        if (!std::isfinite(V)) return std::nullopt;
        if (V <= e) {
            S = 0.0;
        } else {
            S += std::sqrt(V - e) / hb * step;
            if (S >= target) return t;
        }
    }
    return std::nullopt;
}

}  // namespace

EigenSolution solve_levels(const ModelSpec& spec, int n_max, const GridSettings& settings) {
    if (n_max < 0) throw Error(ErrorKind::LevelOutOfRange, "n_max must be >= 0");
    const CanonicalMap map(spec);
    const Interval ud = map.u_domain();
    const bool lower_open = !std::isfinite(ud.x1);
    const bool upper_open = !std::isfinite(ud.x2);
    const double hb = spec.hbar();

    Interval window = ud;
    if (lower_open && upper_open) {
        window = {-0.5 * settings.initial_extent, 0.5 * settings.initial_extent};
    } else if (lower_open) {
        window.x1 = ud.x2 - settings.initial_extent;
    } else if (upper_open) {
        window.x2 = ud.x1 + settings.initial_extent;
    }
    const double explore_h = window.length() / double(settings.n_points + 1);
    const std::size_t requested = static_cast<std::size_t>(n_max) + 1;
    std::size_t wanted = requested;

    // Exploratory solves: estimate the wanted energies, then place open ends
    // where the WKB tail of the highest one is below the truncation tolerance.
    // Box energies sit above the true ones, so a level that looks unbound in a
    // short window gets another try in a doubled one.
    const double target = std::log(1.0 / settings.truncation_tol) + 5.0;
    const double cap = 4096.0 * settings.initial_extent;
    std::vector<double> estimate;
    double v_min = 0.0;
    for (int pass = 0; pass <= settings.max_extensions; ++pass) {
        const auto n_explore = std::max<std::size_t>(
            settings.n_points, std::size_t(std::llround(window.length() / explore_h)));
        const Level L = discretize(spec, map, window, n_explore);
        estimate = tridiagonal_eigenvalues(L.diag, L.off, requested - 1);
        std::size_t i_min = 0;
        for (std::size_t i = 0; i < L.diag.size(); ++i) {
            if (L.diag[i] < L.diag[i_min]) i_min = i;
        }
        v_min = L.diag[i_min] - 2.0 * hb * hb / (L.h * L.h);
        if (!lower_open && !upper_open) break;
        const double u_min = window.x1 + double(i_min + 1) * L.h;
        Interval need = window;
        std::size_t bound = 0;
        for (double e : estimate) {
            Interval w = need;
            bool ok = true;
            if (upper_open) {
                const auto t = wkb_end(spec, map, u_min, +1.0, e, explore_h, target, cap);
                if (t) w.x2 = std::max(w.x2, u_min + *t); else ok = false;
            }
            if (lower_open) {
                const auto t = wkb_end(spec, map, u_min, -1.0, e, explore_h, target, cap);
                if (t) w.x1 = std::min(w.x1, u_min - *t); else ok = false;
            }
            if (!ok) break;
            need = w;
            ++bound;
        }
        const bool last = pass == settings.max_extensions;
        if (bound < requested && !last) {
            const double len = window.length();
            if (upper_open) window.x2 = std::max(window.x1 + 2.0 * len, need.x2);
            if (lower_open) window.x1 = std::min(window.x2 - 2.0 * len, need.x1);
            continue;
        }
        if (bound == 0) {
            throw Error(ErrorKind::TruncationUnsafe,
                        std::string(to_string(spec.id)) + ": no level decays within the search range");
        }
        wanted = bound;
        estimate.resize(bound);
        // Tighten to what the tails require (plus a margin); stop once the window covers it.
        Interval tight = need;
        if (upper_open) tight.x2 = u_min + 1.1 * (need.x2 - u_min);
        if (lower_open) tight.x1 = u_min - 1.1 * (u_min - need.x1);
        const bool covered = (!upper_open || need.x2 <= window.x2) && (!lower_open || need.x1 >= window.x1);
        window = tight;
        if (covered || last) break;
    }

    // Spacing: the user's resolution, refined so the fastest oscillation is well sampled.
    const double k_max = std::sqrt(std::max(estimate.back() - v_min, 1e-300)) / hb;
    const double h_target = std::min(window.length() / double(settings.n_points + 1), 0.04 / k_max);
    std::size_t base_points = std::size_t(std::ceil(window.length() / h_target)) - 1;

    // Verify the truncation on the base grid; extend open ends if needed.
    std::size_t best_count = 0;
    for (int ext = 0;; ++ext) {
        const Level L = discretize(spec, map, window, base_points);
        const auto evs = tridiagonal_eigenvalues(L.diag, L.off, wanted - 1);
        std::size_t passing = 0;
        for (double lam : evs) {
            const auto vec = tridiagonal_eigenvector(L.diag, L.off, lam);
            bool ok = true;
            if (lower_open) ok = ok && edge_ratio(vec, true) < settings.truncation_tol;
            if (upper_open) ok = ok && edge_ratio(vec, false) < settings.truncation_tol;
            if (!ok) break;
            ++passing;
        }
        best_count = passing;
        if (passing == wanted || ext >= settings.max_extensions) break;
        const double grow = 1.25;
        const double len = window.length();
        if (lower_open) window.x1 = window.x2 - grow * len;
        if (upper_open) window.x2 = window.x1 + grow * len;
        base_points = std::size_t(std::ceil(double(base_points + 1) * grow)) - 1;
    }
    if (best_count == 0) {
        throw Error(ErrorKind::TruncationUnsafe,
                    std::string(to_string(spec.id)) + ": ground level does not decay inside the window");
    }

    EigenSolution sol;
    sol.u_window = window;
    if (settings.extrapolate) {
        const double len = window.length();
        std::vector<double> exps{2.0, 4.0};
        const auto add = [&](std::optional<double> p) {
            if (!p) return;
            for (double q : exps) {
                if (std::abs(q - *p) < 1e-6) return;
            }
            exps.push_back(*p);
        };
        if (!lower_open) add(wall_exponent(spec, map, ud.x1, +1.0, len));
        if (!upper_open) add(wall_exponent(spec, map, ud.x2, -1.0, len));
        sol.exponents = exps;
    }
    const std::size_t n_levels = settings.extrapolate ? sol.exponents.size() + 2 : 1;

    std::vector<double> hs;
    std::vector<std::vector<double>> es;
    Level finest;
    std::size_t n = base_points;
    for (std::size_t lv = 0; lv < n_levels; ++lv) {
        Level L = discretize(spec, map, window, n);
        hs.push_back(L.h);
        es.push_back(tridiagonal_eigenvalues(L.diag, L.off, best_count - 1));
        sol.level_points.push_back(n);
        if (lv + 1 == n_levels) finest = std::move(L);
        n = 2 * n + 1;
    }

    const std::size_t m = sol.exponents.size() + 1;
    for (std::size_t j = 0; j < best_count; ++j) {
        std::vector<double> ej;
        for (const auto& e : es) ej.push_back(e[j]);
        sol.finest_raw.push_back(ej.back());
        if (!settings.extrapolate) {
            sol.eigenvalues.push_back(ej.back());
            sol.error_estimates.push_back(std::abs(ej.back() - ej.front()));
            continue;
        }
        const double fine = extrapolate(std::span(hs).subspan(1, m), std::span(ej).subspan(1, m), sol.exponents);
        const double coarse = extrapolate(std::span(hs).subspan(0, m), std::span(ej).subspan(0, m), sol.exponents);
        sol.eigenvalues.push_back(fine);
        sol.error_estimates.push_back(std::abs(fine - coarse));
    }

    const Interval grid{finest.nodes.x1, finest.nodes.x2};
    for (std::size_t j = 0; j < best_count; ++j) {
        const auto vec = tridiagonal_eigenvector(finest.diag, finest.off, sol.finest_raw[j]);
        std::vector<double> psi(vec.size());
        const double s = 1.0 / std::sqrt(finest.h);
        for (std::size_t i = 0; i < vec.size(); ++i) psi[i] = vec[i] * s / std::sqrt(finest.f[i]);
        sol.eigenvectors.emplace_back(grid, std::move(psi), Coordinate::U);
    }

    for (std::size_t j = 0; j < best_count; ++j) {
        if (sol.error_estimates[j] > settings.tolerance * (1.0 + std::abs(sol.eigenvalues[j]))) {
            throw Error(ErrorKind::NonConvergent,
                        std::string(to_string(spec.id)) + ": level " + std::to_string(j) +
                            " extrapolation changed by " + std::to_string(sol.error_estimates[j]));
        }
    }
    return sol;
}

int count_nodes(const GridFunction& g) {
    const double peak = g.sup_norm();
    int nodes = 0;
    int last = 0;
    for (double v : g.values()) {
        if (std::abs(v) < 1e-8 * peak) continue;
        const int s = v > 0 ? 1 : -1;
        if (last != 0 && s != last) ++nodes;
        last = s;
    }
    return nodes;
}

void write_eigenvector(std::ostream& os, const ModelSpec& spec, const GridFunction& psi,
                       Coordinate coordinate) {
    if (coordinate == psi.coordinate()) {
        write_two_column(os, psi);
        return;
    }
    const CanonicalMap map(spec);
    const auto old = os.precision(17);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double t = psi.node(i);
        os << (coordinate == Coordinate::X ? map.inverse(t) : map.forward(t)) << ' ' << psi[i] << '\n';
    }
    os.precision(old);
}

}  // namespace dsusy

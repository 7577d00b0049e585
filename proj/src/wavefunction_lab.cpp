#include "dsusy/wavefunction_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsusy/canonical_map.hpp"
#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/quadrature.hpp"

namespace dsusy {

namespace {

// f at every node of a grid laid out in `c`.
std::vector<double> node_f(const ModelSpec& spec, Interval nodes, std::size_t n, Coordinate c) {
    std::vector<double> f(n);
    const double h = (nodes.x2 - nodes.x1) / double(n - 1);
    if (c == Coordinate::U) {
        const CanonicalMap map(spec);
        for (std::size_t i = 0; i < n; ++i) f[i] = map.f_at(nodes.x1 + double(i) * h);
    } else {
        for (std::size_t i = 0; i < n; ++i) f[i] = eval_f(spec, nodes.x1 + double(i) * h);
    }
    return f;
}

std::vector<double> node_f(const ModelSpec& spec, const GridFunction& g) {
    return node_f(spec, g.interval(), g.size(), g.coordinate());
}

// Density whose plain sum approximates the integral of |psi|^2 dx.
std::vector<double> density(const ModelSpec& spec, const GridFunction& g) {
    std::vector<double> r(g.size());
    const auto f = g.coordinate() == Coordinate::U ? node_f(spec, g) : std::vector<double>(g.size(), 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[i] * g[i] * f[i];
    return r;
}

void check_normalizable(const std::vector<double>& r, const ModelSpec& spec) {
    const double peak = *std::max_element(r.begin(), r.end());
    const std::size_t n = r.size();
    const bool lower_grows = r[0] > 1e-3 * peak && r[0] > r[1];
    const bool upper_grows = r[n - 1] > 1e-3 * peak && r[n - 1] > r[n - 2];
    if (!std::isfinite(peak) || lower_grows || upper_grows) {
        throw Error(ErrorKind::NonNormalizable,
                    std::string(to_string(spec.id)) + ": |psi_0|^2 does not decay towards the grid ends");
    }
}

struct Fit {
    double exponent = 0.0;
    double log_coeff = 0.0;
};

// Least-squares log y = log C + p log d.
Fit power_fit(const std::vector<double>& d, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(y[i] > 0.0) || !(d[i] > 0.0)) continue;
        const double lx = std::log(d[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return {};
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return {0.0, sy / m};
    const double p = (m * sxy - sx * sy) / den;
    return {p, (sy - p * sx) / m};
}

constexpr std::size_t kTail = 10;
constexpr double kExponentMargin = 0.05;
constexpr double kVanishing = 1e-30;

BoundaryReport check_end(const GridFunction& psi, const std::vector<double>& q, const std::vector<double>& r,
                         bool lower, double end, double reach, double x_end) {
    BoundaryReport rep;
    rep.endpoint = x_end;
    const std::size_t n = psi.size();
    const double q_peak = *std::max_element(q.begin(), q.end());
    const double r_peak = *std::max_element(r.begin(), r.end());
    rep.peak = q_peak;
    const double grid_end = lower ? psi.interval().x1 : psi.interval().x2;
    rep.truncated = !std::isfinite(end) || std::abs(grid_end - end) > reach;

    std::vector<double> d, qt, rt;
    for (std::size_t k = 0; k < std::min(kTail, n); ++k) {
        const std::size_t i = lower ? k : n - 1 - k;
        d.push_back(std::abs(psi.node(i) - end));
        qt.push_back(q[i]);
        rt.push_back(r[i]);
    }
    const double q_tail = *std::max_element(qt.begin(), qt.end());
    const double r_tail = *std::max_element(rt.begin(), rt.end());
    std::ostringstream why;

    if (rep.truncated) {
        // Only the decay up to the truncation edge is observable.
        rep.limit_estimate = qt.front();
        rep.square_integrable = rt.front() <= kHermiticityThreshold * r_peak && rt.front() <= rt.back();
        rep.hermiticity_ok = qt.front() <= kHermiticityThreshold * q_peak && qt.front() <= qt.back();
        why << "truncated end, last sample " << qt.front() / std::max(q_peak, 1e-300) << " of peak";
        rep.details = why.str();
        return rep;
    }

    if (r_tail <= kVanishing * r_peak) {
        rep.square_integrable = true;
    } else {
        const Fit fr = power_fit(d, rt);
        rep.square_integrable = fr.exponent > -1.0 + kExponentMargin;
        why << "density exponent " << fr.exponent << "; ";
    }

    if (q_tail <= kVanishing * q_peak) {
        rep.exponent = kExponentMargin + 1.0;
        rep.limit_estimate = q_tail;
    } else {
        const Fit fq = power_fit(d, qt);
        rep.exponent = fq.exponent;
        if (fq.exponent > kExponentMargin) {
            rep.limit_estimate = 0.0;
        } else if (fq.exponent >= -kExponentMargin) {
            rep.limit_estimate = qt.front();
        } else {
            rep.limit_estimate = kInf;
        }
    }
    rep.hermiticity_ok = rep.limit_estimate < kHermiticityThreshold * q_peak;
    why << "|psi|^2 f exponent " << rep.exponent << ", limit " << rep.limit_estimate;
    rep.details = why.str();
    return rep;
}

}  // namespace

WaveGrid grid_of(const EigenSolution& solution) {
    if (solution.eigenvectors.empty()) throw Error(ErrorKind::LevelOutOfRange, "eigen solution has no states");
    const GridFunction& g = solution.eigenvectors.front();
    return {g.interval(), g.size(), g.coordinate()};
}

GridFunction ground_state(const ModelSpec& spec, const WaveGrid& grid) {
    const std::size_t n = grid.points;
    if (n < GridFunction::kMinPoints) {
        throw Error(ErrorKind::GridTooCoarse, "ground_state needs at least 16 points");
    }
    const double h = (grid.nodes.x2 - grid.nodes.x1) / double(n - 1);
    const double hb = spec.hbar();
    const bool in_u = grid.coordinate == Coordinate::U;
    const CanonicalMap map(spec);
    // d(exponent)/dt in the grid coordinate t.
    const auto rate = [&](double t) {
        if (in_u) return eval_W(spec, map.inverse(t)) / hb;
        return eval_W(spec, t) / (hb * eval_f(spec, t));
    };
    static const GaussRule rule = gauss_legendre(8);

    const std::size_t mid = n / 2;
    std::vector<double> expo(n, 0.0);
    for (std::size_t i = mid; i + 1 < n; ++i) {
        const double t = grid.nodes.x1 + double(i) * h;
        expo[i + 1] = expo[i] + integrate_panel(rule, rate, t, t + h);
    }
    for (std::size_t i = mid; i > 0; --i) {
        const double t = grid.nodes.x1 + double(i) * h;
        expo[i - 1] = expo[i] - integrate_panel(rule, rate, t - h, t);
    }

    const auto f = node_f(spec, grid.nodes, n, grid.coordinate);
    std::vector<double> logpsi(n);
    for (std::size_t i = 0; i < n; ++i) logpsi[i] = -0.5 * std::log(f[i]) - expo[i];
    const double top = *std::max_element(logpsi.begin(), logpsi.end());
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(logpsi[i] - top);

    GridFunction psi(grid.nodes, std::move(v), grid.coordinate);
    check_normalizable(density(spec, psi), spec);
    return normalized(spec, psi);
}

GridFunction ladder_state(const ModelSpec& spec, int n, const WaveGrid& grid) {
    if (n < 0) throw Error(ErrorKind::LevelOutOfRange, "ladder level must be >= 0");
    GridFunction psi = ground_state(partner_shift(spec, n), grid);
    for (int k = n - 1; k >= 0; --k) psi = apply_ladder(partner_shift(spec, k), LadderSign::Plus, psi);
    return normalized(spec, psi);
}

double inner_product(const ModelSpec& spec, const GridFunction& a, const GridFunction& b, IndexRange range) {
    const auto f = a.coordinate() == Coordinate::U ? node_f(spec, a) : std::vector<double>(a.size(), 1.0);
    double sum = 0.0;
    for (std::size_t i = range.begin; i < range.end; ++i) sum += a[i] * b[i] * f[i];
    return sum * a.spacing();
}

double overlap(const ModelSpec& spec, const GridFunction& a, const GridFunction& b, IndexRange range) {
    const double ab = inner_product(spec, a, b, range);
    const double aa = inner_product(spec, a, a, range);
    const double bb = inner_product(spec, b, b, range);
    return std::abs(ab) / std::sqrt(aa * bb);
}

GridFunction normalized(const ModelSpec& spec, const GridFunction& psi) {
    const double norm = std::sqrt(inner_product(spec, psi, psi, {0, psi.size()}));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorKind::NonNormalizable, std::string(to_string(spec.id)) + ": zero or infinite norm");
    }
    std::vector<double> v(psi.values().begin(), psi.values().end());
    for (double& x : v) x /= norm;
    GridFunction out(psi.interval(), std::move(v), psi.coordinate());
    out.set_edge_width(psi.edge_width());
    return out;
}

IndexRange support_range(const ModelSpec& spec, const GridFunction& psi, double fraction) {
    const auto f = node_f(spec, psi);
    std::vector<double> q(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) q[i] = psi[i] * psi[i] * f[i];
    const double peak = *std::max_element(q.begin(), q.end());
    std::size_t lo = 0, hi = q.size();
    while (lo + 1 < hi && q[lo] < kSupportFloor * peak) ++lo;
    while (hi - 1 > lo && q[hi - 1] < kSupportFloor * peak) --hi;
    const IndexRange c = central_range(hi - lo, fraction);
    return {lo + c.begin, lo + c.end};
}

BoundaryPair boundary_check(const ModelSpec& spec, const GridFunction& psi) {
    const auto f = node_f(spec, psi);
    std::vector<double> q(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) q[i] = psi[i] * psi[i] * f[i];
    const auto r = psi.coordinate() == Coordinate::U ? q : density(spec, psi);

    const Interval ends = psi.coordinate() == Coordinate::U ? CanonicalMap(spec).u_domain() : spec.domain;
    const double span = ends.finite() ? ends.length() : psi.interval().length();
    // A Dirichlet-style grid whose outermost node sits one spacing from the
    // end also counts as reaching it.
    const double reach = std::max(1e-4 * span, 1.01 * psi.spacing());
    return {check_end(psi, q, r, true, ends.x1, reach, spec.domain.x1),
            check_end(psi, q, r, false, ends.x2, reach, spec.domain.x2)};
}

IntertwiningResult intertwining_residual(const ModelSpec& spec, const WaveGrid& grid) {
    const GridFunction psi0 = ground_state(spec, grid);
    const auto f = node_f(spec, psi0);
    std::size_t top = 0;
    for (std::size_t i = 0; i < psi0.size(); ++i) {
        if (psi0[i] * psi0[i] * f[i] > psi0[top] * psi0[top] * f[top]) top = i;
    }
    // Smooth bump exp(-1 / (1 - z^2)) around the peak, vanishing to all
    // orders well inside the support so singular walls never enter.
    const IndexRange inner = support_range(spec, psi0, 0.9);
    const double h = psi0.spacing();
    const double room = double(std::min(top - inner.begin, inner.end - 1 - top)) * h;
    const double width = std::max(0.5 * room, 50.0 * h);
    const double centre = psi0.node(top);
    const GridFunction test = GridFunction::sample(grid.nodes, grid.points, grid.coordinate, [&](double t) {
        const double z = (t - centre) / width;
        return std::abs(z) < 1.0 ? std::exp(-1.0 / (1.0 - z * z)) : 0.0;
    });
    const GridFunction lhs =
        apply_ladder(spec, LadderSign::Minus, apply_hamiltonian(spec, Partner::Minus, test, HamiltonianForm::Direct));
    const GridFunction rhs =
        apply_hamiltonian(spec, Partner::Plus, apply_ladder(spec, LadderSign::Minus, test), HamiltonianForm::Direct);

    IntertwiningResult res;
    for (std::size_t i = 0; i < test.size(); ++i) {
        res.max_residual = std::max(res.max_residual, std::abs(lhs[i] - rhs[i]));
        res.scale = std::max({res.scale, std::abs(lhs[i]), std::abs(rhs[i])});
    }
    return res;
}

}  // namespace dsusy

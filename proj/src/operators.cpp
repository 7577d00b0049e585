#include "dsusy/operators.hpp"

#include <algorithm>
#include <cmath>

#include "dsusy/canonical_map.hpp"
#include "dsusy/finite_difference.hpp"

namespace dsusy {

double eval_W_prime(const ModelSpec& spec, double x) {
    return eval_W(spec, variable(x)).d;
}

double flatness_shift(const ModelSpec& spec, const std::function<double(double)>& v_minus) {
    const double xref = probe_window(spec).midpoint();
    const double e0 = table_potential(spec, xref) - v_minus(xref);
    double spread = 0.0;
    for (double x : interior_samples(spec, 100)) {
        spread = std::max(spread, std::abs(table_potential(spec, x) - v_minus(x) - e0));
    }
    if (!(spread < 1e-9 * (1.0 + std::abs(e0)))) {
        throw Error(ErrorKind::NotFlat, std::string(to_string(spec.id)) +
                                            ": V - V_- varies by " + std::to_string(spread));
    }
    return e0;
}

double ground_energy_shift(const ModelSpec& spec) {
    return flatness_shift(spec, [&spec](double x) { return eval_V_minus(spec, x); });
}

namespace {

// Per-node x, f and W for a grid laid out in x or u.
struct NodeData {
    std::vector<double> x, f, W;
};

NodeData node_data(const ModelSpec& spec, const GridFunction& psi) {
    const std::size_t n = psi.size();
    NodeData d{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    if (psi.coordinate() == Coordinate::U) {
        const CanonicalMap map(spec);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = psi.node(i);
            d.x[i] = map.inverse(u);
            d.f[i] = map.f_at(u);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            d.x[i] = psi.node(i);
            d.f[i] = eval_f(spec, d.x[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) d.W[i] = eval_W(spec, d.x[i]);
    return d;
}

GridFunction with_values(const GridFunction& like, std::vector<double> v, std::size_t extra_edge) {
    GridFunction out(like.interval(), std::move(v), like.coordinate());
    out.set_edge_width(std::min(like.size() / 2, like.edge_width() + extra_edge));
    return out;
}

}  // namespace

GridFunction apply_ladder(const ModelSpec& spec, LadderSign sign, const GridFunction& psi) {
    const NodeData d = node_data(spec, psi);
    const std::size_t n = psi.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::sqrt(d.f[i]) * psi[i];
    const std::vector<double> dg = differentiate(g, psi.spacing(), 1);
    const double s = sign == LadderSign::Plus ? -spec.hbar() : spec.hbar();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double pref = psi.coordinate() == Coordinate::U ? 1.0 / std::sqrt(d.f[i]) : std::sqrt(d.f[i]);
        out[i] = s * pref * dg[i] + d.W[i] * psi[i];
    }
    return with_values(psi, std::move(out), kStencilHalfWidth);
}

GridFunction apply_hamiltonian(const ModelSpec& spec, Partner which, const GridFunction& psi,
                               HamiltonianForm form) {
    if (form == HamiltonianForm::Factorized) {
        if (which == Partner::Minus) {
            return apply_ladder(spec, LadderSign::Plus, apply_ladder(spec, LadderSign::Minus, psi));
        }
        return apply_ladder(spec, LadderSign::Minus, apply_ladder(spec, LadderSign::Plus, psi));
    }
    const NodeData d = node_data(spec, psi);
    const std::size_t n = psi.size();
    const double hb = spec.hbar();
    const int sgn = which == Partner::Minus ? -1 : 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::sqrt(d.f[i]) * psi[i];
    const std::vector<double> g2 = differentiate(g, psi.spacing(), 2);
    std::vector<double> out(n);
    if (psi.coordinate() == Coordinate::U) {
        for (std::size_t i = 0; i < n; ++i) {
            const double V = partner_potential(spec, d.x[i], spec.a(), sgn);
            out[i] = -hb * hb * g2[i] / std::sqrt(d.f[i]) + V * psi[i];
        }
    } else {
        const std::vector<double> g1 = differentiate(g, psi.spacing(), 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double fp = eval_f(spec, variable(d.x[i])).d;
            const double V = partner_potential(spec, d.x[i], spec.a(), sgn);
            out[i] = -hb * hb * std::sqrt(d.f[i]) * (fp * g1[i] + d.f[i] * g2[i]) + V * psi[i];
        }
    }
    return with_values(psi, std::move(out), kStencilHalfWidth);
}

}  // namespace dsusy

#include "dsusy/conventions.hpp"

#include <algorithm>
#include <cmath>

#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"

namespace dsusy {

namespace {

ModelId entry_for(ModelId id) { return id == ModelId::DRHO_EXT1 ? ModelId::DRHO : id; }

void require_entry(const ModelSpec& spec, const char* what) {
    if (spec.id == ModelId::DRHO_EXT1) {
        throw Error(ErrorKind::UnknownFamily, std::string("DRHO_EXT1 has no older-convention ") + what);
    }
}

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

double sq(double v) { return v * v; }

}  // namespace

ConventionMap convention_map(ModelId id) {
    ConventionMap m;
    m.model = id;
    switch (entry_for(id)) {
        case ModelId::PT:
            m.param_map = {"A-bar = A/hbar", "alpha-bar = alpha", "x-bar = x"};
            m.potential_scale = m.energy_scale = Scale::HbarSquared;
            break;
        case ModelId::RHO:
            m.param_map = {"omega-bar = hbar omega", "l-bar = (l+1)/hbar - 1", "alpha-bar = hbar^2 alpha",
                           "x-bar = x/hbar"};
            m.x_scaled_by_hbar = true;
            break;
        case ModelId::S:
            m.param_map = {"A-bar = A/hbar", "B-bar = B/hbar", "alpha-bar = alpha", "x-bar = x"};
            m.potential_scale = m.energy_scale = Scale::HbarSquared;
            break;
        case ModelId::C:
            m.param_map = {"Z-bar = e^2/(2 hbar)", "l-bar = (l+1)/hbar - 1", "alpha-bar = hbar alpha",
                           "x-bar = x/hbar"};
            m.x_scaled_by_hbar = true;
            break;
        case ModelId::M:
            m.param_map = {"A-bar = A/hbar", "B-bar = B/hbar", "alpha-bar = alpha", "x-bar = x"};
            m.potential_scale = m.energy_scale = Scale::HbarSquared;
            break;
        case ModelId::E:
            m.param_map = {"A-bar = A/hbar", "B-bar = B/hbar^2", "alpha-bar = alpha", "x-bar = x"};
            m.potential_scale = m.energy_scale = Scale::HbarSquared;
            break;
        case ModelId::RM:
            m.param_map = {"A-bar = A/hbar", "B-bar = B/hbar^2", "alpha-bar = alpha", "beta-bar = beta",
                           "x-bar = x"};
            m.potential_scale = m.energy_scale = Scale::HbarSquared;
            break;
        case ModelId::SHO:
            m.param_map = {"omega-bar = hbar omega", "d-bar = d", "alpha-bar = hbar^2 alpha",
                           "beta-bar = hbar beta", "x-bar = x/hbar"};
            m.x_scaled_by_hbar = true;
            break;
        case ModelId::DRHO:
            m.param_map = {"omega-bar = hbar omega", "l-bar = (l+1)/hbar - 1", "lambda-bar = hbar^2 lambda",
                           "x-bar = x/hbar"};
            m.x_scaled_by_hbar = true;
            break;
        case ModelId::DC:
            m.param_map = {"Q-bar = e^2/hbar", "l-bar = (l+1)/hbar - 1", "lambda-bar = hbar^2 lambda",
                           "x-bar = x/hbar"};
            m.x_scaled_by_hbar = true;
            break;
        default:
            throw Error(ErrorKind::UnknownFamily, "convention_map");
    }
    return m;
}

BarredParams to_barred(const ModelSpec& spec) {
    const RawParams& r = spec.raw;
    const double hb = r.hbar;
    BarredParams b;
    b.model = entry_for(spec.id);
    const double l_bar = spec.derived.l_plus_one / hb - 1.0;
    switch (b.model) {
        case ModelId::PT:
            b.A = r.A / hb;
            b.alpha = r.alpha;
            break;
        case ModelId::RHO:
            b.omega = hb * r.omega;
            b.l = l_bar;
            b.alpha = hb * hb * r.alpha;
            break;
        case ModelId::S:
        case ModelId::M:
            b.A = r.A / hb;
            b.B = r.B / hb;
            b.alpha = r.alpha;
            break;
        case ModelId::C:
            b.Z = r.e2 / (2.0 * hb);
            b.l = l_bar;
            b.alpha = hb * r.alpha;
            break;
        case ModelId::E:
            b.A = r.A / hb;
            b.B = r.B / (hb * hb);
            b.alpha = r.alpha;
            break;
        case ModelId::RM:
            b.A = r.A / hb;
            b.B = r.B / (hb * hb);
            b.alpha = r.alpha;
            b.beta = r.beta;
            break;
        case ModelId::SHO:
            b.omega = hb * r.omega;
            b.d = r.d;
            b.alpha = hb * hb * r.alpha;
            b.beta = hb * r.beta;
            break;
        case ModelId::DRHO:
            b.omega = hb * r.omega;
            b.l = l_bar;
            b.lambda = hb * hb * r.lambda;
            break;
        case ModelId::DC:
            b.Q = r.e2 / hb;
            b.l = l_bar;
            b.lambda = hb * hb * r.lambda;
            break;
        default:
            throw Error(ErrorKind::UnknownFamily, "to_barred");
    }
    return b;
}

RawParams from_barred(const BarredParams& b, double hb) {
    RawParams r;
    r.hbar = hb;
    const auto l_of = [&](double l_bar) { return static_cast<int>(std::lround((l_bar + 1.0) * hb - 1.0)); };
    switch (b.model) {
        case ModelId::PT:
            r.A = b.A * hb;
            r.alpha = b.alpha;
            break;
        case ModelId::RHO:
            r.omega = b.omega / hb;
            r.l = l_of(b.l);
            r.alpha = b.alpha / (hb * hb);
            break;
        case ModelId::S:
        case ModelId::M:
            r.A = b.A * hb;
            r.B = b.B * hb;
            r.alpha = b.alpha;
            break;
        case ModelId::C:
            r.e2 = 2.0 * hb * b.Z;
            r.l = l_of(b.l);
            r.alpha = b.alpha / hb;
            break;
        case ModelId::E:
            r.A = b.A * hb;
            r.B = b.B * hb * hb;
            r.alpha = b.alpha;
            break;
        case ModelId::RM:
            r.A = b.A * hb;
            r.B = b.B * hb * hb;
            r.alpha = b.alpha;
            r.beta = b.beta;
            break;
        case ModelId::SHO:
            r.omega = b.omega / hb;
            r.d = b.d;
            r.alpha = b.alpha / (hb * hb);
            r.beta = b.beta / hb;
            break;
        case ModelId::DRHO:
            r.omega = b.omega / hb;
            r.l = l_of(b.l);
            r.lambda = b.lambda / (hb * hb);
            break;
        case ModelId::DC:
            r.e2 = hb * b.Q;
            r.l = l_of(b.l);
            r.lambda = b.lambda / (hb * hb);
            break;
        default:
            throw Error(ErrorKind::UnknownFamily, "from_barred");
    }
    return r;
}

double round_trip_error(const ModelSpec& spec) {
    const RawParams back = from_barred(to_barred(spec), spec.hbar());
    const RawParams& r = spec.raw;
    double err = rel(back.hbar, r.hbar);
    const auto cmp = [&](double x, double y) { err = std::max(err, rel(x, y)); };
    switch (entry_for(spec.id)) {
        case ModelId::PT: cmp(back.A, r.A); cmp(back.alpha, r.alpha); break;
        case ModelId::S:
        case ModelId::M:
        case ModelId::E: cmp(back.A, r.A); cmp(back.B, r.B); cmp(back.alpha, r.alpha); break;
        case ModelId::RM:
            cmp(back.A, r.A); cmp(back.B, r.B); cmp(back.alpha, r.alpha); cmp(back.beta, r.beta);
            break;
        case ModelId::RHO: cmp(back.omega, r.omega); cmp(back.alpha, r.alpha); cmp(back.l, r.l); break;
        case ModelId::C: cmp(back.e2, r.e2); cmp(back.alpha, r.alpha); cmp(back.l, r.l); break;
        case ModelId::SHO:
            cmp(back.omega, r.omega); cmp(back.d, r.d); cmp(back.alpha, r.alpha); cmp(back.beta, r.beta);
            break;
        case ModelId::DRHO: cmp(back.omega, r.omega); cmp(back.lambda, r.lambda); cmp(back.l, r.l); break;
        case ModelId::DC: cmp(back.e2, r.e2); cmp(back.lambda, r.lambda); cmp(back.l, r.l); break;
        default: break;
    }
    return err;
}

double barred_potential(const BarredParams& b, double x) {
    const double wall = b.l * (b.l + 1.0) / (x * x);
    switch (b.model) {
        case ModelId::PT: return b.A * (b.A - 1.0) / sq(std::cos(x));
        case ModelId::RHO: return 0.25 * sq(b.omega) * x * x + wall;
        case ModelId::S: {
            const double sec = 1.0 / std::cos(x);
            return (b.A * (b.A - 1.0) + b.B * b.B) * sec * sec - b.B * (2.0 * b.A - 1.0) * sec * std::tan(x);
        }
        case ModelId::C: return -2.0 * b.Z / x + wall;
        case ModelId::M: return b.B * b.B * std::exp(-2.0 * x) - b.B * (2.0 * b.A + 1.0) * std::exp(-x);
        case ModelId::E: return b.A * (b.A - 1.0) / sq(std::sinh(x)) - 2.0 * b.B / std::tanh(x);
        case ModelId::RM: return b.A * (b.A - 1.0) / sq(std::sin(x)) + 2.0 * b.B / std::tan(x);
        case ModelId::SHO: return 0.25 * sq(b.omega) * sq(x - 2.0 * b.d / b.omega);
        case ModelId::DRHO:
            return b.omega * (b.omega + 2.0 * b.lambda) * x * x / (4.0 * (1.0 + b.lambda * x * x)) + wall;
        case ModelId::DC: return -b.Q / x * std::sqrt(1.0 + b.lambda * x * x) + wall;
        default: break;
    }
    throw Error(ErrorKind::UnknownFamily, "barred_potential");
}

double barred_deforming(const BarredParams& b, double x) {
    switch (b.model) {
        case ModelId::PT: return 1.0 + b.alpha * sq(std::sin(x));
        case ModelId::RHO: return 1.0 + b.alpha * x * x;
        case ModelId::S: return 1.0 + b.alpha * std::sin(x);
        case ModelId::C: return 1.0 + b.alpha * x;
        case ModelId::M: return 1.0 + b.alpha * std::exp(-x);
        case ModelId::E: return 1.0 + b.alpha * std::exp(-x) * std::sinh(x);
        case ModelId::RM: return 1.0 + std::sin(x) * (b.alpha * std::cos(x) + b.beta * std::sin(x));
        case ModelId::SHO: return 1.0 + b.alpha * x * x + 2.0 * b.beta * x;
        case ModelId::DRHO:
        case ModelId::DC: return std::sqrt(1.0 + b.lambda * x * x);
        default: break;
    }
    throw Error(ErrorKind::UnknownFamily, "barred_deforming");
}

double check_potential_relation(const ModelSpec& spec, double x) {
    require_entry(spec, "potential");
    const ConventionMap m = convention_map(spec.id);
    const double hb = spec.hbar();
    return table_potential(spec, x) -
           scale_value(m.potential_scale, hb) * barred_potential(to_barred(spec), m.x_bar(x, hb));
}

double check_deforming_relation(const ModelSpec& spec, double x) {
    require_entry(spec, "deforming function");
    const ConventionMap m = convention_map(spec.id);
    return eval_f(spec, x) - barred_deforming(to_barred(spec), m.x_bar(x, spec.hbar()));
}

ModelSpec barred_model(const ModelSpec& spec) {
    require_entry(spec, "spectrum");
    const BarredParams b = to_barred(spec);
    RawParams r;
    r.hbar = 1.0;
    r.A = b.A;
    r.B = b.B;
    r.alpha = b.alpha;
    r.beta = b.beta;
    r.omega = b.omega;
    r.d = b.d;
    r.lambda = b.lambda;
    r.e2 = b.model == ModelId::C ? 2.0 * b.Z : b.Q;
    return build_model_continued(b.model, r, b.l + 1.0);
}

double check_energy_relation(const ModelSpec& spec, int n) {
    const ConventionMap m = convention_map(spec.id);
    const ModelSpec bar = barred_model(spec);
    const double lhs = absolute_energy(spec, n) - absolute_energy(spec, 0);
    const double rhs = absolute_energy(bar, n) - absolute_energy(bar, 0);
    return lhs - scale_value(m.energy_scale, spec.hbar()) * rhs;
}

}  // namespace dsusy

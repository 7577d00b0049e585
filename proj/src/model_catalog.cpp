#include "dsusy/model_catalog.hpp"

#include <numbers>

#include "dsusy/dual.hpp"
#include "dsusy/error.hpp"

namespace dsusy {

namespace {

constexpr std::array<std::string_view, 11> kNames = {"PT", "RHO", "S",    "C",  "M",        "E",
                                                     "RM", "SHO", "DRHO", "DC", "DRHO_EXT1"};

void require(bool ok, ModelId id, const char* inequality) {
    if (!ok) {
        throw Error(ErrorKind::ConstraintViolation,
                    std::string(to_string(id)) + " requires " + inequality);
    }
}

void require_finite(const RawParams& r, ModelId id) {
    for (double v : {r.hbar, r.A, r.B, r.omega, r.e2, r.d, r.alpha, r.beta, r.lambda}) {
        require(std::isfinite(v), id, "finite parameters");
    }
}

Interval radial_domain(double lambda) {
    if (lambda > 0.0) return {0.0, kInf};
    return {0.0, 1.0 / std::sqrt(-lambda)};
}

}  // namespace

std::string_view to_string(ModelId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<ModelId> model_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<ModelId>(i);
    }
    return std::nullopt;
}

ModelSpec build_model(ModelId id, const RawParams& raw) {
    require(raw.l >= 0, id, "l = 0, 1, 2, ...");
    return build_model_continued(id, raw, raw.l + 1.0);
}

ModelSpec build_model_continued(ModelId id, const RawParams& raw, double l_plus_one) {
    require_finite(raw, id);
    require(raw.hbar > 0.0, id, "hbar > 0");
    require(std::isfinite(l_plus_one) && l_plus_one > 0.0, id, "l + 1 > 0");

    const double hb = raw.hbar;
    const double al = raw.alpha;
    const double A = raw.A;
    const double B = raw.B;
    const double l1 = l_plus_one;

    ModelSpec spec;
    spec.id = id;
    spec.raw = raw;
    DerivedParams& dp = spec.derived;
    dp.l_plus_one = l1;
    constexpr double pi = std::numbers::pi;

    switch (id) {
        case ModelId::PT: {
            require(A > hb, id, "A > hbar");
            require(al > -1.0 && al != 0.0, id, "-1 < alpha != 0");
            const double delta = std::sqrt(square(1.0 + al) * hb * hb + 4.0 * A * (A - hb));
            dp.delta = delta;
            dp.a = ((1.0 + al) * hb + delta) / (2.0 * (1.0 + al));
            spec.domain = {-pi / 2, pi / 2};
            break;
        }
        case ModelId::RHO: {
            require(al > 0.0, id, "alpha > 0");
            require(raw.omega > 0.0, id, "omega > 0");
            const double delta = std::sqrt(raw.omega * raw.omega + hb * hb * al * al);
            dp.delta = delta;
            dp.a = 0.5 * (l1 + 0.5 * hb + delta / (2.0 * al));
            dp.b = 0.5 * (l1 - 0.5 * hb - delta / (2.0 * al));
            spec.domain = {0.0, kInf};
            break;
        }
        case ModelId::S: {
            require(A - hb > B && B > 0.0, id, "A - hbar > B > 0");
            require(std::abs(al) > 0.0 && std::abs(al) < 1.0, id, "0 < |alpha| < 1");
            const double dplus =
                std::sqrt(0.25 * hb * hb * square(1.0 - al) + (A + B) * (A + B - hb));
            const double dminus =
                std::sqrt(0.25 * hb * hb * square(1.0 + al) + (A - B) * (A - B - hb));
            dp.delta_plus = dplus;
            dp.delta_minus = dminus;
            dp.a = 0.5 * (hb + (al - 1.0) / (2.0 * al) * dplus + (al + 1.0) / (2.0 * al) * dminus);
            dp.b = ((al + 1.0) * dplus + (al - 1.0) * dminus) / (4.0 * al);
            spec.domain = {-pi / 2, pi / 2};
            break;
        }
        case ModelId::C: {
            require(al > 0.0, id, "alpha > 0");
            dp.a = -0.25 * (raw.e2 + l1 * (al * (l1 - hb) - 4.0));
            dp.b = 0.25 * (raw.e2 + al * l1 * (l1 - hb));
            spec.domain = {0.0, kInf};
            break;
        }
        case ModelId::M: {
            require(A > 0.0 && B > 0.0, id, "A, B > 0");
            require(al > 0.0, id, "alpha > 0");
            const double delta = std::sqrt(4.0 * B * B + hb * hb * al * al);
            dp.delta = delta;
            dp.a = -(B * B + al * (B * (2.0 * A + hb) - 2.0 * hb * hb) - 2.0 * hb * delta) /
                   (4.0 * hb * al);
            dp.b = B / (4.0 * hb * al) * (B + al * (2.0 * A + hb));
            spec.domain = {-kInf, kInf};
            break;
        }
        case ModelId::E: {
            require(A >= 1.5 * hb, id, "A >= 3 hbar / 2");
            require(B > A * A, id, "B > A^2");
            require(al > -2.0 && al != 0.0, id, "-2 < alpha != 0");
            dp.a = (-B + 2.0 * hb * A - 0.5 * al * A * (A - hb)) / (2.0 * hb);
            dp.b = (B + 0.5 * al * A * (A - hb)) / (2.0 * hb);
            spec.domain = {0.0, kInf};
            break;
        }
        case ModelId::RM: {
            require(A >= 1.5 * hb, id, "A >= 3 hbar / 2");
            require(raw.beta > -1.0, id, "beta > -1");
            require(std::abs(al) / 2.0 < std::sqrt(1.0 + raw.beta), id, "|alpha|/2 < sqrt(1 + beta)");
            dp.a = (B + 2.0 * hb * A - 0.5 * al * A * (A - hb)) / (2.0 * hb);
            dp.b = (-B + 0.5 * al * A * (A - hb)) / (2.0 * hb);
            spec.domain = {0.0, pi};
            break;
        }
        case ModelId::SHO: {
            require(raw.beta * raw.beta >= 0.0 && al > raw.beta * raw.beta, id, "alpha > beta^2 >= 0");
            require(raw.omega > 0.0, id, "omega > 0");
            const double om = raw.omega;
            const double delta = std::sqrt(om * om + hb * hb * al * al);
            dp.delta = delta;
            dp.a = 0.5 * hb *
                   (-hb * raw.beta / (4.0 * al) * om * om + 1.0 + delta / (hb * al) -
                    0.5 * raw.d * hb * om);
            dp.b = 0.5 * hb * hb * om * (raw.beta / (4.0 * al) * om + 0.5 * raw.d);
            spec.domain = {-kInf, kInf};
            break;
        }
        case ModelId::DRHO: {
            require(raw.lambda != 0.0, id, "lambda != 0");
            dp.a = 0.5 * (l1 - raw.omega / (2.0 * raw.lambda));
            dp.b = 0.5 * (l1 + raw.omega / (2.0 * raw.lambda));
            spec.domain = radial_domain(raw.lambda);
            break;
        }
        case ModelId::DC: {
            require(raw.lambda != 0.0, id, "lambda != 0");
            dp.a = l1;
            dp.b = 0.0;
            spec.domain = radial_domain(raw.lambda);
            break;
        }
        case ModelId::DRHO_EXT1: {
            require(raw.lambda < 0.0, id, "lambda < 0");
            const double lam = -raw.lambda;
            require(raw.omega > 2.0 * lam * l1, id, "omega > 2|lambda|(l + 1)");
            dp.a = 0.5 * (l1 + raw.omega / (2.0 * lam));
            dp.b = 0.5 * (l1 - raw.omega / (2.0 * lam));
            spec.domain = radial_domain(raw.lambda);
            break;
        }
        default:
            throw Error(ErrorKind::UnknownFamily, "unrecognised model id");
    }
    return spec;
}

ModelSpec partner_shift(const ModelSpec& spec, int steps) {
    ModelSpec out = spec;
    out.derived.a += steps * spec.hbar();
    return out;
}

RawParams reference_params(ModelId id) {
    RawParams r;
    r.hbar = 1.0;
    switch (id) {
        case ModelId::PT: r.alpha = 1.0; r.A = 2.0; break;
        case ModelId::RHO: r.alpha = 1.0; r.omega = 2.0; r.l = 0; break;
        case ModelId::S: r.alpha = 0.5; r.A = 4.0; r.B = 1.0; break;
        case ModelId::C: r.alpha = 0.04; r.e2 = 4.0; r.l = 1; break;
        case ModelId::M: r.alpha = 0.5; r.A = 15.0; r.B = 2.0; break;
        case ModelId::E: r.alpha = 0.5; r.A = 2.0; r.B = 100.0; break;
        case ModelId::RM: r.alpha = 0.5; r.beta = 0.5; r.A = 2.0; r.B = 1.0; break;
        case ModelId::SHO: r.alpha = 0.5; r.beta = 0.25; r.omega = 2.0; r.d = 0.5; break;
        case ModelId::DRHO: r.omega = 2.0; r.lambda = -0.25; r.l = 0; break;
        case ModelId::DC: r.e2 = 16.0; r.lambda = 0.01; r.l = 1; break;
        case ModelId::DRHO_EXT1: r.omega = 2.0; r.lambda = -0.25; r.l = 0; break;
    }
    return r;
}

RawParams reference_params_at_hbar(ModelId id, double hbar) {
    RawParams r = reference_params(id);
    r.hbar = hbar;
    switch (id) {
        case ModelId::PT:
            r.A *= hbar;
            break;
        case ModelId::S:
        case ModelId::M:
            r.A *= hbar;
            r.B *= hbar;
            break;
        case ModelId::E:
        case ModelId::RM:
            r.A *= hbar;
            r.B *= hbar * hbar;
            break;
        default:
            break;
    }
    return r;
}

std::vector<CatalogEntry> list_catalog() {
    std::vector<CatalogEntry> out;
    out.reserve(kAllModels.size());
    for (ModelId id : kAllModels) out.push_back({id, reference_params(id)});
    return out;
}

Interval probe_window(const ModelSpec& spec) {
    Interval w = spec.domain;
    if (!std::isfinite(w.x1)) w.x1 = -5.0;
    if (!std::isfinite(w.x2)) w.x2 = w.x1 + 10.0 > 10.0 ? w.x1 + 10.0 : 10.0;
    return w;
}

std::vector<double> interior_samples(const ModelSpec& spec, int count) {
    const Interval w = probe_window(spec);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = 0.02 + 0.96 * (i + 0.5) / count;
        xs.push_back(w.x1 + t * w.length());
    }
    return xs;
}

}  // namespace dsusy

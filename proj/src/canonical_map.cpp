#include "dsusy/canonical_map.hpp"

#include <cmath>
#include <numbers>

#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"

namespace dsusy {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
}

CanonicalMap::CanonicalMap(const ModelSpec& spec) : spec_(spec) {
    const RawParams& r = spec.raw;
    const double al = r.alpha;
    switch (spec.id) {
        case ModelId::PT:
            k_ = std::sqrt(1.0 + al);
            u_domain_ = {-kHalfPi / k_, kHalfPi / k_};
            break;
        case ModelId::RHO:
            k_ = std::sqrt(al);
            u_domain_ = {0.0, kHalfPi / k_};
            break;
        case ModelId::S:
            k_ = std::sqrt(1.0 - al * al);
            u_domain_ = {2.0 / k_ * std::atan((al - 1.0) / k_), 2.0 / k_ * std::atan((al + 1.0) / k_)};
            break;
        case ModelId::C:
            u_domain_ = {0.0, kInf};
            break;
        case ModelId::M:
            u_domain_ = {std::log(al), kInf};
            break;
        case ModelId::E:
            k_ = 1.0 + 0.5 * al;
            u_domain_ = {0.0, kInf};
            break;
        case ModelId::RM:
            k_ = std::sqrt(1.0 + r.beta - 0.25 * al * al);
            u_domain_ = {0.0, std::numbers::pi / k_};
            break;
        case ModelId::SHO:
            k_ = std::sqrt(al - r.beta * r.beta);
            u_domain_ = {-kHalfPi / k_, kHalfPi / k_};
            break;
        case ModelId::DRHO:
        case ModelId::DC:
        case ModelId::DRHO_EXT1:
            k_ = std::sqrt(spec.abs_lambda());
            u_domain_ = r.lambda < 0.0 ? Interval{0.0, kHalfPi / k_} : Interval{0.0, kInf};
            break;
    }
}

double CanonicalMap::forward(double x) const {
    const RawParams& r = spec_.raw;
    const double al = r.alpha;
    switch (spec_.id) {
        case ModelId::PT: return std::atan(k_ * std::tan(x)) / k_;
        case ModelId::RHO: return std::atan(k_ * x) / k_;
        case ModelId::S: return 2.0 / k_ * std::atan((std::tan(0.5 * x) + al) / k_);
        case ModelId::C: return std::log1p(al * x) / al;
        case ModelId::M: return x + std::log1p(al * std::exp(-x));
        case ModelId::E: return std::log1p(k_ * std::expm1(2.0 * x)) / (2.0 * k_);
        case ModelId::RM:
            return std::atan2(k_ * std::sin(x), std::cos(x) + 0.5 * al * std::sin(x)) / k_;
        case ModelId::SHO: return std::atan((al * x + r.beta) / k_) / k_;
        case ModelId::DRHO:
        case ModelId::DC:
        case ModelId::DRHO_EXT1:
            return r.lambda < 0.0 ? std::asin(k_ * x) / k_ : std::asinh(k_ * x) / k_;
    }
    throw Error(ErrorKind::UnknownFamily, "canonical map");
}

double CanonicalMap::inverse(double u) const {
    const RawParams& r = spec_.raw;
    const double al = r.alpha;
    switch (spec_.id) {
        case ModelId::PT: return std::atan(std::tan(k_ * u) / k_);
        case ModelId::RHO: return std::tan(k_ * u) / k_;
        case ModelId::S: return 2.0 * std::atan(k_ * std::tan(0.5 * k_ * u) - al);
        case ModelId::C: return std::expm1(al * u) / al;
        case ModelId::M: return u + std::log(-std::expm1(std::log(al) - u));
        case ModelId::E: return 0.5 * std::log1p(std::expm1(2.0 * k_ * u) / k_);
        case ModelId::RM: {
            const double t = k_ * u;
            return std::atan2(std::sin(t), k_ * std::cos(t) - 0.5 * al * std::sin(t));
        }
        case ModelId::SHO: return (k_ * std::tan(k_ * u) - r.beta) / al;
        case ModelId::DRHO:
        case ModelId::DC:
        case ModelId::DRHO_EXT1:
            return r.lambda < 0.0 ? std::sin(k_ * u) / k_ : std::sinh(k_ * u) / k_;
    }
    throw Error(ErrorKind::UnknownFamily, "canonical map");
}

double CanonicalMap::f_at(double u) const {
    switch (spec_.id) {
        case ModelId::RHO: return 1.0 / square(std::cos(k_ * u));
        case ModelId::DRHO:
        case ModelId::DC:
        case ModelId::DRHO_EXT1:
            return spec_.raw.lambda < 0.0 ? std::cos(k_ * u) : std::cosh(k_ * u);
        default: return eval_f(spec_, inverse(u));
    }
}

CanonicalMap build_canonical_map(const ModelSpec& spec) { return CanonicalMap(spec); }

}  // namespace dsusy

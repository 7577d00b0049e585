#pragma once

#include "dsusy/model_catalog.hpp"

namespace dsusy {

/// u(x) = integral of dx'/f(x'), strictly increasing because f > 0.
/// Every catalog family has an elementary antiderivative; the additive
/// constant is whatever that antiderivative gives (see u_domain()).
class CanonicalMap {
public:
    explicit CanonicalMap(const ModelSpec& spec);

    double forward(double x) const;
    double inverse(double u) const;
    /// Image of the x-domain; ends may be infinite.
    const Interval& u_domain() const { return u_domain_; }
    /// f evaluated at x(u).
    double f_at(double u) const;

private:
    ModelSpec spec_;
    Interval u_domain_;
    double k_ = 1.0;  // family-specific frequency of the closed form
};

CanonicalMap build_canonical_map(const ModelSpec& spec);

}  // namespace dsusy

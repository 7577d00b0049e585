#include <doctest.h>

#include <cmath>

#include "dsusy/dsi_verifier.hpp"
#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"

using namespace dsusy;

namespace {
ModelSpec reference(ModelId id) { return build_model(id, reference_params(id)); }
}  // namespace

TEST_CASE("DSI residual for PT at a single point") {
    CHECK(dsi_residual(reference(ModelId::PT), 0.3).relative() < 1e-12);
}

TEST_CASE("DSI holds across hbar for every family") {
    for (ModelId id : kAllModels) {
        for (double hb : {0.25, 0.5, 1.0, 2.0}) {
            const ModelSpec s = build_model(id, reference_params_at_hbar(id, hb));
            const ResidualScan scan = scan_identity(s, Identity::Dsi, 200);
            CAPTURE(to_string(id));
            CAPTURE(hb);
            CHECK(scan.samples.size() == 200);
            CHECK(scan.max_relative < 1e-11);
        }
    }
}

TEST_CASE("a perturbed g shows up linearly in the residual") {
    const ModelSpec pt = reference(ModelId::PT);
    for (double x : {-0.7, 0.0, 0.3, 1.1}) {
        CHECK(std::abs(dsi_residual(pt, x, 1e-3).residual) == doctest::Approx(1e-3).epsilon(1e-9));
    }
}

TEST_CASE("condition 1 for PT against the hand-derived combination") {
    const ModelSpec pt = reference(ModelId::PT);
    const double al = 1.0, a = pt.a(), x = 0.3;
    // W = (1 + alpha) a tan x, f = 1 + alpha sin^2 x, dg/da = 2 (1 + alpha) a.
    const double t = std::tan(x), sec2 = 1.0 / (std::cos(x) * std::cos(x));
    const double by_hand =
        (1 + al) * a * t * (1 + al) * t - (1 + al * std::sin(x) * std::sin(x)) * (1 + al) * a * sec2 + (1 + al) * a;
    CHECK(std::abs(by_hand) < 1e-13);
    CHECK(condition1_residual(pt, x).relative() < 1e-12);
    CHECK(g_prime(pt, a) == doctest::Approx(2 * (1 + al) * a).epsilon(1e-14));
}

TEST_CASE("condition 1 for RHO uses dg/da = 8 alpha a") {
    const ModelSpec rho = reference(ModelId::RHO);
    CHECK(condition1_residual(rho, 1.0).relative() < 1e-12);
    CHECK(g_prime(rho, rho.a()) == doctest::Approx(8.0 * rho.a()).epsilon(1e-14));
}

TEST_CASE("the explicit-hbar family is routed away from the reductions") {
    const ModelSpec ext = reference(ModelId::DRHO_EXT1);
    for (auto fn : {&condition1_residual, &condition2_residual}) {
        try {
            fn(ext, 1.0);
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ExplicitHbarModel);
        }
    }
}

TEST_CASE("condition 2 vanishes for PT exactly") {
    const ModelSpec pt = reference(ModelId::PT);
    for (double x : interior_samples(pt, 25)) CHECK(condition2_residual(pt, x).residual == 0.0);
}

TEST_CASE("condition 1 and 2 over the ten hbar-independent families") {
    for (ModelId id : kAllModels) {
        if (has_explicit_hbar(id)) continue;
        const ModelSpec s = reference(id);
        CAPTURE(to_string(id));
        CHECK(scan_identity(s, Identity::Condition1, 200).max_relative < 1e-12);
        CHECK(scan_identity(s, Identity::Condition2, 100).max_relative < 1e-13);
    }
}

TEST_CASE("third mixed partial of a synthetic superpotential") {
    const auto w = [](const auto& x, const auto& a) { return a * a * x; };
    CHECK(third_mixed_partial(w, 0.7, 1.3) == 2.0);
    const auto affine = [](const auto& x, const auto& a) { return a * sin(x) + 3.0 * x * x; };
    CHECK(third_mixed_partial(affine, 0.7, 1.3) == 0.0);
}

TEST_CASE("relabelling i -> i+1 evaluates the same identity one step up") {
    for (ModelId id : kAllModels) {
        const ModelSpec p = partner_shift(reference(id));
        CAPTURE(to_string(id));
        for (double x : interior_samples(p, 20)) CHECK(dsi_residual(p, x).relative() < 1e-11);
    }
}

#include <doctest.h>

#include <cmath>

#include "dsusy/error.hpp"
#include "dsusy/model_catalog.hpp"
#include "dsusy/operators.hpp"

using namespace dsusy;

namespace {

RawParams pt_params(double A, double alpha, double hbar = 1.0) {
    RawParams r;
    r.hbar = hbar;
    r.A = A;
    r.alpha = alpha;
    return r;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("PT derived parameters") {
    const ModelSpec s = build_model(ModelId::PT, pt_params(2.0, 1.0));
    REQUIRE(s.derived.delta);
    CHECK(*s.derived.delta == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(s.a() == doctest::Approx((1.0 + std::sqrt(3.0)) / 2.0).epsilon(1e-14));
    // Delta^2 = (1 + alpha)^2 hbar^2 + 4 A (A - hbar)
    CHECK(*s.derived.delta * *s.derived.delta == doctest::Approx(4.0 + 8.0).epsilon(1e-14));
}

TEST_CASE("RHO derived parameters") {
    RawParams r;
    r.alpha = 1.0;
    r.omega = 2.0;
    const ModelSpec s = build_model(ModelId::RHO, r);
    CHECK(*s.derived.delta == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(s.a() == doctest::Approx(1.3090170).epsilon(1e-7));
    CHECK(s.b() == doctest::Approx(-0.3090170).epsilon(1e-7));
    CHECK(s.a() + s.b() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("constraint violations name the inequality") {
    try {
        build_model(ModelId::PT, pt_params(0.5, 1.0));
        FAIL("A < hbar accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConstraintViolation);
        CHECK(std::string(e.what()).find("A > hbar") != std::string::npos);
    }
    CHECK(kind_of([] { build_model(ModelId::PT, pt_params(2.0, 0.0)); }) == ErrorKind::ConstraintViolation);
    CHECK(kind_of([] { build_model(ModelId::PT, pt_params(2.0, -1.0)); }) == ErrorKind::ConstraintViolation);

    RawParams ext = reference_params(ModelId::DRHO_EXT1);
    ext.lambda = 0.25;
    CHECK(kind_of([&] { build_model(ModelId::DRHO_EXT1, ext); }) == ErrorKind::ConstraintViolation);
    ext.lambda = -0.25;
    ext.omega = 0.5;  // omega must exceed 2 |lambda| (l + 1) = 0.5
    CHECK(kind_of([&] { build_model(ModelId::DRHO_EXT1, ext); }) == ErrorKind::ConstraintViolation);

    RawParams e = reference_params(ModelId::E);
    e.B = 3.0;  // B > A^2 fails
    CHECK(kind_of([&] { build_model(ModelId::E, e); }) == ErrorKind::ConstraintViolation);
    RawParams sho = reference_params(ModelId::SHO);
    sho.alpha = 0.01;  // alpha > beta^2 fails
    CHECK(kind_of([&] { build_model(ModelId::SHO, sho); }) == ErrorKind::ConstraintViolation);
    RawParams rho = reference_params(ModelId::RHO);
    rho.l = -1;
    CHECK(kind_of([&] { build_model(ModelId::RHO, rho); }) == ErrorKind::ConstraintViolation);
}

TEST_CASE("partner shift moves a only") {
    const ModelSpec pt = build_model(ModelId::PT, pt_params(2.0, 1.0));
    CHECK(partner_shift(pt).a() == doctest::Approx(2.3660254).epsilon(1e-7));
    CHECK(partner_shift(partner_shift(pt)).a() == pt.a() + 2.0);
    CHECK(partner_shift(pt, 2).a() == pt.a() + 2.0);

    const ModelSpec ext = build_model(ModelId::DRHO_EXT1, reference_params(ModelId::DRHO_EXT1));
    CHECK(ext.a() == 2.5);
    const ModelSpec p = partner_shift(ext);
    CHECK(p.a() == 3.5);
    CHECK(p.b() == -1.5);
    CHECK(p.raw == ext.raw);
}

TEST_CASE("catalog contents") {
    const auto cat = list_catalog();
    CHECK(cat.size() == 11);
    const RawParams ext = reference_params(ModelId::DRHO_EXT1);
    CHECK(ext.hbar == 1.0);
    CHECK(ext.omega == 2.0);
    CHECK(ext.lambda == -0.25);
    CHECK(ext.l == 0);
    const RawParams pt = reference_params(ModelId::PT);
    CHECK(pt.hbar == 1.0);
    CHECK(pt.alpha == 1.0);
    CHECK(pt.A == 2.0);
    for (const auto& e : cat) {
        CHECK(model_from_string(to_string(e.id)) == e.id);
        CHECK_NOTHROW(build_model(e.id, e.reference));
    }
    CHECK_FALSE(model_from_string("XYZ"));
}

TEST_CASE("deforming function is positive on every domain") {
    for (ModelId id : kAllModels) {
        for (double hb : {0.5, 1.0, 2.0}) {
            const ModelSpec s = build_model(id, reference_params_at_hbar(id, hb));
            for (double x : interior_samples(s, 200)) {
                CAPTURE(to_string(id));
                CAPTURE(x);
                CHECK(eval_f(s, x) > 0.0);
            }
        }
    }
}

TEST_CASE("build_model is idempotent on its raw part") {
    for (ModelId id : kAllModels) {
        const ModelSpec once = build_model(id, reference_params(id));
        const ModelSpec twice = build_model(id, once.raw);
        CHECK(twice.raw == once.raw);
        CHECK(twice.a() == once.a());
        CHECK(twice.b() == once.b());
    }
}

TEST_CASE("radial families satisfy a + b = l + 1") {
    for (ModelId id : {ModelId::RHO, ModelId::DRHO, ModelId::DRHO_EXT1}) {
        for (int l = 0; l <= 3; ++l) {
            RawParams r = reference_params(id);
            r.l = l;
            if (id == ModelId::DRHO_EXT1) r.omega = 2.0 * 0.25 * (l + 1) + 1.0;
            const ModelSpec s = build_model(id, r);
            CHECK(s.a() + s.b() == doctest::Approx(l + 1.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("domains follow the lambda branch") {
    RawParams r = reference_params(ModelId::DC);
    r.lambda = -0.25;
    const ModelSpec neg = build_model(ModelId::DC, r);
    CHECK(neg.domain.x1 == 0.0);
    CHECK(neg.domain.x2 == doctest::Approx(2.0));
    r.lambda = 0.25;
    CHECK(std::isinf(build_model(ModelId::DC, r).domain.x2));
}

TEST_CASE("interior samples avoid the ends") {
    for (ModelId id : kAllModels) {
        const ModelSpec s = build_model(id, reference_params(id));
        const Interval w = probe_window(s);
        const auto xs = interior_samples(s, 200);
        CHECK(xs.size() == 200);
        for (double x : xs) {
            CHECK(x >= w.x1 + 0.02 * w.length() - 1e-12);
            CHECK(x <= w.x2 - 0.02 * w.length() + 1e-12);
        }
    }
}

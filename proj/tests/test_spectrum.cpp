#include <doctest.h>

#include <cmath>

#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"

using namespace dsusy;

namespace {
ModelSpec reference(ModelId id) { return build_model(id, reference_params(id)); }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::IoError;
}
}  // namespace

TEST_CASE("g(a) values") {
    const ModelSpec pt = reference(ModelId::PT);
    CHECK(g_of_a(pt, (1 + std::sqrt(3.0)) / 2) == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g_of_a(reference(ModelId::DRHO_EXT1), 2.5) == doctest::Approx(6.25).epsilon(1e-15));
}

TEST_CASE("dg/da matches a difference quotient") {
    for (ModelId id : kAllModels) {
        const ModelSpec s = reference(id);
        const double a = s.a(), h = 1e-4;
        const double fd = (g_of_a(s, a + h) - g_of_a(s, a - h)) / (2 * h);
        CAPTURE(to_string(id));
        CHECK(g_prime(s, a) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("level energies") {
    const ModelSpec pt = reference(ModelId::PT);
    // hbar^2 (1 + alpha) n (n + 1) + hbar Delta n at n = 1
    CHECK(energy_level(pt, 1) == doctest::Approx(4 + 2 * std::sqrt(3.0)).epsilon(1e-14));
    for (ModelId id : kAllModels) CHECK(energy_level(reference(id), 0) == 0.0);
    CHECK(energy_level(reference(ModelId::DRHO), 2) == doctest::Approx(14.0).epsilon(1e-14));
    // 4 hbar |lambda| n (n hbar + 2a) with a = 2.5
    const ModelSpec ext = reference(ModelId::DRHO_EXT1);
    for (int n = 0; n <= 5; ++n) CHECK(energy_level(ext, n) == doctest::Approx(n * (n + 5.0)).epsilon(1e-14));
    CHECK(energy_level(ext, 1) == doctest::Approx(6.0));
}

TEST_CASE("absolute energies") {
    CHECK(absolute_energy(reference(ModelId::PT), 0) == doctest::Approx(3 + std::sqrt(3.0)).epsilon(1e-12));
    CHECK(absolute_energy(reference(ModelId::RHO), 1) ==
          doctest::Approx(10 + 2 * std::sqrt(5.0) + 1.5 * std::sqrt(5.0) + 2.5).epsilon(1e-12));
    const ModelSpec ext = reference(ModelId::DRHO_EXT1);
    CHECK(absolute_energy(ext, 1) == doctest::Approx(6.0 + ground_energy_shift(ext)).epsilon(1e-13));
}

TEST_CASE("level range errors") {
    CHECK(kind_of([] { energy_level(reference(ModelId::PT), -1); }) == ErrorKind::LevelOutOfRange);
    // Morse has a finite ladder at the reference set.
    const ModelSpec m = reference(ModelId::M);
    const int top = validity_limit(m);
    CHECK(top < 64);
    CHECK_NOTHROW(energy_level(m, top));
    CHECK(kind_of([&] { energy_level(m, top + 1); }) == ErrorKind::LevelOutOfRange);
}

TEST_CASE("DRHO with lambda > 0 has a finite ladder") {
    RawParams r = reference_params(ModelId::DRHO);
    r.lambda = 0.25;
    const ModelSpec s = build_model(ModelId::DRHO, r);
    const int top = validity_limit(s);
    CHECK(top < 64);
    for (int n = 0; n < top; ++n) CHECK(energy_level(s, n + 1) > energy_level(s, n));
    // the next difference is no longer positive
    CHECK(g_difference(s, top + 1) <= g_difference(s, top));
}

TEST_CASE("levels are strictly increasing in the validity range") {
    for (ModelId id : kAllModels) {
        const ModelSpec s = reference(id);
        const int top = std::min(validity_limit(s), 10);
        for (int n = 0; n < top; ++n) CHECK(energy_level(s, n + 1) > energy_level(s, n));
    }
}

TEST_CASE("shape-invariance energy ladder") {
    for (ModelId id : kAllModels) {
        const ModelSpec s = reference(id);
        const ModelSpec p = partner_shift(s);
        const int top = std::min(validity_limit(s) - 1, 5);
        for (int n = 0; n <= top; ++n) {
            const double e_next = energy_level(s, n + 1), e_n = energy_level(s, n);
            CAPTURE(to_string(id));
            CAPTURE(n);
            CHECK(e_next - e_n == doctest::Approx(g_of_a(s, s.a() + (n + 1) * s.hbar()) - g_of_a(s, s.a() + n * s.hbar())));
            CHECK(g_difference(p, n) == doctest::Approx(e_next - energy_level(s, 1)).epsilon(1e-12));
        }
    }
}

TEST_CASE("printed table agrees except for the recorded entries") {
    for (ModelId id : kAllModels) {
        const ModelSpec s = reference(id);
        const int top = std::min(5, validity_limit(s));
        bool all_match = true;
        for (int n = 0; n <= top; ++n) {
            const TableCheck t = table_cross_check(s, n);
            CHECK(t.match == (t.rel_diff <= kTableTolerance));
            all_match = all_match && t.match;
        }
        CAPTURE(to_string(id));
        const bool expected_mismatch = id == ModelId::RM || id == ModelId::SHO;
        CHECK(all_match == !expected_mismatch);
        if (expected_mismatch) {
            CHECK(kind_of([&] { energy_level_strict(s, 1); }) == ErrorKind::TableMismatch);
            CHECK_NOTHROW(energy_level(s, 1));
        } else {
            CHECK_NOTHROW(energy_level_strict(s, top));
        }
    }
}

TEST_CASE("compute_spectrum bundles levels and the ground shift") {
    const ModelSpec pt = reference(ModelId::PT);
    const SpectrumResult r = compute_spectrum(pt, 4);
    CHECK(r.levels.size() == 5);
    CHECK(r.levels[0].e_minus == 0.0);
    CHECK(r.e0 == doctest::Approx(3 + std::sqrt(3.0)));
    for (const auto& l : r.levels) CHECK(l.e_abs == doctest::Approx(l.e_minus + r.e0));
}

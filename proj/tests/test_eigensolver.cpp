#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dsusy/canonical_map.hpp"
#include "dsusy/eigensolver.hpp"
#include "dsusy/error.hpp"
#include "dsusy/operators.hpp"
#include "dsusy/spectrum.hpp"
#include "dsusy/wavefunction_lab.hpp"
#include "oracles.hpp"

using namespace dsusy;

namespace {

ModelSpec reference(ModelId id) { return build_model(id, reference_params(id)); }

struct Tridiag {
    std::vector<double> diag, off;
};

Tridiag random_tridiag(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tridiag t;
    for (std::size_t i = 0; i < n; ++i) t.diag.push_back(4.0 * u(rng));
    for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(u(rng));
    return t;
}

Eigen::MatrixXd dense(const Tridiag& t) {
    const auto n = static_cast<Eigen::Index>(t.diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = t.diag[i];
    for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = t.off[i];
    return m;
}

}  // namespace

TEST_CASE("tridiagonal eigenvalues against a dense solver") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const Tridiag t = random_tridiag(120, seed);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(t));
        const auto ours = tridiagonal_eigenvalues(t.diag, t.off, 9);
        REQUIRE(ours.size() == 10);
        for (std::size_t k = 0; k < ours.size(); ++k) {
            CHECK(ours[k] == doctest::Approx(es.eigenvalues()(static_cast<Eigen::Index>(k))).epsilon(1e-12));
        }
        for (std::size_t k : {0u, 4u, 9u}) {
            const auto v = tridiagonal_eigenvector(t.diag, t.off, ours[k]);
            const Eigen::VectorXd ref = es.eigenvectors().col(static_cast<Eigen::Index>(k));
            double dot = 0.0, norm = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                dot += v[i] * ref(static_cast<Eigen::Index>(i));
                norm += v[i] * v[i];
            }
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("canonical map closed forms") {
    CHECK(CanonicalMap(reference(ModelId::RHO)).forward(1.0) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
    CHECK(CanonicalMap(reference(ModelId::DRHO_EXT1)).forward(1.0) ==
          doctest::Approx(std::numbers::pi / 3).epsilon(1e-14));
}

TEST_CASE("canonical map differences equal the integral of 1/f") {
    for (ModelId id : kAllModels) {
        for (double hb : {0.5, 1.0}) {
            const ModelSpec s = build_model(id, reference_params_at_hbar(id, hb));
            const CanonicalMap map(s);
            const auto xs = interior_samples(s, 9);
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                const double want = oracle::integrate([&](double x) { return 1.0 / eval_f(s, x); }, xs[i], xs[i + 1]);
                CAPTURE(to_string(id));
                CHECK(map.forward(xs[i + 1]) - map.forward(xs[i]) == doctest::Approx(want).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("canonical map is monotone and invertible") {
    for (ModelId id : kAllModels) {
        const ModelSpec s = reference(id);
        const CanonicalMap map(s);
        double prev = -kInf;
        for (double x : interior_samples(s, 200)) {
            const double u = map.forward(x);
            CAPTURE(to_string(id));
            CHECK(u > prev);
            prev = u;
            CHECK(std::abs(map.inverse(u) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
            CHECK(map.f_at(u) == doctest::Approx(eval_f(s, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("PT levels") {
    const ModelSpec pt = reference(ModelId::PT);
    const EigenSolution sol = solve_levels(pt, 4);
    REQUIRE(sol.eigenvalues.size() >= 5);
    CHECK(std::abs(sol.eigenvalues[0]) < 1e-7);
    CHECK(sol.eigenvalues[1] == doctest::Approx(4 + 2 * std::sqrt(3.0)).epsilon(1e-6));
    for (std::size_t k = 1; k < sol.eigenvalues.size(); ++k) CHECK(sol.eigenvalues[k] > sol.eigenvalues[k - 1]);
}

TEST_CASE("rational extension is isospectral with DRHO") {
    const EigenSolution ext = solve_levels(reference(ModelId::DRHO_EXT1), 3);
    const EigenSolution plain = solve_levels(reference(ModelId::DRHO), 3);
    CHECK(ext.eigenvalues[1] == doctest::Approx(6.0).epsilon(1e-6));
    for (int n = 0; n <= 3; ++n) CHECK(std::abs(ext.eigenvalues[n] - plain.eigenvalues[n]) < 1e-6 * (1 + n * (n + 5.0)));
}

TEST_CASE("oracle agreement for quick families") {
    for (ModelId id : {ModelId::PT, ModelId::RHO, ModelId::S, ModelId::DRHO, ModelId::DC}) {
        const ModelSpec s = reference(id);
        const EigenSolution sol = solve_levels(s, 4);
        for (int n = 0; n <= 4; ++n) {
            const double exact = energy_level(s, n);
            CAPTURE(to_string(id));
            CAPTURE(n);
            CHECK(std::abs(sol.eigenvalues[n] - exact) <= 1e-6 * (1 + std::abs(exact)));
        }
    }
}

TEST_CASE("eigenvectors: node count and orthonormality") {
    const ModelSpec s = reference(ModelId::RHO);
    const EigenSolution sol = solve_levels(s, 4);
    const IndexRange all{0, sol.eigenvectors[0].size()};
    for (int n = 0; n <= 4; ++n) {
        CHECK(count_nodes(sol.eigenvectors[n]) == n);
        for (int m = 0; m <= n; ++m) {
            // u-grid eigenvectors are orthonormal with plain h-weighted sums of phi = sqrt(f) psi.
            const double ip = inner_product(s, sol.eigenvectors[n], sol.eigenvectors[m], all);
            CHECK(ip == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("halving the spacing barely moves extrapolated levels") {
    const ModelSpec s = reference(ModelId::PT);
    GridSettings coarse, fine;
    fine.n_points = 2 * coarse.n_points;
    const auto a = solve_levels(s, 3, coarse), b = solve_levels(s, 3, fine);
    for (int n = 1; n <= 3; ++n) CHECK(std::abs(a.eigenvalues[n] - b.eigenvalues[n]) < 1e-7 * std::abs(b.eigenvalues[n]));
}

TEST_CASE("truncation that cannot contain the states is reported") {
    GridSettings g;
    // The tail search is capped at a multiple of the initial extent; the
    // Coulomb states reach far beyond it.
    g.initial_extent = 1e-3;
    g.max_extensions = 0;
    try {
        solve_levels(reference(ModelId::C), 4, g);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TruncationUnsafe);
    }
}

TEST_CASE("node counter on synthetic data") {
    const GridFunction s3 = GridFunction::sample({0.0, 1.0}, 401, Coordinate::X,
                                                 [](double x) { return std::sin(4 * std::numbers::pi * x); });
    CHECK(count_nodes(s3) == 3);
}

TEST_CASE("eigenvector export writes two columns") {
    const ModelSpec s = reference(ModelId::PT);
    const EigenSolution sol = solve_levels(s, 1);
    std::ostringstream os;
    write_eigenvector(os, s, sol.eigenvectors[1], Coordinate::X);
    std::istringstream is(os.str());
    double x = 0, v = 0, prev = -kInf;
    std::size_t rows = 0;
    while (is >> x >> v) {
        CHECK(x > prev);
        CHECK(s.domain.contains(x));
        prev = x;
        ++rows;
    }
    CHECK(rows == sol.eigenvectors[1].size());
}

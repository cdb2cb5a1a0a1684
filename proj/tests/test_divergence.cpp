#include <doctest.h>

#include <cmath>

#include "qjd/catalog.hpp"
#include "qjd/divergence.hpp"

using namespace qjd;

namespace {

HermitianMatrix scalar(double v) { return HermitianMatrix(CMatrix::Identity(1, 1) * v); }

}  // namespace

TEST_CASE("quadrature grid invariants and polynomial exactness") {
    for (int k : {1, 2, 4, 8, 16, 32}) {
        auto grid = QuadratureGrid::gauss_legendre(k);
        CHECK(grid.weights_t.minCoeff() > 0.0);
        CHECK(grid.weights_t.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(grid.nodes_t.minCoeff() > 0.0);
        CHECK(grid.nodes_t.maxCoeff() < 1.0);
        for (int i = 1; i < k; ++i) CHECK(grid.nodes_t(i) > grid.nodes_t(i - 1));

        // exact for monomials up to degree 2k-1: integral of x^d over [0,1]
        for (int d = 0; d < 2 * k; ++d) {
            double acc = 0.0;
            for (int i = 0; i < k; ++i) acc += grid.weights_t(i) * std::pow(grid.nodes_t(i), d);
            CHECK(acc == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(QuadratureGrid::gauss_legendre(0), validation_error);
}

TEST_CASE("xi_point endpoints") {
    std::mt19937_64 rng(4);
    auto a = random_pd(3, 0.2, 5.0, rng);
    auto b = random_pd(3, 0.2, 5.0, rng);

    CHECK((xi_point(a, b, 0.3, 0.0, 0.0).mat() - a.mat()).norm() <= 1e-14);
    CHECK((xi_point(a, b, 0.3, 1.0, 1.0).mat() - b.mat()).norm() <= 1e-13);
    auto mid = xi_point(a, b, 0.5, 0.0, 1.0);
    CHECK((mid.mat() - 0.5 * (a.mat() + b.mat())).norm() <= 1e-13);

    CHECK_THROWS_AS(xi_point(a, b, 1.0, 0.5, 0.5), validation_error);
    CHECK_THROWS_AS(xi_point(a, b, 0.5, -0.1, 0.5), validation_error);
}

TEST_CASE("jensen_divergence examples") {
    auto q = catalog_get("quadratic").generator;
    std::mt19937_64 rng(10);
    auto a = random_pd(3, 0.2, 5.0, rng);
    auto b = random_pd(3, 0.2, 5.0, rng);

    CHECK(jensen_divergence(q, DivergenceParams(0.3), a, a) == doctest::Approx(0.0));

    auto affine = catalog_get("affine:2,-1").generator;
    CHECK(std::abs(jensen_divergence(affine, DivergenceParams(0.7), a, b)) <= 1e-12);

    // scalar quadratic: J = lambda(1-lambda)(b-a)^2
    CHECK(jensen_divergence(q, DivergenceParams(0.5), scalar(1.0), scalar(3.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS((void)DivergenceParams(0.0), validation_error);
    CHECK_THROWS_AS((void)DivergenceParams(1.0), validation_error);
}

TEST_CASE("integral representation identities") {
    auto q = catalog_get("quadratic").generator;
    auto x = catalog_get("xlogx").generator;
    std::mt19937_64 rng(20);
    auto a = random_pd(3, 0.2, 5.0, rng);
    auto b = random_pd(3, 0.2, 5.0, rng);

    // A = B: integrand vanishes identically
    auto grid1 = QuadratureGrid::gauss_legendre(1);
    CHECK(jensen_integral_rep(x, DivergenceParams(0.4), a, a, grid1) == 0.0);

    // quadratic: Df' = 2 Id, integrand constant in s, linear weight in t;
    // one Gauss node reproduces lambda(1-lambda) tr (B-A)^2
    double tr2 = (b.mat() - a.mat()).squaredNorm();
    double expected = 0.5 * 0.5 * tr2;
    CHECK(jensen_integral_rep(q, DivergenceParams(0.5), a, b, grid1) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(jensen_divergence(q, DivergenceParams(0.5), a, b) ==
          doctest::Approx(expected).epsilon(1e-12));

    // xlogx at K=32 matches the direct formula, and node doubling is stable
    auto grid = QuadratureGrid::gauss_legendre(32);
    auto grid2 = QuadratureGrid::gauss_legendre(64);
    double direct = jensen_divergence(x, DivergenceParams(0.3), a, b);
    double integral = jensen_integral_rep(x, DivergenceParams(0.3), a, b, grid);
    double refined = jensen_integral_rep(x, DivergenceParams(0.3), a, b, grid2);
    CHECK(std::abs(integral - direct) <= 1e-8 * (1.0 + std::abs(direct)));
    CHECK(std::abs(refined - integral) <= 1e-10);
}

TEST_CASE("serial and parallel quadrature paths agree bitwise") {
    auto x = catalog_get("xlogx").generator;
    auto grid = QuadratureGrid::gauss_legendre(24);
    for (std::uint64_t i = 0; i < 5; ++i) {
        std::mt19937_64 rng(derive_seed(30, 0, i));
        auto a = random_pd(4, 0.2, 5.0, rng);
        auto b = random_pd(4, 0.2, 5.0, rng);
        double serial = jensen_integral_rep_serial(x, DivergenceParams(0.5), a, b, grid);
        double parallel = jensen_integral_rep(x, DivergenceParams(0.5), a, b, grid);
        CHECK(serial == parallel);
    }
}

TEST_CASE("divergence properties on samples") {
    auto names = {"quadratic", "xlogx", "power:1.5"};
    for (const char* name : names) {
        auto g = catalog_get(name).generator;
        for (std::uint64_t i = 0; i < 40; ++i) {
            std::mt19937_64 rng(derive_seed(40, 1, i));
            auto a = random_pd(3, 0.2, 5.0, rng);
            auto b = random_pd(3, 0.2, 5.0, rng);
            double lambda = 0.1 + 0.8 * (static_cast<double>(i) / 40.0);

            double j1 = jensen_divergence(g, DivergenceParams(lambda), a, b);
            CHECK(j1 >= -1e-10);

            // swap symmetry
            double j2 = jensen_divergence(g, DivergenceParams(1.0 - lambda), b, a);
            CHECK(j1 == doctest::Approx(j2).epsilon(1e-12));

            // unitary invariance
            auto u = random_unitary(3, rng);
            auto ua = HermitianMatrix::hermitian_part(u * a.mat() * u.adjoint());
            auto ub = HermitianMatrix::hermitian_part(u * b.mat() * u.adjoint());
            double j3 = jensen_divergence(g, DivergenceParams(lambda), ua, ub);
            CHECK(j3 == doctest::Approx(j1).epsilon(1e-10));
        }
    }
}

TEST_CASE("cone linearity in the generator") {
    auto q = catalog_get("quadratic").generator;
    auto x = catalog_get("xlogx").generator;
    GeneratorFunction sum;
    sum.name = "quadratic+xlogx";
    sum.f = [q, x](double v) { return q.f(v) + x.f(v); };
    sum.f1 = [q, x](double v) { return q.f1(v) + x.f1(v); };
    sum.f2 = [q, x](double v) { return q.f2(v) + x.f2(v); };
    sum.singular_at_zero = true;
    GeneratorFunction scaled;
    scaled.name = "3*xlogx";
    scaled.f = [x](double v) { return 3.0 * x.f(v); };
    scaled.f1 = [x](double v) { return 3.0 * x.f1(v); };
    scaled.f2 = [x](double v) { return 3.0 * x.f2(v); };
    scaled.singular_at_zero = true;

    for (std::uint64_t i = 0; i < 30; ++i) {
        std::mt19937_64 rng(derive_seed(50, 2, i));
        auto a = random_pd(3, 0.2, 5.0, rng);
        auto b = random_pd(3, 0.2, 5.0, rng);
        DivergenceParams p(0.4);
        double jq = jensen_divergence(q, p, a, b);
        double jx = jensen_divergence(x, p, a, b);
        CHECK(jensen_divergence(sum, p, a, b) == doctest::Approx(jq + jx).epsilon(1e-10));
        CHECK(jensen_divergence(scaled, p, a, b) == doctest::Approx(3.0 * jx).epsilon(1e-10));
    }
}

TEST_CASE("evaluate_divergence report") {
    auto q = catalog_get("quadratic").generator;
    std::mt19937_64 rng(60);
    auto a = random_pd(2, 0.2, 5.0, rng);
    auto b = random_pd(2, 0.2, 5.0, rng);
    auto report = evaluate_divergence(q, DivergenceParams(0.5), a, b, 8);
    CHECK(report.direct == doctest::Approx(report.integral).epsilon(1e-12));
    CHECK(report.node_doubling_delta <= 1e-12 * (1.0 + std::abs(report.direct)));
    CHECK(report.quadrature_nodes == 8);
}

TEST_CASE("pairwise sum") {
    std::vector<double> vals(1000);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = 1.0 / static_cast<double>(i + 1);
    double expected = 0.0;
    for (double v : vals) expected += v;
    CHECK(pairwise_sum(vals) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(pairwise_sum({}) == 0.0);
}

#include <doctest.h>

#include <cmath>

#include "qjd/calculus.hpp"
#include "qjd/catalog.hpp"

using namespace qjd;

namespace {

GeneratorFunction quadratic() { return catalog_get("quadratic").generator; }
GeneratorFunction xlogx() { return catalog_get("xlogx").generator; }

HermitianMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    int n = static_cast<int>(rows.size());
    CMatrix m(n, n);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return HermitianMatrix(m);
}

}  // namespace

TEST_CASE("divided difference") {
    auto q = quadratic();
    CHECK(divided_difference_f(q, 1.0, 3.0) == doctest::Approx(4.0));         // x + y
    CHECK(divided_difference_f(q, 2.0, 2.0) == doctest::Approx(4.0));         // f'(2)
    CHECK(divided_difference_f1(q, 1.0, 7.0) == doctest::Approx(2.0));        // (f')^[1] = 2

    // near-degenerate pair vs 50-digit reference
    auto x = xlogx();
    double dd = divided_difference_f(x, 2.0, 2.0 + 1e-9);
    CHECK(dd == doctest::Approx(1.693147180809945309).epsilon(1e-9));

    CHECK_THROWS_AS(divided_difference_f(x, -1.0, 2.0), spectrum_domain_error);
}

TEST_CASE("apply_function and trace_function") {
    GeneratorFunction ident;
    ident.name = "identity";
    ident.f = [](double v) { return v; };
    ident.f1 = [](double) { return 1.0; };
    ident.f2 = [](double) { return 0.0; };

    auto a = random_pd(3, 0.2, 5.0, std::uint64_t{17});
    CHECK((apply_function(ident, a).mat() - a.mat()).norm() <= 1e-12);

    auto sq = from_rows({{2, 1}, {1, 2}});
    auto sq2 = apply_function(quadratic(), sq);
    CHECK(sq2.mat()(0, 0).real() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sq2.mat()(0, 1).real() == doctest::Approx(4.0).epsilon(1e-12));

    auto eye = HermitianMatrix(CMatrix::Identity(4, 4));
    CHECK(apply_function(xlogx(), eye).mat().norm() <= 1e-13);
    CHECK(trace_function(xlogx(), eye) == doctest::Approx(0.0));

    CHECK(trace_function(quadratic(), from_rows({{1, 0}, {0, 2}})) == doctest::Approx(5.0));

    // zero eigenvalue admitted through f_at_zero, negatives rejected
    auto zero = HermitianMatrix(CMatrix::Zero(2, 2));
    CHECK(trace_function(xlogx(), zero) == doctest::Approx(0.0));
    CHECK_THROWS_AS(trace_function(xlogx(), from_rows({{-1, 0}, {0, 1}})), spectrum_domain_error);

    for (std::uint64_t i = 0; i < 20; ++i) {
        auto m = random_pd(4, 0.2, 5.0, derive_seed(31, 0, i));
        auto sd = eigendecompose(m);
        double expected = 0.0;
        for (int k = 0; k < 4; ++k) expected += sd.eigenvalues(k) * std::log(sd.eigenvalues(k));
        CHECK(trace_function(xlogx(), m) == doctest::Approx(expected).epsilon(1e-12));
        double tr = apply_function(xlogx(), m).mat().trace().real();
        CHECK(trace_function(xlogx(), m) == doctest::Approx(tr).epsilon(1e-12));
    }
}

TEST_CASE("frechet_apply closed forms") {
    std::mt19937_64 rng(5);
    auto b = random_hermitian(3, 1.0, rng);

    // A = cI: all divided differences equal f'(c)
    auto scaled = HermitianMatrix(CMatrix::Identity(3, 3) * 1.7);
    auto img = frechet_apply(xlogx(), scaled, b);
    double fp = std::log(1.7) + 1.0;
    CHECK((img.mat() - fp * b.mat()).norm() <= 1e-12);

    // f = x^2: Df[A]{B} = AB + BA
    auto a = random_pd(3, 0.2, 5.0, rng);
    img = frechet_apply(quadratic(), a, b);
    CMatrix expected = a.mat() * b.mat() + b.mat() * a.mat();
    CHECK((img.mat() - expected).norm() <= 1e-12 * expected.norm());

    CHECK_THROWS_AS(frechet_apply(xlogx(), HermitianMatrix(CMatrix::Zero(2, 2)), random_hermitian(2, 1.0, rng)),
                    spectrum_domain_error);
}

TEST_CASE("frechet_apply against the central-difference oracle") {
    auto g = xlogx();
    std::mt19937_64 rng(8);
    auto a = random_pd(4, 0.5, 3.0, rng);
    auto b = random_hermitian(4, 1.0, rng);
    auto exact = frechet_apply(g, a, b);

    double prev_err = 0.0;
    int step = 0;
    for (double t : {1e-2, 1e-3, 1e-4}) {
        auto fd = finite_diff_directional(g, a, b, t);
        double err = (fd.mat() - exact.mat()).norm();
        if (step > 0) {
            double order = std::log10(prev_err / err);
            CHECK(order > 1.8);  // central difference is O(t^2)
        }
        prev_err = err;
        ++step;
    }

    // quadratic: the central difference is exact for any step
    auto fd = finite_diff_directional(quadratic(), a, b, 0.3);
    CMatrix expected = a.mat() * b.mat() + b.mat() * a.mat();
    CHECK((fd.mat() - expected).norm() <= 1e-10 * expected.norm());

    CHECK_THROWS_AS(finite_diff_directional(g, a, b, 100.0), spectrum_domain_error);
}

TEST_CASE("frechet linearity, self-adjointness and commuting case") {
    auto g = xlogx();
    for (std::uint64_t i = 0; i < 30; ++i) {
        std::mt19937_64 rng(derive_seed(77, 1, i));
        auto a = random_pd(3, 0.2, 5.0, rng);
        auto b1 = random_hermitian(3, 1.0, rng);
        auto b2 = random_hermitian(3, 1.0, rng);

        auto lhs = frechet_apply(g, a, 2.0 * b1 + (-0.5) * b2);
        auto rhs = 2.0 * frechet_apply(g, a, b1) + (-0.5) * frechet_apply(g, a, b2);
        CHECK((lhs.mat() - rhs.mat()).norm() <= 1e-10 * (1.0 + rhs.mat().norm()));

        double p = hs_inner(frechet_apply(g, a, b1), b2);
        double q = hs_inner(b1, frechet_apply(g, a, b2));
        CHECK(p == doctest::Approx(q).epsilon(1e-10));
    }

    // commuting case: AB = BA implies Df[A]{B} = f'(A) B
    auto sd = eigendecompose(random_pd(3, 0.5, 4.0, std::uint64_t{12}));
    RVector other(3);
    other << 0.7, 1.3, 2.9;
    auto a = HermitianMatrix::hermitian_part(sd.eigenvectors * sd.eigenvalues.asDiagonal() *
                                             sd.eigenvectors.adjoint());
    auto b = HermitianMatrix::hermitian_part(sd.eigenvectors * other.asDiagonal() *
                                             sd.eigenvectors.adjoint());
    GeneratorFunction g2 = g;
    auto img = frechet_apply(g2, a, b);
    RVector fprime = sd.eigenvalues.unaryExpr([](double v) { return std::log(v) + 1.0; });
    RVector prod = fprime.cwiseProduct(other);
    CMatrix expected = sd.eigenvectors * prod.asDiagonal() * sd.eigenvectors.adjoint();
    CHECK((img.mat() - expected).norm() <= 1e-10 * (1.0 + expected.norm()));
}

TEST_CASE("superop_matrix structure") {
    // f = x^2: Df' = 2 Id
    auto a = random_pd(3, 0.2, 5.0, std::uint64_t{3});
    auto s = superop_matrix(quadratic(), a);
    CHECK((s.matrix - 2.0 * RMatrix::Identity(9, 9)).norm() <= 1e-12);

    // scalar case: 1x1 matrix (f''(a))
    auto scalar = HermitianMatrix(CMatrix::Identity(1, 1) * 0.8);
    auto s1 = superop_matrix(xlogx(), scalar);
    CHECK(s1.matrix(0, 0) == doctest::Approx(1.0 / 0.8).epsilon(1e-12));

    for (std::uint64_t i = 0; i < 25; ++i) {
        std::mt19937_64 rng(derive_seed(55, 2, i));
        int n = 2 + static_cast<int>(i % 3);
        auto base = random_pd(n, 0.2, 5.0, rng);
        auto sop = superop_matrix(xlogx(), base);

        CHECK((sop.matrix - sop.matrix.transpose()).norm() <= 1e-10);

        // action agrees with frechet_apply_fprime on random directions
        auto dir = random_hermitian(n, 1.0, rng);
        auto via_matrix = superop_apply(sop, dir);
        auto direct = frechet_apply_fprime(xlogx(), base, dir);
        CHECK((via_matrix.mat() - direct.mat()).norm() <= 1e-10 * (1.0 + direct.mat().norm()));

        // spectrum equals the divided-difference multiset of f'
        auto sd = eigendecompose(base);
        std::vector<double> expected;
        for (int j = 0; j < n; ++j) expected.push_back(1.0 / sd.eigenvalues(j));  // f''(lambda_j)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double dd = divided_difference_f1(xlogx(), sd.eigenvalues(j), sd.eigenvalues(k));
                expected.push_back(dd);
                expected.push_back(dd);
            }
        std::sort(expected.begin(), expected.end());
        Eigen::SelfAdjointEigenSolver<RMatrix> es(sop.matrix, Eigen::EigenvaluesOnly);
        for (int j = 0; j < n * n; ++j)
            CHECK(es.eigenvalues()(j) ==
                  doctest::Approx(expected[static_cast<std::size_t>(j)]).epsilon(1e-9));

        // f'' > 0 on the hull implies positive definiteness
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("superop_invert") {
    auto a = random_pd(2, 0.2, 5.0, std::uint64_t{9});
    auto s = superop_matrix(quadratic(), a);
    auto inv = superop_invert(s);
    CHECK((inv.matrix - 0.5 * RMatrix::Identity(4, 4)).norm() <= 1e-12);

    auto scalar = HermitianMatrix(CMatrix::Identity(1, 1) * 0.8);
    auto s1 = superop_invert(superop_matrix(xlogx(), scalar));
    CHECK(s1.matrix(0, 0) == doctest::Approx(0.8).epsilon(1e-12));

    for (std::uint64_t i = 0; i < 20; ++i) {
        int n = 2 + static_cast<int>(i % 3);
        auto base = random_pd(n, 0.2, 5.0, derive_seed(66, 3, i));
        auto sop = superop_matrix(xlogx(), base);
        auto sinv = superop_invert(sop);
        CHECK((sop.matrix * sinv.matrix - RMatrix::Identity(n * n, n * n)).norm() <= 1e-8);
    }

    // f'' = 0 makes Df'[A] singular
    auto affine = catalog_get("affine:1,0").generator;
    auto sop = superop_matrix(affine, a);
    CHECK_THROWS_AS((void)superop_invert(sop), precondition_error);
}

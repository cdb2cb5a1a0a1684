#include "qjd/calculus.hpp"

#include <cmath>
#include <sstream>

namespace qjd {

namespace {

constexpr double kEigZeroTol = 1e-10;

void require_domain(const GeneratorFunction& g, double x, const char* who) {
    if (g.singular_at_zero && x <= 0.0) {
        std::ostringstream os;
        os << who << ": argument " << x << " outside (0,inf) for generator " << g.name;
        throw spectrum_domain_error(os.str(), x);
    }
}

// Eigendecomposition with nonnegativity check; slightly negative eigenvalues
// (roundoff) are clamped to zero.
SpectralDecomposition eig_nonneg(const GeneratorFunction& g, const HermitianMatrix& a,
                                 const char* who) {
    SpectralDecomposition sd = eigendecompose(a);
    double rho = sd.eigenvalues.cwiseAbs().maxCoeff();
    double tol = kEigZeroTol * (1.0 + rho);
    for (int k = 0; k < sd.eigenvalues.size(); ++k) {
        double lam = sd.eigenvalues(k);
        if (lam < -tol) {
            std::ostringstream os;
            os << who << ": eigenvalue " << lam << " below domain [0,inf) of generator " << g.name;
            throw spectrum_domain_error(os.str(), lam);
        }
        if (lam < 0.0) sd.eigenvalues(k) = 0.0;
    }
    return sd;
}

SpectralDecomposition eig_pd(const GeneratorFunction& g, const HermitianMatrix& a,
                             const char* who) {
    SpectralDecomposition sd = eigendecompose(a);
    double lo = sd.eigenvalues.minCoeff();
    if (lo <= 0.0) {
        std::ostringstream os;
        os << who << ": eigenvalue " << lo << " not strictly positive (generator " << g.name
           << " differentiated)";
        throw spectrum_domain_error(os.str(), lo);
    }
    return sd;
}

double eval_f(const GeneratorFunction& g, double x) {
    if (x == 0.0) return g.f_at_zero;
    return g.f(x);
}

// Schur-multiplier application in the eigenbasis of A with a supplied
// divided-difference kernel.
template <typename Kernel>
HermitianMatrix schur_apply(const SpectralDecomposition& sd, const HermitianMatrix& b,
                            Kernel&& kernel) {
    const CMatrix& u = sd.eigenvectors;
    CMatrix bt = u.adjoint() * b.mat() * u;
    int n = static_cast<int>(sd.eigenvalues.size());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) bt(j, k) *= kernel(sd.eigenvalues(j), sd.eigenvalues(k));
    return HermitianMatrix::hermitian_part(u * bt * u.adjoint());
}

}  // namespace

double divided_difference(const std::function<double(double)>& g,
                          const std::function<double(double)>& g1, double x, double y,
                          double tau) {
    double scale = 1.0 + std::max(std::abs(x), std::abs(y));
    if (std::abs(x - y) > tau * scale) return (g(x) - g(y)) / (x - y);
    return g1(0.5 * (x + y));
}

double divided_difference_f(const GeneratorFunction& g, double x, double y) {
    require_domain(g, x, "divided_difference");
    require_domain(g, y, "divided_difference");
    return divided_difference(g.f, g.f1, x, y);
}

double divided_difference_f1(const GeneratorFunction& g, double x, double y) {
    require_domain(g, x, "divided_difference");
    require_domain(g, y, "divided_difference");
    return divided_difference(g.f1, g.f2, x, y);
}

HermitianMatrix apply_function(const GeneratorFunction& g, const HermitianMatrix& a) {
    SpectralDecomposition sd = eig_nonneg(g, a, "apply_function");
    int n = a.dim();
    RVector fx(n);
    for (int k = 0; k < n; ++k) fx(k) = eval_f(g, sd.eigenvalues(k));
    return HermitianMatrix::hermitian_part(sd.eigenvectors * fx.asDiagonal() *
                                           sd.eigenvectors.adjoint());
}

double trace_function(const GeneratorFunction& g, const HermitianMatrix& a) {
    SpectralDecomposition sd = eig_nonneg(g, a, "trace_function");
    double sum = 0.0;
    for (int k = 0; k < a.dim(); ++k) sum += eval_f(g, sd.eigenvalues(k));
    return sum;
}

HermitianMatrix frechet_apply(const GeneratorFunction& g, const HermitianMatrix& a,
                              const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw validation_error("frechet_apply: dimension mismatch");
    SpectralDecomposition sd = eig_pd(g, a, "frechet_apply");
    return schur_apply(sd, b,
                       [&](double x, double y) { return divided_difference(g.f, g.f1, x, y); });
}

HermitianMatrix frechet_apply_fprime(const GeneratorFunction& g, const HermitianMatrix& a,
                                     const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw validation_error("frechet_apply_fprime: dimension mismatch");
    SpectralDecomposition sd = eig_pd(g, a, "frechet_apply_fprime");
    return schur_apply(sd, b,
                       [&](double x, double y) { return divided_difference(g.f1, g.f2, x, y); });
}

SuperOperator superop_matrix(const GeneratorFunction& g, const HermitianMatrix& a) {
    int n = a.dim();
    SpectralDecomposition sd = eig_pd(g, a, "superop_matrix");
    auto basis = hermitian_basis(n);
    RMatrix m(n * n, n * n);
    for (int i = 0; i < n * n; ++i) {
        HermitianMatrix img = schur_apply(
            sd, basis[static_cast<std::size_t>(i)],
            [&](double x, double y) { return divided_difference(g.f1, g.f2, x, y); });
        m.col(i) = basis_coords(img);
    }
    return SuperOperator{n, std::move(m), a, g.name};
}

SuperOperator superop_invert(const SuperOperator& s) {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(s.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("superop_invert: eigensolver failed");
    double lo = solver.eigenvalues().minCoeff();
    double hi = solver.eigenvalues().cwiseAbs().maxCoeff();
    if (lo <= 1e-12 * hi) {
        std::ostringstream os;
        os << "superop_invert: Df'[A] near-singular (lambda_min = " << lo
           << "), Matrix Entropy Class precondition fails for generator " << s.generator;
        throw precondition_error(os.str());
    }
    RMatrix inv = solver.eigenvectors() * solver.eigenvalues().cwiseInverse().asDiagonal() *
                  solver.eigenvectors().transpose();
    return SuperOperator{s.dim, std::move(inv), s.base_point, s.generator};
}

HermitianMatrix superop_apply(const SuperOperator& s, const HermitianMatrix& b) {
    if (s.dim != b.dim()) throw validation_error("superop_apply: dimension mismatch");
    return from_basis_coords(s.dim, s.matrix * basis_coords(b));
}

HermitianMatrix finite_diff_directional(const GeneratorFunction& g, const HermitianMatrix& a,
                                        const HermitianMatrix& b, double t) {
    if (!(t > 0.0)) throw validation_error("finite_diff_directional: t must be > 0");
    HermitianMatrix plus = a + t * b;
    HermitianMatrix minus = a - t * b;
    for (const auto* m : {&plus, &minus}) {
        Eigen::SelfAdjointEigenSolver<CMatrix> s(m->mat(), Eigen::EigenvaluesOnly);
        double lo = s.eigenvalues().minCoeff();
        if (lo <= 0.0)
            throw spectrum_domain_error("finite_diff_directional: step leaves the PD cone", lo);
    }
    HermitianMatrix fp = apply_function(g, plus);
    HermitianMatrix fm = apply_function(g, minus);
    return (1.0 / (2.0 * t)) * (fp - fm);
}

}  // namespace qjd

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qjd/errors.hpp"

namespace qjd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// n x n complex self-adjoint matrix. The constructor validates Hermiticity
/// to absolute tolerance 1e-12 * (1 + max |entry|) and then stores the exact
/// Hermitian part (M + M*)/2 so downstream arithmetic never re-accumulates
/// the defect.
class HermitianMatrix {
public:
    explicit HermitianMatrix(CMatrix m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& mat() const { return mat_; }

    double max_abs() const;
    double frobenius_norm() const { return mat_.norm(); }

    /// Worst |M(j,k) - conj(M(k,j))| over all pairs; reports the pair.
    static double hermiticity_defect(const CMatrix& m, int* row = nullptr, int* col = nullptr);

    /// Internal fast path: hermitize without validation.
    static HermitianMatrix hermitian_part(const CMatrix& m);

private:
    struct unchecked_t {};
    HermitianMatrix(CMatrix m, unchecked_t) : mat_(std::move(m)) {}

    CMatrix mat_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double c, const HermitianMatrix& a);

/// Eigenvalues ascending; columns of `eigenvectors` are the eigenvectors.
struct SpectralDecomposition {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

/// Weights alpha_1..alpha_m in [0,1] summing to 1 (within 1e-14).
class ConvexCombination {
public:
    explicit ConvexCombination(std::vector<double> weights);
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }

private:
    std::vector<double> weights_;
};

SpectralDecomposition eigendecompose(const HermitianMatrix& a);

/// Hilbert-Schmidt inner product tr(AB), real for Hermitian arguments.
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

/// Loewner comparison A <= B: true iff
/// lambda_min(B - A) >= -tol * (1 + spectral_radius(B - A)).
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol = 1e-9);

double spectral_radius(const HermitianMatrix& a);

// --- seeded random generation -------------------------------------------

/// U diag(s) U* with s uniform in [spectrum_lo, spectrum_hi] and U from the
/// QR factor of a seeded complex Gaussian matrix. Deterministic per seed.
HermitianMatrix random_pd(int n, double spectrum_lo, double spectrum_hi, std::uint64_t seed);
HermitianMatrix random_pd(int n, double spectrum_lo, double spectrum_hi, std::mt19937_64& rng);

/// scale * (G + G*)/2 for seeded complex Gaussian G.
HermitianMatrix random_hermitian(int n, double scale, std::uint64_t seed);
HermitianMatrix random_hermitian(int n, double scale, std::mt19937_64& rng);

CVector random_vector(int n, double scale, std::mt19937_64& rng);
CMatrix random_unitary(int n, std::mt19937_64& rng);

/// Mixes (seed, stream, index) into an independent sub-seed; trial loops use
/// this so parallel and sequential execution draw identical samples.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// --- fixed orthonormal Hermitian basis ------------------------------------

/// Basis of the real n^2-dimensional space of Hermitian matrices, orthonormal
/// under hs_inner, in standard coordinates (not any eigenbasis). Order:
/// diagonal units e_j e_j*, then (e_j e_k* + e_k e_j*)/sqrt(2) for j<k, then
/// i(e_j e_k* - e_k e_j*)/sqrt(2) for j<k, pairs lexicographic.
std::vector<HermitianMatrix> hermitian_basis(int n);

RVector basis_coords(const HermitianMatrix& h);
HermitianMatrix from_basis_coords(int n, const RVector& coords);

}  // namespace qjd

#pragma once

#include <string>

#include "qjd/generator.hpp"
#include "qjd/hermitian.hpp"

namespace qjd {

/// The linear map Df'[A] on Hermitian matrices, stored as its n^2 x n^2 real
/// representation matrix in the fixed orthonormal Hermitian basis of
/// hermitian_basis(). Symmetry of `matrix` is the self-adjointness of Df'[A]
/// with respect to the Hilbert-Schmidt inner product.
struct SuperOperator {
    int dim;
    RMatrix matrix;
    HermitianMatrix base_point;
    std::string generator;
};

/// f(A) = U diag(f(lambda)) U*. Admits eigenvalues in [0,inf); a zero (or
/// negligibly negative) eigenvalue evaluates to f_at_zero.
HermitianMatrix apply_function(const GeneratorFunction& g, const HermitianMatrix& a);

/// tr f(A) = sum_k f(lambda_k).
double trace_function(const GeneratorFunction& g, const HermitianMatrix& a);

/// Df[A]{B}: in the eigenbasis of A, entrywise product of the rotated B with
/// the divided-difference table f^[1][lambda_j, lambda_k]. Requires a PD A.
HermitianMatrix frechet_apply(const GeneratorFunction& g, const HermitianMatrix& a,
                              const HermitianMatrix& b);

/// Df'[A]{B}: same Schur-multiplier construction with the table of f'.
HermitianMatrix frechet_apply_fprime(const GeneratorFunction& g, const HermitianMatrix& a,
                                     const HermitianMatrix& b);

/// Representation matrix of Df'[A], column i = coordinates of Df'[A]{E_i}.
SuperOperator superop_matrix(const GeneratorFunction& g, const HermitianMatrix& a);

/// Inverse map (Df'[A])^{-1}; throws precondition_error when
/// lambda_min <= 1e-12 * lambda_max (Matrix Entropy Class hypothesis fails).
SuperOperator superop_invert(const SuperOperator& s);

HermitianMatrix superop_apply(const SuperOperator& s, const HermitianMatrix& b);

/// Central difference (f(A+tB) - f(A-tB)) / (2t); the independent oracle for
/// frechet_apply. Throws spectrum_domain_error if a step leaves the PD cone.
HermitianMatrix finite_diff_directional(const GeneratorFunction& g, const HermitianMatrix& a,
                                        const HermitianMatrix& b, double t);

}  // namespace qjd

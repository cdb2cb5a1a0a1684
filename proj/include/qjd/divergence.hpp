#pragma once

#include <string>
#include <vector>

#include "qjd/calculus.hpp"

namespace qjd {

struct DivergenceParams {
    double lambda;
    explicit DivergenceParams(double l) : lambda(l) {
        if (!(l > 0.0 && l < 1.0))
            throw validation_error("DivergenceParams: lambda must lie strictly in (0,1)");
    }
};

/// Tensor-product quadrature on [0,1]^2, normalized so each axis integrates
/// the constant 1 exactly.
struct QuadratureGrid {
    RVector nodes_t, weights_t;
    RVector nodes_s, weights_s;
    std::string rule_name;

    static QuadratureGrid gauss_legendre(int nodes_per_axis);
};

/// K-point Gauss-Legendre rule on [0,1].
void gauss_legendre_unit(int k, RVector& nodes, RVector& weights);

/// The path point xi_{lambda,t,s}(A,B) = A + c(B-A) with
/// c = t*lambda + s*((1-t)*lambda + t*(1-lambda)) in [0,1].
HermitianMatrix xi_point(const HermitianMatrix& a, const HermitianMatrix& b, double lambda,
                         double t, double s);

/// Direct trace Jensen gap
/// (1-lambda) tr f(A) + lambda tr f(B) - tr f((1-lambda)A + lambda B).
double jensen_divergence(const GeneratorFunction& g, const DivergenceParams& p,
                         const HermitianMatrix& a, const HermitianMatrix& b);

/// Quadrature evaluation of the double-integral representation
/// lambda(1-lambda) int_0^1 ((1-t)lambda + t(1-lambda))
///   int_0^1 <Df'[xi_{lambda,t,s}(A,B)]{B-A}, B-A>_HS ds dt.
/// Node evaluations run in parallel when OpenMP is enabled; the summation
/// order is fixed (pairwise over the node grid) so the result is identical
/// across thread counts.
double jensen_integral_rep(const GeneratorFunction& g, const DivergenceParams& p,
                           const HermitianMatrix& a, const HermitianMatrix& b,
                           const QuadratureGrid& grid);

/// Serial reference path, kept for testing; must agree bit-for-bit with
/// jensen_integral_rep.
double jensen_integral_rep_serial(const GeneratorFunction& g, const DivergenceParams& p,
                                  const HermitianMatrix& a, const HermitianMatrix& b,
                                  const QuadratureGrid& grid);

struct DivergenceReport {
    std::string generator;
    double lambda;
    double direct;
    double integral;
    int quadrature_nodes;
    double node_doubling_delta;
};

/// Direct value, quadrature value at K nodes per axis, and the node-doubling
/// error estimate |value(2K) - value(K)|.
DivergenceReport evaluate_divergence(const GeneratorFunction& g, const DivergenceParams& p,
                                     const HermitianMatrix& a, const HermitianMatrix& b,
                                     int nodes_per_axis);

/// Fixed-order pairwise summation, independent of evaluation schedule.
double pairwise_sum(const std::vector<double>& values);

}  // namespace qjd

#include "qjd/divergence.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qjd {

namespace {

// Integrand over the node grid, flattened row-major in (t, s). Every entry
// carries its full quadrature weight so the total is a plain sum.
std::vector<double> integrand_values(const GeneratorFunction& g, const DivergenceParams& p,
                                     const HermitianMatrix& a, const HermitianMatrix& b,
                                     const QuadratureGrid& grid, bool parallel) {
    const double lambda = p.lambda;
    const HermitianMatrix diff = b - a;
    const int kt = static_cast<int>(grid.nodes_t.size());
    const int ks = static_cast<int>(grid.nodes_s.size());
    std::vector<double> vals(static_cast<std::size_t>(kt) * ks);

#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
#endif
    for (int i = 0; i < kt; ++i) {
        for (int j = 0; j < ks; ++j) {
            double t = grid.nodes_t(i);
            double s = grid.nodes_s(j);
            double w_line = (1.0 - t) * lambda + t * (1.0 - lambda);
            HermitianMatrix xi = xi_point(a, b, lambda, t, s);
            HermitianMatrix image = frechet_apply_fprime(g, xi, diff);
            double q = hs_inner(image, diff);
            vals[static_cast<std::size_t>(i) * ks + j] =
                grid.weights_t(i) * grid.weights_s(j) * w_line * q;
        }
    }
    (void)parallel;
    return vals;
}

double integral_rep_impl(const GeneratorFunction& g, const DivergenceParams& p,
                         const HermitianMatrix& a, const HermitianMatrix& b,
                         const QuadratureGrid& grid, bool parallel) {
    if (a.dim() != b.dim()) throw validation_error("jensen_integral_rep: dimension mismatch");
    auto vals = integrand_values(g, p, a, b, grid, parallel);
    return p.lambda * (1.0 - p.lambda) * pairwise_sum(vals);
}

}  // namespace

void gauss_legendre_unit(int k, RVector& nodes, RVector& weights) {
    if (k < 1) throw validation_error("gauss_legendre_unit: need at least one node");
    nodes.resize(k);
    weights.resize(k);
    // Newton iteration on P_k over [-1,1], then map to [0,1].
    for (int i = 0; i < k; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (k == 1) p1 = x;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double pk = (k == 1) ? x : p1;
            double pkm1 = (k == 1) ? 1.0 : p0;
            pp = k * (x * pk - pkm1) / (x * x - 1.0);
            double dx = pk / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes(k - 1 - i) = 0.5 * (x + 1.0);
        weights(k - 1 - i) = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

QuadratureGrid QuadratureGrid::gauss_legendre(int nodes_per_axis) {
    QuadratureGrid grid;
    gauss_legendre_unit(nodes_per_axis, grid.nodes_t, grid.weights_t);
    grid.nodes_s = grid.nodes_t;
    grid.weights_s = grid.weights_t;
    grid.rule_name = "gauss-legendre";
    return grid;
}

HermitianMatrix xi_point(const HermitianMatrix& a, const HermitianMatrix& b, double lambda,
                         double t, double s) {
    if (a.dim() != b.dim()) throw validation_error("xi_point: dimension mismatch");
    if (!(lambda > 0.0 && lambda < 1.0)) throw validation_error("xi_point: lambda outside (0,1)");
    if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0)
        throw validation_error("xi_point: t, s must lie in [0,1]");
    double c = t * lambda + s * ((1.0 - t) * lambda + t * (1.0 - lambda));
    return HermitianMatrix::hermitian_part(a.mat() + c * (b.mat() - a.mat()));
}

double jensen_divergence(const GeneratorFunction& g, const DivergenceParams& p,
                         const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw validation_error("jensen_divergence: dimension mismatch");
    double l = p.lambda;
    HermitianMatrix mix = HermitianMatrix::hermitian_part((1.0 - l) * a.mat() + l * b.mat());
    return (1.0 - l) * trace_function(g, a) + l * trace_function(g, b) - trace_function(g, mix);
}

double jensen_integral_rep(const GeneratorFunction& g, const DivergenceParams& p,
                           const HermitianMatrix& a, const HermitianMatrix& b,
                           const QuadratureGrid& grid) {
    return integral_rep_impl(g, p, a, b, grid, true);
}

double jensen_integral_rep_serial(const GeneratorFunction& g, const DivergenceParams& p,
                                  const HermitianMatrix& a, const HermitianMatrix& b,
                                  const QuadratureGrid& grid) {
    return integral_rep_impl(g, p, a, b, grid, false);
}

DivergenceReport evaluate_divergence(const GeneratorFunction& g, const DivergenceParams& p,
                                     const HermitianMatrix& a, const HermitianMatrix& b,
                                     int nodes_per_axis) {
    double direct = jensen_divergence(g, p, a, b);
    auto grid = QuadratureGrid::gauss_legendre(nodes_per_axis);
    auto grid2 = QuadratureGrid::gauss_legendre(2 * nodes_per_axis);
    double v1 = jensen_integral_rep(g, p, a, b, grid);
    double v2 = jensen_integral_rep(g, p, a, b, grid2);
    return DivergenceReport{g.name, p.lambda, direct, v1, nodes_per_axis, std::abs(v2 - v1)};
}

double pairwise_sum(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    std::vector<double> buf = values;
    std::size_t n = buf.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i < n / 2; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2 == 1) buf[n / 2] = buf[n - 1];
        n = half;
    }
    return buf[0];
}

}  // namespace qjd

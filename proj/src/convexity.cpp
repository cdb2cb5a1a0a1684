#include "qjd/convexity.hpp"

#include <cmath>
#include <limits>

#include "qjd/catalog.hpp"

namespace qjd {

namespace {

// Stream tags keeping the sample draws of the different probes independent
// while everything still derives from one user seed.
enum : std::uint64_t {
    kStreamJc = 0,
    kStreamQuadform = 1,
    kStreamInverse = 2,
    kStreamZeta = 3,
};

std::uint64_t trial_stream(std::uint64_t tag, int dim) {
    return (static_cast<std::uint64_t>(dim) << 8) | tag;
}

struct TrialOutcome {
    double margin = std::numeric_limits<double>::quiet_NaN();
    bool failed = false;
    std::optional<ViolationCertificate> cert;
};

// Runs cfg.trials independent trials per dim, parallel over trials, and
// aggregates sequentially so the certificate set does not depend on the
// thread count.
template <typename TrialFn>
Verdict run_trials(const std::string& property, const SearchConfig& cfg, TrialFn&& trial_fn) {
    cfg.validate();
    Verdict verdict;
    verdict.property = property;
    verdict.worst_margin = std::numeric_limits<double>::infinity();
    for (int dim : cfg.dims) {
        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long trial = 0; trial < cfg.trials; ++trial) {
            auto& out = outcomes[static_cast<std::size_t>(trial)];
            try {
                out = trial_fn(dim, static_cast<std::uint64_t>(trial));
            } catch (const std::exception&) {
                out.failed = true;
            }
        }
        for (const auto& out : outcomes) {
            ++verdict.trials_run;
            if (out.failed) {
                ++verdict.failed_trials;
                continue;
            }
            if (out.margin < verdict.worst_margin) verdict.worst_margin = out.margin;
            if (out.cert) verdict.violations.push_back(*out.cert);
        }
    }
    if (!std::isfinite(verdict.worst_margin)) verdict.worst_margin = 0.0;
    return verdict;
}

double midpoint_gap_jc(const GeneratorFunction& g, double lambda, const HermitianMatrix& a1,
                       const HermitianMatrix& b1, const HermitianMatrix& a2,
                       const HermitianMatrix& b2, double* avg_out) {
    DivergenceParams p(lambda);
    double h1 = jensen_divergence(g, p, a1, b1);
    double h2 = jensen_divergence(g, p, a2, b2);
    double hm = jensen_divergence(g, p, 0.5 * (a1 + a2), 0.5 * (b1 + b2));
    double avg = 0.5 * (h1 + h2);
    if (avg_out) *avg_out = avg;
    return avg - hm;
}

double midpoint_gap_quadform(const GeneratorFunction& g, const HermitianMatrix& x1,
                             const HermitianMatrix& y1, const HermitianMatrix& x2,
                             const HermitianMatrix& y2, double* avg_out) {
    double h1 = quadform(g, x1, y1);
    double h2 = quadform(g, x2, y2);
    double hm = quadform(g, 0.5 * (x1 + x2), 0.5 * (y1 + y2));
    double avg = 0.5 * (h1 + h2);
    if (avg_out) *avg_out = avg;
    return avg - hm;
}

double zeta(const HermitianMatrix& t, const CVector& v) {
    CVector solved = t.mat().ldlt().solve(v);
    return (v.adjoint() * solved).real()(0, 0);
}

double midpoint_gap_zeta(const HermitianMatrix& t1, const CVector& v1, const HermitianMatrix& t2,
                         const CVector& v2, double* avg_out) {
    double h1 = zeta(t1, v1);
    double h2 = zeta(t2, v2);
    double hm = zeta(0.5 * (t1 + t2), 0.5 * (v1 + v2));
    double avg = 0.5 * (h1 + h2);
    if (avg_out) *avg_out = avg;
    return avg - hm;
}

// lambda_min of inv(S_mid) - (invS1 + invS2)/2 together with the scale of the
// compared operators, for the relative violation threshold.
double inverse_concavity_margin(const GeneratorFunction& g, const HermitianMatrix& a1,
                                const HermitianMatrix& a2, double* scale_out) {
    SuperOperator s1 = superop_matrix(g, a1);
    SuperOperator s2 = superop_matrix(g, a2);
    SuperOperator sm = superop_matrix(g, 0.5 * (a1 + a2));
    RMatrix avg = 0.5 * (superop_invert(s1).matrix + superop_invert(s2).matrix);
    RMatrix diff = superop_invert(sm).matrix - avg;
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(diff, Eigen::EigenvaluesOnly);
    if (scale_out) {
        Eigen::SelfAdjointEigenSolver<RMatrix> sa(avg, Eigen::EigenvaluesOnly);
        *scale_out = sa.eigenvalues().cwiseAbs().maxCoeff();
    }
    return solver.eigenvalues().minCoeff();
}

}  // namespace

void SearchConfig::validate() const {
    if (trials < 1) throw validation_error("SearchConfig: trials must be >= 1");
    if (!(0.0 < spectrum_lo && spectrum_lo < spectrum_hi))
        throw validation_error("SearchConfig: need 0 < spectrum_lo < spectrum_hi");
    if (!(violation_margin > 0.0))
        throw validation_error("SearchConfig: violation_margin must be > 0");
    if (dims.empty()) throw validation_error("SearchConfig: dims must be nonempty");
    for (int d : dims)
        if (d < 1) throw validation_error("SearchConfig: dims must be >= 1");
    if (!(direction_scale > 0.0))
        throw validation_error("SearchConfig: direction_scale must be > 0");
}

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::JC_DIVERGENCE: return "JC_DIVERGENCE";
        case CertificateKind::QUADFORM_CONVEXITY: return "QUADFORM_CONVEXITY";
        case CertificateKind::INVERSE_CONCAVITY: return "INVERSE_CONCAVITY";
        case CertificateKind::ZETA: return "ZETA";
        case CertificateKind::EXPANSION: return "EXPANSION";
    }
    return "UNKNOWN";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
    if (s == "JC_DIVERGENCE") return CertificateKind::JC_DIVERGENCE;
    if (s == "QUADFORM_CONVEXITY") return CertificateKind::QUADFORM_CONVEXITY;
    if (s == "INVERSE_CONCAVITY") return CertificateKind::INVERSE_CONCAVITY;
    if (s == "ZETA") return CertificateKind::ZETA;
    if (s == "EXPANSION") return CertificateKind::EXPANSION;
    throw validation_error("unknown certificate kind '" + s + "'");
}

double quadform(const GeneratorFunction& g, const HermitianMatrix& x, const HermitianMatrix& y) {
    return hs_inner(frechet_apply_fprime(g, x, y), y);
}

Verdict midpoint_violation_search(MapKind map_kind, const GeneratorFunction& g,
                                  std::optional<double> lambda, const SearchConfig& cfg) {
    if (map_kind == MapKind::JC_DIVERGENCE && !lambda)
        throw validation_error("midpoint_violation_search: JC_DIVERGENCE needs lambda");
    const bool jc = map_kind == MapKind::JC_DIVERGENCE;
    std::string property =
        jc ? "joint_convexity_divergence:" + g.name : "quadform_convexity:" + g.name;
    std::uint64_t tag = jc ? kStreamJc : kStreamQuadform;

    return run_trials(property, cfg, [&](int dim, std::uint64_t trial) {
        std::mt19937_64 rng(derive_seed(cfg.seed, trial_stream(tag, dim), trial));
        TrialOutcome out;
        HermitianMatrix a1 = random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng);
        HermitianMatrix b1 = jc ? random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng)
                                : random_hermitian(dim, cfg.direction_scale, rng);
        HermitianMatrix a2 = random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng);
        HermitianMatrix b2 = jc ? random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng)
                                : random_hermitian(dim, cfg.direction_scale, rng);
        double avg = 0.0;
        double gap = jc ? midpoint_gap_jc(g, *lambda, a1, b1, a2, b2, &avg)
                        : midpoint_gap_quadform(g, a1, b1, a2, b2, &avg);
        out.margin = gap;
        if (gap < -cfg.violation_margin * (1.0 + std::abs(avg))) {
            ViolationCertificate cert;
            cert.kind = jc ? CertificateKind::JC_DIVERGENCE : CertificateKind::QUADFORM_CONVEXITY;
            cert.generator = g.name;
            cert.lambda = lambda;
            cert.inputs = {a1, b1, a2, b2};
            cert.weights = {0.5, 0.5};
            cert.margin = gap;
            cert.seed = cfg.seed;
            cert.trial = trial;
            cert.dim = dim;
            out.cert = std::move(cert);
        }
        return out;
    });
}

Verdict inverse_concavity_check(const GeneratorFunction& g, const SearchConfig& cfg) {
    require_strictly_convex(g, cfg.spectrum_lo, cfg.spectrum_hi);
    return run_trials("inverse_concavity:" + g.name, cfg, [&](int dim, std::uint64_t trial) {
        std::mt19937_64 rng(derive_seed(cfg.seed, trial_stream(kStreamInverse, dim), trial));
        TrialOutcome out;
        HermitianMatrix a1 = random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng);
        HermitianMatrix a2 = random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng);
        double scale = 0.0;
        double lo = inverse_concavity_margin(g, a1, a2, &scale);
        out.margin = lo;
        if (lo < -cfg.violation_margin * (1.0 + scale)) {
            ViolationCertificate cert;
            cert.kind = CertificateKind::INVERSE_CONCAVITY;
            cert.generator = g.name;
            cert.inputs = {a1, a2};
            cert.weights = {0.5, 0.5};
            cert.margin = lo;
            cert.seed = cfg.seed;
            cert.trial = trial;
            cert.dim = dim;
            out.cert = std::move(cert);
        }
        return out;
    });
}

Verdict zeta_convexity_check(const SearchConfig& cfg) {
    return run_trials("zeta_convexity", cfg, [&](int dim, std::uint64_t trial) {
        std::mt19937_64 rng(derive_seed(cfg.seed, trial_stream(kStreamZeta, dim), trial));
        TrialOutcome out;
        HermitianMatrix t1 = random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng);
        CVector v1 = random_vector(dim, cfg.direction_scale, rng);
        HermitianMatrix t2 = random_pd(dim, cfg.spectrum_lo, cfg.spectrum_hi, rng);
        CVector v2 = random_vector(dim, cfg.direction_scale, rng);
        double avg = 0.0;
        double gap = midpoint_gap_zeta(t1, v1, t2, v2, &avg);
        out.margin = gap;
        if (gap < -cfg.violation_margin * (1.0 + std::abs(avg))) {
            ViolationCertificate cert;
            cert.kind = CertificateKind::ZETA;
            cert.generator = "";
            cert.inputs = {t1, t2};
            cert.vectors = {v1, v2};
            cert.weights = {0.5, 0.5};
            cert.margin = gap;
            cert.seed = cfg.seed;
            cert.trial = trial;
            cert.dim = dim;
            out.cert = std::move(cert);
        }
        return out;
    });
}

double witness_identity_check(const std::vector<SuperOperator>& operators,
                              const ConvexCombination& weights, const HermitianMatrix& u) {
    if (operators.empty() || operators.size() != weights.size())
        throw validation_error("witness_identity_check: operators/weights size mismatch");
    int n = operators.front().dim;
    for (const auto& s : operators)
        if (s.dim != n) throw validation_error("witness_identity_check: dimension mismatch");
    RVector u_vec = basis_coords(u);
    RMatrix aggregate = RMatrix::Zero(n * n, n * n);
    std::vector<RMatrix> inverses;
    inverses.reserve(operators.size());
    for (std::size_t i = 0; i < operators.size(); ++i) {
        inverses.push_back(superop_invert(operators[i]).matrix);
        aggregate += weights.weights()[i] * inverses.back();
    }
    Eigen::LDLT<RMatrix> agg(aggregate);
    if (agg.info() != Eigen::Success)
        throw precondition_error("witness_identity_check: singular aggregate");
    RVector core = agg.solve(u_vec);
    RVector sum = RVector::Zero(n * n);
    for (std::size_t i = 0; i < operators.size(); ++i)
        sum += weights.weights()[i] * (inverses[i] * core);
    return (sum - u_vec).norm() / u_vec.norm();
}

ExpansionReport expansion_check(const GeneratorFunction& g, const DivergenceParams& p,
                                const HermitianMatrix& a, const HermitianMatrix& b) {
    ExpansionReport report;
    report.epsilons = {1e-1, 1e-2, 1e-3, 1e-4};
    report.predicted_limit = 0.5 * p.lambda * (1.0 - p.lambda) * quadform(g, a, b);

    std::vector<double> log_eps, log_err;
    // The divergence is a difference of O(1) traces, so the ratio J/eps^2
    // carries cancellation noise that grows like 1/eps^2; points below that
    // floor say nothing about the convergence order.
    const double trace_scale = 1.0 + std::abs(trace_function(g, a));
    const double floor = 1e-11 * (1.0 + std::abs(report.predicted_limit));
    for (double eps : report.epsilons) {
        HermitianMatrix shifted = a + eps * b;
        Eigen::SelfAdjointEigenSolver<CMatrix> s(shifted.mat(), Eigen::EigenvaluesOnly);
        if (s.eigenvalues().minCoeff() <= 0.0) {
            report.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        double ratio = jensen_divergence(g, p, a, shifted) / (eps * eps);
        report.ratios.push_back(ratio);
        double err = std::abs(ratio - report.predicted_limit);
        double noise = std::max(floor, 1e-15 * trace_scale / (eps * eps));
        if (err > noise) {
            log_eps.push_back(std::log(eps));
            log_err.push_back(std::log(err));
        }
    }
    if (log_eps.size() < 2) {
        // Errors already at the noise floor (e.g. quadratic generator, which
        // has no higher-order terms).
        report.empirical_order = std::numeric_limits<double>::infinity();
        report.converged = true;
        return report;
    }
    // Best decay rate over consecutive resolved steps. A global least-squares
    // slope is distorted when competing expansion terms cancel at one step;
    // any genuinely non-converging sequence still yields rates near zero.
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < log_eps.size(); ++i)
        best = std::max(best, (log_err[i] - log_err[i + 1]) / (log_eps[i] - log_eps[i + 1]));
    report.empirical_order = best;
    report.converged = report.empirical_order >= 0.9;
    return report;
}

Claim32Report claim32_equivalence_audit(const GeneratorFunction& g, const SearchConfig& cfg) {
    Claim32Report report;
    report.inverse_concavity = inverse_concavity_check(g, cfg);
    report.quadform_convexity =
        midpoint_violation_search(MapKind::QUADFORM_CONVEXITY, g, std::nullopt, cfg);
    report.agree = report.inverse_concavity.violated() == report.quadform_convexity.violated();
    return report;
}

TheoremAuditReport theorem_audit(const GeneratorFunction& g, const std::vector<double>& lambdas,
                                 const SearchConfig& cfg) {
    if (lambdas.empty()) throw validation_error("theorem_audit: need at least one lambda");
    TheoremAuditReport report;
    report.mec = inverse_concavity_check(g, cfg);
    report.agree = true;
    for (double l : lambdas) {
        Verdict v = midpoint_violation_search(MapKind::JC_DIVERGENCE, g, l, cfg);
        if (v.violated() != report.mec.violated()) report.agree = false;
        report.jc.emplace_back(l, std::move(v));
    }
    return report;
}

double replay_certificate(const ViolationCertificate& cert) {
    switch (cert.kind) {
        case CertificateKind::ZETA:
            if (cert.inputs.size() != 2 || cert.vectors.size() != 2)
                throw validation_error("replay: ZETA certificate needs 2 matrices and 2 vectors");
            return midpoint_gap_zeta(cert.inputs[0], cert.vectors[0], cert.inputs[1],
                                     cert.vectors[1], nullptr);
        case CertificateKind::JC_DIVERGENCE: {
            if (cert.inputs.size() != 4 || !cert.lambda)
                throw validation_error("replay: JC certificate needs 4 matrices and lambda");
            GeneratorFunction g = catalog_get(cert.generator).generator;
            return midpoint_gap_jc(g, *cert.lambda, cert.inputs[0], cert.inputs[1],
                                   cert.inputs[2], cert.inputs[3], nullptr);
        }
        case CertificateKind::QUADFORM_CONVEXITY: {
            if (cert.inputs.size() != 4)
                throw validation_error("replay: quadform certificate needs 4 matrices");
            GeneratorFunction g = catalog_get(cert.generator).generator;
            return midpoint_gap_quadform(g, cert.inputs[0], cert.inputs[1], cert.inputs[2],
                                         cert.inputs[3], nullptr);
        }
        case CertificateKind::INVERSE_CONCAVITY: {
            if (cert.inputs.size() != 2)
                throw validation_error("replay: inverse-concavity certificate needs 2 matrices");
            GeneratorFunction g = catalog_get(cert.generator).generator;
            return inverse_concavity_margin(g, cert.inputs[0], cert.inputs[1], nullptr);
        }
        case CertificateKind::EXPANSION: {
            if (cert.inputs.size() != 2 || !cert.lambda)
                throw validation_error("replay: expansion certificate needs 2 matrices and lambda");
            GeneratorFunction g = catalog_get(cert.generator).generator;
            return expansion_check(g, DivergenceParams(*cert.lambda), cert.inputs[0],
                                   cert.inputs[1])
                .empirical_order;
        }
    }
    throw validation_error("replay_certificate: unknown kind");
}

void require_strictly_convex(const GeneratorFunction& g, double lo, double hi) {
    if (!(0.0 < lo && lo < hi)) throw validation_error("require_strictly_convex: bad interval");
    const int samples = 64;
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < samples; ++i) {
        double x = std::exp(llo + (lhi - llo) * i / (samples - 1));
        if (!(g.f2(x) > 0.0))
            throw precondition_error("require_strictly_convex: f'' <= 0 at x = " +
                                     std::to_string(x) + " for generator " + g.name);
    }
}

}  // namespace qjd

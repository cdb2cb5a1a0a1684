#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qjd/divergence.hpp"

namespace qjd {

struct SearchConfig {
    std::vector<int> dims{2};
    long trials = 1000;
    double spectrum_lo = 0.2;
    double spectrum_hi = 5.0;
    double direction_scale = 1.0;
    std::uint64_t seed = 0;
    double violation_margin = 1e-8;

    void validate() const;
};

enum class CertificateKind { JC_DIVERGENCE, QUADFORM_CONVEXITY, INVERSE_CONCAVITY, ZETA, EXPANSION };

std::string to_string(CertificateKind k);
CertificateKind certificate_kind_from_string(const std::string& s);

/// Reproducible record of a detected convexity/concavity violation. Replaying
/// `inputs` through the matching checker must reproduce `margin` to 1e-10.
struct ViolationCertificate {
    CertificateKind kind;
    std::string generator;
    std::optional<double> lambda;
    std::vector<HermitianMatrix> inputs;
    std::vector<CVector> vectors;  // ZETA only
    std::vector<double> weights;
    double margin = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    int dim = 0;
};

struct Verdict {
    std::string property;
    long trials_run = 0;
    long failed_trials = 0;
    double worst_margin = 0.0;
    std::vector<ViolationCertificate> violations;

    bool violated() const { return !violations.empty(); }
    std::string conclusion() const { return violated() ? "VIOLATED" : "NO_VIOLATION_FOUND"; }
};

enum class MapKind { JC_DIVERGENCE, QUADFORM_CONVEXITY };

/// The quadratic form (X,Y) -> <Df'[X]{Y}, Y>_HS whose joint convexity is
/// equivalent to Loewner concavity of X -> (Df'[X])^{-1}.
double quadform(const GeneratorFunction& g, const HermitianMatrix& x, const HermitianMatrix& y);

/// Randomized midpoint-convexity probe of the selected two-argument map.
/// A trial records a certificate when
/// gap = (h(p1)+h(p2))/2 - h(midpoint) < -margin * (1 + |(h(p1)+h(p2))/2|).
/// Trials run in parallel; the per-trial seed derivation makes the certificate
/// set identical to the sequential one.
Verdict midpoint_violation_search(MapKind map_kind, const GeneratorFunction& g,
                                  std::optional<double> lambda, const SearchConfig& cfg);

/// Midpoint probe of the Loewner concavity of A -> (Df'[A])^{-1}, tested on
/// superoperator representation matrices in the fixed Hermitian basis.
Verdict inverse_concavity_check(const GeneratorFunction& g, const SearchConfig& cfg);

/// Midpoint probe of the joint convexity of (T,v) -> <T^{-1}v, v>.
Verdict zeta_convexity_check(const SearchConfig& cfg);

/// Residual ||sum_i alpha_i w_i - u|| / ||u|| of the witness construction
/// w_i = S_i^{-1} (sum_j alpha_j S_j^{-1})^{-1} u.
double witness_identity_check(const std::vector<SuperOperator>& operators,
                              const ConvexCombination& weights, const HermitianMatrix& u);

struct ExpansionReport {
    std::vector<double> epsilons;
    std::vector<double> ratios;       // J(A, A+eps B) / eps^2, NaN for skipped steps
    double predicted_limit = 0.0;     // lambda(1-lambda)/2 * quadform(g, A, B)
    double empirical_order = 0.0;  // best log-log decay rate of |ratio - limit|
                                   // over consecutive noise-resolved steps
    bool converged = false;
};

/// Second-order expansion of the divergence along A + eps B; the ratio
/// J/eps^2 must approach the quadratic-form limit with error O(eps).
ExpansionReport expansion_check(const GeneratorFunction& g, const DivergenceParams& p,
                                const HermitianMatrix& a, const HermitianMatrix& b);

struct Claim32Report {
    Verdict inverse_concavity;
    Verdict quadform_convexity;
    bool agree = false;
};

/// Shared-seed audit that the inverse-concavity and quadform-convexity
/// verdicts coincide (they are equivalent properties).
Claim32Report claim32_equivalence_audit(const GeneratorFunction& g, const SearchConfig& cfg);

struct TheoremAuditReport {
    Verdict mec;  // inverse_concavity_check
    std::vector<std::pair<double, Verdict>> jc;
    bool agree = false;
};

/// Audits the equivalence "Matrix Entropy Class membership <=> jointly convex
/// divergence": the MEC probe and the per-lambda JC probes must agree.
TheoremAuditReport theorem_audit(const GeneratorFunction& g, const std::vector<double>& lambdas,
                                 const SearchConfig& cfg);

/// Recomputes the margin of a certificate from its embedded inputs.
double replay_certificate(const ViolationCertificate& cert);

/// Hypothesis check used by the audits: f'' > 0 sampled on log-spaced points
/// of [lo, hi]; throws precondition_error otherwise.
void require_strictly_convex(const GeneratorFunction& g, double lo, double hi);

}  // namespace qjd

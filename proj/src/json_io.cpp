#include "qjd/json_io.hpp"

namespace qjd {

Json matrix_to_json(const HermitianMatrix& m) {
    Json entries = Json::array();
    for (int j = 0; j < m.dim(); ++j) {
        Json row = Json::array();
        for (int k = 0; k < m.dim(); ++k)
            row.push_back({m.mat()(j, k).real(), m.mat()(j, k).imag()});
        entries.push_back(std::move(row));
    }
    return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

HermitianMatrix matrix_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("entries"))
        throw validation_error("matrix JSON: missing 'dim' or 'entries'");
    int n = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (n < 1 || static_cast<int>(entries.size()) != n)
        throw validation_error("matrix JSON: entry rows do not match dim");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& row = entries.at(static_cast<std::size_t>(r));
        if (static_cast<int>(row.size()) != n)
            throw validation_error("matrix JSON: entry columns do not match dim");
        for (int c = 0; c < n; ++c) {
            const auto& cell = row.at(static_cast<std::size_t>(c));
            if (cell.size() != 2) throw validation_error("matrix JSON: entry is not [re,im]");
            m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return HermitianMatrix(std::move(m));
}

Json vector_to_json(const CVector& v) {
    Json a = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({v(k).real(), v(k).imag()});
    return a;
}

CVector vector_from_json(const Json& j) {
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& cell = j.at(k);
        if (cell.size() != 2) throw validation_error("vector JSON: entry is not [re,im]");
        v(static_cast<Eigen::Index>(k)) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
    return v;
}

Json certificate_to_json(const ViolationCertificate& cert) {
    Json j;
    j["kind"] = to_string(cert.kind);
    j["generator"] = cert.generator;
    if (cert.lambda)
        j["lambda"] = *cert.lambda;
    else
        j["lambda"] = nullptr;
    Json inputs = Json::array();
    for (const auto& m : cert.inputs) inputs.push_back(matrix_to_json(m));
    j["inputs"] = std::move(inputs);
    Json vectors = Json::array();
    for (const auto& v : cert.vectors) vectors.push_back(vector_to_json(v));
    j["vectors"] = std::move(vectors);
    j["weights"] = cert.weights;
    j["margin"] = cert.margin;
    j["seed"] = cert.seed;
    j["trial"] = cert.trial;
    j["dim"] = cert.dim;
    return j;
}

ViolationCertificate certificate_from_json(const Json& j) {
    ViolationCertificate cert;
    cert.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    cert.generator = j.at("generator").get<std::string>();
    if (j.contains("lambda") && !j.at("lambda").is_null())
        cert.lambda = j.at("lambda").get<double>();
    for (const auto& m : j.at("inputs")) cert.inputs.push_back(matrix_from_json(m));
    if (j.contains("vectors"))
        for (const auto& v : j.at("vectors")) cert.vectors.push_back(vector_from_json(v));
    cert.weights = j.at("weights").get<std::vector<double>>();
    cert.margin = j.at("margin").get<double>();
    cert.seed = j.at("seed").get<std::uint64_t>();
    cert.trial = j.value("trial", std::uint64_t{0});
    cert.dim = j.at("dim").get<int>();
    return cert;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["property"] = v.property;
    j["trials_run"] = v.trials_run;
    j["failed_trials"] = v.failed_trials;
    j["worst_margin"] = v.worst_margin;
    j["conclusion"] = v.conclusion();
    j["violation_count"] = v.violations.size();
    Json certs = Json::array();
    // Payloads stay bounded for non-member generators, which can violate on
    // thousands of trials.
    const std::size_t cap = 10;
    for (std::size_t i = 0; i < v.violations.size() && i < cap; ++i)
        certs.push_back(certificate_to_json(v.violations[i]));
    j["violations"] = std::move(certs);
    return j;
}

Json divergence_report_to_json(const DivergenceReport& r) {
    Json j;
    j["generator"] = r.generator;
    j["lambda"] = r.lambda;
    j["direct"] = r.direct;
    j["integral"] = r.integral;
    j["quadrature_K"] = r.quadrature_nodes;
    j["node_doubling_delta"] = r.node_doubling_delta;
    return j;
}

Json expansion_report_to_json(const ExpansionReport& r) {
    Json j;
    j["epsilons"] = r.epsilons;
    Json ratios = Json::array();
    for (double x : r.ratios) {
        if (std::isnan(x))
            ratios.push_back(nullptr);
        else
            ratios.push_back(x);
    }
    j["ratios"] = std::move(ratios);
    j["predicted_limit"] = r.predicted_limit;
    j["empirical_order"] =
        std::isinf(r.empirical_order) ? Json("inf") : Json(r.empirical_order);
    j["converged"] = r.converged;
    return j;
}

Json claim32_report_to_json(const Claim32Report& r) {
    Json j;
    j["inverse_concavity"] = verdict_to_json(r.inverse_concavity);
    j["quadform_convexity"] = verdict_to_json(r.quadform_convexity);
    j["agree"] = r.agree;
    return j;
}

Json theorem_audit_to_json(const TheoremAuditReport& r) {
    Json j;
    j["mec"] = verdict_to_json(r.mec);
    Json jc = Json::array();
    for (const auto& [lambda, verdict] : r.jc) {
        Json item;
        item["lambda"] = lambda;
        item["verdict"] = verdict_to_json(verdict);
        jc.push_back(std::move(item));
    }
    j["jc"] = std::move(jc);
    j["agree"] = r.agree;
    return j;
}

}  // namespace qjd

#pragma once

#include <nlohmann/json.hpp>

#include "qjd/convexity.hpp"
#include "qjd/divergence.hpp"

namespace qjd {

// Stable key order everywhere so repeated runs emit byte-identical payloads.
using Json = nlohmann::ordered_json;

/// Matrix wire format, shared repo-wide:
/// {"dim": n, "entries": [[[re,im], ...], ...]} row-major.
Json matrix_to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const Json& j);

Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json certificate_to_json(const ViolationCertificate& cert);
ViolationCertificate certificate_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);

Json divergence_report_to_json(const DivergenceReport& r);

Json expansion_report_to_json(const ExpansionReport& r);

Json claim32_report_to_json(const Claim32Report& r);

Json theorem_audit_to_json(const TheoremAuditReport& r);

}  // namespace qjd

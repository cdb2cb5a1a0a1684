#pragma once

#include <string>
#include <vector>

#include "qjd/generator.hpp"

namespace qjd {

enum class MecExpectation { EXPECT_MEMBER, EXPECT_NON_MEMBER, AFFINE, UNKNOWN };

std::string to_string(MecExpectation e);

struct CatalogEntry {
    GeneratorFunction generator;
    MecExpectation mec_expectation;
};

/// Parses the generator grammar (case-insensitive) and returns the built-in
/// entry: `affine:a,b`, `quadratic`, `xlogx`, `power:p` with p in (1,4],
/// `exp`. Throws validation_error for unknown names or out-of-range p.
CatalogEntry catalog_get(const std::string& name);

/// Canonical entries exercised by the audit sweeps.
std::vector<std::string> catalog_names();

enum class ScalarMecVerdict { CONCAVE_PASS, CONCAVE_FAIL };

struct ScalarOracleResult {
    ScalarMecVerdict verdict;
    double witness_x1 = 0.0;
    double witness_x2 = 0.0;
};

/// Midpoint-concavity test of x -> 1/f''(x) over all grid pairs; the n = 1
/// reduction of the Matrix Entropy Class condition. Requires f'' > 0 on the
/// grid.
ScalarOracleResult scalar_mec_oracle(const GeneratorFunction& g, const std::vector<double>& grid);

}  // namespace qjd

#include "qjd/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qjd/errors.hpp"

namespace qjd {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_decimal(const std::string& s, const std::string& ctx) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw validation_error("catalog_get: bad numeric parameter '" + s + "' in " + ctx);
    }
    if (pos != s.size())
        throw validation_error("catalog_get: trailing characters in parameter '" + s + "'");
    return v;
}

CatalogEntry make_affine(double a, double b) {
    GeneratorFunction g;
    std::ostringstream name;
    name << "affine:" << a << "," << b;
    g.name = name.str();
    g.f = [a, b](double x) { return a * x + b; };
    g.f1 = [a](double) { return a; };
    g.f2 = [](double) { return 0.0; };
    g.f_at_zero = b;
    return CatalogEntry{std::move(g), MecExpectation::AFFINE};
}

CatalogEntry make_quadratic() {
    GeneratorFunction g;
    g.name = "quadratic";
    g.f = [](double x) { return x * x; };
    g.f1 = [](double x) { return 2.0 * x; };
    g.f2 = [](double) { return 2.0; };
    g.f_at_zero = 0.0;
    return CatalogEntry{std::move(g), MecExpectation::EXPECT_MEMBER};
}

CatalogEntry make_xlogx() {
    GeneratorFunction g;
    g.name = "xlogx";
    g.f = [](double x) { return x * std::log(x); };
    g.f1 = [](double x) { return std::log(x) + 1.0; };
    g.f2 = [](double x) { return 1.0 / x; };
    g.f_at_zero = 0.0;
    g.singular_at_zero = true;
    return CatalogEntry{std::move(g), MecExpectation::EXPECT_MEMBER};
}

CatalogEntry make_power(double p) {
    if (!(p > 1.0 && p <= 4.0))
        throw validation_error("catalog_get: power exponent must lie in (1,4]");
    GeneratorFunction g;
    std::ostringstream name;
    name << "power:" << p;
    g.name = name.str();
    g.f = [p](double x) { return std::pow(x, p); };
    g.f1 = [p](double x) { return p * std::pow(x, p - 1.0); };
    g.f2 = [p](double x) { return p * (p - 1.0) * std::pow(x, p - 2.0); };
    g.f_at_zero = 0.0;
    g.singular_at_zero = p < 2.0;
    MecExpectation e =
        (p <= 2.0) ? MecExpectation::EXPECT_MEMBER : MecExpectation::EXPECT_NON_MEMBER;
    return CatalogEntry{std::move(g), e};
}

CatalogEntry make_exp() {
    GeneratorFunction g;
    g.name = "exp";
    g.f = [](double x) { return std::exp(x); };
    g.f1 = [](double x) { return std::exp(x); };
    g.f2 = [](double x) { return std::exp(x); };
    g.f_at_zero = 1.0;
    return CatalogEntry{std::move(g), MecExpectation::UNKNOWN};
}

}  // namespace

std::string to_string(MecExpectation e) {
    switch (e) {
        case MecExpectation::EXPECT_MEMBER: return "EXPECT_MEMBER";
        case MecExpectation::EXPECT_NON_MEMBER: return "EXPECT_NON_MEMBER";
        case MecExpectation::AFFINE: return "AFFINE";
        case MecExpectation::UNKNOWN: return "UNKNOWN";
    }
    return "UNKNOWN";
}

CatalogEntry catalog_get(const std::string& name) {
    std::string s = lowercase(name);
    if (s == "quadratic") return make_quadratic();
    if (s == "xlogx") return make_xlogx();
    if (s == "exp") return make_exp();
    if (s.rfind("affine:", 0) == 0) {
        std::string params = s.substr(7);
        auto comma = params.find(',');
        if (comma == std::string::npos)
            throw validation_error("catalog_get: affine needs two parameters, affine:a,b");
        double a = parse_decimal(params.substr(0, comma), "affine");
        double b = parse_decimal(params.substr(comma + 1), "affine");
        return make_affine(a, b);
    }
    if (s.rfind("power:", 0) == 0) return make_power(parse_decimal(s.substr(6), "power"));
    throw validation_error("catalog_get: unknown generator '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"affine:1,0", "quadratic", "xlogx", "power:1.5", "power:3", "power:4", "exp"};
}

ScalarOracleResult scalar_mec_oracle(const GeneratorFunction& g, const std::vector<double>& grid) {
    if (grid.size() < 2) throw validation_error("scalar_mec_oracle: grid needs >= 2 points");
    for (double x : grid) {
        if (!(x > 0.0)) throw validation_error("scalar_mec_oracle: grid point outside (0,inf)");
        if (!(g.f2(x) > 0.0))
            throw precondition_error("scalar_mec_oracle: f'' <= 0 at grid point " +
                                     std::to_string(x));
    }
    auto h = [&](double x) { return 1.0 / g.f2(x); };
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            double mid = h(0.5 * (grid[i] + grid[j]));
            double avg = 0.5 * (h(grid[i]) + h(grid[j]));
            if (mid < avg - 1e-12)
                return ScalarOracleResult{ScalarMecVerdict::CONCAVE_FAIL, grid[i], grid[j]};
        }
    return ScalarOracleResult{ScalarMecVerdict::CONCAVE_PASS};
}

}  // namespace qjd

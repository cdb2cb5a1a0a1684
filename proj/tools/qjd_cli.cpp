// Command-line front end: evaluate quantum Jensen divergences, validate the
// integral representation, run the convexity audits, and replay certificates.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qjd/catalog.hpp"
#include "qjd/json_io.hpp"

namespace fs = std::filesystem;
using qjd::Json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitReplayMismatch = 4;

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct ManifestBuilder {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    std::string started = iso_timestamp();

    Json finish() const {
        Json m;
        m["command"] = command;
        m["parameters"] = parameters;
        m["seed"] = seed;
        m["library_version"] = QJD_VERSION;
        m["started"] = started;
        m["finished"] = iso_timestamp();
        return m;
    }
};

void emit(const ManifestBuilder& manifest, Json result, const std::string& out_path) {
    Json payload;
    payload["manifest"] = manifest.finish();
    payload["result"] = std::move(result);
    std::string text = payload.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << text << "\n";
    }
}

qjd::HermitianMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qjd::validation_error("cannot open matrix file " + path);
    Json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw qjd::validation_error(std::string("matrix file parse error: ") + e.what());
    }
    return qjd::matrix_from_json(j);
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ':' || c == ',' || c == '/') c = '_';
    return s;
}

void write_certificates(const qjd::Verdict& v, const fs::path& dir) {
    if (v.violations.empty()) return;
    fs::create_directories(dir);
    const std::size_t cap = 10;
    for (std::size_t i = 0; i < v.violations.size() && i < cap; ++i) {
        const auto& cert = v.violations[i];
        std::string name = to_string(cert.kind) + "-" + sanitize(cert.generator) + "-" +
                           std::to_string(cert.seed) + "-" + std::to_string(cert.trial) + ".json";
        std::ofstream f(dir / name);
        f << qjd::certificate_to_json(cert).dump(2) << "\n";
    }
}

std::pair<double, double> parse_spectrum(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw qjd::validation_error("--spectrum expects lo,hi");
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Jensen (f,lambda)-divergence lab"};
    app.require_subcommand(1);

    // common option storage
    std::string generator, matrix_a, matrix_b, out_path, cert_file, spectrum = "0.2,5";
    std::vector<double> lambdas;
    double lambda = 0.5, tol = -1.0;
    std::vector<int> dims{1, 2, 3};
    long trials = 1000;
    int n = 3, quad_nodes = 32;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--spectrum", spectrum, "PD sampling window lo,hi");
        cmd->add_option("--out", out_path, "also write the JSON payload to this path");
    };

    auto* eval = app.add_subcommand("eval", "evaluate the divergence of two matrices");
    eval->add_option("generator", generator)->required();
    eval->add_option("--lambda", lambda, "weight in (0,1)");
    eval->add_option("matrix_a", matrix_a)->required();
    eval->add_option("matrix_b", matrix_b)->required();
    eval->add_option("--quad-nodes", quad_nodes, "Gauss-Legendre nodes per axis");
    add_common(eval);

    auto* intrep = app.add_subcommand("intrep-check",
                                      "integral representation vs direct formula on random pairs");
    intrep->add_option("generator", generator)->required();
    intrep->add_option("--lambda", lambda);
    intrep->add_option("--dim", n, "matrix size");
    intrep->add_option("--trials", trials);
    intrep->add_option("--quad-nodes", quad_nodes);
    intrep->add_option("--tol", tol, "relative tolerance (default 1e-6)");
    add_common(intrep);

    auto* mec = app.add_subcommand("mec-check", "Loewner concavity probe of (Df'[A])^{-1}");
    mec->add_option("generator", generator)->required();
    mec->add_option("--dims", dims)->delimiter(',');
    mec->add_option("--trials", trials);
    mec->add_option("--tol", tol, "violation margin (default 1e-8)");
    add_common(mec);

    auto* jc = app.add_subcommand("jc-check", "joint convexity probe of the divergence");
    jc->add_option("generator", generator)->required();
    jc->add_option("--lambda", lambda);
    jc->add_option("--dims", dims)->delimiter(',');
    jc->add_option("--trials", trials);
    jc->add_option("--tol", tol, "violation margin (default 1e-8)");
    add_common(jc);

    auto* audit = app.add_subcommand("audit", "two-sided theorem audit (MEC vs JC)");
    audit->add_option("generator", generator)->required();
    audit->add_option("--lambda", lambdas, "divergence weights (repeatable)");
    audit->add_option("--dims", dims)->delimiter(',');
    audit->add_option("--trials", trials);
    audit->add_option("--tol", tol, "violation margin (default 1e-8)");
    add_common(audit);

    auto* replay = app.add_subcommand("replay", "recompute the margin of a stored certificate");
    replay->add_option("certificate", cert_file)->required();
    replay->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    ManifestBuilder manifest;
    manifest.seed = seed;

    try {
        auto [lo, hi] = parse_spectrum(spectrum);

        auto make_config = [&]() {
            qjd::SearchConfig cfg;
            cfg.dims = dims;
            cfg.trials = trials;
            cfg.spectrum_lo = lo;
            cfg.spectrum_hi = hi;
            cfg.seed = seed;
            if (tol > 0.0) cfg.violation_margin = tol;
            return cfg;
        };

        if (*eval) {
            manifest.command = "eval";
            manifest.parameters = {{"generator", generator}, {"lambda", lambda},
                                   {"matrix_a", matrix_a},   {"matrix_b", matrix_b},
                                   {"quad_nodes", quad_nodes}};
            auto g = qjd::catalog_get(generator).generator;
            auto a = load_matrix(matrix_a);
            auto b = load_matrix(matrix_b);
            auto report = qjd::evaluate_divergence(g, qjd::DivergenceParams(lambda), a, b,
                                                   quad_nodes);
            emit(manifest, qjd::divergence_report_to_json(report), out_path);
            return 0;
        }

        if (*intrep) {
            if (trials < 1) throw qjd::validation_error("intrep-check: trials must be >= 1");
            manifest.command = "intrep-check";
            manifest.parameters = {{"generator", generator}, {"lambda", lambda}, {"dim", n},
                                   {"trials", trials},       {"quad_nodes", quad_nodes},
                                   {"spectrum", spectrum}};
            auto g = qjd::catalog_get(generator).generator;
            double tolerance = tol > 0.0 ? tol : 1e-6;
            auto grid = qjd::QuadratureGrid::gauss_legendre(quad_nodes);
            auto grid2 = qjd::QuadratureGrid::gauss_legendre(2 * quad_nodes);
            qjd::DivergenceParams p(lambda);
            double max_rel = 0.0, max_delta = 0.0;
            long failures = 0;
            for (long trial = 0; trial < trials; ++trial) {
                auto a = qjd::random_pd(n, lo, hi, qjd::derive_seed(seed, 100, 2 * trial));
                auto b = qjd::random_pd(n, lo, hi, qjd::derive_seed(seed, 100, 2 * trial + 1));
                double direct = qjd::jensen_divergence(g, p, a, b);
                double integral = qjd::jensen_integral_rep(g, p, a, b, grid);
                double refined = qjd::jensen_integral_rep(g, p, a, b, grid2);
                double rel = std::abs(integral - direct) / (1.0 + std::abs(direct));
                max_rel = std::max(max_rel, rel);
                max_delta = std::max(max_delta, std::abs(refined - integral));
                if (rel > tolerance) ++failures;
            }
            Json result{{"generator", generator},      {"lambda", lambda},
                        {"dim", n},                    {"trials", trials},
                        {"quadrature_K", quad_nodes},  {"tolerance", tolerance},
                        {"max_relative_error", max_rel}, {"max_node_doubling_delta", max_delta},
                        {"failures", failures}};
            emit(manifest, result, out_path);
            return failures == 0 ? 0 : kExitCheckFailed;
        }

        if (*mec) {
            manifest.command = "mec-check";
            manifest.parameters = {{"generator", generator}, {"dims", dims},
                                   {"trials", trials},       {"spectrum", spectrum}};
            auto g = qjd::catalog_get(generator).generator;
            auto verdict = qjd::inverse_concavity_check(g, make_config());
            write_certificates(verdict, "certificates");
            emit(manifest, qjd::verdict_to_json(verdict), out_path);
            return 0;
        }

        if (*jc) {
            manifest.command = "jc-check";
            manifest.parameters = {{"generator", generator}, {"lambda", lambda}, {"dims", dims},
                                   {"trials", trials},       {"spectrum", spectrum}};
            auto g = qjd::catalog_get(generator).generator;
            auto verdict = qjd::midpoint_violation_search(qjd::MapKind::JC_DIVERGENCE, g, lambda,
                                                          make_config());
            write_certificates(verdict, "certificates");
            emit(manifest, qjd::verdict_to_json(verdict), out_path);
            return 0;
        }

        if (*audit) {
            manifest.command = "audit";
            if (lambdas.empty()) lambdas = {0.1, 0.5, 0.9};
            manifest.parameters = {{"generator", generator}, {"lambdas", lambdas}, {"dims", dims},
                                   {"trials", trials},       {"spectrum", spectrum}};
            auto g = qjd::catalog_get(generator).generator;
            auto report = qjd::theorem_audit(g, lambdas, make_config());
            write_certificates(report.mec, "certificates");
            for (const auto& [l, v] : report.jc) write_certificates(v, "certificates");
            emit(manifest, qjd::theorem_audit_to_json(report), out_path);
            return report.agree ? 0 : kExitCheckFailed;
        }

        if (*replay) {
            manifest.command = "replay";
            manifest.parameters = {{"certificate", cert_file}};
            std::ifstream f(cert_file);
            if (!f) throw qjd::validation_error("cannot open certificate file " + cert_file);
            Json j;
            try {
                f >> j;
            } catch (const std::exception& e) {
                throw qjd::validation_error(std::string("certificate parse error: ") + e.what());
            }
            auto cert = qjd::certificate_from_json(j);
            double recomputed = qjd::replay_certificate(cert);
            bool reproduced = std::abs(recomputed - cert.margin) <= 1e-10 * (1.0 + std::abs(cert.margin));
            Json result{{"kind", to_string(cert.kind)},
                        {"stored_margin", cert.margin},
                        {"recomputed_margin", recomputed},
                        {"reproduced", reproduced}};
            emit(manifest, result, out_path);
            return reproduced ? 0 : kExitReplayMismatch;
        }
    } catch (const qjd::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qjd::spectrum_domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const qjd::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

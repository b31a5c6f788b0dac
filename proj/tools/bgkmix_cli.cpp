// Command-line front end: validation, per-mode simulation, decay-rate
// certification, oracle comparison and decay verification, all driven by a
// flat key = value config with flag overrides. Exit codes: 0 success,
// 1 validation failure, 2 runtime error, 3 certification failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bgkmix/config.hpp"
#include "bgkmix/decay.hpp"
#include "bgkmix/io.hpp"
#include "bgkmix/linearize.hpp"
#include "bgkmix/oracle.hpp"
#include "bgkmix/rates.hpp"

namespace {

using namespace bgkmix;

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::string preset;
    std::optional<uint64_t> seed;
    bool paper_literal = false;
};

RunConfig load_run_config(const CliOverrides& ov) {
    KeyValueConfig cfg;
    if (!ov.config_path.empty()) cfg = KeyValueConfig::parse(read_text_file(ov.config_path));
    if (ov.seed) cfg.set("seed", std::to_string(*ov.seed));
    if (!ov.preset.empty()) cfg.set("initial.preset", ov.preset);
    if (!ov.out_dir.empty()) cfg.set("out", ov.out_dir);
    if (ov.paper_literal) cfg.set("transport", "paper-literal");
    RunConfig rc = RunConfig::from_config(cfg);
    rc.out_dir = cfg.get("out", "");
    return rc;
}

void emit_document(const RunConfig& rc, const std::string& name, const nlohmann::json& doc) {
    const nlohmann::json final_doc = finalize_document(doc, config_json(rc.resolved()));
    const std::string text = final_doc.dump(2) + "\n";
    if (!rc.out_dir.empty()) {
        std::filesystem::create_directories(rc.out_dir);
        write_text_file(rc.out_dir + "/" + name, text);
    }
    std::cout << text;
}

std::vector<double> sample_times(const RunConfig& rc) {
    std::vector<double> ts;
    if (rc.samples <= 1) return {0.0};
    for (int i = 0; i < rc.samples; ++i) ts.push_back(rc.t_end * i / (rc.samples - 1));
    return ts;
}

SpectralField build_initial(const RunConfig& rc, const ValidatedParams& vp) {
    std::string file_text;
    if (rc.preset == "file") file_text = read_text_file(rc.field_file);
    return preset_field(vp, rc.preset, rc.M, rc.K, rc.seed, file_text);
}

// Certificate for the configured entropy parameters: loaded from a file,
// evaluated at fixed couplings, or searched for.
std::optional<EntropyCertificate> resolve_certificate(const RunConfig& rc, const ValidatedParams& vp) {
    if (!rc.certificate_file.empty()) {
        const nlohmann::json j = nlohmann::json::parse(read_text_file(rc.certificate_file));
        return certificate_from_json(j);
    }
    if (!vp.rate_normalized()) return std::nullopt;
    if (rc.eparams_fixed) return certify_fixed(vp, rc.eparams, rc.M, rc.K, rc.convention());
    return certify(vp, rc.M, rc.K, rc.budget, rc.seed, rc.scheme, EntropyParams{}, rc.convention());
}

int cmd_validate(const RunConfig& rc) {
    const Validation v = validate(rc.params);
    std::printf("parameters: %s\n", params_canonical(rc.params).c_str());
    for (const auto& c : v.report.violations)
        std::printf("violated: %-55s lhs=%.6g rhs=%.6g\n", c.name.c_str(), c.lhs, c.rhs);
    std::printf("hard constraints: %s\n", v.report.ok() ? "ok" : "FAILED");
    std::printf("rate-normalized (decay-rate eligible): %s\n",
                v.report.rate_normalized ? "yes" : "no");

    nlohmann::json doc = validation_json(v.report);
    if (v.params) {
        const double fd_err = check_derivatives_fd(*v.params, 1e-5);
        std::printf("linearization derivative check, max relative error: %.3e\n", fd_err);
        if (fd_err > 1e-5)
            std::printf("warning: derivative tables disagree with finite differences\n");
        doc["derivative_check_max_error"] = fd_err;
    }
    doc["params_hash"] = params_hash(rc.params);
    emit_document(rc, "validation.json", doc);
    return v.report.ok() ? 0 : 1;
}

int cmd_simulate(const RunConfig& rc) {
    const ValidatedParams vp = validate_or_throw(rc.params);
    const SpectralField f0 = build_initial(rc, vp);
    const std::vector<double> times = sample_times(rc);
    const std::optional<EntropyCertificate> cert = resolve_certificate(rc, vp);
    const EntropyParams ep = cert ? cert->eparams : rc.eparams;

    const EntropyTrace tr = entropy_trace(f0, ep, times, rc.method(), rc.convention(),
                                          rc.per_mode_columns);
    std::vector<double> bound(times.size(), std::numeric_limits<double>::quiet_NaN());
    nlohmann::json doc;
    doc["params_hash"] = params_hash(rc.params);
    doc["e0"] = tr.entropy_values.front();
    doc["e_final"] = tr.entropy_values.back();
    doc["aliasing_warning"] = f0.aliasing_warning;
    if (cert) {
        const DecayReport rep = verify_decay(times, tr.entropy_values, cert->C_tilde, rc.decay_tol);
        bound = rep.bound_values;
        doc["C_tilde"] = cert->C_tilde;
        doc["bound_satisfied"] = rep.bound_satisfied;
        doc["fitted_rate"] = rep.fitted_rate;
        doc["rate_defined"] = rep.rate_defined;
    }
    const std::string csv = trace_to_csv(tr, bound, rc.per_mode_columns);
    if (!rc.out_dir.empty()) {
        std::filesystem::create_directories(rc.out_dir);
        write_text_file(rc.out_dir + "/trace.csv", csv);
    }
    doc["trace_hash"] = hash_hex(fnv1a(csv));
    emit_document(rc, "simulate.json", doc);
    return 0;
}

int cmd_certify(const RunConfig& rc) {
    const ValidatedParams vp = validate_or_throw(rc.params);
    if (!vp.rate_normalized()) {
        std::fprintf(stderr, "certify: parameters are not rate-normalized "
                             "(nu11*n1+nu12*n2 and nu22*n2+nu21*n1 must both equal 1)\n");
        return 3;
    }
    const EntropyCertificate cert =
        rc.eparams_fixed ? certify_fixed(vp, rc.eparams, rc.M, rc.K, rc.convention())
                         : certify(vp, rc.M, rc.K, rc.budget, rc.seed, rc.scheme, EntropyParams{},
                                   rc.convention());
    nlohmann::json doc = certificate_json(cert);
    doc["params_hash"] = params_hash(rc.params);
    emit_document(rc, "certificate.json", doc);
    if (cert.degenerate)
        std::fprintf(stderr, "certify: degenerate certificate (C_tilde = 0)\n");
    if (!cert.search_ok) {
        std::fprintf(stderr, "certify: no positive modal rate found within budget; "
                             "best candidate written\n");
        return 3;
    }
    return 0;
}

int cmd_compare(const RunConfig& rc) {
    const ValidatedParams vp = validate_or_throw(rc.params);
    const SpectralField f0 = build_initial(rc, vp);
    const double scale = std::min(rc.params.m1, rc.params.m2);
    const VelocityGrid grid = rc.compare_grid == "uniform"
                                  ? uniform_grid(rc.compare_nv, scale)
                                  : gauss_hermite_grid(rc.compare_nv, scale);
    nlohmann::json reports = nlohmann::json::array();
    for (int k : rc.compare_modes) {
        if (k < 0 || k > rc.K) throw Error("compare: mode index outside [0, K]");
        const oracle::CompareReport rep = oracle::compare(f0, k, rc.compare_t, grid, rc.convention());
        reports.push_back(compare_report_json(rep));
        std::printf("k=%d t=%.3f weighted-L2 rel=%.3e moment rel=%.3e\n", rep.k, rep.t,
                    rep.l2_rel, rep.moment_rel);
    }
    nlohmann::json doc;
    doc["params_hash"] = params_hash(rc.params);
    doc["grid"] = rc.compare_grid;
    doc["nv"] = rc.compare_nv;
    doc["reports"] = reports;
    emit_document(rc, "compare.json", doc);
    return 0;
}

int cmd_decay_check(const RunConfig& rc) {
    const ValidatedParams vp = validate_or_throw(rc.params);
    const std::optional<EntropyCertificate> cert = resolve_certificate(rc, vp);
    if (!cert) {
        std::fprintf(stderr, "decay-check: no certificate available "
                             "(parameters not rate-normalized and no certificate file)\n");
        return 3;
    }
    const SpectralField f0 = build_initial(rc, vp);
    const std::vector<double> times = sample_times(rc);
    const EntropyTrace tr =
        entropy_trace(f0, cert->eparams, times, rc.method(), rc.convention(), rc.per_mode_columns);
    DecayReport rep = verify_decay(times, tr.entropy_values, cert->C_tilde, rc.decay_tol);
    rep.mode_abscissas = mode_abscissas(vp, rc.M, rc.K, rc.convention());

    nlohmann::json doc = decay_report_json(rep);
    doc["params_hash"] = params_hash(rc.params);
    doc["mu"] = cert->mu;
    doc["C"] = cert->C;
    const std::string csv = trace_to_csv(tr, rep.bound_values, rc.per_mode_columns);
    if (!rc.out_dir.empty()) {
        std::filesystem::create_directories(rc.out_dir);
        write_text_file(rc.out_dir + "/trace.csv", csv);
    }
    doc["trace_hash"] = hash_hex(fnv1a(csv));
    emit_document(rc, "decay.json", doc);
    std::printf("decay bound %s (C_tilde=%.6g, fitted rate=%.6g)\n",
                rep.bound_satisfied ? "satisfied" : "VIOLATED", rep.C_tilde, rep.fitted_rate);
    return rep.bound_satisfied ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linearized two-species BGK mixture: spectral solver and "
                 "hypocoercive decay certification"};
    app.require_subcommand(1);
    app.fallthrough(true); // global flags may follow the subcommand

    CliOverrides ov;
    uint64_t seed_flag = 0;
    app.add_option("--config", ov.config_path, "key = value configuration file");
    app.add_option("--out", ov.out_dir, "output directory for documents and traces");
    app.add_option("--preset", ov.preset, "initial-data preset override");
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed override");
    app.add_flag("--paper-literal-transport", ov.paper_literal,
                 "unit-mass transport entries instead of the mass-scaled ones");

    auto* validate_cmd = app.add_subcommand("validate", "check parameter admissibility and the "
                                                        "linearization derivative tables");
    auto* simulate_cmd = app.add_subcommand("simulate", "evolve an initial perturbation and emit "
                                                        "the entropy/moment trace");
    auto* certify_cmd = app.add_subcommand("certify", "search entropy parameters and certify "
                                                      "decay rates");
    auto* compare_cmd = app.add_subcommand("compare", "cross-check the spectral solver against "
                                                      "the velocity-grid oracle");
    auto* decay_cmd = app.add_subcommand("decay-check", "verify a simulated trace against the "
                                                        "certified exponential bound");

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) ov.seed = seed_flag;

    try {
        const RunConfig rc = load_run_config(ov);
        if (validate_cmd->parsed()) return cmd_validate(rc);
        if (simulate_cmd->parsed()) return cmd_simulate(rc);
        if (certify_cmd->parsed()) return cmd_certify(rc);
        if (compare_cmd->parsed()) return cmd_compare(rc);
        if (decay_cmd->parsed()) return cmd_decay_check(rc);
    } catch (const NotRateNormalizedError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

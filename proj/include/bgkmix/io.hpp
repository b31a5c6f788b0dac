#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgkmix/decay.hpp"
#include "bgkmix/oracle.hpp"
#include "bgkmix/params.hpp"
#include "bgkmix/rates.hpp"
#include "bgkmix/spectral.hpp"

namespace bgkmix {

// Full-precision scientific formatting: traces feed regression tests, so
// every digit of the double must survive the round trip.
inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

inline uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string params_canonical(const MixtureParams& p) {
    std::ostringstream os;
    os << "m1=" << format_full(p.m1) << ";m2=" << format_full(p.m2)
       << ";nu11=" << format_full(p.nu11) << ";nu12=" << format_full(p.nu12)
       << ";nu21=" << format_full(p.nu21) << ";nu22=" << format_full(p.nu22)
       << ";epsilon=" << format_full(p.epsilon) << ";delta=" << format_full(p.delta)
       << ";alpha=" << format_full(p.alpha) << ";gamma=" << format_full(p.gamma)
       << ";n_inf_1=" << format_full(p.n_inf_1) << ";n_inf_2=" << format_full(p.n_inf_2)
       << ";L=" << format_full(p.L);
    return os.str();
}

inline std::string params_hash(const MixtureParams& p) {
    return hash_hex(fnv1a(params_canonical(p)));
}

inline nlohmann::json params_json(const MixtureParams& p) {
    return {{"m1", p.m1},         {"m2", p.m2},       {"nu11", p.nu11},
            {"nu12", p.nu12},     {"nu21", p.nu21},   {"nu22", p.nu22},
            {"epsilon", p.epsilon}, {"delta", p.delta}, {"alpha", p.alpha},
            {"gamma", p.gamma},   {"n_inf_1", p.n_inf_1}, {"n_inf_2", p.n_inf_2},
            {"L", p.L}};
}

inline nlohmann::json validation_json(const ValidationReport& rep) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& c : rep.checks)
        records.push_back({{"constraint", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
    return {{"ok", rep.ok()}, {"rate_normalized", rep.rate_normalized}, {"constraints", records}};
}

inline nlohmann::json certificate_json(const EntropyCertificate& cert) {
    return {{"alpha_tilde", cert.eparams.alpha_tilde},
            {"beta", cert.eparams.beta},
            {"gamma_tilde", cert.eparams.gamma_tilde},
            {"weight_scheme",
             cert.eparams.scheme == WeightScheme::InverseDensity ? "inverse-density" : "density-ratio"},
            {"mu", cert.mu},
            {"C", cert.C},
            {"C_tilde", cert.C_tilde},
            {"c_d", cert.c_d},
            {"C_d", cert.C_d},
            {"M", cert.M},
            {"K", cert.K},
            {"optimizer_evals", cert.evals},
            {"degenerate", cert.degenerate},
            {"search_ok", cert.search_ok}};
}

inline EntropyCertificate certificate_from_json(const nlohmann::json& j) {
    EntropyCertificate c;
    c.eparams.alpha_tilde = j.at("alpha_tilde").get<double>();
    c.eparams.beta = j.at("beta").get<double>();
    c.eparams.gamma_tilde = j.at("gamma_tilde").get<double>();
    c.eparams.scheme = j.at("weight_scheme").get<std::string>() == "density-ratio"
                           ? WeightScheme::DensityRatio
                           : WeightScheme::InverseDensity;
    c.mu = j.at("mu").get<double>();
    c.C = j.at("C").get<double>();
    c.C_tilde = j.at("C_tilde").get<double>();
    c.c_d = j.at("c_d").get<double>();
    c.C_d = j.at("C_d").get<double>();
    c.M = j.at("M").get<int>();
    c.K = j.at("K").get<int>();
    return c;
}

inline nlohmann::json decay_report_json(const DecayReport& rep) {
    nlohmann::json j;
    j["C_tilde"] = rep.C_tilde;
    j["tolerance"] = rep.tolerance;
    j["bound_satisfied"] = rep.bound_satisfied;
    j["rate_defined"] = rep.rate_defined;
    j["fitted_rate"] = rep.fitted_rate;
    j["mode_abscissas"] = rep.mode_abscissas;
    j["times"] = rep.times;
    j["entropy_values"] = rep.entropy_values;
    j["bound_values"] = rep.bound_values;
    return j;
}

inline nlohmann::json compare_report_json(const oracle::CompareReport& rep) {
    return {{"k", rep.k}, {"t", rep.t}, {"l2_rel", rep.l2_rel}, {"moment_rel", rep.moment_rel}};
}

// Wraps a document with the resolved configuration and a content hash so
// reruns are verifiably identical.
inline nlohmann::json finalize_document(nlohmann::json doc, const nlohmann::json& resolved_config) {
    doc["resolved_config"] = resolved_config;
    doc["content_hash"] = hash_hex(fnv1a(doc.dump()));
    return doc;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path);
    os << content;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// Columnar field file: a header line with the truncation, side length and
// parameter hash, then one row per (mode, species) of interleaved real/imag
// coefficients.
inline std::string field_to_text(const SpectralField& f) {
    std::ostringstream os;
    os << "# bgkmix spectral field v1\n";
    os << "M " << f.max_order << " K " << f.max_fourier << " L " << format_full(f.params.p().L)
       << " params " << params_hash(f.params.p()) << "\n";
    for (const ModeState& ms : f.modes) {
        for (int s = 1; s <= 2; ++s) {
            const Eigen::VectorXcd& h = s == 1 ? ms.h1 : ms.h2;
            os << ms.k << " " << s;
            for (int m = 0; m < h.size(); ++m)
                os << " " << format_full(h[m].real()) << " " << format_full(h[m].imag());
            os << "\n";
        }
    }
    return os.str();
}

inline SpectralField field_from_text(const std::string& text, const ValidatedParams& vp) {
    std::istringstream is(text);
    std::string line;
    int M = -1, K = -1;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "M") {
            std::string kw;
            double L;
            std::string ph, pw;
            ls >> M >> kw >> K >> pw >> L >> ph;
            break;
        }
        throw Error("field file: missing header");
    }
    if (M < 0 || K < 0) throw Error("field file: bad header");
    SpectralField f(vp, M, K);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int k, s;
        ls >> k >> s;
        if (k < 0 || k > K || (s != 1 && s != 2)) throw Error("field file: bad row");
        Eigen::VectorXcd& h = s == 1 ? f.modes[k].h1 : f.modes[k].h2;
        for (int m = 0; m <= M; ++m) {
            double re, im;
            if (!(ls >> re >> im)) throw Error("field file: truncated row");
            h[m] = Complex(re, im);
        }
    }
    return f;
}

// CSV entropy/moment trace. Columns:
//   t, e, e_bound, sigma1, mu1, tau1, sigma2, mu2, tau2 [, e_k0..e_kK]
// The k = 0 moments of a real field are real; their real parts are printed.
inline std::string trace_to_csv(const EntropyTrace& tr, const std::vector<double>& bound,
                                bool per_mode_columns = false) {
    std::ostringstream os;
    os << "t,e,e_bound,sigma1,mu1,tau1,sigma2,mu2,tau2";
    if (per_mode_columns && !tr.per_mode.empty())
        for (size_t k = 0; k < tr.per_mode.front().size(); ++k) os << ",e_k" << k;
    os << "\n";
    for (size_t i = 0; i < tr.times.size(); ++i) {
        os << format_full(tr.times[i]) << "," << format_full(tr.entropy_values[i]) << ","
           << format_full(i < bound.size() ? bound[i] : 0.0);
        const PerturbationMoments& q1 = tr.k0_species1[i];
        const PerturbationMoments& q2 = tr.k0_species2[i];
        os << "," << format_full(q1.sigma.real()) << "," << format_full(q1.mu.real()) << ","
           << format_full(q1.tau.real()) << "," << format_full(q2.sigma.real()) << ","
           << format_full(q2.mu.real()) << "," << format_full(q2.tau.real());
        if (per_mode_columns && i < tr.per_mode.size())
            for (double ek : tr.per_mode[i]) os << "," << format_full(ek);
        os << "\n";
    }
    return os.str();
}

} // namespace bgkmix

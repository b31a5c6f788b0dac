#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bgkmix/entropy.hpp"
#include "bgkmix/errors.hpp"
#include "bgkmix/io.hpp"
#include "bgkmix/neldermead.hpp"
#include "bgkmix/params.hpp"
#include "bgkmix/spectral.hpp"

namespace bgkmix {

// Flat key = value configuration with optional [section] headers; a key under
// [section] is stored as "section.key". '#' starts a comment.
struct KeyValueConfig {
    std::map<std::string, std::string> values;

    static KeyValueConfig parse(const std::string& text) {
        KeyValueConfig cfg;
        std::istringstream is(text);
        std::string line, section;
        while (std::getline(is, line)) {
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto trim = [](std::string s) {
                const char* ws = " \t\r\n";
                const size_t b = s.find_first_not_of(ws);
                if (b == std::string::npos) return std::string();
                const size_t e = s.find_last_not_of(ws);
                return s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const size_t eq = line.find('=');
            if (eq == std::string::npos) throw Error("config: expected key = value: " + line);
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            cfg.values[section.empty() ? key : section + "." + key] = val;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
    double get_double(const std::string& key, double fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : std::stod(it->second);
    }
    int get_int(const std::string& key, int fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : std::stoi(it->second);
    }
    uint64_t get_u64(const std::string& key, uint64_t fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : std::stoull(it->second);
    }
    void set(const std::string& key, const std::string& val) { values[key] = val; }
};

// Fully resolved run settings; flags override file values before resolution.
struct RunConfig {
    MixtureParams params;
    int M = 20;
    int K = 8;
    double t_end = 10.0;
    int samples = 101;
    std::string integrator = "exp"; // exp | rk4
    double dt = 1e-3;               // rk4 step
    WeightScheme scheme = WeightScheme::InverseDensity;
    bool eparams_fixed = false;
    EntropyParams eparams;          // used when eparams_fixed
    int budget = 120;               // optimizer evaluations
    uint64_t seed = 0;
    std::string preset = "single-mode"; // zero | single-mode | random-band-limited | file
    std::string field_file;            // preset = file
    std::string certificate_file;      // optional pre-computed certificate
    double decay_tol = 0.01;
    bool paper_literal_transport = false;
    int compare_nv = 200;
    std::string compare_grid = "gauss-hermite"; // gauss-hermite | uniform
    std::vector<int> compare_modes = {0, 1, 4};
    double compare_t = 1.0;
    std::string out_dir;
    bool per_mode_columns = false;

    TransportConvention convention() const {
        return paper_literal_transport ? TransportConvention::UnitMass
                                       : TransportConvention::MassScaled;
    }
    EvolveMethod method() const {
        return integrator == "rk4" ? EvolveMethod::rk4(dt) : EvolveMethod::exact();
    }

    static RunConfig from_config(const KeyValueConfig& cfg) {
        RunConfig rc;
        MixtureParams& p = rc.params;
        p.m1 = cfg.get_double("m1", p.m1);
        p.m2 = cfg.get_double("m2", p.m2);
        p.nu11 = cfg.get_double("nu11", p.nu11);
        p.nu12 = cfg.get_double("nu12", p.nu12);
        p.nu21 = cfg.get_double("nu21", p.nu21);
        p.nu22 = cfg.get_double("nu22", p.nu22);
        p.epsilon = cfg.get_double("epsilon", p.epsilon);
        p.delta = cfg.get_double("delta", p.delta);
        p.alpha = cfg.get_double("alpha", p.alpha);
        p.gamma = cfg.get_double("gamma", p.gamma);
        p.n_inf_1 = cfg.get_double("n_inf_1", p.n_inf_1);
        p.n_inf_2 = cfg.get_double("n_inf_2", p.n_inf_2);
        p.L = cfg.get_double("L", p.L);

        rc.M = cfg.get_int("truncation.M", cfg.get_int("M", rc.M));
        rc.K = cfg.get_int("truncation.K", cfg.get_int("K", rc.K));
        rc.t_end = cfg.get_double("time.t_end", rc.t_end);
        rc.samples = cfg.get_int("time.samples", rc.samples);
        rc.integrator = cfg.get("time.integrator", rc.integrator);
        rc.dt = cfg.get_double("time.dt", rc.dt);

        const std::string scheme = cfg.get("entropy.weight_scheme", "inverse-density");
        rc.scheme = scheme == "density-ratio" ? WeightScheme::DensityRatio
                                              : WeightScheme::InverseDensity;
        if (cfg.has("entropy.alpha_tilde") || cfg.has("entropy.beta") ||
            cfg.has("entropy.gamma_tilde")) {
            rc.eparams_fixed = true;
            rc.eparams.alpha_tilde = cfg.get_double("entropy.alpha_tilde", 0.3);
            rc.eparams.beta = cfg.get_double("entropy.beta", 0.3);
            rc.eparams.gamma_tilde = cfg.get_double("entropy.gamma_tilde", 0.3);
        }
        rc.eparams.scheme = rc.scheme;
        rc.budget = cfg.get_int("entropy.budget", rc.budget);
        rc.seed = cfg.get_u64("seed", cfg.get_u64("entropy.seed", rc.seed));
        rc.certificate_file = cfg.get("entropy.certificate", "");

        rc.preset = cfg.get("initial.preset", rc.preset);
        rc.field_file = cfg.get("initial.file", "");
        rc.decay_tol = cfg.get_double("decay.tol", rc.decay_tol);
        rc.paper_literal_transport =
            cfg.get("transport", "mass-scaled") == "paper-literal" || cfg.get_int("paper_literal_transport", 0) != 0;

        rc.compare_nv = cfg.get_int("compare.nv", rc.compare_nv);
        rc.compare_grid = cfg.get("compare.grid", rc.compare_grid);
        rc.compare_t = cfg.get_double("compare.t", rc.compare_t);
        if (cfg.has("compare.modes")) {
            rc.compare_modes.clear();
            std::istringstream ms(cfg.get("compare.modes", ""));
            std::string tok;
            while (std::getline(ms, tok, ','))
                if (!tok.empty()) rc.compare_modes.push_back(std::stoi(tok));
        }
        rc.out_dir = cfg.get("out", "");
        rc.per_mode_columns = cfg.get_int("trace.per_mode", 0) != 0;
        return rc;
    }

    // Canonical string form: feeds output documents and the content hash.
    KeyValueConfig resolved() const {
        KeyValueConfig c;
        const MixtureParams& p = params;
        c.set("m1", format_full(p.m1));
        c.set("m2", format_full(p.m2));
        c.set("nu11", format_full(p.nu11));
        c.set("nu12", format_full(p.nu12));
        c.set("nu21", format_full(p.nu21));
        c.set("nu22", format_full(p.nu22));
        c.set("epsilon", format_full(p.epsilon));
        c.set("delta", format_full(p.delta));
        c.set("alpha", format_full(p.alpha));
        c.set("gamma", format_full(p.gamma));
        c.set("n_inf_1", format_full(p.n_inf_1));
        c.set("n_inf_2", format_full(p.n_inf_2));
        c.set("L", format_full(p.L));
        c.set("truncation.M", std::to_string(M));
        c.set("truncation.K", std::to_string(K));
        c.set("time.t_end", format_full(t_end));
        c.set("time.samples", std::to_string(samples));
        c.set("time.integrator", integrator);
        if (integrator == "rk4") c.set("time.dt", format_full(dt));
        c.set("entropy.weight_scheme",
              scheme == WeightScheme::InverseDensity ? "inverse-density" : "density-ratio");
        if (eparams_fixed) {
            c.set("entropy.alpha_tilde", format_full(eparams.alpha_tilde));
            c.set("entropy.beta", format_full(eparams.beta));
            c.set("entropy.gamma_tilde", format_full(eparams.gamma_tilde));
        }
        c.set("entropy.budget", std::to_string(budget));
        if (!certificate_file.empty()) c.set("entropy.certificate", certificate_file);
        c.set("seed", std::to_string(seed));
        c.set("initial.preset", preset);
        if (!field_file.empty()) c.set("initial.file", field_file);
        c.set("decay.tol", format_full(decay_tol));
        c.set("transport", paper_literal_transport ? "paper-literal" : "mass-scaled");
        c.set("compare.nv", std::to_string(compare_nv));
        c.set("compare.grid", compare_grid);
        c.set("compare.t", format_full(compare_t));
        {
            std::string ms;
            for (size_t i = 0; i < compare_modes.size(); ++i)
                ms += (i ? "," : "") + std::to_string(compare_modes[i]);
            c.set("compare.modes", ms);
        }
        c.set("trace.per_mode", per_mode_columns ? "1" : "0");
        return c;
    }
};

inline nlohmann::json config_json(const KeyValueConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : cfg.values) j[k] = v;
    return j;
}

// Deterministic initial data presets.
//
// single-mode: a zero-total-momentum pair on the k = 0 momentum coefficients.
// random-band-limited: seeded coefficients with amplitudes decaying in both
// the Hermite order and the Fourier index, projected onto the normalized
// subspace (zero species counts, zero total momentum and energy).
inline SpectralField preset_field(const ValidatedParams& vp, const std::string& name, int M, int K,
                                  uint64_t seed, const std::string& field_file_text = "") {
    const MixtureParams& p = vp.p();
    SpectralField f = zero_field(vp, M, K);
    if (name == "zero") return f;
    if (name == "single-mode") {
        if (M < 2) throw Error("preset single-mode: need M >= 2");
        f.modes[0].h1[1] = 1.0;
        f.modes[0].h2[1] = -std::sqrt(p.m1 / p.m2);
        return f;
    }
    if (name == "random-band-limited") {
        SplitMix64 rng(seed ^ 0x5bf0f5e3a1c3b21fULL);
        for (int k = 0; k <= K; ++k) {
            for (int m = 0; m <= M; ++m) {
                const double amp = std::pow(0.55, m) * std::pow(0.7, k);
                const double re1 = amp * rng.uniform(-1.0, 1.0);
                const double im1 = amp * rng.uniform(-1.0, 1.0);
                const double re2 = amp * rng.uniform(-1.0, 1.0);
                const double im2 = amp * rng.uniform(-1.0, 1.0);
                // k = 0 coefficients of a real field are real
                f.modes[k].h1[m] = k == 0 ? Complex(re1, 0.0) : Complex(re1, im1);
                f.modes[k].h2[m] = k == 0 ? Complex(re2, 0.0) : Complex(re2, im2);
            }
        }
        // normalization: zero counts, zero total momentum and energy
        f.modes[0].h1[0] = 0.0;
        f.modes[0].h2[0] = 0.0;
        f.modes[0].h2[1] = -std::sqrt(p.m1 / p.m2) * f.modes[0].h1[1];
        f.modes[0].h2[2] = -f.modes[0].h1[2];
        return f;
    }
    if (name == "file") {
        if (field_file_text.empty()) throw Error("preset file: no field data supplied");
        return field_from_text(field_file_text, vp);
    }
    throw Error("unknown initial-data preset: " + name);
}

} // namespace bgkmix

#include "biphase/config.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace biphase {

namespace {

using nlohmann::json;

constexpr std::array kKeys = {"scheme",     "cells",    "t_end",     "mu_plus",  "mu_minus",  "gamma_plus",
                              "gamma_minus", "K_plus",  "K_minus",   "weighting", "cfl_theta", "dt_max",
                              "relax_eta",  "coarse_K", "output_dir", "cadence", "preset"};

// 1-based line of the first occurrence of "key" in the text, 0 if absent.
std::size_t line_of_key(std::string_view text, const std::string& key) {
    const std::string quoted = "\"" + key + "\"";
    const std::size_t pos = text.find(quoted);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

[[noreturn]] void fail_key(std::string_view text, const std::string& key, const std::string& why) {
    std::ostringstream os;
    os << "config error: key '" << key << "'";
    if (std::size_t line = line_of_key(text, key)) os << " (line " << line << ")";
    os << ": " << why;
    throw ConfigError(os.str());
}

double get_number(const json& doc, std::string_view text, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_number()) fail_key(text, key, "expected a number");
    return v.get<double>();
}

std::size_t get_count(const json& doc, std::string_view text, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail_key(text, key, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::string get_string(const json& doc, std::string_view text, const std::string& key) {
    const json& v = doc.at(key);
    if (!v.is_string()) fail_key(text, key, "expected a string");
    return v.get<std::string>();
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::meso: return "meso";
        case Scheme::macro: return "macro";
        case Scheme::both: return "both";
    }
    return "both";
}

Scheme parse_scheme(std::string_view text) {
    if (text == "meso") return Scheme::meso;
    if (text == "macro") return Scheme::macro;
    if (text == "both") return Scheme::both;
    throw ConfigError("unknown scheme '" + std::string(text) + "' (expected meso|macro|both)");
}

void RunConfig::validate() const {
    if (cells < 4) throw ConfigError("config error: key 'cells': must be >= 4, got " + std::to_string(cells));
    if (scheme != Scheme::macro && cells % 2 != 0) {
        throw ConfigError("config error: key 'cells': meso scheme needs an even cell count");
    }
    if (!(t_end >= 0.0)) throw ConfigError("config error: key 't_end': must be >= 0");
    if (cadence < 1) throw ConfigError("config error: key 'cadence': must be >= 1");
    if (coarse_K < 1 || coarse_K >= cells) {
        throw ConfigError("config error: key 'coarse_K': must satisfy 1 <= coarse_K < cells");
    }
    try {
        mat.validate();
        policy.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
}

bool is_preset_name(std::string_view name) { return name == "test1" || name == "test2"; }

RunConfig preset_config(std::string_view name) {
    RunConfig cfg;
    if (name == "test1") {
        cfg.mat = reference_materials(0.1, 0.1);
    } else if (name == "test2") {
        cfg.mat = reference_materials(0.1, 0.02);
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected test1|test2)");
    }
    cfg.preset = std::string(name);
    cfg.scheme = Scheme::both;
    cfg.cells = 1000;
    cfg.t_end = 0.1;
    cfg.policy = StepPolicy{};
    cfg.policy.dt_max = 1e-4;
    cfg.coarse_K = 50;
    cfg.output_dir = "out/" + std::string(name);
    return cfg;
}

RunConfig parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("config error (line " + std::to_string(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)) +
                          "): malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config error (line 1): expected a JSON object");

    for (const auto& item : doc.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
            fail_key(text, item.key(), "unknown key");
        }
    }

    RunConfig cfg;
    if (doc.contains("preset")) {
        const std::string name = get_string(doc, text, "preset");
        if (!is_preset_name(name)) fail_key(text, "preset", "unknown preset '" + name + "'");
        cfg = preset_config(name);
    }

    if (doc.contains("scheme")) {
        try {
            cfg.scheme = parse_scheme(get_string(doc, text, "scheme"));
        } catch (const ConfigError& e) {
            if (std::string_view(e.what()).starts_with("config error")) throw;
            fail_key(text, "scheme", e.what());
        }
    }
    if (doc.contains("weighting")) {
        const std::string w = get_string(doc, text, "weighting");
        try {
            cfg.weighting = parse_weighting(w);
        } catch (const std::invalid_argument& e) {
            fail_key(text, "weighting", e.what());
        }
    }
    if (doc.contains("cells")) cfg.cells = get_count(doc, text, "cells");
    if (doc.contains("t_end")) cfg.t_end = get_number(doc, text, "t_end");
    if (doc.contains("coarse_K")) cfg.coarse_K = get_count(doc, text, "coarse_K");
    if (doc.contains("cadence")) {
        const std::size_t c = get_count(doc, text, "cadence");
        if (c < 1) fail_key(text, "cadence", "must be >= 1");
        cfg.cadence = static_cast<int>(c);
    }
    if (doc.contains("output_dir")) cfg.output_dir = get_string(doc, text, "output_dir");
    if (doc.contains("cfl_theta")) cfg.policy.cfl_theta = get_number(doc, text, "cfl_theta");
    if (doc.contains("dt_max")) cfg.policy.dt_max = get_number(doc, text, "dt_max");
    if (doc.contains("relax_eta")) cfg.policy.relax_eta = get_number(doc, text, "relax_eta");

    if (doc.contains("mu_plus")) cfg.mat.mu_plus = get_number(doc, text, "mu_plus");
    if (doc.contains("mu_minus")) cfg.mat.mu_minus = get_number(doc, text, "mu_minus");

    auto law_override = [&](const char* k_key, const char* g_key, PressureLaw& law) {
        if (!doc.contains(k_key) && !doc.contains(g_key)) return;
        double coefficient = law.is_power() ? law.coefficient() : 1.0;
        double exponent = law.is_power() ? law.exponent() : 1.0;
        if (doc.contains(k_key)) coefficient = get_number(doc, text, k_key);
        if (doc.contains(g_key)) exponent = get_number(doc, text, g_key);
        try {
            law = PressureLaw::power(coefficient, exponent);
        } catch (const std::invalid_argument& e) {
            fail_key(text, doc.contains(g_key) ? g_key : k_key, e.what());
        }
    };
    law_override("K_plus", "gamma_plus", cfg.mat.law_plus);
    law_override("K_minus", "gamma_minus", cfg.mat.law_minus);

    if (cfg.cells < 4) fail_key(text, "cells", "must be >= 4");
    if (cfg.mat.mu_plus <= 0.0) fail_key(text, "mu_plus", "must be > 0");
    if (cfg.mat.mu_minus <= 0.0) fail_key(text, "mu_minus", "must be > 0");
    if (!(cfg.t_end >= 0.0)) fail_key(text, "t_end", "must be >= 0");
    if (!(cfg.policy.cfl_theta > 0.0 && cfg.policy.cfl_theta < 1.0)) fail_key(text, "cfl_theta", "must lie in (0,1)");
    if (!(cfg.policy.dt_max > 0.0)) fail_key(text, "dt_max", "must be > 0");
    if (!(cfg.policy.relax_eta > 0.0)) fail_key(text, "relax_eta", "must be > 0");
    if (cfg.coarse_K < 1 || cfg.coarse_K >= cfg.cells) fail_key(text, "coarse_K", "must satisfy 1 <= coarse_K < cells");
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path_or_preset) {
    if (is_preset_name(path_or_preset)) return preset_config(path_or_preset);
    std::ifstream in(path_or_preset, std::ios::binary);
    if (!in) throw ConfigError("cannot read config '" + path_or_preset + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_json(const RunConfig& cfg) {
    json doc = json::object();
    doc["scheme"] = std::string(to_string(cfg.scheme));
    doc["cells"] = cfg.cells;
    doc["t_end"] = cfg.t_end;
    doc["mu_plus"] = cfg.mat.mu_plus;
    doc["mu_minus"] = cfg.mat.mu_minus;
    if (cfg.mat.law_plus.is_power()) {
        doc["K_plus"] = cfg.mat.law_plus.coefficient();
        doc["gamma_plus"] = cfg.mat.law_plus.exponent();
    }
    if (cfg.mat.law_minus.is_power()) {
        doc["K_minus"] = cfg.mat.law_minus.coefficient();
        doc["gamma_minus"] = cfg.mat.law_minus.exponent();
    }
    doc["weighting"] = std::string(to_string(cfg.weighting));
    doc["cfl_theta"] = cfg.policy.cfl_theta;
    doc["dt_max"] = cfg.policy.dt_max;
    doc["relax_eta"] = cfg.policy.relax_eta;
    doc["coarse_K"] = cfg.coarse_K;
    doc["output_dir"] = cfg.output_dir;
    doc["cadence"] = cfg.cadence;
    if (!cfg.preset.empty()) doc["preset"] = cfg.preset;
    return doc.dump(2) + "\n";
}

}  // namespace biphase

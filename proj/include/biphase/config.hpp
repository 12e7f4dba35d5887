#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "biphase/core.hpp"
#include "biphase/kernel.hpp"

namespace biphase {

enum class Scheme { meso, macro, both };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view text);

struct RunConfig {
    Scheme scheme = Scheme::both;
    std::size_t cells = 1000;
    double t_end = 0.1;
    MaterialPair mat = reference_materials(0.1, 0.1);
    PressureWeighting weighting = PressureWeighting::cross;
    StepPolicy policy{};
    std::size_t coarse_K = 50;
    std::string output_dir = "out";
    int cadence = 10;  // diagnostics every N accepted steps, plus t_end
    std::string preset;

    // Throws ConfigError on invariant violations.
    void validate() const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "test1": mu_+ = mu_- = 0.1; "test2": mu_+ = 0.1, mu_- = 0.02. Both use
// p_+(x) = x, p_-(x) = x^2, 1000 cells, t_end = 0.1.
RunConfig preset_config(std::string_view name);
bool is_preset_name(std::string_view name);

// Flat JSON object. A "preset" key selects the base configuration, the
// remaining keys override it. Unknown keys are rejected.
RunConfig parse_config_text(std::string_view text);
// Accepts a preset name or a path to a JSON file.
RunConfig parse_config(const std::string& path_or_preset);

std::string config_to_json(const RunConfig& cfg);

}  // namespace biphase

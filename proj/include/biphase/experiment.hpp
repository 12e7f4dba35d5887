#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "biphase/config.hpp"
#include "biphase/diagnostics.hpp"
#include "biphase/macro.hpp"
#include "biphase/meso.hpp"

namespace biphase {

enum ExitStatus : int { kExitOk = 0, kExitSolverFailure = 1, kExitConfigError = 2 };

struct ExperimentResult {
    RunConfig cfg;
    std::optional<MesoRun> meso;
    std::optional<MacroRun> macro;
    std::optional<CoarseFields> meso_coarse;
    std::optional<CoarseFields> macro_coarse;
    std::optional<ComparisonReport> comparison;
    std::vector<WindowStructure> structure;
    std::optional<EnvelopeReport> envelopes;
    // Relative L1 density discrepancy of a macro run with the other
    // effective-pressure weighting (scheme = both only).
    std::optional<double> alternate_rel_l1_rho;
    bool failed = false;
    std::string failure;
};

// Runs the configured scheme(s) without touching the filesystem. With
// scheme = both, the two runs execute concurrently and the meso result is
// coarse-grained and compared with the macro result on cfg.coarse_K windows.
ExperimentResult execute_experiment(const RunConfig& cfg, bool discriminate_weighting = true);

// Field files, histories, coarse fields and comparison.json; a FAILED marker
// when a run stopped early.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

std::string comparison_json(const ExperimentResult& result);

// execute + write into cfg.output_dir; returns an ExitStatus.
int run_experiment(const RunConfig& cfg);

struct SweepRow {
    std::size_t cells = 0;
    double rel_l1_rho = 0.0;
    double rel_l1_u = 0.0;
    double rel_l1_alpha = 0.0;
    bool failed = false;
};

// Meso-vs-macro discrepancy for each cell count, runs executed concurrently.
std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<std::size_t>& cells);
std::string format_sweep(const std::vector<SweepRow>& rows);

}  // namespace biphase

#include "biphase/experiment.hpp"

#include <future>
#include <iostream>

#include <json.hpp>

#include "biphase/io.hpp"

namespace biphase {

namespace {

using nlohmann::json;

json norms_json(const NormSet& n) {
    return json{{"l1", n.l1},         {"l2", n.l2},         {"linf", n.linf},
                {"rel_l1", n.rel_l1}, {"rel_l2", n.rel_l2}, {"rel_linf", n.rel_linf}};
}

PressureWeighting other(PressureWeighting w) {
    return w == PressureWeighting::cross ? PressureWeighting::paper_written : PressureWeighting::cross;
}

}  // namespace

ExperimentResult execute_experiment(const RunConfig& cfg, bool discriminate_weighting) {
    cfg.validate();
    ExperimentResult result;
    result.cfg = cfg;

    const bool want_meso = cfg.scheme != Scheme::macro;
    const bool want_macro = cfg.scheme != Scheme::meso;
    const bool alternate = cfg.scheme == Scheme::both && discriminate_weighting;

    std::future<MesoRun> meso_job;
    std::future<MacroRun> macro_job;
    std::future<MacroRun> alt_job;
    if (want_meso) meso_job = std::async(std::launch::async, [&cfg] { return run_meso(cfg); });
    if (want_macro) macro_job = std::async(std::launch::async, [&cfg] { return run_macro(cfg); });
    if (alternate) {
        RunConfig alt = cfg;
        alt.weighting = other(cfg.weighting);
        alt_job = std::async(std::launch::async, [alt] { return run_macro(alt); });
    }
    if (want_meso) result.meso = meso_job.get();
    if (want_macro) result.macro = macro_job.get();
    std::optional<MacroRun> alt_run;
    if (alternate) alt_run = alt_job.get();

    if (result.meso && result.meso->failed) {
        result.failed = true;
        result.failure = "meso: " + result.meso->failure;
    }
    if (result.macro && result.macro->failed) {
        result.failed = true;
        result.failure += (result.failure.empty() ? "" : "; ") + std::string("macro: ") + result.macro->failure;
    }

    if (cfg.scheme == Scheme::both && !result.failed) {
        result.meso_coarse = coarse_grain(result.meso->state, cfg.coarse_K);
        result.macro_coarse = coarse_grain(result.macro->state, cfg.coarse_K);
        result.comparison = compare_fields(*result.meso_coarse, *result.macro_coarse);
        result.structure = two_point_structure(result.meso->state, cfg.coarse_K);
        result.envelopes = compare_envelopes(result.structure, *result.macro_coarse);
        if (alt_run && !alt_run->failed) {
            const CoarseFields alt_coarse = coarse_grain(alt_run->state, cfg.coarse_K);
            result.alternate_rel_l1_rho =
                compare_series(result.meso_coarse->rho_hat, alt_coarse.rho_hat, alt_coarse.window_length()).rel_l1;
        }
    }
    return result;
}

std::string comparison_json(const ExperimentResult& r) {
    json doc = json::object();
    doc["config"] = json::parse(config_to_json(r.cfg));
    doc["failed"] = r.failed;
    if (r.failed) doc["failure"] = r.failure;
    if (r.meso) {
        doc["meso"] = {{"steps", r.meso->steps}, {"t", r.meso->state.t}};
    }
    if (r.macro) {
        doc["macro"] = {{"steps", r.macro->steps},
                        {"t", r.macro->state.t},
                        {"clamp_events", r.macro->state.clamp_events},
                        {"guard_events", r.macro->state.guard_events}};
    }
    if (r.comparison) {
        doc["coarse_K"] = r.cfg.coarse_K;
        doc["rho"] = norms_json(r.comparison->rho);
        doc["u"] = norms_json(r.comparison->u);
        doc["alpha"] = norms_json(r.comparison->alpha);
        doc["rho_plus"] = norms_json(r.comparison->rho_plus);
        doc["rho_minus"] = norms_json(r.comparison->rho_minus);
    }
    if (r.envelopes) {
        doc["envelopes"] = {{"windows", r.envelopes->windows},
                            {"max_concentration", r.envelopes->max_concentration},
                            {"rel_l1_plus", r.envelopes->rel_l1_plus},
                            {"rel_l1_minus", r.envelopes->rel_l1_minus}};
    }
    if (r.comparison && r.alternate_rel_l1_rho) {
        json w = json::object();
        w[std::string(to_string(r.cfg.weighting))] = r.comparison->rho.rel_l1;
        w[std::string(to_string(other(r.cfg.weighting)))] = *r.alternate_rel_l1_rho;
        doc["weighting_discrimination"] = w;
    }
    return doc.dump(2) + "\n";
}

void write_experiment(const ExperimentResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "config.json", config_to_json(r.cfg));
    if (r.meso) {
        write_meso_fields(r.meso->state, r.cfg.mat, dir);
        write_history(r.meso->history, dir / "meso_diagnostics.dat");
    }
    if (r.macro) {
        write_macro_fields(r.macro->state, r.cfg.mat, r.cfg.weighting, dir);
        write_history(r.macro->history, dir / "macro_diagnostics.dat");
    }
    if (r.meso_coarse) write_coarse_fields(*r.meso_coarse, dir / "coarse_meso.dat");
    if (r.macro_coarse) write_coarse_fields(*r.macro_coarse, dir / "coarse_macro.dat");
    if (!r.structure.empty()) {
        std::vector<std::vector<double>> cols(7);
        for (const auto& w : r.structure) {
            cols[0].push_back(w.center);
            cols[1].push_back(w.mean_plus);
            cols[2].push_back(w.var_plus);
            cols[3].push_back(w.mean_minus);
            cols[4].push_back(w.var_minus);
            cols[5].push_back(w.gap);
            cols[6].push_back(w.concentration);
        }
        write_columns(dir / "structure.dat",
                      {"x", "mean_plus", "var_plus", "mean_minus", "var_minus", "gap", "concentration"}, cols);
    }
    write_text(dir / "comparison.json", comparison_json(r));
    if (r.failed) {
        write_text(dir / "FAILED", r.failure + "\n");
    } else {
        std::filesystem::remove(dir / "FAILED");
    }
}

int run_experiment(const RunConfig& cfg) {
    ExperimentResult r;
    try {
        r = execute_experiment(cfg);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    }
    try {
        write_experiment(r, cfg.output_dir);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    if (r.failed) {
        std::cerr << "solver failure: " << r.failure << "\n";
        return kExitSolverFailure;
    }
    return kExitOk;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<std::size_t>& cells) {
    std::vector<std::future<SweepRow>> jobs;
    for (std::size_t n : cells) {
        RunConfig cfg = base;
        cfg.cells = n;
        cfg.scheme = Scheme::both;
        cfg.validate();
        jobs.push_back(std::async(std::launch::async, [cfg] {
            const ExperimentResult r = execute_experiment(cfg, false);
            SweepRow row;
            row.cells = cfg.cells;
            row.failed = r.failed || !r.comparison;
            if (r.comparison) {
                row.rel_l1_rho = r.comparison->rho.rel_l1;
                row.rel_l1_u = r.comparison->u.rel_l1;
                row.rel_l1_alpha = r.comparison->alpha.rel_l1;
            }
            return row;
        }));
    }
    std::vector<SweepRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

std::string format_sweep(const std::vector<SweepRow>& rows) {
    std::string out = "# cells rel_l1_rho rel_l1_u rel_l1_alpha failed\n";
    for (const auto& r : rows) {
        out += std::to_string(r.cells) + " " + format_number(r.rel_l1_rho) + " " + format_number(r.rel_l1_u) + " " +
               format_number(r.rel_l1_alpha) + " " + (r.failed ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace biphase

// Command-line driver for the one-dimensional two-fluid simulator.
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biphase/config.hpp"
#include "biphase/experiment.hpp"
#include "biphase/io.hpp"

using namespace biphase;

namespace {

std::vector<std::size_t> parse_cell_list(const std::string& text) {
    std::vector<std::size_t> cells;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size() || v < 4) throw ConfigError("bad cell count '" + item + "' in --cells");
        cells.push_back(static_cast<std::size_t>(v));
    }
    if (cells.empty()) throw ConfigError("--cells needs at least one value");
    return cells;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biphase1d: mesoscopic and homogenized 1D two-fluid Navier-Stokes"};
    app.require_subcommand(1);

    std::string source;
    std::string out_dir;
    std::string scheme;
    std::string weighting;
    std::size_t cells = 0;

    auto* run = app.add_subcommand("run", "run a preset (test1|test2) or a JSON config");
    run->add_option("config", source, "preset name or config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--scheme", scheme, "meso|macro|both");
    run->add_option("--cells", cells, "cell count");
    run->add_option("--weighting", weighting, "cross|paper");

    std::string sweep_source;
    std::string cell_list;
    auto* sweep = app.add_subcommand("sweep", "meso-vs-macro discrepancy over several cell counts");
    sweep->add_option("preset", sweep_source, "preset name or config file")->required();
    sweep->add_option("--cells", cell_list, "comma-separated cell counts")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--weighting", weighting, "cross|paper");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*run) {
            RunConfig cfg = parse_config(source);
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (!scheme.empty()) cfg.scheme = parse_scheme(scheme);
            if (cells != 0) cfg.cells = cells;
            if (!weighting.empty()) cfg.weighting = parse_weighting(weighting);
            cfg.validate();
            const int status = run_experiment(cfg);
            if (status == kExitOk) std::cout << "wrote " << cfg.output_dir << "\n";
            return status;
        }
        RunConfig cfg = parse_config(sweep_source);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!weighting.empty()) cfg.weighting = parse_weighting(weighting);
        const std::vector<SweepRow> rows = run_sweep(cfg, parse_cell_list(cell_list));
        const std::string table = format_sweep(rows);
        std::cout << table;
        std::filesystem::create_directories(cfg.output_dir);
        write_text(std::filesystem::path(cfg.output_dir) / "sweep.dat", table);
        for (const auto& r : rows) {
            if (r.failed) return kExitSolverFailure;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
}

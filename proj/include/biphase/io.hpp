#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "biphase/diagnostics.hpp"
#include "biphase/macro.hpp"
#include "biphase/meso.hpp"
#include "biphase/record.hpp"

namespace biphase {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "%.17g" so values round-trip exactly.
std::string format_number(double v);

// Space-separated columns under a "# name name ..." header, LF endings.
// The first column is a position; rows are sorted by it.
std::string format_columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns);
void write_columns(const std::filesystem::path& path, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& columns);

// Cell midpoints and nodes wrapped into [0, length).
std::vector<double> wrapped_midpoints(const StaggeredGrid& grid);
std::vector<double> wrapped_nodes(const StaggeredGrid& grid);

void write_meso_fields(const MesoState& s, const MaterialPair& mat, const std::filesystem::path& dir);
void write_macro_fields(const MacroState& s, const MaterialPair& mat, PressureWeighting weighting,
                        const std::filesystem::path& dir);
void write_coarse_fields(const CoarseFields& f, const std::filesystem::path& path);
// columns t, mass, E_kin, E_int, E_diss, E_tot, rho_min, rho_max, dx_min, dt
void write_history(const std::vector<DiagnosticsRecord>& history, const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace biphase

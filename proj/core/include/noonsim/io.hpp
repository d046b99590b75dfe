#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "noonsim/experiments.hpp"
#include "noonsim/grid.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/wavepackets.hpp"

namespace noonsim {

/// 17 significant digits, '.' decimal separator, independent of the global locale.
std::string format_double(double v);

/// Shortest text that parses back to exactly `v`.
std::string format_double_shortest(double v);

/// Locale-independent parse of the whole string; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

/// Writes `content` to `path` byte for byte, replacing any existing file. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Column names of the sweep table, e.g. theta,cf_N2,cf_N2_norm,...,classical_norm.
std::vector<std::string> csv_header(const SweepResult& result);

/// Sweep table as CSV text: header row plus one LF-terminated row per sample.
std::string sweep_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

/// Every CF term per point: variable,photons,numerator,denom_alpha,denom_beta,state_norm,
/// value,regularized.
std::string components_csv(const SweepResult& result);

/// Dense map text: header "eps1d,nx" or "eps2d,nx,ny", then ny rows of nx values (x fastest).
std::string permittivity_csv(const PermittivityMap& map);

/// Reads a dense map onto a grid centred on the origin with the given cell sizes.
PermittivityMap read_permittivity_csv(const std::filesystem::path& path,
                                      std::array<double, 2> cell_size);

std::string omegas_csv(const ModeBasis& basis);
/// Long format cell,mode,re,im, cell-major.
std::string modes_csv(const ModeBasis& basis);
std::string amplitudes_csv(const SpectralAmplitudes& g);

/// Splits CSV text into rows of fields. No quoting support; the emitted files never need it.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace noonsim

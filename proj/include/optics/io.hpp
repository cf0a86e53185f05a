#ifndef OPTICS_IO_HPP
#define OPTICS_IO_HPP

#include "optics/config.hpp"
#include "optics/field.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace optics::io {

// Shortest round-trip decimal representation of a binary64.
std::string format_double(double v);

// 1D profile -> CSV "x_m,irradiance_au". 2D profile -> 16-bit big-endian PGM
// (P5, maxval 65535, row-major, values scaled to the profile maximum) plus a
// sidecar JSON with {origin_m, spacing_m}.
void write_profile_csv(const std::filesystem::path& path, const IrradianceProfile& p,
                       const std::string& value_header = "irradiance_au");
void write_pgm16(const std::filesystem::path& path, const IrradianceProfile& p);

// Generic CSV: header row then one row per record.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);

// Creates the directory (parents included) and drops config.resolved.json
// and the tool version into it, making every run self-describing.
void prepare_output_dir(const std::filesystem::path& dir, const SetupConfig& cfg);

} // namespace optics::io

#endif

#include "optics/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace optics::io {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    return out;
}

} // namespace

void write_profile_csv(const std::filesystem::path& path, const IrradianceProfile& p,
                       const std::string& value_header) {
    if (p.grid.dims != 1)
        throw std::invalid_argument("CSV profile output is 1D; use write_pgm16 for 2D");
    auto out = open_out(path, std::ios::out);
    out << "x_m," << value_header << "\n";
    for (std::size_t i = 0; i < p.grid.nx; ++i)
        out << format_double(p.grid.coord(i)) << ',' << format_double(p.values[i]) << "\n";
}

void write_pgm16(const std::filesystem::path& path, const IrradianceProfile& p) {
    if (p.grid.dims != 2) throw std::invalid_argument("PGM output expects a 2D profile");
    double peak = *std::max_element(p.values.begin(), p.values.end());
    if (!(peak > 0.0)) peak = 1.0;
    auto out = open_out(path, std::ios::out | std::ios::binary);
    out << "P5\n" << p.grid.nx << ' ' << p.grid.ny << "\n65535\n";
    std::vector<unsigned char> row(p.grid.nx * 2);
    for (std::size_t iy = 0; iy < p.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < p.grid.nx; ++ix) {
            auto v = std::uint16_t(std::clamp(p.at(ix, iy) / peak, 0.0, 1.0) * 65535.0 + 0.5);
            row[2 * ix] = (unsigned char)(v >> 8);  // big-endian per PGM spec
            row[2 * ix + 1] = (unsigned char)(v & 0xff);
        }
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
    }
    auto sidecar = path;
    sidecar += ".json";
    auto meta = open_out(sidecar, std::ios::out);
    meta << "{\n  \"origin_m\": " << format_double(p.grid.origin)
         << ",\n  \"spacing_m\": " << format_double(p.grid.spacing) << "\n}\n";
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    auto out = open_out(path, std::ios::out);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& r : rows) {
        if (r.size() != header.size())
            throw std::invalid_argument("CSV row width does not match the header");
        for (std::size_t i = 0; i < r.size(); ++i)
            out << format_double(r[i]) << (i + 1 < r.size() ? "," : "\n");
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path, std::ios::out);
    out << text;
}

void prepare_output_dir(const std::filesystem::path& dir, const SetupConfig& cfg) {
    std::filesystem::create_directories(dir);
    write_text(dir / "config.resolved.json", config_to_json(cfg) + "\n");
    write_text(dir / "VERSION", std::string(kToolVersion) + "\n");
}

} // namespace optics::io

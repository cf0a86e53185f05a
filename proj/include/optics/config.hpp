#ifndef OPTICS_CONFIG_HPP
#define OPTICS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace optics {

inline constexpr const char* kToolVersion = "pinhole-optics 0.1.0";

enum class ImageDistanceMode { thin_lens, pinned };
enum class AiryModeCfg { first_zero, simple_ratio };

// Full experiment geometry; defaults reproduce the published apparatus
// (650 nm laser, 2000 um dual pinhole, 4 m fringe plane, f = 100 cm lens).
struct SetupConfig {
    double wavelength_m = 650e-9;
    double pinhole_separation_m = 2.0e-3;   // a
    double pinhole_diameter_m = 250e-6;     // b
    double pinhole_to_sigma1_m = 4.0;       // l
    double pinhole_to_lens_m = 4.2;         // p
    double focal_length_m = 1.0;            // f
    double lens_diameter_m = 30e-3;         // d
    ImageDistanceMode image_distance_mode = ImageDistanceMode::thin_lens;
    double q_m = 1.38;                      // used when pinned
    double wire_thickness_m = 127e-6;       // e
    int wire_count = 6;
    double wire_offset_m = 0.0;             // common misalignment knob
    AiryModeCfg airy_mode = AiryModeCfg::first_zero;
    std::optional<double> fringe_spacing_override_m;
    std::size_t grid_samples = 16384;
    double grid_extent_m = 0.030;
    int dims = 1;
    double noise_pct = 0.0;
    std::uint64_t seed = 1;

    double fringe_spacing() const;  // override or l*lambda/a
    double airy_radius() const;     // per airy_mode
    double image_distance() const;  // resolved q
    void validate() const;
};

// Strict JSON loader: unknown keys are rejected, absent keys take defaults.
SetupConfig load_config(const std::string& path);
SetupConfig config_from_json_text(const std::string& text);
std::string config_to_json(const SetupConfig& cfg);

} // namespace optics

#endif

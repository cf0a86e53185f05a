#include "optics/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace optics {

using nlohmann::json;

double SetupConfig::fringe_spacing() const {
    if (fringe_spacing_override_m) return *fringe_spacing_override_m;
    return pinhole_to_sigma1_m * wavelength_m / pinhole_separation_m;
}

double SetupConfig::airy_radius() const {
    double k = (airy_mode == AiryModeCfg::first_zero) ? 1.22 : 1.0;
    return k * pinhole_to_sigma1_m * wavelength_m / pinhole_diameter_m;
}

double SetupConfig::image_distance() const {
    if (image_distance_mode == ImageDistanceMode::pinned) return q_m;
    return 1.0 / (1.0 / focal_length_m - 1.0 / pinhole_to_lens_m);
}

void SetupConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(wavelength_m, "wavelength_m");
    positive(pinhole_separation_m, "pinhole_separation_m");
    positive(pinhole_diameter_m, "pinhole_diameter_m");
    positive(pinhole_to_sigma1_m, "pinhole_to_sigma1_m");
    positive(pinhole_to_lens_m, "pinhole_to_lens_m");
    positive(focal_length_m, "focal_length_m");
    positive(lens_diameter_m, "lens_diameter_m");
    positive(wire_thickness_m, "wire_thickness_m");
    positive(q_m, "q_m");
    positive(grid_extent_m, "grid_extent_m");
    if (pinhole_to_lens_m <= focal_length_m && image_distance_mode == ImageDistanceMode::thin_lens)
        throw std::invalid_argument("thin-lens mode needs p > f for a real image");
    if (wire_count < 0 || wire_count % 2 != 0)
        throw std::invalid_argument("wire_count must be even and non-negative");
    if (wire_count > 0 && !(wire_thickness_m < fringe_spacing()))
        throw std::invalid_argument("e < u violated: wires wider than a fringe");
    if (wire_count > 0 && wire_thickness_m < 20.0 * wavelength_m)
        throw std::invalid_argument("wire_thickness_m below the opacity regime e >= 20 lambda");
    if (dims != 1 && dims != 2) throw std::invalid_argument("dims must be 1 or 2");
    if (grid_samples < 64) throw std::invalid_argument("grid_samples too small");
    if (noise_pct < 0.0) throw std::invalid_argument("noise_pct must be non-negative");
    if (fringe_spacing_override_m && !(*fringe_spacing_override_m > 0.0))
        throw std::invalid_argument("fringe_spacing_override_m must be positive");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "wavelength_m", "pinhole_separation_m", "pinhole_diameter_m",
    "pinhole_to_sigma1_m", "pinhole_to_lens_m", "focal_length_m",
    "lens_diameter_m", "image_distance_mode", "q_m", "wire_thickness_m",
    "wire_count", "wire_offset_m", "airy_mode", "fringe_spacing_override_m",
    "grid", "dims", "noise_pct", "seed",
};

SetupConfig from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (auto& [key, _] : j.items())
        if (!kKnownKeys.count(key))
            throw std::invalid_argument("unknown config key: " + key);

    SetupConfig c;
    auto get = [&](const char* key, auto& dst) {
        if (j.contains(key)) dst = j.at(key).template get<std::decay_t<decltype(dst)>>();
    };
    get("wavelength_m", c.wavelength_m);
    get("pinhole_separation_m", c.pinhole_separation_m);
    get("pinhole_diameter_m", c.pinhole_diameter_m);
    get("pinhole_to_sigma1_m", c.pinhole_to_sigma1_m);
    get("pinhole_to_lens_m", c.pinhole_to_lens_m);
    get("focal_length_m", c.focal_length_m);
    get("lens_diameter_m", c.lens_diameter_m);
    get("q_m", c.q_m);
    get("wire_thickness_m", c.wire_thickness_m);
    get("wire_count", c.wire_count);
    get("wire_offset_m", c.wire_offset_m);
    get("dims", c.dims);
    get("noise_pct", c.noise_pct);
    get("seed", c.seed);
    if (j.contains("image_distance_mode")) {
        std::string m = j.at("image_distance_mode");
        if (m == "thin_lens") c.image_distance_mode = ImageDistanceMode::thin_lens;
        else if (m == "pinned") c.image_distance_mode = ImageDistanceMode::pinned;
        else throw std::invalid_argument("image_distance_mode must be thin_lens or pinned");
    }
    if (j.contains("airy_mode")) {
        std::string m = j.at("airy_mode");
        if (m == "first_zero") c.airy_mode = AiryModeCfg::first_zero;
        else if (m == "simple_ratio") c.airy_mode = AiryModeCfg::simple_ratio;
        else throw std::invalid_argument("airy_mode must be first_zero or simple_ratio");
    }
    if (j.contains("fringe_spacing_override_m"))
        c.fringe_spacing_override_m = j.at("fringe_spacing_override_m").get<double>();
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        for (auto& [key, _] : g.items())
            if (key != "samples" && key != "extent_m")
                throw std::invalid_argument("unknown config key: grid." + key);
        if (g.contains("samples")) c.grid_samples = g.at("samples").get<std::size_t>();
        if (g.contains("extent_m")) c.grid_extent_m = g.at("extent_m").get<double>();
    }
    c.validate();
    return c;
}

} // namespace

SetupConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

SetupConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string config_to_json(const SetupConfig& c) {
    json j;
    j["wavelength_m"] = c.wavelength_m;
    j["pinhole_separation_m"] = c.pinhole_separation_m;
    j["pinhole_diameter_m"] = c.pinhole_diameter_m;
    j["pinhole_to_sigma1_m"] = c.pinhole_to_sigma1_m;
    j["pinhole_to_lens_m"] = c.pinhole_to_lens_m;
    j["focal_length_m"] = c.focal_length_m;
    j["lens_diameter_m"] = c.lens_diameter_m;
    j["image_distance_mode"] =
        c.image_distance_mode == ImageDistanceMode::thin_lens ? "thin_lens" : "pinned";
    j["q_m"] = c.q_m;
    j["wire_thickness_m"] = c.wire_thickness_m;
    j["wire_count"] = c.wire_count;
    j["wire_offset_m"] = c.wire_offset_m;
    j["airy_mode"] = c.airy_mode == AiryModeCfg::first_zero ? "first_zero" : "simple_ratio";
    if (c.fringe_spacing_override_m) j["fringe_spacing_override_m"] = *c.fringe_spacing_override_m;
    j["grid"] = {{"samples", c.grid_samples}, {"extent_m", c.grid_extent_m}};
    j["dims"] = c.dims;
    j["noise_pct"] = c.noise_pct;
    j["seed"] = c.seed;
    return j.dump(2);
}

} // namespace optics

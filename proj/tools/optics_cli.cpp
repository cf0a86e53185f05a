#include "optics/analytic.hpp"
#include "optics/config.hpp"
#include "optics/experiment.hpp"
#include "optics/io.hpp"
#include "optics/photons.hpp"
#include "optics/propagation.hpp"
#include "optics/wavepacket.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    int dims_override = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file (defaults when absent)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--dims", args.dims_override, "override dims (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
}

optics::SetupConfig load(const CommonArgs& args) {
    optics::SetupConfig cfg = args.config_path.empty()
                                  ? optics::SetupConfig{}
                                  : optics::load_config(args.config_path);
    if (args.dims_override != 0) cfg.dims = args.dims_override;
    cfg.validate();
    return cfg;
}

void emit_plane(const fs::path& dir, const std::string& name, const optics::ComplexField& f) {
    optics::IrradianceProfile p = optics::irradiance(f);
    if (p.grid.dims == 1)
        optics::io::write_profile_csv(dir / (name + ".csv"), p);
    else
        optics::io::write_pgm16(dir / (name + ".pgm"), p);
}

json flux_json(const optics::PlaneSet& ps) {
    json j;
    for (const auto& [name, value] : ps.fluxes) j[name] = value;
    return j;
}

int cmd_analytic(const CommonArgs& args) {
    optics::SetupConfig cfg = load(args);
    optics::io::prepare_output_dir(args.out_dir, cfg);
    double u = cfg.fringe_spacing();
    double s = cfg.airy_radius();
    optics::analytic::FringeModel model(u, s);
    optics::Grid grid = optics::Grid::centered_line(2.0 * s, 8192);

    std::vector<std::vector<double>> rows;
    rows.reserve(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        double x = grid.coord(i);
        rows.push_back({x, model.coherent_at(x), model.decoherent_at(x)});
    }
    optics::io::write_csv(fs::path(args.out_dir) / "profiles.csv",
                          {"x_m", "coherent_au", "decoherent_au"}, rows);

    optics::PipelineGeometry geo = optics::derive_geometry(cfg);
    optics::analytic::WireGrid wg(geo.wire_centers, cfg.wire_thickness_m, cfg.wavelength_m);
    double loss_coh = optics::analytic::wire_loss(model, wg, true);
    double loss_dec = optics::analytic::wire_loss(model, wg, false);

    json j;
    j["fringe_spacing_m"] = u;
    j["airy_radius_m"] = s;
    j["wire_centers_m"] = geo.wire_centers;
    j["wire_loss_coherent_au"] = loss_coh;
    j["wire_loss_decoherent_au"] = loss_dec;
    optics::io::write_text(fs::path(args.out_dir) / "metrics.json", j.dump(2) + "\n");
    return 0;
}

int cmd_simulate(const CommonArgs& args, const std::string& variant_name) {
    optics::SetupConfig cfg = load(args);
    optics::io::prepare_output_dir(args.out_dir, cfg);
    optics::Variant variant = optics::variant_from_string(variant_name);
    optics::PlaneSet ps = optics::run_pipeline(cfg, variant);
    for (const auto& [name, field] : ps.planes) emit_plane(args.out_dir, name, field);
    json j = flux_json(ps);
    j["variant"] = optics::to_string(variant);
    optics::io::write_text(fs::path(args.out_dir) / "fluxes.json", j.dump(2) + "\n");
    if (variant == optics::Variant::crossed_beams) {
        optics::CrossedBeamsReport rep = optics::crossed_beams_report(cfg);
        json c;
        c["blocked_fraction"] = rep.blocked_fraction;
        c["centroid_plus_m"] = rep.centroid_plus;
        c["centroid_minus_m"] = rep.centroid_minus;
        c["centroid_plus_free_m"] = rep.centroid_plus_free;
        c["centroid_minus_free_m"] = rep.centroid_minus_free;
        c["expected_half_separation_m"] = rep.expected_half_separation;
        c["centroid_deviation_m"] = rep.centroid_deviation;
        optics::io::write_text(fs::path(args.out_dir) / "crossed_beams.json", c.dump(2) + "\n");
    }
    return 0;
}

int cmd_report(const CommonArgs& args) {
    optics::SetupConfig cfg = load(args);
    optics::io::prepare_output_dir(args.out_dir, cfg);
    optics::ExperimentReport rep = optics::full_report(cfg);

    for (auto variant : {optics::Variant::control, optics::Variant::decoherent_sim,
                         optics::Variant::coherent_wg}) {
        optics::PlaneSet ps = optics::run_pipeline(cfg, variant);
        fs::path sub = fs::path(args.out_dir) / optics::to_string(variant);
        fs::create_directories(sub);
        for (const auto& [name, field] : ps.planes) emit_plane(sub, name, field);
        optics::io::write_text(sub / "fluxes.json", flux_json(ps).dump(2) + "\n");
    }

    json j;
    j["phi_c"] = rep.phi_c;
    j["r_pct"] = rep.r_pct;
    j["r_tilde_pct"] = rep.r_tilde_pct;
    j["eta"] = rep.verdict.eta;
    j["v"] = rep.v;
    j["k"] = rep.k;
    j["duality_sum"] = rep.verdict.duality_sum;
    j["violation"] = rep.verdict.violation;
    j["pc_prediction_eta"] = rep.verdict.pc_prediction_eta;
    j["resolution_control_m"] = rep.resolution_control_m;
    j["resolution_decoherent_m"] = rep.resolution_decoherent_m;
    j["crosstalk"] = rep.crosstalk;
    j["separation_m"] = rep.separation_m;
    j["expected_separation_m"] = rep.expected_separation_m;
    j["psf_fwhm_m"] = rep.psf_fwhm_m;
    j["rayleigh_m"] = rep.rayleigh_m;
    j["width_control_m"] = rep.width_control_m;
    j["width_coherent_m"] = rep.width_coherent_m;
    j["width_single_m"] = rep.width_single_m;
    j["width_decoherent_m"] = rep.width_decoherent_m;
    if (cfg.noise_pct > 0.0) {
        optics::NoiseStudy ns = optics::noise_study(cfg, rep.r_tilde_pct, rep.r_pct, 1000);
        j["noise"] = {{"eta_lo", ns.eta_lo},
                      {"eta_hi", ns.eta_hi},
                      {"r_lo_pct", ns.r_lo},
                      {"r_hi_pct", ns.r_hi}};
    }
    optics::io::write_text(fs::path(args.out_dir) / "report.json", j.dump(2) + "\n");
    std::cout << "report: R~ = " << rep.r_tilde_pct << "%, R = " << rep.r_pct
              << "%, eta = " << rep.verdict.eta << ", V^2+K^2 = " << rep.verdict.duality_sum
              << ", violation = " << (rep.verdict.violation ? "true" : "false") << "\n";
    return 0;
}

int cmd_wavepacket(const CommonArgs& args, const std::string& scenario_name, int frames) {
    optics::SetupConfig cfg = load(args);
    optics::io::prepare_output_dir(args.out_dir, cfg);
    namespace wp = optics::wavepacket;
    wp::Scenario sc = wp::scenario_from_string(scenario_name);
    wp::PacketParams params;

    fs::path dir(args.out_dir);
    wp::FrameCallback cb = nullptr;
    if (frames > 0) {
        cb = [&dir](const wp::PacketState& s, int step_index) {
            optics::IrradianceProfile p = optics::irradiance(s.field);
            std::ostringstream name;
            name << "frame_" << std::setw(5) << std::setfill('0') << step_index << ".pgm";
            optics::io::write_pgm16(dir / name.str(), p);
        };
    }
    wp::ScenarioResult res = wp::run_scenario(sc, params, cb, frames);

    std::vector<std::vector<double>> rows;
    for (const auto& pt : res.trajectory)
        rows.push_back({pt.t, pt.norm, pt.transmitted, pt.reflected, pt.overlap});
    optics::io::write_csv(dir / "trajectory.csv",
                          {"t", "norm", "transmitted", "reflected", "overlap"}, rows);

    wp::Theorem1Result t1 = wp::theorem1_check(res.report);
    json j;
    j["scenario"] = scenario_name;
    j["norm_initial"] = res.report.norm_initial;
    j["norm_final"] = res.report.norm_final;
    j["norm_transmitted"] = res.report.norm_transmitted;
    j["norm_reflected"] = res.report.norm_reflected;
    j["footprint_overlap"] = res.report.footprint_overlap;
    j["lobe_score"] = res.report.lobe_score;
    j["theorem1"] = {{"holds", t1.holds},
                     {"attenuation", t1.attenuation},
                     {"footprint_overlap", t1.footprint_overlap}};
    optics::io::write_text(dir / "report.json", j.dump(2) + "\n");
    return 0;
}

int cmd_photons(const CommonArgs& args, const std::string& counts_str, int trials,
                std::uint64_t seed, bool seed_given) {
    optics::SetupConfig cfg = load(args);
    if (seed_given) cfg.seed = seed;
    optics::io::prepare_output_dir(args.out_dir, cfg);

    std::vector<std::size_t> counts;
    std::stringstream ss(counts_str);
    for (std::string tok; std::getline(ss, tok, ',');) counts.push_back(std::stoul(tok));
    if (counts.empty()) throw std::invalid_argument("empty --counts list");

    double u = cfg.fringe_spacing();
    double s = cfg.airy_radius();
    optics::analytic::FringeModel model(u, s);
    optics::Grid grid = optics::Grid::centered_line(2.0 * s, 16384);
    optics::IrradianceProfile coh = optics::analytic::coherent_profile(grid, model);
    optics::IrradianceProfile dec = optics::analytic::decoherent_profile(grid, model);

    fs::path dir(args.out_dir);
    for (std::size_t n : counts) {
        for (auto [profile, tag, which] :
             {std::tuple{&coh, "coherent", std::uint64_t{0}},
              std::tuple{&dec, "decoherent", std::uint64_t{1}}}) {
            auto sample = optics::photons::sample(
                *profile, n, optics::photons::derive_seed(cfg.seed, n, which, 0));
            std::vector<std::vector<double>> rows;
            for (double x : sample.positions) rows.push_back({x});
            std::ostringstream name;
            name << "dots_" << tag << "_" << n << ".csv";
            optics::io::write_csv(dir / name.str(), {"x_m"}, rows);
        }
    }

    auto table = optics::photons::buildup_study(coh, dec, counts, trials, cfg.seed);
    json j;
    j["trials"] = trials;
    j["seed"] = cfg.seed;
    j["generator"] = "mt19937_64";
    j["rows"] = json::array();
    for (const auto& row : table)
        j["rows"].push_back({{"count", row.count},
                             {"accuracy_coherent", row.accuracy_coherent},
                             {"accuracy_decoherent", row.accuracy_decoherent},
                             {"accuracy_mean", row.accuracy_mean}});
    optics::io::write_text(dir / "accuracy.json", j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-pinhole interferometry simulation suite"};
    app.require_subcommand(1);

    CommonArgs analytic_args, simulate_args, report_args, wavepacket_args, photons_args;
    std::string variant = "control";
    std::string scenario = "hit";
    int frames = 0;
    std::string counts = "30,300,3000";
    int trials = 500;
    std::uint64_t seed = 0;

    CLI::App* c_analytic = app.add_subcommand("analytic", "closed-form fringe model profiles");
    add_common(c_analytic, analytic_args);

    CLI::App* c_simulate = app.add_subcommand("simulate", "run one pipeline variant");
    add_common(c_simulate, simulate_args);
    c_simulate->add_option("--variant", variant,
                           "no_lens|lens_only|control|decoherent_sim|coherent_wg|crossed_beams");

    CLI::App* c_report = app.add_subcommand("report", "full complementarity measurement report");
    add_common(c_report, report_args);

    CLI::App* c_wavepacket = app.add_subcommand("wavepacket", "2D packet vs obstacle solver");
    add_common(c_wavepacket, wavepacket_args);
    c_wavepacket->add_option("--scenario", scenario, "hit|graze|miss");
    c_wavepacket->add_option("--frames", frames, "number of PGM snapshots");

    CLI::App* c_photons = app.add_subcommand("photons", "photon build-up statistics");
    add_common(c_photons, photons_args);
    c_photons->add_option("--counts", counts, "comma-separated photon counts");
    c_photons->add_option("--trials", trials, "Monte Carlo trials per (source, N)");
    auto* seed_opt = c_photons->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 64;
    }

    try {
        if (c_analytic->parsed()) return cmd_analytic(analytic_args);
        if (c_simulate->parsed()) return cmd_simulate(simulate_args, variant);
        if (c_report->parsed()) return cmd_report(report_args);
        if (c_wavepacket->parsed()) return cmd_wavepacket(wavepacket_args, scenario, frames);
        if (c_photons->parsed())
            return cmd_photons(photons_args, counts, trials, seed, seed_opt->count() > 0);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    std::cerr << app.help();
    return 64;
}

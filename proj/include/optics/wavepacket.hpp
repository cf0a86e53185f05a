#ifndef OPTICS_WAVEPACKET_HPP
#define OPTICS_WAVEPACKET_HPP

#include "optics/field.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace optics::wavepacket {

// Natural units hbar = m = 1; "wavelength" is the de Broglie wavelength
// 2*pi/k0. The obstacle is a perfectly reflecting region held at zero
// (Dirichlet), as are the domain edges.

struct Obstacle {
    double cx = 0.0, cy = 0.0;
    double half_w = 0.0, half_h = 0.0;
    bool active = false;

    bool contains(double x, double y) const {
        return active && std::abs(x - cx) <= half_w && std::abs(y - cy) <= half_h;
    }
};

struct PacketParams {
    std::size_t n = 512;
    double spacing = 1.0;
    double lambda_db = 8.0;   // de Broglie wavelength, grid units
    double sigma = 20.0;      // position standard deviation
    double x0 = 256.0, y0 = 100.0;
    double dt = 0.35;
    int steps = 1000;
    double obstacle_y = 256.0;
    double obstacle_half_h = 4.0;

    double k0() const { return 2.0 * std::numbers::pi / lambda_db; }
    double obstacle_half_w() const { return 15.0 * lambda_db; }  // e = 30 lambda
    // HWHM of the initial transverse power spectrum.
    double spectral_hwhm() const { return std::sqrt(std::numbers::ln2 / 2.0) / sigma; }
};

struct PacketState {
    ComplexField field;  // 2D; wavelength slot carries lambda_db
    double time = 0.0;
    Obstacle obstacle;
};

struct GaussianSpec {
    double cx, cy;
    double amplitude;  // may be negative (antisymmetric superpositions)
};

// Normalized superposition of Gaussian packets, all sharing sigma and the
// +y momentum k0. Throws if the initial overlap with the obstacle exceeds
// 1e-10 of the norm.
PacketState init_superposition(const PacketParams& p, const std::vector<GaussianSpec>& packets,
                               const Obstacle& obs);
PacketState init_gaussian(const PacketParams& p, double cx, double cy, const Obstacle& obs);

// One Strang-split Cayley (Crank-Nicolson) step: half step in x, full step
// in y, half step in x. Each factor is exactly unitary; obstacle cells stay
// pinned at zero.
void step(PacketState& state, double dt);

void conjugate(PacketState& state);  // time reversal: psi -> conj(psi)

double norm2(const PacketState& s);
double norm_transmitted(const PacketState& s);  // beyond the obstacle band (+y)
double norm_reflected(const PacketState& s);    // before the obstacle band (-y)
// Column mass currently inside the obstacle's x-extent (all y).
double footprint_overlap_now(const PacketState& s);
// Fraction of transmitted-region spectral power outside |kx| > 3 * hwhm_k.
double lobe_score(const PacketState& s, double hwhm_k);

struct AttenuationReport {
    double norm_initial = 0.0;
    double norm_final = 0.0;
    double norm_transmitted = 0.0;
    double norm_reflected = 0.0;
    double footprint_overlap = 0.0;  // max over the run
    double lobe_score = 0.0;
};

struct TrajectoryPoint {
    double t, norm, transmitted, reflected, overlap;
};

enum class Scenario { hit, graze, miss };
Scenario scenario_from_string(const std::string& s);
std::string to_string(Scenario s);

using FrameCallback = std::function<void(const PacketState&, int step_index)>;

struct ScenarioResult {
    PacketState state;
    AttenuationReport report;
    std::vector<TrajectoryPoint> trajectory;
};

// Scenarios differ only in the obstacle's transverse offset from the packet
// axis: hit 0, graze e/2, miss e/2 + 5.2 sigma.
double scenario_offset(const PacketParams& p, Scenario s);
ScenarioResult run_with_offset(const PacketParams& p, double offset,
                               const FrameCallback& frame_cb = nullptr, int frames = 0);
ScenarioResult run_scenario(Scenario s, const PacketParams& p = {},
                            const FrameCallback& frame_cb = nullptr, int frames = 0);

// Two opposite-sign packets with the interference node aligned on a thin
// obstacle (the Theorem-1 destructive-interference case).
ScenarioResult run_antisymmetric(const PacketParams& p = {});

struct Theorem1Result {
    bool holds = false;
    double attenuation = 0.0;        // 1 - transmitted norm
    double footprint_overlap = 0.0;
};
Theorem1Result theorem1_check(const AttenuationReport& rep, double eps = 1e-3);

} // namespace optics::wavepacket

#endif

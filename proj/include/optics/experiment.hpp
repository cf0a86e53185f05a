#ifndef OPTICS_EXPERIMENT_HPP
#define OPTICS_EXPERIMENT_HPP

#include "optics/analytic.hpp"
#include "optics/config.hpp"
#include "optics/propagation.hpp"

#include <string>

namespace optics {

// Flux bookkeeping for one measurement run. phi_control is the per-image-
// channel control flux Phi_C; delta_blocked and r_pct are reported against
// that same channel normalization.
struct FluxReport {
    std::string variant;
    double phi_control = 0.0;
    double phi_after_wg = 0.0;
    double delta_blocked = 0.0;
    double r_pct = 0.0;              // 100 * delta_blocked / phi_control
    double phi_image_1 = 0.0;
    double phi_image_2 = 0.0;
    double resolution_fwhm = 0.0;    // brighter image peak [m]
    double image_rms_width = 0.0;    // second-moment width around that peak [m]
    double crosstalk = 0.0;
};

struct ComplementarityVerdict {
    double v = 0.0;
    double k = 0.0;
    double eta = 0.0;
    double duality_sum = 0.0;
    double pc_prediction_eta = 0.0;  // the decoherent prediction, identically zero
    bool violation = false;
};

// In 1D ("analytic accounting") mode the flux fractions come from quadrature
// of the closed-form circular-pinhole model while imaging metrics come from
// the numeric pipeline; in 2D mode everything is numeric.
FluxReport run_control(const SetupConfig& cfg);
FluxReport run_decoherent(const SetupConfig& cfg);
FluxReport run_coherent(const SetupConfig& cfg);

struct ExperimentReport {
    FluxReport control, decoherent, coherent;
    double phi_c = 0.0;
    double r_tilde_pct = 0.0;
    double r_pct = 0.0;
    double v = 0.0;
    double k = 0.0;
    ComplementarityVerdict verdict;
    double separation_m = 0.0;           // measured sigma2 peak separation
    double expected_separation_m = 0.0;  // a q / p
    double resolution_control_m = 0.0;   // control image FWHM
    double resolution_decoherent_m = 0.0;
    double psf_fwhm_m = 0.0;             // point-source probe FWHM (lens resolution)
    double rayleigh_m = 0.0;             // 1.22 lambda q / d
    double width_control_m = 0.0;        // rms widths, peak +- 1 mm window
    double width_coherent_m = 0.0;
    double width_single_m = 0.0;         // single pinhole, no wires
    double width_decoherent_m = 0.0;
    double crosstalk = 0.0;
};

ExperimentReport full_report(const SetupConfig& cfg);

// Gaussian measurement-noise resampling of (R_tilde, R), sd = noise_pct
// percentage points on each; reports the min/max eta and R over the
// resamples. Reproduces the sign-fluctuation behavior of real measurements.
struct NoiseStudy {
    double eta_lo = 0.0, eta_hi = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
};
NoiseStudy noise_study(const SetupConfig& cfg, double r_tilde_pct, double r_pct, int resamples);

struct CrossedBeamsReport {
    double phi_before = 0.0;
    double phi_after = 0.0;
    double blocked_fraction = 0.0;
    double centroid_plus = 0.0;       // beam centroids at the far plane [m]
    double centroid_minus = 0.0;
    double centroid_plus_free = 0.0;  // same, wire-free reference
    double centroid_minus_free = 0.0;
    double expected_half_separation = 0.0;  // z * theta / 2
    double centroid_deviation = 0.0;        // max |with - without|
};
CrossedBeamsReport crossed_beams_report(const SetupConfig& cfg);

// Width-inflation probe for the attenuation <-> diffraction property: the
// wire grid against the matching no-wire baseline.
struct WidthInflation {
    double baseline = 0.0;
    double with_wg = 0.0;
    double inflation = 0.0;  // with_wg / baseline - 1
};
WidthInflation wg_width_inflation(const SetupConfig& cfg, bool decoherent);

} // namespace optics

#endif

#ifndef OPTICS_ANALYTIC_HPP
#define OPTICS_ANALYTIC_HPP

#include "optics/field.hpp"

#include <vector>

namespace optics::analytic {

// Bessel function of the first kind, order one. Power series up to |x| = 18
// (evaluated in long double), Hankel asymptotic expansion beyond. Absolute
// error below 1e-10 everywhere; throws on NaN.
double bessel_j1(double x);

enum class AiryMode { first_zero, simple_ratio };

// u = l*lambda/a, the bright-fringe pitch.
double fringe_spacing(double l, double lambda, double a);

// Airy envelope radius. first_zero: s = 1.22*l*lambda/b (consistent with the
// envelope normalization beta(s) = 1.22*pi). simple_ratio: s = l*lambda/b.
double airy_radius(double l, double lambda, double b, AiryMode mode);

// Closed-form dual-pinhole model on the fringe plane.
struct FringeModel {
    double u;               // fringe pitch [m]
    double s;               // envelope first-zero radius [m]
    double amplitude_scale = 1.0;

    FringeModel(double u_, double s_, double scale = 1.0);
    // coherent: [2 cos(pi x/u) J1(beta)/beta]^2, beta = 1.22 pi x / s
    double coherent_at(double x) const;
    // decoherent: 2 [J1(beta)/beta]^2
    double decoherent_at(double x) const;
    double envelope_at(double x) const;  // J1(beta)/beta, 1/2 at x = 0
};

IrradianceProfile coherent_profile(const Grid& grid, const FringeModel& model);
IrradianceProfile decoherent_profile(const Grid& grid, const FringeModel& model);

// Thin opaque wires across the profile.
struct WireGrid {
    std::vector<double> centers;  // [m]
    double thickness;             // e [m]

    WireGrid(std::vector<double> centers_, double thickness_, double wavelength);
    std::size_t count() const { return centers.size(); }
};

// Flux intercepted by the wires: sum over wires of the profile integral over
// [c - e/2, c + e/2]. Uses local quadratic interpolation with sub-sample
// refinement, so wires a few samples wide still integrate accurately.
double wire_loss(const IrradianceProfile& profile, const WireGrid& grid);

// Same, but for a continuous model (used by the experiment bookkeeping).
double wire_loss(const FringeModel& model, const WireGrid& grid, bool coherent);

// V = (I_max - I_min) / (I_max + I_min)
double visibility(double i_max, double i_min);
// K = (I_own - I_cross) / (I_own + I_cross), clamped to [0, 1]
double which_way_knowledge(double i_own, double i_cross);

struct DualitySum {
    double value;      // V^2 + K^2
    bool violation;    // value > 1 + tolerance
};
DualitySum duality_sum(double v, double k, double tolerance = 0.01);

// eta = (R_tilde - R) / (R_tilde + R); not clamped (measured values may
// exceed 1 when R goes negative).
double eta(double r_tilde, double r);

} // namespace optics::analytic

#endif

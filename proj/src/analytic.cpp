#include "optics/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optics::analytic {

namespace {

constexpr double pi = std::numbers::pi;

double j1_series(double x) {
    // sum_m (-1)^m (x/2)^(2m+1) / (m! (m+1)!); worst-case term growth at
    // x = 18 needs the extra long double headroom.
    long double half = 0.5L * (long double)x;
    long double term = half;
    long double sum = term;
    long double h2 = half * half;
    for (int m = 1; m < 60; ++m) {
        term *= -h2 / ((long double)m * (long double)(m + 1));
        sum += term;
        if (std::fabs((double)term) < 1e-22 * (1.0 + std::fabs((double)sum))) break;
    }
    return (double)sum;
}

double j1_asymptotic(double x) {
    // Hankel expansion: J1(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
    // chi = x - 3 pi / 4, with mu = 4.
    const double mu = 4.0;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double inv8x = 1.0 / (8.0 * x);
    // alternate terms feed P (even) and Q (odd)
    for (int k = 1; k <= 10; ++k) {
        double num = mu - double(2 * k - 1) * double(2 * k - 1);
        term *= num * inv8x / double(k);
        if (k % 2 == 1) {
            q += (k % 4 == 1) ? term : -term;
        } else {
            p += (k % 4 == 2) ? -term : term;
        }
    }
    double chi = x - 0.75 * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j1(double x) {
    if (std::isnan(x)) throw std::invalid_argument("bessel_j1: NaN input");
    double ax = std::fabs(x);
    double v = (ax <= 18.0) ? j1_series(ax) : j1_asymptotic(ax);
    return x < 0.0 ? -v : v;
}

double fringe_spacing(double l, double lambda, double a) {
    if (!(l > 0.0 && lambda > 0.0 && a > 0.0))
        throw std::invalid_argument("fringe_spacing: inputs must be positive");
    return l * lambda / a;
}

double airy_radius(double l, double lambda, double b, AiryMode mode) {
    if (!(l > 0.0 && lambda > 0.0 && b > 0.0))
        throw std::invalid_argument("airy_radius: inputs must be positive");
    return (mode == AiryMode::first_zero ? 1.22 : 1.0) * l * lambda / b;
}

FringeModel::FringeModel(double u_, double s_, double scale)
    : u(u_), s(s_), amplitude_scale(scale) {
    if (!(u > 0.0 && s > 0.0)) throw std::invalid_argument("FringeModel: u and s must be positive");
    if (!(2.0 * s / u >= 1.0)) throw std::invalid_argument("FringeModel: fringe count below one");
    if (!(amplitude_scale > 0.0)) throw std::invalid_argument("FringeModel: scale must be positive");
}

double FringeModel::envelope_at(double x) const {
    double beta = 1.22 * pi * x / s;
    if (std::fabs(beta) < 1e-8) {
        // J1(b)/b = 1/2 - b^2/16 + ...
        return 0.5 - beta * beta / 16.0;
    }
    return bessel_j1(beta) / beta;
}

double FringeModel::coherent_at(double x) const {
    double v = 2.0 * std::cos(pi * x / u) * envelope_at(x) * amplitude_scale;
    return v * v;
}

double FringeModel::decoherent_at(double x) const {
    double env = envelope_at(x) * amplitude_scale;
    return 2.0 * env * env;
}

namespace {
IrradianceProfile eval_profile(const Grid& grid, const FringeModel& m, bool coherent) {
    if (grid.dims != 1) throw std::invalid_argument("fringe profiles are 1D");
    IrradianceProfile p(grid);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        double x = grid.coord(i);
        p.values[i] = coherent ? m.coherent_at(x) : m.decoherent_at(x);
    }
    return p;
}
} // namespace

IrradianceProfile coherent_profile(const Grid& grid, const FringeModel& model) {
    return eval_profile(grid, model, true);
}

IrradianceProfile decoherent_profile(const Grid& grid, const FringeModel& model) {
    return eval_profile(grid, model, false);
}

WireGrid::WireGrid(std::vector<double> centers_, double thickness_, double wavelength)
    : centers(std::move(centers_)), thickness(thickness_) {
    if (!(thickness > 0.0)) throw std::invalid_argument("WireGrid: thickness must be positive");
    if (thickness < 20.0 * wavelength)
        throw std::invalid_argument("WireGrid: e >= 20 lambda required for opacity");
    std::vector<double> sorted = centers;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] < thickness)
            throw std::invalid_argument("WireGrid: wires overlap");
}

namespace {

// Quadratic (3-point Lagrange) interpolation of a sampled profile.
double quad_interp(const IrradianceProfile& p, double x) {
    const Grid& g = p.grid;
    double t = (x - g.origin) / g.spacing;
    std::size_t i = std::size_t(std::clamp(std::round(t), 1.0, double(g.nx - 2)));
    double d = t - double(i);
    double y0 = p.values[i - 1], y1 = p.values[i], y2 = p.values[i + 1];
    double v = y1 + 0.5 * d * (y2 - y0) + 0.5 * d * d * (y2 - 2.0 * y1 + y0);
    return std::max(v, 0.0);
}

template <class F>
double simpson(F f, double a, double b, int panels) {
    double h = (b - a) / (2 * panels);
    double s = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

double wire_loss(const IrradianceProfile& profile, const WireGrid& grid) {
    const Grid& g = profile.grid;
    if (g.dims != 1) throw std::invalid_argument("wire_loss expects a 1D profile");
    double x_min = g.origin, x_max = g.coord(g.nx - 1);
    double total = 0.0;
    for (double c : grid.centers) {
        double lo = c - grid.thickness / 2.0, hi = c + grid.thickness / 2.0;
        if (lo < x_min || hi > x_max)
            throw std::invalid_argument("wire_loss: wire outside profile extent");
        total += simpson([&](double x) { return quad_interp(profile, x); }, lo, hi, 16);
    }
    return total;
}

double wire_loss(const FringeModel& model, const WireGrid& grid, bool coherent) {
    double total = 0.0;
    for (double c : grid.centers) {
        double lo = c - grid.thickness / 2.0, hi = c + grid.thickness / 2.0;
        auto f = [&](double x) { return coherent ? model.coherent_at(x) : model.decoherent_at(x); };
        total += simpson(f, lo, hi, 64);
    }
    return total;
}

double visibility(double i_max, double i_min) {
    if (!(i_max >= 0.0 && i_min >= 0.0)) throw std::invalid_argument("visibility: negative intensity");
    if (i_max + i_min <= 0.0) throw std::invalid_argument("visibility: no flux");
    if (i_min > i_max) throw std::invalid_argument("visibility: I_min exceeds I_max");
    return (i_max - i_min) / (i_max + i_min);
}

double which_way_knowledge(double i_own, double i_cross) {
    if (i_own + i_cross <= 0.0) throw std::invalid_argument("which_way_knowledge: zero total");
    return std::clamp((i_own - i_cross) / (i_own + i_cross), 0.0, 1.0);
}

DualitySum duality_sum(double v, double k, double tolerance) {
    if (!(v >= 0.0 && v <= 1.0 && k >= 0.0 && k <= 1.0))
        throw std::invalid_argument("duality_sum: V and K must lie in [0, 1]");
    double s = v * v + k * k;
    return DualitySum{s, s > 1.0 + tolerance};
}

double eta(double r_tilde, double r) {
    double denom = r_tilde + r;
    if (denom == 0.0) throw std::invalid_argument("eta: zero denominator");
    return (r_tilde - r) / denom;
}

} // namespace optics::analytic

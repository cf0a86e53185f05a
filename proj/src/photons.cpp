#include "optics/photons.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace optics::photons {

namespace {

constexpr double kDensityFloor = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct CdfTable {
    const IrradianceProfile* p;
    std::vector<double> cum;  // cumulative trapezoid mass up to sample i
    double total;
};

CdfTable build_cdf(const IrradianceProfile& profile) {
    profile.validate();
    if (profile.grid.dims != 1)
        throw std::invalid_argument("photon sampling expects a 1D profile");
    CdfTable t;
    t.p = &profile;
    t.cum.resize(profile.values.size(), 0.0);
    double h = profile.grid.spacing;
    for (std::size_t i = 1; i < profile.values.size(); ++i)
        t.cum[i] = t.cum[i - 1] + 0.5 * (profile.values[i - 1] + profile.values[i]) * h;
    t.total = t.cum.back();
    if (!(t.total > 0.0)) throw std::invalid_argument("zero-flux profile");
    return t;
}

// Invert the piecewise-quadratic CDF inside cell [i, i+1] for target mass m
// (relative to the cell start): solve v0*t + (v1-v0)*t^2/2 = m/h for t in [0,1].
double invert_cell(double v0, double v1, double h, double m) {
    double c = v1 - v0;
    double rhs = m / h;
    double t;
    if (std::abs(c) < 1e-300) {
        t = v0 > 0.0 ? rhs / v0 : 0.5;
    } else {
        double disc = v0 * v0 + 2.0 * c * rhs;
        t = (std::sqrt(std::max(disc, 0.0)) - v0) / c;
    }
    return std::clamp(t, 0.0, 1.0);
}

} // namespace

PhotonSample sample(const IrradianceProfile& profile, std::size_t n, std::uint64_t seed) {
    CdfTable t = build_cdf(profile);
    PhotonSample s;
    s.seed = seed;
    s.count = n;
    s.positions.reserve(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Grid& g = profile.grid;
    for (std::size_t k = 0; k < n; ++k) {
        double target = uni(rng) * t.total;
        auto it = std::upper_bound(t.cum.begin(), t.cum.end(), target);
        std::size_t i = std::min<std::size_t>(
            std::size_t(it - t.cum.begin()), t.cum.size() - 1);
        if (i == 0) i = 1;
        --i;  // cell [i, i+1] contains the target mass
        double frac = invert_cell(profile.values[i], profile.values[i + 1], g.spacing,
                                  target - t.cum[i]);
        s.positions.push_back(g.coord(i) + frac * g.spacing);
    }
    return s;
}

double density_at(const IrradianceProfile& profile, double x) {
    const Grid& g = profile.grid;
    double pos = (x - g.origin) / g.spacing;
    if (pos < 0.0 || pos > double(g.nx - 1)) return 0.0;
    std::size_t i = std::min<std::size_t>(std::size_t(pos), g.nx - 2);
    double t = pos - double(i);
    return (1.0 - t) * profile.values[i] + t * profile.values[i + 1];
}

double log_likelihood_ratio(const std::vector<double>& positions,
                            const IrradianceProfile& coherent,
                            const IrradianceProfile& decoherent) {
    if (positions.empty()) return 0.0;
    double norm_c = flux(coherent);
    double norm_d = flux(decoherent);
    if (!(norm_c > 0.0) || !(norm_d > 0.0))
        throw std::invalid_argument("zero-flux profile");
    double lam = 0.0;
    for (double x : positions) {
        double pc = std::max(density_at(coherent, x) / norm_c, kDensityFloor);
        double pd = std::max(density_at(decoherent, x) / norm_d, kDensityFloor);
        lam += std::log(pc / pd);
    }
    return lam;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = splitmix64(base ^ splitmix64(a));
    x = splitmix64(x ^ splitmix64(b));
    return splitmix64(x ^ splitmix64(c));
}

std::vector<BuildupRow> buildup_study(const IrradianceProfile& coherent,
                                      const IrradianceProfile& decoherent,
                                      const std::vector<std::size_t>& counts, int trials,
                                      std::uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("trials must be >= 100");
    std::vector<BuildupRow> rows;
    for (std::size_t n : counts) {
        BuildupRow row;
        row.count = n;
        int ok_c = 0, ok_d = 0;
        for (int t = 0; t < trials; ++t) {
            auto sc = sample(coherent, n, derive_seed(seed, n, 0, std::uint64_t(t)));
            if (log_likelihood_ratio(sc.positions, coherent, decoherent) > 0.0) ++ok_c;
            auto sd = sample(decoherent, n, derive_seed(seed, n, 1, std::uint64_t(t)));
            if (!(log_likelihood_ratio(sd.positions, coherent, decoherent) > 0.0)) ++ok_d;
        }
        row.accuracy_coherent = double(ok_c) / trials;
        row.accuracy_decoherent = double(ok_d) / trials;
        row.accuracy_mean = 0.5 * (row.accuracy_coherent + row.accuracy_decoherent);
        rows.push_back(row);
    }
    return rows;
}

} // namespace optics::photons

#ifndef OPTICS_PHOTONS_HPP
#define OPTICS_PHOTONS_HPP

#include "optics/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace optics::photons {

struct PhotonSample {
    std::vector<double> positions;  // [m]
    std::string source;             // "coherent" | "decoherent" | ""
    std::uint64_t seed = 0;
    std::size_t count = 0;
};

// n independent draws from the normalized profile by inverse CDF on the
// cumulative trapezoid table (piecewise-linear density, exact quadratic
// inversion per cell). Deterministic for a fixed seed within a build.
PhotonSample sample(const IrradianceProfile& profile, std::size_t n, std::uint64_t seed);

// Normalized piecewise-linear density lookup used by the likelihood ratio.
double density_at(const IrradianceProfile& profile, double x);

// Lambda = sum_i ln(p_coh(x_i) / p_dec(x_i)) with a 1e-12 density floor;
// classify coherent iff Lambda > 0. Profiles are normalized internally.
double log_likelihood_ratio(const std::vector<double>& positions,
                            const IrradianceProfile& coherent,
                            const IrradianceProfile& decoherent);

struct BuildupRow {
    std::size_t count = 0;
    double accuracy_coherent = 0.0;    // fraction of coherent trials with Lambda > 0
    double accuracy_decoherent = 0.0;  // fraction of decoherent trials with Lambda <= 0
    double accuracy_mean = 0.0;
};

// For each N: `trials` coherent-sourced and `trials` decoherent-sourced
// samples, classified by the sign of Lambda. Per-trial seeds are derived
// from (seed, N, source, trial index).
std::vector<BuildupRow> buildup_study(const IrradianceProfile& coherent,
                                      const IrradianceProfile& decoherent,
                                      const std::vector<std::size_t>& counts, int trials,
                                      std::uint64_t seed);

// Deterministic per-trial seed derivation (splitmix64 over the tuple).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c);

} // namespace optics::photons

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "../vendor/doctest.h"

#include "optics/analytic.hpp"
#include "optics/field.hpp"
#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace optics;

namespace {
ComplexField random_field(const Grid& g, unsigned seed) {
    ComplexField f(g, 650e-9);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : f.values) v = {dist(rng), dist(rng)};
    return f;
}
} // namespace

TEST_CASE("grid factories and validation") {
    Grid g = Grid::centered_line(0.030, 16);
    CHECK(g.nx == 16);
    CHECK(g.dims == 1);
    // FFT-friendly convention: spacing = extent / n, sample n/2 at x = 0.
    CHECK(g.spacing == doctest::Approx(0.030 / 16));
    CHECK(g.origin == doctest::Approx(-0.015));
    CHECK(g.coord(8) == doctest::Approx(0.0));
    CHECK(g.coord(15) == doctest::Approx(0.015 - g.spacing));

    Grid sq = Grid::centered_square(0.010, 32);
    CHECK(sq.dims == 2);
    CHECK(sq.ny == 32);

    CHECK_THROWS(Grid::line(0.0, -1.0, 16).validate());
    CHECK_THROWS(Grid::line(0.0, 1.0, 4).validate());  // fewer than 8 samples
}

TEST_CASE("flux: trivial integrands") {
    Grid g = Grid::line(0.0, 1.0 / 1000.0, 1001);
    ComplexField zero(g, 650e-9);
    CHECK(flux(zero) == 0.0);

    ComplexField unit(g, 650e-9);
    for (auto& v : unit.values) v = 1.0;
    CHECK(flux(unit, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(flux(unit) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_WITH(flux(unit, 0.5, 0.5), doctest::Contains("degenerate"));
    CHECK_THROWS_WITH(flux(unit, 0.7, 0.2), doctest::Contains("degenerate"));
}

TEST_CASE("flux: fringe profile matches an adaptive-quadrature oracle to 1e-4") {
    double u = 1.30e-3, s = 12.69e-3;
    analytic::FringeModel model(u, s);
    Grid g = Grid::centered_line(2.0 * s, 1 << 16);
    IrradianceProfile p = analytic::coherent_profile(g, model);
    double numeric = flux(p, -s, s);
    oracles::FringeRef ref{u, s};
    double exact = oracles::integrate([&](double x) { return ref.coherent(x); }, -s, s);
    CHECK(numeric == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("flux: additive over disjoint ranges and linear in fractional cells") {
    Grid g = Grid::centered_line(2.0, 4096);
    ComplexField f = random_field(g, 42);
    double whole = flux(f, -0.8, 0.9);
    double parts = flux(f, -0.8, -0.13577) + flux(f, -0.13577, 0.31), rest = flux(f, 0.31, 0.9);
    CHECK(whole == doctest::Approx(parts + rest).epsilon(1e-12));
    // Ranges wider than the grid clamp to the grid.
    CHECK(flux(f, -100.0, 100.0) == doctest::Approx(flux(f)).epsilon(1e-12));
}

TEST_CASE("apodize: no-op inside, exact zeros outside, idempotent, non-increasing") {
    Grid g = Grid::centered_line(2.0e-2, 2048);
    ComplexField f = random_field(g, 3);

    ComplexField same = apodize(f, 1.0);  // everything inside
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(same.values[i] == f.values[i]);

    ComplexField gone = apodize(f, 1e-9);  // everything outside (except x=0 sample region)
    CHECK(flux(gone) <= flux(f));

    ComplexField cut = apodize(f, 5.0e-3);
    for (std::size_t i = 0; i < g.nx; ++i) {
        if (std::fabs(g.coord(i)) > 5.0e-3) {
            CHECK(cut.values[i].real() == 0.0);
            CHECK(cut.values[i].imag() == 0.0);
        } else {
            CHECK(cut.values[i] == f.values[i]);
        }
    }
    ComplexField twice = apodize(cut, 5.0e-3);
    for (std::size_t i = 0; i < g.nx; ++i) CHECK(twice.values[i] == cut.values[i]);
    CHECK(flux(cut) <= flux(f));
}

TEST_CASE("apodize: truncated Gaussian flux ratio matches the quadrature oracle") {
    // Amplitude exp(-x^2/(4 sigma^2)) gives an intensity of rms width sigma.
    double sigma = 2.0e-3;
    Grid g = Grid::centered_line(0.040, 1 << 15);
    ComplexField f(g, 650e-9);
    for (std::size_t i = 0; i < g.nx; ++i) {
        double x = g.coord(i);
        f.values[i] = std::exp(-x * x / (4.0 * sigma * sigma));
    }
    ComplexField cut = apodize(f, sigma);
    auto intensity = [&](double x) { return std::exp(-x * x / (2.0 * sigma * sigma)); };
    double inside = oracles::integrate(intensity, -sigma, sigma);
    double total = oracles::integrate(intensity, -0.020, 0.020);
    // Tolerance dominated by the boundary cell the hard cut lands in.
    CHECK(flux(cut) / flux(f) == doctest::Approx(inside / total).epsilon(1e-3));
    // Same number in closed form: erf(1/sqrt(2)).
    CHECK(inside / total == doctest::Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-9));
}

TEST_CASE("combine: trivial identities") {
    Grid g = Grid::centered_line(1.0e-2, 512);
    ComplexField a = random_field(g, 10);
    ComplexField zero(g, 650e-9);

    IrradianceProfile coh = combine_coherent(a, zero);
    IrradianceProfile dec = combine_decoherent(a, zero);
    for (std::size_t i = 0; i < g.nx; ++i) {
        CHECK(coh.values[i] == doctest::Approx(std::norm(a.values[i])));
        CHECK(dec.values[i] == doctest::Approx(std::norm(a.values[i])));
    }

    ComplexField neg = a;
    for (auto& v : neg.values) v = -v;
    IrradianceProfile destructive = combine_coherent(a, neg);
    for (double v : destructive.values) CHECK(v == 0.0);
    IrradianceProfile dec2 = combine_decoherent(a, neg);
    for (std::size_t i = 0; i < g.nx; ++i)
        CHECK(dec2.values[i] == doctest::Approx(2.0 * std::norm(a.values[i])));

    // Self-combination scalings.
    IrradianceProfile coh_self = combine_coherent(a, a);
    IrradianceProfile dec_self = combine_decoherent(a, a);
    for (std::size_t i = 0; i < g.nx; ++i) {
        CHECK(coh_self.values[i] == doctest::Approx(4.0 * std::norm(a.values[i])));
        CHECK(dec_self.values[i] == doctest::Approx(2.0 * std::norm(a.values[i])));
    }

    Grid other = Grid::centered_line(1.0e-2, 256);
    ComplexField mismatched(other, 650e-9);
    CHECK_THROWS(combine_coherent(a, mismatched));
    CHECK_THROWS(combine_decoherent(a, mismatched));
    CHECK_THROWS(interference_term(a, mismatched));
}

TEST_CASE("combine: tilted plane waves give the closed-form cosine fringe") {
    // Spacing chosen so dark fringes land exactly on samples.
    std::size_t n = 1024;
    Grid g = Grid::line(0.0, 1.0e-5, n);
    double k_half = std::numbers::pi / (8.0 * g.spacing);  // dark fringes every 8 samples
    ComplexField p1(g, 650e-9), p2(g, 650e-9);
    for (std::size_t i = 0; i < n; ++i) {
        double x = g.coord(i);
        p1.values[i] = std::polar(1.0, k_half * x);
        p2.values[i] = std::polar(1.0, -k_half * x);
    }
    IrradianceProfile coh = combine_coherent(p1, p2);
    IrradianceProfile dec = combine_decoherent(p1, p2);
    std::vector<double> gamma = interference_term(p1, p2);
    double peak = 4.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = g.coord(i);
        CHECK(coh.values[i] == doctest::Approx(2.0 * (1.0 + std::cos(2.0 * k_half * x))).epsilon(1e-12));
        CHECK(dec.values[i] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(gamma[i] == doctest::Approx(2.0 * std::cos(2.0 * k_half * x)).epsilon(1e-12));
    }
    // Dark-fringe samples are below 1e-12 of the peak.
    for (std::size_t i = 4; i < n; i += 8) CHECK(coh.values[i] < 1e-12 * peak);
}

TEST_CASE("interference term: disjoint supports and self-overlap") {
    Grid g = Grid::centered_line(1.0e-2, 256);
    ComplexField a(g, 650e-9), b(g, 650e-9);
    for (std::size_t i = 0; i < 100; ++i) a.values[i] = {1.0, 0.5};
    for (std::size_t i = 150; i < 256; ++i) b.values[i] = {0.3, -0.8};
    for (double v : interference_term(a, b)) CHECK(v == 0.0);

    std::vector<double> self = interference_term(a, a);
    for (std::size_t i = 0; i < g.nx; ++i)
        CHECK(self[i] == doctest::Approx(2.0 * std::norm(a.values[i])));
}

TEST_CASE("coherent minus decoherent equals the interference term to machine precision") {
    Grid g = Grid::centered_line(1.0e-2, 2048);
    ComplexField a = random_field(g, 21), b = random_field(g, 22);
    IrradianceProfile coh = combine_coherent(a, b);
    IrradianceProfile dec = combine_decoherent(a, b);
    std::vector<double> gamma = interference_term(a, b);
    for (std::size_t i = 0; i < g.nx; ++i)
        CHECK(coh.values[i] - dec.values[i] == doctest::Approx(gamma[i]).epsilon(1e-13));
}

TEST_CASE("amplitude-probability equivalence: |v|^2 vanishes exactly iff v does") {
    Grid g = Grid::centered_line(1.0e-2, 4096);
    ComplexField f = random_field(g, 99);
    std::mt19937 rng(100);
    std::uniform_int_distribution<std::size_t> pick(0, g.nx - 1);
    std::vector<std::size_t> planted;
    for (int k = 0; k < 64; ++k) {
        std::size_t i = pick(rng);
        f.values[i] = {0.0, 0.0};
        planted.push_back(i);
    }
    IrradianceProfile p = irradiance(f);
    for (std::size_t i = 0; i < g.nx; ++i) {
        bool zero_amp = f.values[i] == cplx{0.0, 0.0};
        bool zero_int = p.values[i] == 0.0;
        CHECK(zero_amp == zero_int);
    }
    for (std::size_t i : planted) CHECK(p.values[i] == 0.0);
}

TEST_CASE("superposition-zero decomposition: (z, -z) cancels while both parts are nonzero") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        cplx z{dist(rng), dist(rng)};
        if (std::abs(z) == 0.0) continue;
        cplx sum = z + (-z);
        CHECK(sum == cplx{0.0, 0.0});
        CHECK(std::norm(z) > 0.0);
        CHECK(std::norm(-z) > 0.0);
    }
}

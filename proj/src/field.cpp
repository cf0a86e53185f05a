#include "optics/field.hpp"

#include "optics/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optics {

Grid Grid::line(double origin, double spacing, std::size_t n) {
    Grid g{origin, spacing, n, 1, 1};
    g.validate();
    return g;
}

Grid Grid::centered_line(double extent, std::size_t n) {
    double spacing = extent / double(n);
    return line(-spacing * double(n / 2), spacing, n);
}

Grid Grid::square(double origin, double spacing, std::size_t n) {
    Grid g{origin, spacing, n, n, 2};
    g.validate();
    return g;
}

Grid Grid::centered_square(double extent, std::size_t n) {
    double spacing = extent / double(n);
    return square(-spacing * double(n / 2), spacing, n);
}

void Grid::validate() const {
    if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (nx < 8 || (dims == 2 && ny < 8))
        throw std::invalid_argument("grid needs at least 8 samples per axis");
    if (dims == 1 && ny != 1) throw std::invalid_argument("1D grid must have ny == 1");
    if (dims == 2 && ny != nx) throw std::invalid_argument("2D grids are square");
}

ComplexField::ComplexField(Grid g, double lambda)
    : grid(g), wavelength(lambda), values(g.size(), cplx{0.0, 0.0}) {
    validate();
}

void ComplexField::validate() const {
    grid.validate();
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
    if (values.size() != grid.size()) throw std::invalid_argument("value count does not match grid");
}

IrradianceProfile::IrradianceProfile(Grid g) : grid(g), values(g.size(), 0.0) {
    grid.validate();
}

void IrradianceProfile::validate() const {
    grid.validate();
    if (values.size() != grid.size()) throw std::invalid_argument("value count does not match grid");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("irradiance values must be non-negative");
}

IrradianceProfile irradiance(const ComplexField& f) {
    IrradianceProfile p(f.grid);
    kernels::active().abs2(f.values.data(), p.values.data(), f.values.size());
    return p;
}

namespace {

// Integrate y out of a 2D profile (trapezoid per column), or copy the row.
std::vector<double> collapse_y(const IrradianceProfile& p) {
    if (p.grid.dims == 1) return p.values;
    std::vector<double> g(p.grid.nx, 0.0);
    for (std::size_t iy = 0; iy < p.grid.ny; ++iy) {
        double w = (iy == 0 || iy + 1 == p.grid.ny) ? 0.5 : 1.0;
        const double* row = p.values.data() + iy * p.grid.nx;
        for (std::size_t ix = 0; ix < p.grid.nx; ++ix) g[ix] += w * row[ix];
    }
    for (double& v : g) v *= p.grid.spacing;
    return g;
}

double trapz_range(const std::vector<double>& g, const Grid& grid, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("degenerate integration range");
    double x0 = grid.origin;
    double x1 = grid.coord(grid.nx - 1);
    lo = std::max(lo, x0);
    hi = std::min(hi, x1);
    if (!(lo < hi)) throw std::invalid_argument("degenerate integration range");

    auto value_at = [&](double x) {
        double t = (x - grid.origin) / grid.spacing;
        std::size_t i = std::min<std::size_t>(std::size_t(std::max(t, 0.0)), grid.nx - 2);
        double frac = t - double(i);
        return g[i] * (1.0 - frac) + g[i + 1] * frac;
    };

    std::size_t i_lo = std::size_t(std::ceil((lo - grid.origin) / grid.spacing - 1e-12));
    std::size_t i_hi = std::size_t(std::floor((hi - grid.origin) / grid.spacing + 1e-12));
    i_lo = std::min(i_lo, grid.nx - 1);
    i_hi = std::min(i_hi, grid.nx - 1);

    double s = 0.0;
    if (i_lo > i_hi) {
        // both endpoints inside one cell
        return 0.5 * (value_at(lo) + value_at(hi)) * (hi - lo);
    }
    // interior whole cells
    for (std::size_t i = i_lo; i + 1 <= i_hi; ++i)
        s += 0.5 * (g[i] + g[i + 1]) * grid.spacing;
    // fractional ends
    double xa = grid.coord(i_lo);
    if (lo < xa) s += 0.5 * (value_at(lo) + g[i_lo]) * (xa - lo);
    double xb = grid.coord(i_hi);
    if (hi > xb) s += 0.5 * (g[i_hi] + value_at(hi)) * (hi - xb);
    return s;
}

} // namespace

double flux(const IrradianceProfile& p, double x_lo, double x_hi) {
    return trapz_range(collapse_y(p), p.grid, x_lo, x_hi);
}

double flux(const ComplexField& f, double x_lo, double x_hi) {
    return flux(irradiance(f), x_lo, x_hi);
}

double flux(const IrradianceProfile& p) {
    return flux(p, p.grid.origin, p.grid.coord(p.grid.nx - 1));
}

double flux(const ComplexField& f) { return flux(irradiance(f)); }

ComplexField apodize(const ComplexField& f, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("apodization radius must be positive");
    ComplexField out = f;
    for (std::size_t iy = 0; iy < f.grid.ny; ++iy) {
        double y = (f.grid.dims == 2) ? f.grid.coord(iy) : 0.0;
        for (std::size_t ix = 0; ix < f.grid.nx; ++ix) {
            double x = f.grid.coord(ix);
            if (std::hypot(x, y) > s) out.at(ix, iy) = cplx{0.0, 0.0};
        }
    }
    return out;
}

namespace {
void require_same_grid(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("fields are on different grids");
}
} // namespace

IrradianceProfile combine_coherent(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    ComplexField sum(a.grid, a.wavelength);
    kernels::active().cadd(a.values.data(), b.values.data(), sum.values.data(), sum.values.size());
    return irradiance(sum);
}

IrradianceProfile combine_decoherent(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    IrradianceProfile pa = irradiance(a);
    IrradianceProfile pb = irradiance(b);
    for (std::size_t i = 0; i < pa.values.size(); ++i) pa.values[i] += pb.values[i];
    return pa;
}

std::vector<double> interference_term(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a, b);
    std::vector<double> g(a.values.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = 2.0 * (std::conj(a.values[i]) * b.values[i]).real();
    return g;
}

} // namespace optics

#ifndef OPTICS_FIELD_HPP
#define OPTICS_FIELD_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace optics {

using cplx = std::complex<double>;

// Uniform sampling grid, 1D or 2D. 2D grids are square with the same pitch
// and origin on both axes; samples are row-major (y outer, x inner).
struct Grid {
    double origin = 0.0;   // physical coordinate of first sample [m]
    double spacing = 0.0;  // sample pitch [m]
    std::size_t nx = 0;
    std::size_t ny = 1;    // 1 for 1D
    int dims = 1;

    static Grid line(double origin, double spacing, std::size_t n);
    static Grid centered_line(double extent, std::size_t n);
    static Grid square(double origin, double spacing, std::size_t n);
    static Grid centered_square(double extent, std::size_t n);

    std::size_t size() const { return nx * ny; }
    double coord(std::size_t i) const { return origin + spacing * double(i); }
    double extent() const { return spacing * double(nx - 1); }
    bool operator==(const Grid&) const = default;
    void validate() const;  // spacing > 0, >= 8 samples per axis
};

// Sampled complex scalar amplitude at a plane: the wavefunction / optical
// field. Values are dimensionless with arbitrary scale.
struct ComplexField {
    Grid grid;
    double wavelength = 0.0;  // [m]
    std::vector<cplx> values;

    ComplexField() = default;
    ComplexField(Grid g, double lambda);
    void validate() const;
    cplx& at(std::size_t ix, std::size_t iy = 0) { return values[iy * grid.nx + ix]; }
    const cplx& at(std::size_t ix, std::size_t iy = 0) const { return values[iy * grid.nx + ix]; }
};

// Non-negative real |psi|^2 samples (arbitrary units).
struct IrradianceProfile {
    Grid grid;
    std::vector<double> values;

    IrradianceProfile() = default;
    explicit IrradianceProfile(Grid g);
    void validate() const;
    double& at(std::size_t ix, std::size_t iy = 0) { return values[iy * grid.nx + ix]; }
    const double& at(std::size_t ix, std::size_t iy = 0) const { return values[iy * grid.nx + ix]; }
};

IrradianceProfile irradiance(const ComplexField& f);

// Total radiant flux over [x_lo, x_hi] by the trapezoid rule on the sample
// grid (full y extent for 2D). The range is clamped to the grid; fractional
// end cells use linear interpolation of the integrand. Throws on an empty or
// inverted range.
double flux(const IrradianceProfile& p, double x_lo, double x_hi);
double flux(const ComplexField& f, double x_lo, double x_hi);
double flux(const IrradianceProfile& p);  // whole grid
double flux(const ComplexField& f);

// Zero everything outside |x| <= s (radially for 2D). Values inside are
// untouched; outside values become exact zeros.
ComplexField apodize(const ComplexField& f, double s);

// |psi1 + psi2|^2 samplewise.
IrradianceProfile combine_coherent(const ComplexField& a, const ComplexField& b);
// |psi1|^2 + |psi2|^2, no cross term.
IrradianceProfile combine_decoherent(const ComplexField& a, const ComplexField& b);
// Signed cross term 2 Re(psi1* psi2); coherent - decoherent == this identically.
std::vector<double> interference_term(const ComplexField& a, const ComplexField& b);

} // namespace optics

#endif

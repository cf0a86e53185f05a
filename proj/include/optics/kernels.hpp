#ifndef OPTICS_KERNELS_HPP
#define OPTICS_KERNELS_HPP

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the field, propagation and wavepacket
// modules. Scalar reference kernels always exist; on x86 an AVX2/FMA variant
// is selected at runtime, on aarch64 a NEON variant. The scalar versions are
// the semantic reference: vector variants must agree to rounding noise and
// are equivalence-tested against them.

namespace optics::kernels {

using cplx = std::complex<double>;

struct Ops {
    const char* name;
    // out[i] = |a[i]|^2
    void (*abs2)(const cplx* a, double* out, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // out[i] = a[i] * r[i]   (real mask / transmission)
    void (*rmul)(const cplx* a, const double* r, cplx* out, std::size_t n);
    // out[i] = a[i] + b[i]
    void (*cadd)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // sum of a[i]
    double (*sum)(const double* a, std::size_t n);
    // sum of |a[i]|^2
    double (*sum_abs2)(const cplx* a, std::size_t n);
};

const Ops& scalar();
bool avx2_available();   // false on non-x86 builds
bool neon_available();   // false on non-ARM builds
const Ops* avx2_ops();   // nullptr when unsupported
const Ops* neon_ops();

// Runtime-selected table. Honors OPTICS_KERNELS=scalar for forcing the
// reference path.
const Ops& active();

} // namespace optics::kernels

#endif

#include "optics/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)
#define OPTICS_NEON 1
#include <arm_neon.h>
#endif

namespace optics::kernels {

#ifdef OPTICS_NEON

namespace {

// float64x2_t holds one complex (re, im).

void abs2_neon(const cplx* a, double* out, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(p + 2 * i);
        out[i] = vaddvq_f64(vmulq_f64(v, v));
    }
}

void cmul_neon(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void rmul_neon(const cplx* a, const double* r, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    double* po = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(pa + 2 * i);
        vst1q_f64(po + 2 * i, vmulq_n_f64(v, r[i]));
    }
}

void cadd_neon(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(po + 2 * i, vaddq_f64(vld1q_f64(pa + 2 * i), vld1q_f64(pb + 2 * i)));
}

double sum_neon(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double sum_abs2_neon(const cplx* a, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(p + 2 * i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

const Ops neon_table = {
    "neon", abs2_neon, cmul_neon, rmul_neon,
    cadd_neon, sum_neon, sum_abs2_neon,
};

} // namespace

bool neon_available() { return true; }
const Ops* neon_ops() { return &neon_table; }

#else

bool neon_available() { return false; }
const Ops* neon_ops() { return nullptr; }

#endif

} // namespace optics::kernels

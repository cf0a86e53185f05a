#include "optics/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define OPTICS_X86 1
#include <immintrin.h>
#endif

namespace optics::kernels {

#ifdef OPTICS_X86

namespace {

// Complex arrays are interleaved (re, im); one __m256d holds two complex.

__attribute__((target("avx2,fma")))
void abs2_avx2(const cplx* a, double* out, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d lo = _mm256_loadu_pd(p + 2 * i);       // r0 i0 r1 i1
        __m256d hi = _mm256_loadu_pd(p + 2 * i + 4);   // r2 i2 r3 i3
        __m256d sq_lo = _mm256_mul_pd(lo, lo);
        __m256d sq_hi = _mm256_mul_pd(hi, hi);
        // hadd within 128-bit lanes: (r0+i0, r2+i2, r1+i1, r3+i3) after permute
        __m256d h = _mm256_hadd_pd(sq_lo, sq_hi);      // r0+i0 r2+i2 r1+i1 r3+i3
        h = _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
        _mm256_storeu_pd(out + i, h);
    }
    for (; i < n; ++i)
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

__attribute__((target("avx2,fma")))
void cmul_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);          // ar0 ai0 ar1 ai1
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);          // br0 bi0 br1 bi1
        __m256d br = _mm256_movedup_pd(vb);                // br0 br0 br1 br1
        __m256d bi = _mm256_permute_pd(vb, 0xF);           // bi0 bi0 bi1 bi1
        __m256d sw = _mm256_permute_pd(va, 0x5);           // ai0 ar0 ai1 ar1
        __m256d t = _mm256_mul_pd(sw, bi);                 // ai*bi ar*bi ...
        __m256d r = _mm256_fmaddsub_pd(va, br, t);         // ar*br-ai*bi, ai*br+ar*bi
        _mm256_storeu_pd(po + 2 * i, r);
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

__attribute__((target("avx2,fma")))
void rmul_avx2(const cplx* a, const double* r, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m128d vr2 = _mm_loadu_pd(r + i);
        __m256d vr = _mm256_permute4x64_pd(_mm256_castpd128_pd256(vr2),
                                           _MM_SHUFFLE(1, 1, 0, 0));
        _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(va, vr));
    }
    for (; i < n; ++i) out[i] = a[i] * r[i];
}

__attribute__((target("avx2,fma")))
void cadd_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(_mm256_loadu_pd(pa + 2 * i),
                                                   _mm256_loadu_pd(pb + 2 * i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

__attribute__((target("avx2,fma")))
double sum_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += a[i];
    return s;
}

__attribute__((target("avx2,fma")))
double sum_abs2_avx2(const cplx* a, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

const Ops avx2_table = {
    "avx2", abs2_avx2, cmul_avx2, rmul_avx2,
    cadd_avx2, sum_avx2, sum_abs2_avx2,
};

} // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops* avx2_ops() { return avx2_available() ? &avx2_table : nullptr; }

#else

bool avx2_available() { return false; }
const Ops* avx2_ops() { return nullptr; }

#endif

} // namespace optics::kernels

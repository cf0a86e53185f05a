#include "optics/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optics::fft {

namespace {
constexpr double pi = std::numbers::pi;

void run_plan_1d(cplx* data, std::size_t n, int sign) {
    fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan = fftw_plan_dft_1d(int(n), p, p,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}
} // namespace

void dft(std::vector<cplx>& v, int sign) {
    run_plan_1d(v.data(), v.size(), sign);
    if (sign > 0) {
        double inv = 1.0 / double(v.size());
        for (auto& z : v) z *= inv;
    }
}

void dft2(std::vector<cplx>& v, std::size_t n, int sign) {
    if (v.size() != n * n) throw std::invalid_argument("dft2: size mismatch");
    fftw_complex* p = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan = fftw_plan_dft_2d(int(n), int(n), p, p,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (sign > 0) {
        double inv = 1.0 / double(n * n);
        for (auto& z : v) z *= inv;
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<cplx> scaled_dft(const cplx* x, std::size_t n, double x1_0, double d1,
                             std::size_t k_count, double x2_0, double d2, double inv_lz) {
    // exponent: -2 pi i (x1_0 + n d1)(x2_0 + k d2) inv_lz
    //   = const(k) * [tilt(n)] * exp(-2 pi i c n k), c = d1 d2 inv_lz,
    // and n k = (n^2 + k^2 - (k - n)^2)/2 turns the cross term into a
    // convolution with the chirp exp(+i pi c m^2).
    const double c = d1 * d2 * inv_lz;
    const std::size_t conv_len = next_pow2(n + k_count);

    std::vector<cplx> a(conv_len, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        double ph = -2.0 * pi * double(i) * d1 * x2_0 * inv_lz - pi * c * double(i) * double(i);
        a[i] = x[i] * std::polar(1.0, ph);
    }
    std::vector<cplx> b(conv_len, cplx{0.0, 0.0});
    for (std::ptrdiff_t m = -std::ptrdiff_t(n) + 1; m < std::ptrdiff_t(k_count); ++m) {
        double ph = pi * c * double(m) * double(m);
        std::size_t idx = std::size_t((m + std::ptrdiff_t(conv_len)) % std::ptrdiff_t(conv_len));
        b[idx] = std::polar(1.0, ph);
    }
    dft(a, -1);
    dft(b, -1);
    for (std::size_t i = 0; i < conv_len; ++i) a[i] *= b[i];
    dft(a, +1);

    std::vector<cplx> out(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        double x2 = x2_0 + double(k) * d2;
        double ph = -2.0 * pi * x1_0 * x2 * inv_lz - pi * c * double(k) * double(k);
        out[k] = a[k] * std::polar(1.0, ph);
    }
    return out;
}

} // namespace optics::fft

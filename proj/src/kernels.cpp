#include "optics/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace optics::kernels {

namespace {

void abs2_scalar(const cplx* a, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

void cmul_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void rmul_scalar(const cplx* a, const double* r, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * r[i];
}

void cadd_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

double sum_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

double sum_abs2_scalar(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

const Ops scalar_ops = {
    "scalar", abs2_scalar, cmul_scalar, rmul_scalar,
    cadd_scalar, sum_scalar, sum_abs2_scalar,
};

const Ops* select() {
    const char* env = std::getenv("OPTICS_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_ops;
    if (const Ops* v = avx2_ops()) return v;
    if (const Ops* v = neon_ops()) return v;
    return &scalar_ops;
}

} // namespace

const Ops& scalar() { return scalar_ops; }

const Ops& active() {
    static const Ops* ops = select();
    return *ops;
}

} // namespace optics::kernels

#ifndef OPTICS_FFT_HPP
#define OPTICS_FFT_HPP

#include "optics/field.hpp"

#include <vector>

namespace optics::fft {

// In-place complex DFT; sign = -1 forward, +1 inverse. The inverse is
// normalized by 1/N so forward+inverse is the identity.
void dft(std::vector<cplx>& v, int sign);
void dft2(std::vector<cplx>& v, std::size_t n, int sign);

std::size_t next_pow2(std::size_t n);

// Scaled partial DFT via Bluestein's chirp-z factorization:
//   S_k = sum_n x_n exp(-2*pi*i * x1_n * x2_k * inv_lz),  x1_n = x1_0 + n*d1,
//   x2_k = x2_0 + k*d2.  Output grid is independent of the input grid.
std::vector<cplx> scaled_dft(const cplx* x, std::size_t n, double x1_0, double d1,
                             std::size_t k_count, double x2_0, double d2, double inv_lz);

} // namespace optics::fft

#endif

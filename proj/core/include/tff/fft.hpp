#pragma once

#include <cstddef>

#include "tff/types.hpp"

namespace tff::fft {

// In-place unnormalized complex transforms backed by FFTW. Plans are created
// once per shape with FFTW_ESTIMATE and cached; execution is thread safe.
// sign = -1 computes sum_j a_j e^{-2 pi i jk/N}, sign = +1 the inverse.
void dft_1d(cplx* data, std::size_t n, int sign);
void dft_2d(cplx* data, std::size_t n0, std::size_t n1, int sign);

}  // namespace tff::fft

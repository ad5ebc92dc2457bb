#pragma once

#include <complex>
#include <span>

#include "ergodamp/torus.hpp"

namespace ergodamp::fft {

/// In-place d-dimensional complex DFT over the grid layout.
/// Forward uses exp(-2 pi i k.x) and divides by n^d; inverse is unnormalised.
void forward(const Grid& grid, std::span<std::complex<double>> data);
void inverse(const Grid& grid, std::span<std::complex<double>> data);

}  // namespace ergodamp::fft

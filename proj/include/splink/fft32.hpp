#pragma once

#include <complex>

namespace splink {

/// In-place 32-point DFT, no scaling.
void fft32(std::complex<double>* data);

/// In-place 32-point inverse DFT with 1/32 scaling.
void ifft32(std::complex<double>* data);

}  // namespace splink

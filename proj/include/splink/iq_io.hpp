#pragma once

#include <complex>
#include <string>
#include <vector>

namespace splink {

/// Write samples as interleaved float32 I/Q, little-endian, to `path`, plus a
/// `<path>.txt` sidecar recording sample rate, sample count and symbol count.
void save_iq(const std::string& path, const std::vector<std::complex<double>>& samples,
             double sample_rate_hz, int n_symbols);

/// Read back an interleaved float32 I/Q file.
std::vector<std::complex<double>> load_iq(const std::string& path);

}  // namespace splink

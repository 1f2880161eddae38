#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "splink/bits.hpp"
#include "splink/bitstream.hpp"

namespace splink {

// Subcarrier layout of one 32-point OFDM symbol. Indices are signed
// subcarriers in [-16, 15]: guards at the band edges, DC nulled, four pilots
// spread through the band, 21 data bins on the rest.
struct SubcarrierMap {
    static constexpr int kFftSize = 32;
    static constexpr int kDataBins = 21;

    std::array<int, kDataBins> data_idx;  // ascending
    std::array<int, 4> pilot_idx;
    std::array<int, 6> guard_idx;
    int dc_idx = 0;

    static const SubcarrierMap& standard();

    /// FFT bin for a signed subcarrier index.
    static int bin(int subcarrier) { return (subcarrier + kFftSize) % kFftSize; }
};

// Baseband sample sequence of one frame: a known preamble symbol followed by
// the data symbols, each 32 FFT samples behind a 2-sample cyclic prefix.
struct ComplexFrame {
    static constexpr int kSamplesPerSymbol = 34;
    static constexpr double kSampleRateHz = 5e6;

    std::vector<std::complex<double>> samples;
    int n_symbols = 0;

    double duration_s() const {
        return static_cast<double>(samples.size()) / kSampleRateHz;
    }
};

// Per-bin complex gains used for equalization; inactive bins stay at 1.
struct ChannelEstimate {
    std::array<std::complex<double>, SubcarrierMap::kFftSize> gain;

    static ChannelEstimate identity();
};

inline constexpr std::uint64_t kPreambleSeed = 0x53504C4BULL;
inline constexpr std::complex<double> kPilotValue{1.0, 0.0};

/// Frequency-domain bins of the fixed preamble symbol: +-1 from a pinned
/// pseudo-random draw on the 25 active bins, 0 on DC and guards.
const std::array<std::complex<double>, SubcarrierMap::kFftSize>& preamble_bins();

/// Map interleaved bits (n_data_symbols * 21 of them) onto BPSK data
/// subcarriers, add pilots, IFFT each symbol, prepend cyclic prefixes and the
/// preamble symbol, and normalize the frame average power to 1.
ComplexFrame modulate_frame(const Bits& interleaved, const PaddingPlan& plan);

/// Invert modulate_frame: strip prefixes, FFT each data symbol, equalize with
/// the estimate, rotate by the mean pilot phase error, and hard-slice the
/// data bins. Returns n_data_symbols * 21 bits.
Bits demodulate_frame(const ComplexFrame& frame, const ChannelEstimate& est);

}  // namespace splink

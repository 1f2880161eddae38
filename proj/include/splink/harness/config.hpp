#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splink/channel.hpp"
#include "splink/fec/chain.hpp"
#include "splink/interleave.hpp"

namespace splink::harness {

struct StopRule {
    long min_error_packets = 100;
    long max_packets = 1'000'000;
};

// One sweep: the Cartesian product of the interleaver, scheme, gamma and
// frequency axes, everything else held fixed.
struct ExperimentConfig {
    int l = 100;
    std::vector<InterleaverKind> interleavers{InterleaverKind::PacketBlock};
    std::vector<fec::CodecChain> chains{fec::CodecChain::cc(fec::CcRate::Half)};
    std::vector<double> gammas_db{20.0};
    std::vector<double> freqs_hz{50e3};

    double awgn_snr_db = kNoNoiseSnrDb;
    bool impulse_enabled = true;  // "model = none" turns interference off
    ImpulseModel model = ImpulseModel::Ieee1613Train;
    double impulse_duration_s = 100e-9;
    bool random_phase = false;
    double p = 0.01;  // BernoulliGauss
    double a = 0.1;   // MiddletonA

    StopRule stop;
    std::uint64_t seed = 1;
    int workers = 1;

    // Sweeps restrict train frequencies to the studied 50-700 kHz band;
    // single-cell runs may relax this to reach presets like the 2.5 kHz
    // surge train.
    bool enforce_sweep_band = true;

    void validate() const;
    std::size_t n_cells() const {
        return interleavers.size() * chains.size() * gammas_db.size() * freqs_hz.size();
    }
};

/// Parse the key = value sweep description (one pair per line, '#' comments,
/// comma-separated lists for the axes). Keys mirror the field names:
/// l, interleavers, schemes, gammas_db, freqs_hz, awgn_snr_db, model,
/// impulse_duration_s, random_phase, p, a, min_error_packets, max_packets,
/// seed, workers.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace splink::harness

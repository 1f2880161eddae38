#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splink/harness/config.hpp"

namespace splink::harness {

struct Wilson {
    double lo;
    double hi;
};

/// Wilson score interval at 95% confidence for `errors` successes out of `n`.
Wilson wilson95(long errors, long n);

// One point of the Cartesian sweep.
struct CellSpec {
    long index = 0;
    InterleaverKind interleaver = InterleaverKind::None;
    fec::CodecChain chain;
    double gamma_db = 0.0;
    double freq_hz = 0.0;
};

// One result row. A cell whose configuration was rejected is kept in the
// sweep with failed = true and zero counts.
struct PerRecord {
    long cell_index = 0;
    std::string interleaver;
    std::string scheme;
    std::string cc_rate;  // "-" when the chain has no convolutional stage
    std::string rs_k;     // "-" when the chain has no RS stage
    double gamma_db = 0.0;
    double freq_hz = 0.0;
    double awgn_snr_db = 0.0;
    long packets = 0;
    long errors = 0;
    double per = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    double wall_s = 0.0;
};

/// Enumerate the sweep cells in the fixed product order
/// interleaver x scheme x gamma x frequency.
std::vector<CellSpec> enumerate_cells(const ExperimentConfig& cfg);

/// Run one cell until min_error_packets errors or max_packets trials. Trials
/// are drawn in fixed 256-trial batches with per-trial seeds derived from
/// (master seed, cell index, trial index), so the counts are identical for
/// any worker count.
PerRecord run_cell(const CellSpec& cell, const ExperimentConfig& cfg);

/// Run every cell of the sweep; a failing cell is recorded in its row and the
/// sweep continues. Row order follows enumerate_cells regardless of workers.
std::vector<PerRecord> run_sweep(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "cell_id,interleaver,scheme,cc_rate,rs_k,gamma_db,impulse_freq_hz,awgn_snr_db,"
    "packets,errors,per,ci_lo,ci_hi,seed";

/// Render records as CSV with the fixed header above.
std::string records_to_csv(const std::vector<PerRecord>& records);

}  // namespace splink::harness

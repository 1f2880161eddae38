#include "splink/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "splink/receiver.hpp"
#include "splink/rng.hpp"

namespace splink::harness {

namespace {

constexpr long kBatch = 256;
constexpr std::uint64_t kSrandomTag = 0x73726e64;  // permutation stream, split from trials

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ImpulseProfile make_profile(const CellSpec& cell, const ExperimentConfig& cfg) {
    ImpulseProfile profile;
    profile.model = cfg.model;
    profile.gamma_db = cell.gamma_db;
    profile.impulse_freq_hz = cell.freq_hz;
    profile.impulse_duration_s = cfg.impulse_duration_s;
    profile.random_phase = cfg.random_phase;
    profile.p = cfg.p;
    profile.a = cfg.a;
    // The stochastic models read the swept gamma as their impulse power
    // against the unit frame power.
    profile.sigma_i2 = std::pow(10.0, cell.gamma_db / 10.0);
    profile.awgn_snr_db = cfg.awgn_snr_db;
    profile.validate();
    return profile;
}

bool trial_error(const Link& link, const ImpulseProfile* profile, const ExperimentConfig& cfg,
                 std::uint64_t trial_seed) {
    Rng rng = make_rng(trial_seed);
    const Bits message = random_bits(rng, static_cast<std::size_t>(cfg.l));
    ComplexFrame frame = transmit_packet(link, message);
    if (profile) {
        apply_profile(frame, *profile, rng);
    } else {
        apply_awgn(frame, cfg.awgn_snr_db, rng);
    }
    const ReceiveResult rx = receive_packet(link, frame);
    return packet_error(rx.bits, message);
}

struct BatchSpan {
    std::uint64_t first;
    std::uint64_t last;  // exclusive
};

BatchSpan batch_span(long batch, long max_packets) {
    const long lo = batch * kBatch;
    const long hi = std::min(lo + kBatch, max_packets);
    return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
}

long run_batch(long batch, const Link& link, const ImpulseProfile* profile,
               const CellSpec& cell, const ExperimentConfig& cfg) {
    const BatchSpan span = batch_span(batch, cfg.stop.max_packets);
    long errors = 0;
    for (std::uint64_t t = span.first; t < span.last; ++t) {
        const std::uint64_t seed =
            derive_seed({cfg.seed, static_cast<std::uint64_t>(cell.index), t});
        if (trial_error(link, profile, cfg, seed)) ++errors;
    }
    return errors;
}

}  // namespace

Wilson wilson95(long errors, long n) {
    if (n <= 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    // At the boundary counts the interval endpoint is exactly 0 or 1; keep it
    // free of floating-point residue so zero-error rows print a clean 0.
    const double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = errors == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

std::vector<CellSpec> enumerate_cells(const ExperimentConfig& cfg) {
    std::vector<CellSpec> cells;
    cells.reserve(cfg.n_cells());
    long index = 0;
    for (const auto kind : cfg.interleavers) {
        for (const auto& chain : cfg.chains) {
            for (const double gamma : cfg.gammas_db) {
                for (const double freq : cfg.freqs_hz) {
                    cells.push_back({index++, kind, chain, gamma, freq});
                }
            }
        }
    }
    return cells;
}

PerRecord run_cell(const CellSpec& cell, const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    PerRecord rec;
    rec.cell_index = cell.index;
    rec.interleaver = to_string(cell.interleaver);
    rec.scheme = fec::to_string(cell.chain.scheme);
    rec.cc_rate = cell.chain.scheme == fec::Scheme::Rs ? "-" : fec::to_string(cell.chain.cc_rate);
    rec.rs_k = cell.chain.scheme == fec::Scheme::Cc ? "-" : std::to_string(cell.chain.rs_k);
    rec.gamma_db = cell.gamma_db;
    rec.freq_hz = cell.freq_hz;
    rec.awgn_snr_db = cfg.awgn_snr_db;
    rec.seed = cfg.seed;

    LinkConfig lc;
    lc.l = cfg.l;
    lc.chain = cell.chain;
    lc.interleaver = cell.interleaver;
    const PaddingPlan plan = plan_padding(cfg.l, cell.chain, cell.interleaver);
    lc.srandom_seed = derive_seed({cfg.seed, kSrandomTag, static_cast<std::uint64_t>(plan.l2)});
    const Link link = make_link(lc);

    std::optional<ImpulseProfile> profile;
    if (cfg.impulse_enabled) profile = make_profile(cell, cfg);
    const ImpulseProfile* profile_ptr = profile ? &*profile : nullptr;

    const long n_batches = (cfg.stop.max_packets + kBatch - 1) / kBatch;
    long done_batches = 0;
    long errors = 0;

    if (cfg.workers <= 1) {
        for (long b = 0; b < n_batches; ++b) {
            errors += run_batch(b, link, profile_ptr, cell, cfg);
            done_batches = b + 1;
            if (errors >= cfg.stop.min_error_packets) break;
        }
    } else {
        // Workers claim batches in index order; the stop decision is made on
        // the ordered prefix of finished batches, so counts do not depend on
        // the worker count. Batches computed beyond the frontier are dropped.
        std::mutex mu;
        std::condition_variable cv;
        std::vector<std::optional<long>> results(static_cast<std::size_t>(n_batches));
        std::atomic<long> next{0};
        std::atomic<long> cutoff{n_batches};

        const auto worker = [&] {
            for (;;) {
                const long b = next.fetch_add(1);
                if (b >= n_batches || b > cutoff.load()) return;
                const long e = run_batch(b, link, profile_ptr, cell, cfg);
                std::lock_guard<std::mutex> lk(mu);
                results[static_cast<std::size_t>(b)] = e;
                cv.notify_all();
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(cfg.workers));
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);

        {
            std::unique_lock<std::mutex> lk(mu);
            for (long b = 0; b < n_batches; ++b) {
                cv.wait(lk, [&] { return results[static_cast<std::size_t>(b)].has_value(); });
                errors += *results[static_cast<std::size_t>(b)];
                done_batches = b + 1;
                if (errors >= cfg.stop.min_error_packets) {
                    cutoff.store(b);
                    break;
                }
            }
        }
        cutoff.store(-1);
        for (auto& th : pool) th.join();
    }

    rec.packets = std::min(done_batches * kBatch, cfg.stop.max_packets);
    rec.errors = errors;
    rec.per = rec.packets > 0 ? static_cast<double>(errors) / static_cast<double>(rec.packets)
                              : 0.0;
    const Wilson ci = wilson95(rec.errors, rec.packets);
    rec.ci_lo = ci.lo;
    rec.ci_hi = ci.hi;
    rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<PerRecord> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<PerRecord> records;
    for (const CellSpec& cell : enumerate_cells(cfg)) {
        try {
            records.push_back(run_cell(cell, cfg));
        } catch (const std::exception& e) {
            PerRecord rec;
            rec.cell_index = cell.index;
            rec.interleaver = to_string(cell.interleaver);
            rec.scheme = fec::to_string(cell.chain.scheme);
            rec.cc_rate =
                cell.chain.scheme == fec::Scheme::Rs ? "-" : fec::to_string(cell.chain.cc_rate);
            rec.rs_k = cell.chain.scheme == fec::Scheme::Cc ? "-"
                                                            : std::to_string(cell.chain.rs_k);
            rec.gamma_db = cell.gamma_db;
            rec.freq_hz = cell.freq_hz;
            rec.awgn_snr_db = cfg.awgn_snr_db;
            rec.seed = cfg.seed;
            rec.failed = true;
            rec.error = e.what();
            rec.per = std::nan("");
            rec.ci_lo = std::nan("");
            rec.ci_hi = std::nan("");
            records.push_back(rec);
        }
    }
    return records;
}

std::string records_to_csv(const std::vector<PerRecord>& records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.cell_index << ',' << r.interleaver << ',' << r.scheme << ',' << r.cc_rate << ','
            << r.rs_k << ',' << fmt(r.gamma_db) << ',' << fmt(r.freq_hz) << ','
            << fmt(r.awgn_snr_db) << ',' << r.packets << ',' << r.errors << ',' << fmt(r.per)
            << ',' << fmt(r.ci_lo) << ',' << fmt(r.ci_hi) << ',' << r.seed << '\n';
    }
    return out.str();
}

}  // namespace splink::harness

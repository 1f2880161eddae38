#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "splink/channel.hpp"
#include "splink/harness/config.hpp"
#include "splink/harness/plot.hpp"
#include "splink/harness/runner.hpp"
#include "splink/iq_io.hpp"
#include "splink/kernels.hpp"
#include "splink/receiver.hpp"
#include "splink/rng.hpp"

namespace {

namespace fs = std::filesystem;
using namespace splink;

std::string output_dir_default() {
    const char* env = std::getenv("SPLINK_OUTPUT_DIR");
    return env && *env ? env : ".";
}

std::string resolve(const std::string& dir, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(dir) / p).string();
}

// --seed is optional; a missing seed is drawn randomly and echoed so the run
// can be reproduced.
std::uint64_t settle_seed(CLI::Option* opt, std::uint64_t seed) {
    if (opt->count() == 0) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::cerr << "seed: " << seed << "\n";
    return seed;
}

struct CellOpts {
    int l = 100;
    std::string chain = "CC(1/2)";
    std::string interleaver = "packet_block";
    double gamma_db = 20.0;
    double freq_hz = 50e3;
    double duration_s = 100e-9;
    std::string model = "train";
    double snr_db = kNoNoiseSnrDb;
    double p = 0.01;
    double a = 0.1;
    bool random_phase = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--l", l, "message length in bits");
        cmd->add_option("--chain", chain, "coding chain, e.g. CC(1/2) or RS(31,21)+CC(1/2)");
        cmd->add_option("--interleaver", interleaver,
                        "none|packet_block|symbol_block|qpp|srandom");
        cmd->add_option("--gamma", gamma_db, "impulse/frame power ratio in dB");
        cmd->add_option("--freq", freq_hz, "impulse repetition frequency in Hz");
        cmd->add_option("--duration", duration_s, "impulse duration in seconds");
        cmd->add_option("--model", model, "train|bernoulli_gauss|middleton_a|none");
        cmd->add_option("--snr", snr_db, "background AWGN SNR in dB (default: no noise)");
        cmd->add_option("--p", p, "Bernoulli impulse probability");
        cmd->add_option("--a", a, "Middleton class-A impulse index");
        cmd->add_flag("--random-phase", random_phase, "random impulse phase per hit");
    }

    harness::ExperimentConfig to_config() const {
        harness::ExperimentConfig cfg;
        cfg.l = l;
        cfg.interleavers = {interleaver_from_string(interleaver)};
        cfg.chains = {fec::chain_from_string(chain)};
        cfg.gammas_db = {gamma_db};
        cfg.freqs_hz = {freq_hz};
        cfg.awgn_snr_db = snr_db;
        if (model == "none") {
            cfg.impulse_enabled = false;
        } else {
            cfg.model = impulse_model_from_string(model);
        }
        cfg.impulse_duration_s = duration_s;
        cfg.random_phase = random_phase;
        cfg.p = p;
        cfg.a = a;
        return cfg;
    }
};

int cmd_run(const CellOpts& opts, const harness::StopRule& stop, int workers,
            std::uint64_t seed, const std::string& csv_path) {
    harness::ExperimentConfig cfg = opts.to_config();
    cfg.stop = stop;
    cfg.workers = workers;
    cfg.seed = seed;
    // Single runs may use presets like the 2.5 kHz surge train.
    cfg.enforce_sweep_band = false;
    const auto records = std::vector<harness::PerRecord>{
        harness::run_cell(harness::enumerate_cells(cfg).front(), cfg)};
    const std::string csv = harness::records_to_csv(records);
    std::cout << csv;
    const auto& r = records.front();
    std::cerr << "packets " << r.packets << ", errors " << r.errors << ", per " << r.per
              << " [" << r.ci_lo << ", " << r.ci_hi << "], " << r.wall_s << " s\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open " + csv_path);
        out << csv;
        std::cerr << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, CLI::Option* seed_opt, std::uint64_t seed_flag,
              int workers_flag, CLI::Option* workers_opt, const std::string& out_path) {
    harness::ExperimentConfig cfg = harness::parse_config_file(config_path);
    if (seed_opt->count() > 0) cfg.seed = seed_flag;
    if (workers_opt->count() > 0) cfg.workers = workers_flag;
    std::cerr << "seed: " << cfg.seed << "\n";

    const auto records = harness::run_sweep(cfg);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << harness::records_to_csv(records);
    long failed = 0;
    for (const auto& r : records) {
        if (r.failed) {
            ++failed;
            std::cerr << "cell " << r.cell_index << " failed: " << r.error << "\n";
        }
    }
    std::cerr << "wrote " << out_path << " (" << records.size() << " cells, " << failed
              << " failed)\n";
    return failed == 0 ? 0 : 3;
}

int cmd_calibrate(const CellOpts& opts, long trials, std::uint64_t seed) {
    const LinkConfig lc{opts.l, fec::chain_from_string(opts.chain),
                        interleaver_from_string(opts.interleaver), kDefaultScramblerSeed,
                        derive_seed({seed, 0x73726e64})};
    const Link link = make_link(lc);

    double gamma_lo = 0.0, gamma_hi = 0.0;
    long count_lo = 0, count_hi = 0;
    for (long t = 0; t < trials; ++t) {
        Rng rng = make_rng(derive_seed({seed, static_cast<std::uint64_t>(t)}));
        const Bits msg = random_bits(rng, static_cast<std::size_t>(opts.l));
        const ComplexFrame clean = transmit_packet(link, msg);
        ComplexFrame hit = clean;
        apply_impulse_train(hit, opts.gamma_db, opts.freq_hz, opts.duration_s, rng,
                            opts.random_phase);

        double frame_power = 0.0, peak_added = 0.0;
        long count = 0;
        bool in_impulse = false;
        for (std::size_t i = 0; i < clean.samples.size(); ++i) {
            frame_power += std::norm(clean.samples[i]);
            const double added = std::norm(hit.samples[i] - clean.samples[i]);
            peak_added = std::max(peak_added, added);
            if (added > 0.0 && !in_impulse) ++count;
            in_impulse = added > 0.0;
        }
        frame_power /= static_cast<double>(clean.samples.size());
        const double gamma = 10.0 * std::log10(peak_added / frame_power);
        if (t == 0) {
            gamma_lo = gamma_hi = gamma;
            count_lo = count_hi = count;
        }
        gamma_lo = std::min(gamma_lo, gamma);
        gamma_hi = std::max(gamma_hi, gamma);
        count_lo = std::min(count_lo, count);
        count_hi = std::max(count_hi, count);
    }
    const ComplexFrame probe = transmit_packet(link, Bits(static_cast<std::size_t>(opts.l), 0));
    std::cout << "requested gamma_db " << opts.gamma_db << "\n"
              << "measured gamma_db [" << gamma_lo << ", " << gamma_hi << "] over " << trials
              << " frames\n"
              << "impulses per frame [" << count_lo << ", " << count_hi << "]\n"
              << "frame: " << probe.n_symbols << " symbols, " << probe.samples.size()
              << " samples, " << probe.duration_s() * 1e6 << " us\n"
              << "expected count T*f = " << probe.duration_s() * opts.freq_hz << "\n";
    return 0;
}

int cmd_export_waveform(const CellOpts& opts, std::uint64_t seed, const std::string& base) {
    const LinkConfig lc{opts.l, fec::chain_from_string(opts.chain),
                        interleaver_from_string(opts.interleaver), kDefaultScramblerSeed,
                        derive_seed({seed, 0x73726e64})};
    const Link link = make_link(lc);
    Rng rng = make_rng(seed);
    const Bits msg = random_bits(rng, static_cast<std::size_t>(opts.l));
    const ComplexFrame clean = transmit_packet(link, msg);
    save_iq(base + "_frame.iq", clean.samples, ComplexFrame::kSampleRateHz, clean.n_symbols);
    std::cerr << "wrote " << base << "_frame.iq (" << clean.samples.size() << " samples)\n";

    if (opts.model != "none") {
        harness::ExperimentConfig cfg = opts.to_config();
        ComplexFrame noisy = clean;
        if (cfg.impulse_enabled) {
            ImpulseProfile profile;
            profile.model = cfg.model;
            profile.gamma_db = opts.gamma_db;
            profile.impulse_freq_hz = opts.freq_hz;
            profile.impulse_duration_s = opts.duration_s;
            profile.random_phase = opts.random_phase;
            profile.p = opts.p;
            profile.a = opts.a;
            profile.sigma_i2 = std::pow(10.0, opts.gamma_db / 10.0);
            profile.awgn_snr_db = opts.snr_db;
            apply_profile(noisy, profile, rng);

            if (cfg.model == ImpulseModel::Ieee1613Train) {
                ComplexFrame impulses;
                impulses.n_symbols = clean.n_symbols;
                impulses.samples.assign(clean.samples.size(), {0.0, 0.0});
                Rng irng = make_rng(derive_seed({seed, 0x696d70}));
                apply_impulse_train(impulses, opts.gamma_db, opts.freq_hz, opts.duration_s, irng,
                                    opts.random_phase);
                save_iq(base + "_impulse.iq", impulses.samples, ComplexFrame::kSampleRateHz,
                        impulses.n_symbols);
                std::cerr << "wrote " << base << "_impulse.iq\n";
            }
        } else {
            apply_awgn(noisy, opts.snr_db, rng);
        }
        save_iq(base + "_channel.iq", noisy.samples, ComplexFrame::kSampleRateHz,
                noisy.n_symbols);
        std::cerr << "wrote " << base << "_channel.iq\n";
    }
    return 0;
}

int cmd_export_perm(const std::string& kind_name, int l2, std::uint64_t seed,
                    const std::string& out_path) {
    const InterleaverKind kind = interleaver_from_string(kind_name);
    Permutation perm;
    switch (kind) {
        case InterleaverKind::None: perm = build_identity(l2); break;
        case InterleaverKind::PacketBlock: perm = build_packet_block(l2); break;
        case InterleaverKind::SymbolBlock: perm = build_symbol_block(); break;
        case InterleaverKind::Qpp: perm = build_qpp(l2); break;
        case InterleaverKind::SRandom: perm = build_srandom(l2, seed); break;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    write_permutation(out, perm);
    std::cerr << "wrote " << out_path << " (n = " << perm.n << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"splink: impulse-interference OFDM link simulator"};
    app.require_subcommand(1);

    std::string out_dir = output_dir_default();
    app.add_option("--output-dir", out_dir,
                   "output directory (default: $SPLINK_OUTPUT_DIR or .)");

    std::uint64_t seed = 1;
    harness::StopRule stop;
    int workers = 1;

    // run
    auto* run = app.add_subcommand("run", "run one Monte Carlo cell and print its CSV row");
    CellOpts run_opts;
    run_opts.add_to(run);
    auto* run_seed = run->add_option("--seed", seed, "master seed (random if omitted)");
    run->add_option("--min-errors", stop.min_error_packets, "stop after this many packet errors");
    run->add_option("--max-packets", stop.max_packets, "hard packet cap");
    run->add_option("--workers", workers, "worker threads");
    std::string run_csv;
    run->add_option("--csv", run_csv, "also write the row to this CSV file");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a config-file sweep and write a CSV");
    std::string sweep_config;
    sweep->add_option("--config", sweep_config, "key = value sweep description")->required();
    std::string sweep_out = "sweep.csv";
    sweep->add_option("--out", sweep_out, "CSV output path");
    auto* sweep_seed = sweep->add_option("--seed", seed, "override the config seed");
    auto* sweep_workers = sweep->add_option("--workers", workers, "override config workers");

    // calibrate
    auto* cal = app.add_subcommand(
        "calibrate", "measure the injected impulse power ratio and per-frame impulse count");
    CellOpts cal_opts;
    cal_opts.add_to(cal);
    long cal_trials = 1000;
    cal->add_option("--trials", cal_trials, "number of frames to measure");
    auto* cal_seed = cal->add_option("--seed", seed, "master seed (random if omitted)");

    // plot
    auto* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG chart");
    std::string plot_csv, plot_out = "plot.svg", plot_x = "gamma";
    plot->add_option("--csv", plot_csv, "input CSV from sweep/run")->required();
    plot->add_option("--out", plot_out, "SVG output path");
    plot->add_option("--x", plot_x, "x axis: gamma|freq");

    // export-waveform
    auto* wav = app.add_subcommand("export-waveform",
                                   "dump frame/channel/impulse I/Q (float32 interleaved)");
    CellOpts wav_opts;
    wav_opts.add_to(wav);
    std::string wav_base = "waveform";
    wav->add_option("--out", wav_base, "output basename");
    auto* wav_seed = wav->add_option("--seed", seed, "master seed (random if omitted)");

    // export-perm
    auto* perm = app.add_subcommand("export-perm", "write a permutation as text");
    std::string perm_kind = "packet_block";
    int perm_l2 = 200;
    std::string perm_out;
    perm->add_option("--kind", perm_kind, "none|packet_block|symbol_block|qpp|srandom");
    perm->add_option("--l2", perm_l2, "coded length the permutation covers");
    perm->add_option("--out", perm_out, "output path (default perm_<kind>_<l2>.txt)");
    auto* perm_seed = perm->add_option("--seed", seed, "construction seed (srandom)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(run_opts, stop, workers, settle_seed(run_seed, seed),
                           run_csv.empty() ? run_csv : resolve(out_dir, run_csv));
        }
        if (*sweep) {
            return cmd_sweep(sweep_config, sweep_seed, seed, workers, sweep_workers,
                             resolve(out_dir, sweep_out));
        }
        if (*cal) {
            return cmd_calibrate(cal_opts, cal_trials, settle_seed(cal_seed, seed));
        }
        if (*plot) {
            const auto axis = plot_x == "freq" ? harness::PlotAxis::FreqHz
                                               : harness::PlotAxis::GammaDb;
            harness::write_plot(plot_csv, resolve(out_dir, plot_out), axis);
            std::cerr << "wrote " << resolve(out_dir, plot_out) << "\n";
            return 0;
        }
        if (*wav) {
            return cmd_export_waveform(wav_opts, settle_seed(wav_seed, seed),
                                       resolve(out_dir, wav_base));
        }
        if (*perm) {
            const std::string out = perm_out.empty()
                                        ? "perm_" + perm_kind + "_" + std::to_string(perm_l2) +
                                              ".txt"
                                        : perm_out;
            return cmd_export_perm(perm_kind, perm_l2, settle_seed(perm_seed, seed),
                                   resolve(out_dir, out));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

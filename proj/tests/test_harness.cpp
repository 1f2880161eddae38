#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "splink/harness/config.hpp"
#include "splink/harness/plot.hpp"
#include "splink/harness/runner.hpp"

using namespace splink;
using namespace splink::harness;

namespace {

/// A quick, high-error cell: one batch usually suffices to stop.
ExperimentConfig loud_config() {
    ExperimentConfig cfg;
    cfg.l = 100;
    cfg.interleavers = {InterleaverKind::PacketBlock};
    cfg.chains = {fec::CodecChain::cc(fec::CcRate::Half)};
    cfg.gammas_db = {20.0};
    cfg.freqs_hz = {700e3};
    cfg.awgn_snr_db = 6.0;
    cfg.stop.min_error_packets = 100;
    cfg.stop.max_packets = 100000;
    cfg.seed = 7;
    return cfg;
}

ExperimentConfig quiet_config() {
    ExperimentConfig cfg;
    cfg.l = 100;
    cfg.interleavers = {InterleaverKind::None};
    cfg.chains = {fec::CodecChain::cc(fec::CcRate::Half)};
    cfg.gammas_db = {0.0};
    cfg.freqs_hz = {50e3};
    cfg.impulse_enabled = false;
    cfg.stop.min_error_packets = 1000000;
    cfg.stop.max_packets = 1000;
    return cfg;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (const char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("cells enumerate in interleaver x scheme x gamma x frequency order") {
    ExperimentConfig cfg;
    cfg.interleavers = {InterleaverKind::PacketBlock, InterleaverKind::Qpp};
    cfg.chains = {fec::CodecChain::cc(fec::CcRate::Half)};
    cfg.gammas_db = {10.0, 20.0};
    cfg.freqs_hz = {50e3, 100e3};
    REQUIRE(cfg.n_cells() == 8);

    const auto cells = enumerate_cells(cfg);
    REQUIRE(cells.size() == 8);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(cells[i].index == static_cast<long>(i));
    }
    // Frequency spins fastest, interleaver slowest.
    CHECK(cells[0].interleaver == InterleaverKind::PacketBlock);
    CHECK(cells[0].gamma_db == 10.0);
    CHECK(cells[0].freq_hz == 50e3);
    CHECK(cells[1].freq_hz == 100e3);
    CHECK(cells[2].gamma_db == 20.0);
    CHECK(cells[2].freq_hz == 50e3);
    CHECK(cells[4].interleaver == InterleaverKind::Qpp);
    CHECK(cells[7].gamma_db == 20.0);
    CHECK(cells[7].freq_hz == 100e3);
}

TEST_CASE("a noiseless sweep reports zero errors in well-formed csv") {
    const ExperimentConfig cfg = quiet_config();
    const auto records = run_sweep(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].packets == 1000);  // max_packets binds exactly
    CHECK(records[0].errors == 0);
    CHECK(records[0].per == 0.0);
    CHECK(records[0].ci_lo == 0.0);
    CHECK(!records[0].failed);

    const std::string csv = records_to_csv(records);
    CHECK(csv.rfind(kCsvHeader, 0) == 0);
    CHECK(count_lines(csv) == 2);  // header + one row
    // 14 comma-separated fields per row.
    const std::string row = csv.substr(csv.find('\n') + 1);
    int commas = 0;
    for (const char c : row) commas += c == ',';
    CHECK(commas == 13);
}

TEST_CASE("a saturated cell stops on whole batches once errors suffice") {
    const ExperimentConfig cfg = loud_config();
    const auto cells = enumerate_cells(cfg);
    REQUIRE(cells.size() == 1);
    const PerRecord rec = run_cell(cells[0], cfg);
    CHECK(rec.errors >= 100);
    CHECK(rec.packets % 256 == 0);  // whole batches only
    CHECK(rec.packets < cfg.stop.max_packets);
    CHECK(rec.per > 0.9);  // past saturation at this power and rate
}

TEST_CASE("worker count never changes the csv") {
    ExperimentConfig cfg = loud_config();
    cfg.stop.min_error_packets = 400;  // several batches, stop mid-sweep

    cfg.workers = 1;
    const std::string csv1 = records_to_csv(run_sweep(cfg));
    cfg.workers = 3;
    const std::string csv3 = records_to_csv(run_sweep(cfg));
    cfg.workers = 4;
    const std::string csv4 = records_to_csv(run_sweep(cfg));

    CHECK(csv1 == csv3);
    CHECK(csv1 == csv4);
}

TEST_CASE("the master seed changes the drawn noise") {
    ExperimentConfig cfg = loud_config();
    cfg.gammas_db = {9.54, 17.5};  // partial-error regime, not saturated
    cfg.freqs_hz = {50e3, 200e3};
    cfg.stop.min_error_packets = 1000000;
    cfg.stop.max_packets = 1000;

    cfg.seed = 1;
    const auto a = run_sweep(cfg);
    cfg.seed = 2;
    const auto b = run_sweep(cfg);
    REQUIRE(a.size() == 4);
    REQUIRE(b.size() == 4);
    long total_a = 0, total_b = 0;
    for (const auto& r : a) total_a += r.errors;
    for (const auto& r : b) total_b += r.errors;
    CHECK(total_a > 0);
    CHECK(total_b > 0);
    CHECK(total_a != total_b);
}

TEST_CASE("config text parses every key") {
    const std::string text =
        "# sweep description\n"
        "l = 100\n"
        "interleavers = packet_block, qpp , srandom\n"
        "schemes = CC(1/2), RS(31,21)+CC(1/2)\n"
        "gammas_db = 0, 9.54, 17.5\n"
        "freqs_hz = 50e3, 700e3\n"
        "awgn_snr_db = inf   # noiseless background\n"
        "model = train\n"
        "impulse_duration_s = 1e-7\n"
        "random_phase = false\n"
        "p = 0.05\n"
        "a = 0.25\n"
        "min_error_packets = 123\n"
        "max_packets = 4567\n"
        "seed = 99\n"
        "workers = 2\n";
    const ExperimentConfig cfg = parse_config_text(text);
    CHECK(cfg.l == 100);
    REQUIRE(cfg.interleavers.size() == 3);
    CHECK(cfg.interleavers[1] == InterleaverKind::Qpp);
    REQUIRE(cfg.chains.size() == 2);
    CHECK(cfg.chains[1].name() == "RS(31,21)+CC(1/2)");
    REQUIRE(cfg.gammas_db.size() == 3);
    CHECK(cfg.gammas_db[1] == 9.54);
    REQUIRE(cfg.freqs_hz.size() == 2);
    CHECK(cfg.freqs_hz[1] == 700e3);
    CHECK(cfg.awgn_snr_db == kNoNoiseSnrDb);
    CHECK(cfg.impulse_enabled);
    CHECK(cfg.model == ImpulseModel::Ieee1613Train);
    CHECK(cfg.impulse_duration_s == 1e-7);
    CHECK(!cfg.random_phase);
    CHECK(cfg.p == 0.05);
    CHECK(cfg.a == 0.25);
    CHECK(cfg.stop.min_error_packets == 123);
    CHECK(cfg.stop.max_packets == 4567);
    CHECK(cfg.seed == 99);
    CHECK(cfg.workers == 2);
}

TEST_CASE("model none disables interference") {
    const ExperimentConfig cfg = parse_config_text("model = none\n");
    CHECK(!cfg.impulse_enabled);
}

TEST_CASE("config parser reports broken lines") {
    CHECK_THROWS_AS(parse_config_text("l 100\n"), std::invalid_argument);
    try {
        parse_config_text("l = 100\nnot a pair\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("model = fancy\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("workers = 0\n"), std::invalid_argument);
}

TEST_CASE("sweeps reject train frequencies outside the studied band") {
    ExperimentConfig cfg = loud_config();
    cfg.freqs_hz = {10e3};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg.enforce_sweep_band = false;
    CHECK_NOTHROW(cfg.validate());  // single-cell presets may leave the band

    cfg.enforce_sweep_band = true;
    cfg.freqs_hz = {10e3};
    cfg.impulse_enabled = false;  // band rule only concerns the train model
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("wilson interval") {
    const Wilson w = wilson95(5, 100);
    CHECK(std::abs(w.lo - 0.0215) < 1e-3);
    CHECK(std::abs(w.hi - 0.1117) < 1e-3);

    const Wilson empty = wilson95(0, 0);
    CHECK(empty.lo == 0.0);
    CHECK(empty.hi == 1.0);

    const Wilson none = wilson95(0, 1000);
    CHECK(none.lo <= 1e-12);
    CHECK(none.hi > 0.0);

    const Wilson all = wilson95(1000, 1000);
    CHECK(all.hi >= 1.0 - 1e-12);
    CHECK(all.lo < 1.0);

    // Wider with fewer samples at the same rate.
    const Wilson coarse = wilson95(5, 50);
    const Wilson fine = wilson95(50, 500);
    CHECK(coarse.hi - coarse.lo > fine.hi - fine.lo);
}

TEST_CASE("csv renders as an svg chart") {
    ExperimentConfig cfg = quiet_config();
    cfg.gammas_db = {0.0, 10.0};
    const std::string csv = records_to_csv(run_sweep(cfg));

    const std::string svg = render_plot_svg(csv, PlotAxis::GammaDb);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    // Zero-PER cells are drawn at a floor instead of dropping off a log axis.
    CHECK(svg.find("floor") != std::string::npos);

    CHECK_THROWS_AS(render_plot_svg("", PlotAxis::GammaDb), std::invalid_argument);
    CHECK_THROWS_AS(render_plot_svg("per,gamma\n1,2\n", PlotAxis::GammaDb),
                    std::invalid_argument);
    CHECK_THROWS_AS(render_plot_svg(std::string(kCsvHeader) + "\n1,2,3\n", PlotAxis::GammaDb),
                    std::invalid_argument);
}

TEST_CASE("csv numeric formatting is stable") {
    PerRecord r;
    r.cell_index = 3;
    r.interleaver = "qpp";
    r.scheme = "cc";
    r.cc_rate = "1/2";
    r.rs_k = "-";
    r.gamma_db = 9.54;
    r.freq_hz = 50e3;
    r.awgn_snr_db = kNoNoiseSnrDb;
    r.packets = 1000;
    r.errors = 25;
    r.per = 0.025;
    r.ci_lo = 0.0169;
    r.ci_hi = 0.0366;
    r.seed = 42;
    const std::string csv = records_to_csv({r});
    const std::string row = csv.substr(csv.find('\n') + 1);
    CHECK(row == "3,qpp,cc,1/2,-,9.54,50000,inf,1000,25,0.025,0.0169,0.0366,42\n");
}

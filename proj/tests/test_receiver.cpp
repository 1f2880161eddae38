#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "splink/channel.hpp"
#include "splink/fft32.hpp"
#include "splink/receiver.hpp"
#include "splink/rng.hpp"

using namespace splink;
using std::complex;

namespace {

struct ChainAndLength {
    fec::CodecChain chain;
    int l;
};

/// All supported coding schemes, each with a message length every
/// interleaver accepts: the rate-5/6 inner code alone needs l + l1 divisible
/// by 30, and the strongest concatenation stays at one RS block so its coded
/// length fits the largest tabulated QPP size (512).
std::vector<ChainAndLength> all_chains() {
    using fec::CcRate;
    using fec::CodecChain;
    return {
        {CodecChain::cc(CcRate::Half), 100},
        {CodecChain::cc(CcRate::TwoThirds), 100},
        {CodecChain::cc(CcRate::FiveSixths), 90},
        {CodecChain::rs(17), 100},
        {CodecChain::rs(21), 100},
        {CodecChain::rs(25), 100},
        {CodecChain::rs(29), 100},
        {CodecChain::rs_cc(17, CcRate::Half), 85},
        {CodecChain::rs_cc(21, CcRate::Half), 100},
        {CodecChain::rs_cc(21, CcRate::FiveSixths), 100},
    };
}

/// 34 baseband samples (cyclic prefix + symbol) of the clean, unscaled
/// preamble: per-bin gain exactly 1 for estimate_channel.
std::vector<complex<double>> reference_preamble() {
    std::array<complex<double>, 32> bins = preamble_bins();
    ifft32(bins.data());
    std::vector<complex<double>> samples;
    samples.push_back(bins[30]);
    samples.push_back(bins[31]);
    samples.insert(samples.end(), bins.begin(), bins.end());
    return samples;
}

}  // namespace

TEST_CASE("noiseless end-to-end round-trip across interleavers and schemes") {
    Rng rng = make_rng(80);
    for (const InterleaverKind kind :
         {InterleaverKind::None, InterleaverKind::PacketBlock, InterleaverKind::SymbolBlock,
          InterleaverKind::Qpp, InterleaverKind::SRandom}) {
        for (const auto& [chain, l] : all_chains()) {
            LinkConfig cfg;
            cfg.l = l;
            cfg.chain = chain;
            cfg.interleaver = kind;
            const Link link = make_link(cfg);
            for (int round = 0; round < 10; ++round) {
                const Bits msg = random_bits(rng, static_cast<std::size_t>(l));
                const ComplexFrame frame = transmit_packet(link, msg);
                const ReceiveResult rx = receive_packet(link, frame);
                REQUIRE(rx.decode_ok);
                REQUIRE(rx.bits == msg);
                REQUIRE(!packet_error(rx.bits, msg));
            }
        }
    }
}

TEST_CASE("channel estimate from the unscaled preamble is unity") {
    const auto preamble = reference_preamble();
    const ChannelEstimate est = estimate_channel(preamble.data());
    const auto& map = SubcarrierMap::standard();
    for (const int d : map.data_idx) {
        CHECK(std::abs(est.gain[static_cast<std::size_t>(SubcarrierMap::bin(d))] -
                       complex<double>{1.0, 0.0}) < 1e-12);
    }
    for (const int p : map.pilot_idx) {
        CHECK(std::abs(est.gain[static_cast<std::size_t>(SubcarrierMap::bin(p))] -
                       complex<double>{1.0, 0.0}) < 1e-12);
    }
    for (const int g : map.guard_idx) {
        CHECK(est.gain[static_cast<std::size_t>(SubcarrierMap::bin(g))] ==
              complex<double>{1.0, 0.0});
    }
}

TEST_CASE("packet_error compares bit vectors and rejects length mismatches") {
    const Bits a = {0, 1, 1, 0};
    const Bits b = {0, 1, 1, 0};
    Bits c = a;
    c[2] ^= 1;
    CHECK(!packet_error(a, b));
    CHECK(packet_error(a, c));
    CHECK_THROWS_AS(packet_error(a, Bits(3, 0)), std::invalid_argument);
}

TEST_CASE("transmit rejects a message of the wrong length") {
    const Link link = make_link(LinkConfig{});
    CHECK_THROWS_AS(transmit_packet(link, Bits(99, 0)), std::invalid_argument);
    CHECK_THROWS_AS(transmit_packet(link, Bits(0)), std::invalid_argument);
}

TEST_CASE("make_link validates the configuration eagerly") {
    LinkConfig cfg;
    cfg.l = 0;
    CHECK_THROWS_AS(make_link(cfg), std::invalid_argument);

    cfg = LinkConfig{};
    cfg.l = 100;
    cfg.chain = fec::CodecChain::cc(fec::CcRate::FiveSixths);  // needs l+l1 % 30 == 0
    CHECK_THROWS_AS(make_link(cfg), std::invalid_argument);

    cfg = LinkConfig{};
    cfg.scrambler_seed = 0;
    CHECK_THROWS_AS(make_link(cfg), std::invalid_argument);
}

TEST_CASE("link construction is deterministic in the permutation seed") {
    LinkConfig cfg;
    cfg.interleaver = InterleaverKind::SRandom;
    cfg.srandom_seed = 7;
    const Link a = make_link(cfg);
    const Link b = make_link(cfg);
    CHECK(a.perm.map == b.perm.map);

    cfg.srandom_seed = 8;
    const Link c = make_link(cfg);
    CHECK(a.perm.map != c.perm.map);
}

TEST_CASE("unit-ratio impulses alone never break a packet") {
    // At gamma 0 dB a one-sample impulse spreads its unit amplitude across
    // all 32 bins, arriving ~6.4x below the BPSK decision margin after
    // equalization: every trial must decode cleanly.
    LinkConfig cfg;
    const Link link = make_link(cfg);
    Rng rng = make_rng(81);
    for (int round = 0; round < 200; ++round) {
        const Bits msg = random_bits(rng, 100);
        ComplexFrame frame = transmit_packet(link, msg);
        apply_impulse_train(frame, 0.0, 50e3, 100e-9, rng);
        const ReceiveResult rx = receive_packet(link, frame);
        REQUIRE(rx.decode_ok);
        REQUIRE(rx.bits == msg);
    }
}

TEST_CASE("packet errors fall steeply with snr") {
    LinkConfig cfg;
    const Link link = make_link(cfg);
    Rng rng = make_rng(82);
    const int packets = 10000;
    std::vector<int> errors;
    for (const double snr_db : {2.0, 4.0, 6.0, 8.0}) {
        int errs = 0;
        for (int t = 0; t < packets; ++t) {
            const Bits msg = random_bits(rng, 100);
            ComplexFrame frame = transmit_packet(link, msg);
            apply_awgn(frame, snr_db, rng);
            const ReceiveResult rx = receive_packet(link, frame);
            if (packet_error(rx.bits, msg)) ++errs;
        }
        errors.push_back(errs);
    }
    // The coded waterfall: each 2 dB step cuts errors by far more than any
    // plausible statistical wobble at 10^4 packets.
    CHECK(errors[0] > 2 * errors[1]);
    CHECK(errors[1] > 2 * errors[2]);
    CHECK(errors[2] > 2 * errors[3]);
    CHECK(errors[0] > 1000);
    CHECK(errors[3] < 100);
}

TEST_CASE("uncorrectable reed-solomon packets are flagged, not silent") {
    LinkConfig cfg;
    cfg.chain = fec::CodecChain::rs(21);
    const Link link = make_link(cfg);
    Rng rng = make_rng(83);
    int flagged = 0;
    for (int round = 0; round < 50; ++round) {
        const Bits msg = random_bits(rng, 100);
        ComplexFrame frame = transmit_packet(link, msg);
        apply_awgn(frame, 0.0, rng);  // far below the code's operating point
        const ReceiveResult rx = receive_packet(link, frame);
        REQUIRE(rx.bits.size() == 100);
        if (!rx.decode_ok) ++flagged;
    }
    CHECK(flagged > 10);
}

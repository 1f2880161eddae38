#include "splink/receiver.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "splink/fft32.hpp"

namespace splink {

ChannelEstimate estimate_channel(const std::complex<double>* preamble_symbol) {
    constexpr int cp = ComplexFrame::kSamplesPerSymbol - SubcarrierMap::kFftSize;
    std::array<std::complex<double>, SubcarrierMap::kFftSize> rx;
    for (int i = 0; i < SubcarrierMap::kFftSize; ++i) rx[static_cast<std::size_t>(i)] =
        preamble_symbol[cp + i];
    fft32(rx.data());

    constexpr double kFloor = 1e-3;
    const auto& known = preamble_bins();
    ChannelEstimate est = ChannelEstimate::identity();
    for (std::size_t b = 0; b < est.gain.size(); ++b) {
        if (known[b] == std::complex<double>{0.0, 0.0}) continue;
        std::complex<double> g = rx[b] / known[b];
        const double mag = std::abs(g);
        if (mag < kFloor) {
            // Clamp to the floor magnitude, preserving phase; a dead bin
            // becomes the real floor value.
            g = mag == 0.0 ? std::complex<double>{kFloor, 0.0} : g * (kFloor / mag);
        }
        est.gain[b] = g;
    }
    return est;
}

Link make_link(const LinkConfig& cfg) {
    if ((cfg.scrambler_seed & 0x7Fu) == 0) {
        throw std::invalid_argument("scrambler seed must be nonzero");
    }
    Link link;
    link.cfg = cfg;
    link.plan = plan_padding(cfg.l, cfg.chain, cfg.interleaver);
    switch (cfg.interleaver) {
        case InterleaverKind::None: link.perm = build_identity(link.plan.l2); break;
        case InterleaverKind::PacketBlock: link.perm = build_packet_block(link.plan.l2); break;
        case InterleaverKind::SymbolBlock: link.perm = build_symbol_block(); break;
        case InterleaverKind::Qpp: link.perm = build_qpp(link.plan.l2); break;
        case InterleaverKind::SRandom:
            link.perm = build_srandom(link.plan.l2, cfg.srandom_seed);
            break;
    }
    if (cfg.interleaver != InterleaverKind::SymbolBlock &&
        link.perm.n != link.plan.interleaved_len()) {
        throw std::logic_error("permutation length disagrees with the padding ledger");
    }
    return link;
}

ComplexFrame transmit_packet(const Link& link, const Bits& message) {
    if (static_cast<int>(message.size()) != link.cfg.l) {
        throw std::invalid_argument("message must be " + std::to_string(link.cfg.l) +
                                    " bits, got " + std::to_string(message.size()));
    }
    Bits b = scramble(message, link.cfg.scrambler_seed);
    b = pad(b, link.plan.l1);
    b = fec::chain_encode(b, link.cfg.chain);

    if (link.cfg.interleaver == InterleaverKind::SymbolBlock) {
        b = pad(b, link.plan.l4);  // fill the last symbol, then permute each one
        b = apply(link.perm, b);
    } else {
        b = pad(b, link.plan.l3);
        b = apply(link.perm, b);
        b = pad(b, link.plan.l4);
    }
    return modulate_frame(b, link.plan);
}

ReceiveResult receive_packet(const Link& link, const ComplexFrame& frame) {
    const ChannelEstimate est = estimate_channel(frame.samples.data());
    Bits b = demodulate_frame(frame, est);

    if (link.cfg.interleaver == InterleaverKind::SymbolBlock) {
        b = invert(link.perm, b);
        b = unpad(b, link.plan.l4);
    } else {
        b = unpad(b, link.plan.l4);
        b = invert(link.perm, b);
        b = unpad(b, link.plan.l3);
    }

    const fec::ChainDecodeResult decoded = fec::chain_decode(b, link.cfg.chain);
    Bits message = scramble(decoded.bits, link.cfg.scrambler_seed);
    message = unpad(message, link.plan.l1);
    return {std::move(message), decoded.ok};
}

bool packet_error(const Bits& decoded, const Bits& reference) {
    if (decoded.size() != reference.size()) {
        throw std::invalid_argument("packet length mismatch: " + std::to_string(decoded.size()) +
                                    " vs " + std::to_string(reference.size()));
    }
    for (std::size_t i = 0; i < decoded.size(); ++i) {
        if (decoded[i] != reference[i]) return true;
    }
    return false;
}

}  // namespace splink

#pragma once

#include <complex>
#include <cstdint>

#include "splink/bits.hpp"
#include "splink/bitstream.hpp"
#include "splink/fec/chain.hpp"
#include "splink/framing.hpp"
#include "splink/interleave.hpp"

namespace splink {

/// Least-squares per-bin channel estimate from one received 34-sample
/// preamble symbol against the known transmitted preamble. Gains with
/// magnitude below 1e-3 are clamped to that magnitude, preserving phase, so
/// equalization cannot blow up on a dead bin; inactive bins stay at 1.
ChannelEstimate estimate_channel(const std::complex<double>* preamble_symbol);

// Static description of one link: message length, coding chain, interleaver
// and scrambler/interleaver seeds.
struct LinkConfig {
    int l = 100;
    fec::CodecChain chain = fec::CodecChain::cc(fec::CcRate::Half);
    InterleaverKind interleaver = InterleaverKind::None;
    std::uint8_t scrambler_seed = kDefaultScramblerSeed;
    std::uint64_t srandom_seed = 1;  // permutation construction (S-random only)
};

// Per-configuration state precomputed once and shared by every packet.
struct Link {
    LinkConfig cfg;
    PaddingPlan plan;
    Permutation perm;
};

/// Validate the configuration, compute the padding ledger and build the
/// permutation. Configuration errors surface here, before any trial runs.
Link make_link(const LinkConfig& cfg);

/// Scramble, pad, encode, interleave and modulate one message of cfg.l bits.
ComplexFrame transmit_packet(const Link& link, const Bits& message);

struct ReceiveResult {
    Bits bits;       // the l decoded message bits
    bool decode_ok;  // false when the decoder flagged an uncorrectable word
};

/// Full receive chain: estimate the channel from the preamble, demodulate,
/// deinterleave, decode, descramble and strip padding.
ReceiveResult receive_packet(const Link& link, const ComplexFrame& frame);

/// True iff any bit differs; lengths must match.
bool packet_error(const Bits& decoded, const Bits& reference);

}  // namespace splink

#pragma once

#include <cstdint>

#include "splink/bits.hpp"
#include "splink/fec/chain.hpp"
#include "splink/interleave.hpp"

namespace splink {

// Zero-pad ledger reconciling the message length with the encoder input
// granularity (L1), the coded length (L2), the interleaver block (L3) and the
// 21 data bits per OFDM symbol (L4).
struct PaddingPlan {
    int l = 0;   // message bits
    int l1 = 0;  // pre-encoding pad
    int l2 = 0;  // coded bits
    int l3 = 0;  // interleaver pad
    int l4 = 0;  // OFDM-symbol pad
    int n_data_symbols = 0;

    int interleaved_len() const { return l2 + l3; }
    int frame_bits() const { return l2 + l3 + l4; }
    int n_symbols() const { return n_data_symbols + 1; }  // with preamble
};

/// Compute the full padding ledger for a message of l bits.
///
/// l1 pads l up to the chain's granularity R_o; l2 = (l + l1) / R must come
/// out integral or the combination is rejected; l3 follows the interleaver's
/// own block rule; n_data_symbols = ceil((l2 + l3) / 21) and l4 fills the
/// last OFDM symbol.
PaddingPlan plan_padding(int l, const fec::CodecChain& chain, InterleaverKind kind);

/// Append `count` zero bits.
Bits pad(const Bits& bits, int count);

/// Remove `count` trailing bits.
Bits unpad(const Bits& bits, int count);

inline constexpr std::uint8_t kDefaultScramblerSeed = 0x7F;

/// Additive whitening with the x^7 + x^4 + 1 LFSR keystream; the seed is the
/// nonzero 7-bit initial register state. Applying the operation twice with
/// the same seed restores the input.
Bits scramble(const Bits& bits, std::uint8_t seed = kDefaultScramblerSeed);

}  // namespace splink

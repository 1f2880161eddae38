#pragma once

#include "splink/bits.hpp"

namespace splink::fec {

// Systematic Reed-Solomon RS(31, k) over GF(2^5), primitive polynomial
// x^5 + x^2 + 1, narrow-sense (first consecutive root alpha^1). Symbols are
// 5 bits each, most significant bit first; codewords carry the k message
// symbols followed by 31 - k parity symbols.
//
// Supported k: odd values with t = (31 - k) / 2 correctable symbol errors.

/// Encode one block of 5*k message bits into a 155-bit codeword.
Bits rs_encode(const Bits& bits, int k);

struct RsDecodeResult {
    Bits bits;  // 5*k message bits
    bool ok;    // false when the word was uncorrectable
};

/// Decode one 155-bit word. Corrects up to t symbol errors; when the word is
/// uncorrectable, returns the systematic part as received with ok = false.
RsDecodeResult rs_decode(const Bits& coded, int k);

}  // namespace splink::fec

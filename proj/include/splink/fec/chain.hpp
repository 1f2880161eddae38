#pragma once

#include <string>

#include "splink/bits.hpp"
#include "splink/fec/conv.hpp"
#include "splink/fec/rs.hpp"

namespace splink::fec {

enum class Scheme { Cc, Rs, RsCc };

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct Rational {
    int num;
    int den;
};

// Coding-scheme descriptor: a convolutional code, Reed-Solomon outer code, or
// their concatenation (RS outer, CC inner), plus the encoder input granularity
// R_o that pre-encoding padding must honor.
struct CodecChain {
    Scheme scheme = Scheme::Cc;
    CcRate cc_rate = CcRate::Half;
    int rs_k = 21;
    int granularity = 0;  // R_o in bits; 0 selects the per-scheme default

    static CodecChain cc(CcRate rate);
    static CodecChain rs(int k);
    static CodecChain rs_cc(int k, CcRate rate);

    void validate() const;

    /// R_o: defaults to one puncture period of coded bits for CC-only chains
    /// (2, 3 or 6) and the 5*rs_k message bits of one RS block otherwise.
    int effective_granularity() const;

    /// Overall code rate as an irreducible fraction.
    Rational rate() const;

    /// Display name, e.g. "CC(1/2)", "RS(31,21)", "RS(31,21)+CC(5/6)".
    std::string name() const;
};

/// Parse a display name back into a chain: "CC(1/2)", "RS(31,21)",
/// "RS(31,17)+CC(5/6)".
CodecChain chain_from_string(const std::string& name);

struct ChainDecodeResult {
    Bits bits;
    bool ok;  // false when any RS block was uncorrectable
};

/// Encode a padded packet; input length must be a multiple of the chain's
/// effective granularity. Output length = input * rate.den / rate.num.
Bits chain_encode(const Bits& bits, const CodecChain& chain);

/// Invert chain_encode; decoder failures are flagged, never silent.
ChainDecodeResult chain_decode(const Bits& coded, const CodecChain& chain);

}  // namespace splink::fec

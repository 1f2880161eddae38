#ifndef SPLINK_FEC_CONV_HPP
#define SPLINK_FEC_CONV_HPP

#include <string>

#include "splink/bits.hpp"

namespace splink::fec {

/// Punctured variants of the constraint-length-7, generators 171/133
/// (octal) mother code.
enum class CcRate { Half, TwoThirds, FiveSixths };

const char* to_string(CcRate rate);
CcRate cc_rate_from_string(const std::string& name);

/// Input bits consumed per puncture period.
int cc_period_in(CcRate rate);
/// Coded bits emitted per puncture period.
int cc_period_out(CcRate rate);

/// Encode from the all-zero state, no termination tail: output length is
/// exactly input * period_out / period_in. Input must be a whole number
/// of puncture periods.
Bits cc_encode(const Bits& bits, CcRate rate);

/// Hard-decision maximum-likelihood decode over the 64-state trellis.
/// Punctured positions contribute nothing to the branch metric; traceback
/// starts from the best end-state metric (truncated code, no tail).
Bits viterbi_decode(const Bits& coded, CcRate rate);

}  // namespace splink::fec

#endif

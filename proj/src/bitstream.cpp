#include "splink/bitstream.hpp"

#include <stdexcept>
#include <string>

namespace splink {

PaddingPlan plan_padding(int l, const fec::CodecChain& chain, InterleaverKind kind) {
    if (l < 1) throw std::invalid_argument("message length must be >= 1");
    chain.validate();

    PaddingPlan plan;
    plan.l = l;
    const int ro = chain.effective_granularity();
    plan.l1 = (ro - l % ro) % ro;

    const auto rate = chain.rate();
    const long coded = static_cast<long>(l + plan.l1) * rate.den;
    if (coded % rate.num != 0) {
        throw std::invalid_argument("length " + std::to_string(l) + " is unsupported for " +
                                    chain.name() + " with granularity " + std::to_string(ro) +
                                    ": coded length is not integral");
    }
    plan.l2 = static_cast<int>(coded / rate.num);

    switch (kind) {
        case InterleaverKind::PacketBlock: plan.l3 = packet_block_pad(plan.l2); break;
        case InterleaverKind::Qpp: plan.l3 = qpp_params_for(plan.l2).k - plan.l2; break;
        case InterleaverKind::None:
        case InterleaverKind::SymbolBlock:
        case InterleaverKind::SRandom: plan.l3 = 0; break;
    }

    plan.n_data_symbols = (plan.l2 + plan.l3 + 20) / 21;
    plan.l4 = plan.n_data_symbols * 21 - (plan.l2 + plan.l3);
    return plan;
}

Bits pad(const Bits& bits, int count) {
    if (count < 0) throw std::invalid_argument("pad count must be >= 0");
    Bits out(bits);
    out.resize(bits.size() + static_cast<std::size_t>(count), 0);
    return out;
}

Bits unpad(const Bits& bits, int count) {
    if (count < 0) throw std::invalid_argument("unpad count must be >= 0");
    if (bits.size() < static_cast<std::size_t>(count)) {
        throw std::invalid_argument("cannot unpad " + std::to_string(count) + " bits from " +
                                    std::to_string(bits.size()));
    }
    return Bits(bits.begin(), bits.end() - count);
}

Bits scramble(const Bits& bits, std::uint8_t seed) {
    if ((seed & 0x7Fu) == 0) throw std::invalid_argument("scrambler seed must be nonzero");
    unsigned state = seed & 0x7Fu;
    Bits out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const unsigned fb = ((state >> 6) ^ (state >> 3)) & 1u;
        out[i] = static_cast<std::uint8_t>((bits[i] ^ fb) & 1u);
        state = ((state << 1) | fb) & 0x7Fu;
    }
    return out;
}

}  // namespace splink

#include "splink/fec/conv.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "splink/kernels.hpp"

namespace splink::fec {

namespace {

constexpr unsigned kG0 = 0171;  // x^6+x^5+x^4+x^3+1 over the 7-bit register
constexpr unsigned kG1 = 0133;  // x^6+x^4+x^3+x+1
constexpr int kStates = 64;
constexpr std::int32_t kUnreachable = 1 << 24;

inline unsigned parity(unsigned v) { return __builtin_parity(v); }

// Keep-flags per puncture period, one (first, second) pair per input bit.
// Standard patterns for the 171/133 mother code.
struct Pattern {
    int period_in;
    std::array<std::array<bool, 2>, 5> keep;
};

const Pattern& pattern(CcRate rate) {
    static const Pattern half{1, {{{true, true}, {}, {}, {}, {}}}};
    static const Pattern two_thirds{2, {{{true, true}, {true, false}, {}, {}, {}}}};
    static const Pattern five_sixths{
        5, {{{true, true}, {true, false}, {false, true}, {true, false}, {false, true}}}};
    switch (rate) {
        case CcRate::Half: return half;
        case CcRate::TwoThirds: return two_thirds;
        case CcRate::FiveSixths: return five_sixths;
    }
    throw std::invalid_argument("unsupported cc rate");
}

// out_pair[(b<<6)|s] = (c0<<1)|c1 for register (b, s5..s0).
struct Tables {
    std::array<std::uint8_t, 128> out_pair;
    // Deinterleaved branch-output indices in the layout viterbi_acs expects.
    alignas(32) std::array<std::int32_t, 128> bm_index;

    Tables() {
        for (unsigned reg = 0; reg < 128; ++reg) {
            out_pair[reg] =
                static_cast<std::uint8_t>((parity(reg & kG0) << 1) | parity(reg & kG1));
        }
        for (int b = 0; b < 2; ++b) {
            for (int j = 0; j < 32; ++j) {
                bm_index[static_cast<std::size_t>(b * 64 + j)] =
                    out_pair[static_cast<std::size_t>((b << 6) | (2 * j))];
                bm_index[static_cast<std::size_t>(b * 64 + 32 + j)] =
                    out_pair[static_cast<std::size_t>((b << 6) | (2 * j + 1))];
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

const char* to_string(CcRate rate) {
    switch (rate) {
        case CcRate::Half: return "1/2";
        case CcRate::TwoThirds: return "2/3";
        case CcRate::FiveSixths: return "5/6";
    }
    return "?";
}

CcRate cc_rate_from_string(const std::string& name) {
    if (name == "1/2") return CcRate::Half;
    if (name == "2/3") return CcRate::TwoThirds;
    if (name == "5/6") return CcRate::FiveSixths;
    throw std::invalid_argument("unknown cc rate: " + name);
}

int cc_period_in(CcRate rate) { return pattern(rate).period_in; }

int cc_period_out(CcRate rate) {
    const auto& p = pattern(rate);
    int out = 0;
    for (int i = 0; i < p.period_in; ++i) out += p.keep[i][0] + p.keep[i][1];
    return out;
}

Bits cc_encode(const Bits& bits, CcRate rate) {
    const auto& p = pattern(rate);
    if (bits.size() % static_cast<std::size_t>(p.period_in) != 0) {
        throw std::invalid_argument("cc input length " + std::to_string(bits.size()) +
                                    " is not a multiple of " + std::to_string(p.period_in));
    }
    const auto& t = tables();
    Bits out;
    out.reserve(bits.size() * 2);
    unsigned state = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const unsigned reg = (static_cast<unsigned>(bits[i] & 1u) << 6) | state;
        const unsigned pair = t.out_pair[reg];
        const auto& keep = p.keep[i % static_cast<std::size_t>(p.period_in)];
        if (keep[0]) out.push_back(static_cast<std::uint8_t>((pair >> 1) & 1u));
        if (keep[1]) out.push_back(static_cast<std::uint8_t>(pair & 1u));
        state = reg >> 1;
    }
    return out;
}

Bits viterbi_decode(const Bits& coded, CcRate rate) {
    const auto& p = pattern(rate);
    const int per_out = cc_period_out(rate);
    if (coded.size() % static_cast<std::size_t>(per_out) != 0) {
        throw std::invalid_argument("coded length " + std::to_string(coded.size()) +
                                    " is not a multiple of " + std::to_string(per_out));
    }
    const std::size_t n_in = coded.size() / static_cast<std::size_t>(per_out) *
                             static_cast<std::size_t>(p.period_in);
    if (n_in == 0) return {};

    const auto& t = tables();
    const auto& k = kernels::ops();

    alignas(32) std::array<std::int32_t, kStates> metrics;
    alignas(32) std::array<std::int32_t, kStates> next;
    metrics.fill(kUnreachable);
    metrics[0] = 0;

    std::vector<std::uint64_t> decisions(n_in);
    std::size_t pos = 0;
    for (std::size_t step = 0; step < n_in; ++step) {
        // Depuncture this step's (c0, c1) slot; skipped positions are erased.
        const auto& keep = p.keep[step % static_cast<std::size_t>(p.period_in)];
        int r0 = 0, r1 = 0;
        bool e0 = true, e1 = true;
        if (keep[0]) {
            r0 = coded[pos++];
            e0 = false;
        }
        if (keep[1]) {
            r1 = coded[pos++];
            e1 = false;
        }
        alignas(16) std::int32_t bmv[4];
        for (int c = 0; c < 4; ++c) {
            const int c0 = (c >> 1) & 1;
            const int c1 = c & 1;
            bmv[c] = (!e0 && c0 != r0) + (!e1 && c1 != r1);
        }
        k.viterbi_acs(metrics.data(), t.bm_index.data(), bmv, next.data(), &decisions[step]);
        metrics.swap(next);
    }

    int state = 0;
    for (int s = 1; s < kStates; ++s) {
        if (metrics[static_cast<std::size_t>(s)] < metrics[static_cast<std::size_t>(state)])
            state = s;
    }

    Bits out(n_in);
    for (std::size_t step = n_in; step-- > 0;) {
        out[step] = static_cast<std::uint8_t>(state >> 5);
        const int d = static_cast<int>((decisions[step] >> state) & 1u);
        state = ((state & 31) << 1) | d;
    }
    return out;
}

}  // namespace splink::fec

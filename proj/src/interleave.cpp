#include "splink/interleave.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "splink/rng.hpp"

namespace splink {

const char* to_string(InterleaverKind kind) {
    switch (kind) {
        case InterleaverKind::None: return "none";
        case InterleaverKind::PacketBlock: return "packet_block";
        case InterleaverKind::SymbolBlock: return "symbol_block";
        case InterleaverKind::Qpp: return "qpp";
        case InterleaverKind::SRandom: return "srandom";
    }
    return "?";
}

InterleaverKind interleaver_from_string(const std::string& name) {
    if (name == "none") return InterleaverKind::None;
    if (name == "packet_block") return InterleaverKind::PacketBlock;
    if (name == "symbol_block") return InterleaverKind::SymbolBlock;
    if (name == "qpp") return InterleaverKind::Qpp;
    if (name == "srandom") return InterleaverKind::SRandom;
    throw std::invalid_argument("unknown interleaver: " + name);
}

namespace {

void fill_inverse(Permutation& p) {
    p.inv.assign(p.map.size(), 0);
    for (int i = 0; i < p.n; ++i) p.inv[static_cast<std::size_t>(p.map[i])] = i;
}

// Write M x N row-major, read columns right to left, top to bottom.
Permutation block_permutation(InterleaverKind kind, int rows, int cols) {
    Permutation p;
    p.kind = kind;
    p.n = rows * cols;
    p.map.reserve(static_cast<std::size_t>(p.n));
    for (int c = cols - 1; c >= 0; --c) {
        for (int r = 0; r < rows; ++r) {
            p.map.push_back(r * cols + c);
        }
    }
    fill_inverse(p);
    return p;
}

}  // namespace

BlockDims packet_block_dims(int l2) {
    if (l2 < 1) throw std::invalid_argument("packet block interleaver needs l2 >= 1");
    const int m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(l2)))) + 1;
    const int n = (m * (m - 1) >= l2) ? m - 1 : m;
    return {m, n};
}

int packet_block_pad(int l2) {
    const auto [m, n] = packet_block_dims(l2);
    return m * n - l2;
}

Permutation build_packet_block(int l2) {
    const auto [m, n] = packet_block_dims(l2);
    return block_permutation(InterleaverKind::PacketBlock, m, n);
}

Permutation build_symbol_block() { return block_permutation(InterleaverKind::SymbolBlock, 3, 7); }

const std::vector<QppParams>& qpp_table() {
    // 3GPP LTE turbo interleaver coefficients, block lengths up to 512.
    static const std::vector<QppParams> table = {
        {40, 3, 10},    {48, 7, 12},    {56, 19, 42},   {64, 7, 16},    {72, 7, 18},
        {80, 11, 20},   {88, 5, 22},    {96, 11, 24},   {104, 7, 26},   {112, 41, 84},
        {120, 103, 90}, {128, 15, 32},  {136, 9, 34},   {144, 17, 108}, {152, 9, 38},
        {160, 21, 120}, {168, 101, 84}, {176, 21, 44},  {184, 57, 46},  {192, 23, 48},
        {200, 13, 50},  {208, 27, 52},  {216, 11, 36},  {224, 27, 56},  {232, 85, 58},
        {240, 29, 60},  {248, 33, 62},  {256, 15, 32},  {264, 17, 198}, {272, 33, 68},
        {280, 103, 210},{288, 19, 36},  {296, 19, 74},  {304, 37, 76},  {312, 19, 78},
        {320, 21, 120}, {328, 21, 82},  {336, 115, 84}, {344, 193, 86}, {352, 21, 44},
        {360, 133, 90}, {368, 81, 46},  {376, 45, 94},  {384, 23, 48},  {392, 243, 98},
        {400, 151, 40}, {408, 155, 102},{416, 25, 52},  {424, 51, 106}, {432, 47, 72},
        {440, 91, 110}, {448, 29, 168}, {456, 29, 114}, {464, 247, 58}, {472, 29, 118},
        {480, 89, 180}, {488, 91, 122}, {496, 157, 62}, {504, 55, 84},  {512, 31, 64},
    };
    return table;
}

const QppParams& qpp_params_for(int l2) {
    if (l2 < 1) throw std::invalid_argument("qpp interleaver needs l2 >= 1");
    for (const auto& row : qpp_table()) {
        if (row.k >= l2) return row;
    }
    throw std::invalid_argument("no qpp block length >= " + std::to_string(l2) +
                                " (table tops out at 512)");
}

Permutation build_qpp_from(const QppParams& params) {
    Permutation p;
    p.kind = InterleaverKind::Qpp;
    p.n = params.k;
    p.map.resize(static_cast<std::size_t>(p.n));
    const std::int64_t k = params.k;
    for (std::int64_t i = 0; i < k; ++i) {
        p.map[static_cast<std::size_t>(i)] =
            static_cast<std::int32_t>((params.f1 * i + params.f2 * i * i) % k);
    }
    fill_inverse(p);
    return p;
}

Permutation build_qpp(int l2) { return build_qpp_from(qpp_params_for(l2)); }

int srandom_spread(int l2) {
    return static_cast<int>(std::floor(std::sqrt(static_cast<double>(l2) / 2.0)));
}

Permutation build_srandom(int l2, std::uint64_t seed) {
    if (l2 < 2) throw std::invalid_argument("s-random interleaver needs l2 >= 2");
    const int s = srandom_spread(l2);
    constexpr int kRestartCap = 100; // whole-construction restarts

    Rng rng(seed);
    std::vector<std::int32_t> pi(static_cast<std::size_t>(l2));
    std::vector<std::int32_t> pool(static_cast<std::size_t>(l2));
    std::vector<int> valid; // pool slots that pass the spread check
    valid.reserve(static_cast<std::size_t>(l2));

    for (int restart = 0; restart < kRestartCap; ++restart) {
        std::iota(pool.begin(), pool.end(), 0);
        int filled = 0;
        // Greedy filling alone almost never finishes when the spread sits at
        // its feasibility boundary (s ~ sqrt(l2/2)): the values left over for
        // the tail positions cluster together and dead-end the construction,
        // so full restarts would be needed thousands of times. Instead, each
        // position draws uniformly among the candidates that keep the spread
        // property (the limit distribution of per-value rejection draws), and
        // a dead end unwinds recent placements and redraws them. The unwind
        // depth doubles while the construction keeps dead-ending short of its
        // record frontier and resets once it pushes past it; the swap-to-end
        // pool keeps placed values parked at the top in placement order, so
        // unwinding is just shrinking `filled`.
        int deepest_dead_end = 0;
        int depth = s + 1;
        long unwinds_left = 32L * l2;
        while (filled < l2) {
            const int avail = l2 - filled;
            const auto spread_ok = [&](std::int32_t cand) {
                for (int j = 1; j <= s && j <= filled; ++j) {
                    if (std::abs(cand - pi[static_cast<std::size_t>(filled - j)]) <= s) return false;
                }
                return true;
            };
            // Fast path: a handful of uniform rejection draws covers the
            // common case where most of the pool is still compatible.
            int slot = -1;
            std::uniform_int_distribution<int> draw(0, avail - 1);
            for (int t = 0; t < 32 && slot < 0; ++t) {
                const int cand_slot = draw(rng);
                if (spread_ok(pool[static_cast<std::size_t>(cand_slot)])) slot = cand_slot;
            }
            if (slot < 0) {
                // Sparse case: enumerate the compatible slots exactly and draw
                // uniformly among them (the same distribution the rejection
                // draws converge to), so a dead end is detected, not guessed.
                valid.clear();
                for (int c = 0; c < avail; ++c) {
                    if (spread_ok(pool[static_cast<std::size_t>(c)])) valid.push_back(c);
                }
                if (!valid.empty()) {
                    std::uniform_int_distribution<int> pick(
                        0, static_cast<int>(valid.size()) - 1);
                    slot = valid[static_cast<std::size_t>(pick(rng))];
                }
            }
            if (slot >= 0) {
                pi[static_cast<std::size_t>(filled)] = pool[static_cast<std::size_t>(slot)];
                std::swap(pool[static_cast<std::size_t>(slot)],
                          pool[static_cast<std::size_t>(avail - 1)]);
                ++filled;
                continue;
            }
            // Dead end: no leftover value fits the next position. First try a
            // pairwise exchange: a leftover value takes an earlier slot and
            // the displaced value, when it fits the current tail window,
            // fills this position. Only slots more than s positions back are
            // considered, so the two moved values never constrain each other
            // and the tail window stays untouched.
            bool repaired = false;
            if (filled > s + 1) {
                const int span = filled - s - 1;
                for (int li = 0; li < avail && !repaired; ++li) {
                    const std::int32_t v = pool[static_cast<std::size_t>(li)];
                    std::uniform_int_distribution<int> start(0, span - 1);
                    const int j0 = start(rng);
                    const int scan = std::min(span, 4096);
                    for (int step = 0; step < scan && !repaired; ++step) {
                        int j = j0 + step;
                        if (j >= span) j -= span;
                        if (!spread_ok(pi[static_cast<std::size_t>(j)])) continue;
                        bool v_fits = true;
                        for (int q = std::max(0, j - s); q <= j + s && v_fits; ++q) {
                            if (q == j) continue;
                            if (std::abs(v - pi[static_cast<std::size_t>(q)]) <= s) v_fits = false;
                        }
                        if (!v_fits) continue;
                        const std::int32_t w = pi[static_cast<std::size_t>(j)];
                        pi[static_cast<std::size_t>(filled)] = w;
                        pi[static_cast<std::size_t>(j)] = v;
                        // Keep the parked stack mirroring pi so unwinding stays
                        // sound: position q parks its value at pool[l2-1-q].
                        std::swap(pool[static_cast<std::size_t>(li)],
                                  pool[static_cast<std::size_t>(avail - 1)]);
                        pool[static_cast<std::size_t>(avail - 1)] = w;
                        pool[static_cast<std::size_t>(l2 - 1 - j)] = v;
                        ++filled;
                        repaired = true;
                    }
                }
            }
            if (repaired) continue;
            if (filled == 0 || unwinds_left-- <= 0) break;
            if (filled > deepest_dead_end) {
                deepest_dead_end = filled;
                depth = s + 1;
            } else {
                depth = std::min(depth * 2, l2);
            }
            std::uniform_int_distribution<int> unwind(1, std::min(depth, filled));
            filled -= unwind(rng);
        }
        if (filled == l2) {
            Permutation p;
            p.kind = InterleaverKind::SRandom;
            p.n = l2;
            p.map = pi;
            fill_inverse(p);
            return p;
        }
    }
    throw std::runtime_error("s-random construction exhausted its retry budget (l2=" +
                             std::to_string(l2) + ", s=" + std::to_string(s) + ")");
}

Permutation build_identity(int n) {
    Permutation p;
    p.kind = InterleaverKind::None;
    p.n = n;
    p.map.resize(static_cast<std::size_t>(n));
    std::iota(p.map.begin(), p.map.end(), 0);
    p.inv = p.map;
    return p;
}

namespace {

// The symbol-block permutation covers one 21-bit OFDM symbol and is applied
// chunk by chunk; every other kind spans its whole input.
void check_apply_length(const Permutation& perm, std::size_t len) {
    const bool ok = perm.kind == InterleaverKind::SymbolBlock
                        ? len > 0 && len % static_cast<std::size_t>(perm.n) == 0
                        : len == static_cast<std::size_t>(perm.n);
    if (!ok) {
        throw std::invalid_argument("permutation of length " + std::to_string(perm.n) +
                                    " cannot cover input length " + std::to_string(len));
    }
}

}  // namespace

Bits apply(const Permutation& perm, const Bits& bits) {
    check_apply_length(perm, bits.size());
    const auto n = static_cast<std::size_t>(perm.n);
    Bits out(bits.size());
    for (std::size_t base = 0; base < bits.size(); base += n) {
        for (std::size_t i = 0; i < n; ++i) {
            out[base + i] = bits[base + static_cast<std::size_t>(perm.map[i])];
        }
    }
    return out;
}

Bits invert(const Permutation& perm, const Bits& bits) {
    check_apply_length(perm, bits.size());
    const auto n = static_cast<std::size_t>(perm.n);
    Bits out(bits.size());
    for (std::size_t base = 0; base < bits.size(); base += n) {
        for (std::size_t i = 0; i < n; ++i) {
            out[base + static_cast<std::size_t>(perm.map[i])] = bits[base + i];
        }
    }
    return out;
}

void write_permutation(std::ostream& os, const Permutation& perm) {
    os << to_string(perm.kind) << ' ' << perm.n << '\n';
    for (int i = 0; i < perm.n; ++i) os << perm.map[static_cast<std::size_t>(i)] << '\n';
}

}  // namespace splink

#ifndef SPLINK_INTERLEAVE_HPP
#define SPLINK_INTERLEAVE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "splink/bits.hpp"

namespace splink {

enum class InterleaverKind { None, PacketBlock, SymbolBlock, Qpp, SRandom };

const char* to_string(InterleaverKind kind);
InterleaverKind interleaver_from_string(const std::string& name);

/// An explicit bijection on [0, n). map[i] is the input index carried to
/// output position i; inv is materialized at construction so the
/// deinterleaver never re-derives it.
struct Permutation {
    InterleaverKind kind = InterleaverKind::None;
    int n = 0;
    std::vector<std::int32_t> map;
    std::vector<std::int32_t> inv;
};

struct QppParams {
    int k;
    int f1;
    int f2;
};

struct BlockDims {
    int rows;  // M
    int cols;  // N
};

/// Matrix shape for a block interleaver over l2 coded bits:
/// M = floor(sqrt(L2)) + 1, N = M-1 when M(M-1) >= L2 else M.
BlockDims packet_block_dims(int l2);

/// Zero bits needed to fill the M x N matrix (L3 = M*N - L2).
int packet_block_pad(int l2);

/// Whole-packet block interleaver: write row-major left to right, read
/// columns right to left, each column top to bottom. Length M*N.
Permutation build_packet_block(int l2);

/// Fixed 3x7 block interleaver applied to each 21-bit symbol chunk,
/// same write/read convention as the packet interleaver.
Permutation build_symbol_block();

/// pi(i) = (f1*i + f2*i^2) mod K with the tabulated coefficients for the
/// smallest supported K >= l2. Throws when no table row is large enough.
Permutation build_qpp(int l2);

/// Smallest tabulated QPP block length >= l2, or throw.
const QppParams& qpp_params_for(int l2);
const std::vector<QppParams>& qpp_table();
Permutation build_qpp_from(const QppParams& params);

/// Spread-constrained random permutation with S = floor(sqrt(l2/2)):
/// any two output positions within S carry input indices more than S
/// apart. Deterministic for a fixed seed. Throws if the rejection
/// sampler exhausts its retry budget.
Permutation build_srandom(int l2, std::uint64_t seed);
int srandom_spread(int l2);

Permutation build_identity(int n);

Bits apply(const Permutation& perm, const Bits& bits);
Bits invert(const Permutation& perm, const Bits& bits);

/// Text export: header line "<kind> <n>", then n indices one per line.
void write_permutation(std::ostream& os, const Permutation& perm);

}  // namespace splink

#endif

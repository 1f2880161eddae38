#ifndef SPLINK_KERNELS_HPP
#define SPLINK_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>

namespace splink::kernels {

// Inner-loop primitives shared by the modem and the Viterbi decoder.
// Every entry has a scalar reference implementation; on x86-64 an AVX2
// variant is selected at runtime when the CPU supports it. The scalar
// kernel defines the semantics; SIMD variants are equivalence-tested
// against it (bit-exact for the integer and sign-test kernels).
struct Ops {
    const char* name;

    /// Sum of |x[i]|^2.
    double (*sum_power)(const std::complex<double>* x, std::size_t n);

    /// Hard BPSK decision per element: out[i] = 1 if re(x[i]) < 0 else 0.
    void (*bpsk_slice)(const std::complex<double>* x, std::size_t n, std::uint8_t* out);

    /// Pointwise equalization y[i] = x[i] * conj(h[i]) / |h[i]|^2.
    void (*equalize)(const std::complex<double>* x, const std::complex<double>* h,
                     std::size_t n, std::complex<double>* y);

    /// One add-compare-select step of the 64-state rate-1/2 trellis.
    ///
    /// For j in [0,32) and input hypothesis b in {0,1}, next state
    /// ns = (b<<5)|j has predecessors 2j and 2j+1:
    ///   cand0 = metrics[2j]   + bm_values[bm_index[b*64 + j]]
    ///   cand1 = metrics[2j+1] + bm_values[bm_index[b*64 + 32 + j]]
    /// next[ns] = min(cand0, cand1); decision bit ns is set when the
    /// odd predecessor wins strictly (ties keep the even one).
    /// bm_index entries are in [0,4); bm_values holds this step's cost
    /// for each of the four (c0,c1) branch-output pairs.
    void (*viterbi_acs)(const std::int32_t* metrics, const std::int32_t* bm_index,
                        const std::int32_t bm_values[4], std::int32_t* next,
                        std::uint64_t* decision);
};

/// Active kernel table. Set SPLINK_FORCE_SCALAR=1 in the environment to
/// pin the scalar reference (checked once, on first use).
const Ops& ops();

const Ops& scalar_ops();

/// AVX2 table, or nullptr when the build or the CPU lacks AVX2.
const Ops* avx2_ops();

namespace detail {
/// Raw AVX2 table when compiled in; no CPU check. Use avx2_ops() instead.
const Ops* avx2_table();
}  // namespace detail

}  // namespace splink::kernels

#endif

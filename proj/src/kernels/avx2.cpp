// AVX2 variants of the hot kernels. Compiled with -mavx2 (see CMakeLists);
// dispatch.cpp only hands this table out after a runtime CPU check.
#include "splink/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace splink::kernels {

namespace {

double sum_power_avx2(const std::complex<double>* x, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(x);
    const std::size_t total = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= total; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < total; ++i) sum += p[i] * p[i];
    return sum;
}

void bpsk_slice_avx2(const std::complex<double>* x, std::size_t n, std::uint8_t* out) {
    const double* p = reinterpret_cast<const double*>(x);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(p + 2 * i);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ));
        out[i] = static_cast<std::uint8_t>(mask & 1);
        out[i + 1] = static_cast<std::uint8_t>((mask >> 2) & 1);
    }
    for (; i < n; ++i) out[i] = x[i].real() < 0.0 ? 1u : 0u;
}

void equalize_avx2(const std::complex<double>* x, const std::complex<double>* h,
                   std::size_t n, std::complex<double>* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* hp = reinterpret_cast<const double*>(h);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);  // [xr0 xi0 xr1 xi1]
        const __m256d hv = _mm256_loadu_pd(hp + 2 * i);
        const __m256d h2 = _mm256_mul_pd(hv, hv);
        const __m256d d = _mm256_add_pd(h2, _mm256_permute_pd(h2, 0x5));  // [d0 d0 d1 d1]
        const __m256d t1 = _mm256_mul_pd(xv, hv);                          // xr*hr, xi*hi
        const __m256d numr = _mm256_add_pd(t1, _mm256_permute_pd(t1, 0x5));
        const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(xv, 0x5), hv);  // xi*hr, xr*hi
        const __m256d numi = _mm256_sub_pd(t2, _mm256_permute_pd(t2, 0x5));
        const __m256d num = _mm256_shuffle_pd(numr, numi, 0x0);  // [yr0*d yi0*d yr1*d yi1*d]
        _mm256_storeu_pd(yp + 2 * i, _mm256_div_pd(num, d));
    }
    for (; i < n; ++i) {
        const double hr = h[i].real(), hi = h[i].imag();
        const double dd = hr * hr + hi * hi;
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {(xr * hr + xi * hi) / dd, (xi * hr - xr * hi) / dd};
    }
}

void viterbi_acs_avx2(const std::int32_t* metrics, const std::int32_t* bm_index,
                      const std::int32_t bm_values[4], std::int32_t* next,
                      std::uint64_t* decision) {
    const __m128i bm128 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(bm_values));
    const __m256i bmv = _mm256_set_m128i(bm128, bm128);
    const __m256i deint = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);

    // Deinterleave the 64 metrics once: evens[t] holds metrics[2j] for
    // j in [8t, 8t+8), odds[t] the matching metrics[2j+1].
    __m256i evens[4], odds[4];
    for (int t = 0; t < 4; ++t) {
        const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(metrics + 16 * t));
        const __m256i hi =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(metrics + 16 * t + 8));
        const __m256i a = _mm256_permutevar8x32_epi32(lo, deint);
        const __m256i c = _mm256_permutevar8x32_epi32(hi, deint);
        evens[t] = _mm256_permute2x128_si256(a, c, 0x20);
        odds[t] = _mm256_permute2x128_si256(a, c, 0x31);
    }

    std::uint64_t dec = 0;
    for (int b = 0; b < 2; ++b) {
        const std::int32_t* idx = bm_index + b * 64;
        for (int t = 0; t < 4; ++t) {
            const __m256i ie =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + 8 * t));
            const __m256i io =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + 32 + 8 * t));
            const __m256i cand0 = _mm256_add_epi32(evens[t], _mm256_permutevar8x32_epi32(bmv, ie));
            const __m256i cand1 = _mm256_add_epi32(odds[t], _mm256_permutevar8x32_epi32(bmv, io));
            const __m256i newm = _mm256_min_epi32(cand0, cand1);
            const __m256i oddwins = _mm256_cmpgt_epi32(cand0, cand1);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(next + (b << 5) + 8 * t), newm);
            const auto bits = static_cast<std::uint32_t>(
                _mm256_movemask_ps(_mm256_castsi256_ps(oddwins)));
            dec |= static_cast<std::uint64_t>(bits) << ((b << 5) + 8 * t);
        }
    }
    *decision = dec;
}

}  // namespace

const Ops* detail::avx2_table() {
    static const Ops table{
        "avx2", sum_power_avx2, bpsk_slice_avx2, equalize_avx2, viterbi_acs_avx2,
    };
    return &table;
}

}  // namespace splink::kernels

#else

namespace splink::kernels {
const Ops* detail::avx2_table() { return nullptr; }
}  // namespace splink::kernels

#endif

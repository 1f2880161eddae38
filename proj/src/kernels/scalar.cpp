#include "splink/kernels.hpp"

namespace splink::kernels {

namespace {

double sum_power_scalar(const std::complex<double>* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

void bpsk_slice_scalar(const std::complex<double>* x, std::size_t n, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i].real() < 0.0 ? 1u : 0u;
    }
}

void equalize_scalar(const std::complex<double>* x, const std::complex<double>* h,
                     std::size_t n, std::complex<double>* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const double hr = h[i].real();
        const double hi = h[i].imag();
        const double d = hr * hr + hi * hi;
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {(xr * hr + xi * hi) / d, (xi * hr - xr * hi) / d};
    }
}

void viterbi_acs_scalar(const std::int32_t* metrics, const std::int32_t* bm_index,
                        const std::int32_t bm_values[4], std::int32_t* next,
                        std::uint64_t* decision) {
    std::uint64_t dec = 0;
    for (int b = 0; b < 2; ++b) {
        const std::int32_t* idx = bm_index + b * 64;
        for (int j = 0; j < 32; ++j) {
            const std::int32_t cand0 = metrics[2 * j] + bm_values[idx[j]];
            const std::int32_t cand1 = metrics[2 * j + 1] + bm_values[idx[32 + j]];
            const int ns = (b << 5) | j;
            if (cand1 < cand0) {
                next[ns] = cand1;
                dec |= 1ULL << ns;
            } else {
                next[ns] = cand0;
            }
        }
    }
    *decision = dec;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{
        "scalar", sum_power_scalar, bpsk_slice_scalar, equalize_scalar, viterbi_acs_scalar,
    };
    return table;
}

}  // namespace splink::kernels

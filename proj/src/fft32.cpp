#include "splink/fft32.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace splink {

namespace {

constexpr int kN = 32;
constexpr int kLogN = 5;

struct Tables {
    std::array<int, kN> reversed;
    std::array<std::complex<double>, kN / 2> twiddle;  // e^{-2*pi*i*k/32}

    Tables() {
        for (int i = 0; i < kN; ++i) {
            int r = 0;
            for (int b = 0; b < kLogN; ++b) r |= ((i >> b) & 1) << (kLogN - 1 - b);
            reversed[static_cast<std::size_t>(i)] = r;
        }
        for (int k = 0; k < kN / 2; ++k) {
            const double a = -2.0 * std::numbers::pi * k / kN;
            twiddle[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

void transform(std::complex<double>* data, bool inverse) {
    const auto& t = tables();
    for (int i = 0; i < kN; ++i) {
        const int r = t.reversed[static_cast<std::size_t>(i)];
        if (i < r) std::swap(data[i], data[r]);
    }
    for (int len = 2; len <= kN; len <<= 1) {
        const int stride = kN / len;
        for (int base = 0; base < kN; base += len) {
            for (int k = 0; k < len / 2; ++k) {
                std::complex<double> w = t.twiddle[static_cast<std::size_t>(k * stride)];
                if (inverse) w = std::conj(w);
                const std::complex<double> u = data[base + k];
                const std::complex<double> v = data[base + k + len / 2] * w;
                data[base + k] = u + v;
                data[base + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace

void fft32(std::complex<double>* data) { transform(data, false); }

void ifft32(std::complex<double>* data) {
    transform(data, true);
    for (int i = 0; i < kN; ++i) data[i] /= kN;
}

}  // namespace splink

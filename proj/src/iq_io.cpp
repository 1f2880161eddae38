#include "splink/iq_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace splink {

namespace {

std::uint32_t to_le(float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, sizeof u);
    if constexpr (std::endian::native == std::endian::big) {
        u = __builtin_bswap32(u);
    }
    return u;
}

float from_le(std::uint32_t u) {
    if constexpr (std::endian::native == std::endian::big) {
        u = __builtin_bswap32(u);
    }
    float v;
    std::memcpy(&v, &u, sizeof v);
    return v;
}

}  // namespace

void save_iq(const std::string& path, const std::vector<std::complex<double>>& samples,
             double sample_rate_hz, int n_symbols) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& s : samples) {
        const std::uint32_t words[2] = {to_le(static_cast<float>(s.real())),
                                        to_le(static_cast<float>(s.imag()))};
        out.write(reinterpret_cast<const char*>(words), sizeof words);
    }
    if (!out) throw std::runtime_error("write failed: " + path);

    std::ofstream side(path + ".txt");
    if (!side) throw std::runtime_error("cannot open " + path + ".txt for writing");
    side << "format float32_iq_le\n"
         << "sample_rate_hz " << sample_rate_hz << '\n'
         << "n_samples " << samples.size() << '\n'
         << "n_symbols " << n_symbols << '\n';
}

std::vector<std::complex<double>> load_iq(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::complex<double>> samples;
    std::uint32_t words[2];
    while (in.read(reinterpret_cast<char*>(words), sizeof words)) {
        samples.emplace_back(from_le(words[0]), from_le(words[1]));
    }
    return samples;
}

}  // namespace splink

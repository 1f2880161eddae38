#ifndef SPLINK_BITS_HPP
#define SPLINK_BITS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace splink {

/// One bit per element, values restricted to {0, 1}.
using Bits = std::vector<std::uint8_t>;

inline Bits bits_from_string(const std::string& s) {
    Bits out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

inline std::string bits_to_string(const Bits& b) {
    std::string s;
    s.reserve(b.size());
    for (auto v : b) s.push_back(v ? '1' : '0');
    return s;
}

inline Bits bits_xor(const Bits& a, const Bits& b) {
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace splink

#endif

#include "splink/fec/rs.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace splink::fec {

namespace {

constexpr int kN = 31;
constexpr unsigned kPrimPoly = 0x25;  // x^5 + x^2 + 1

struct Gf32 {
    std::array<std::uint8_t, 62> exp;  // exp[i] = alpha^i, doubled to skip a mod
    std::array<std::int8_t, 32> log;

    Gf32() {
        unsigned v = 1;
        for (int i = 0; i < kN; ++i) {
            exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
            exp[static_cast<std::size_t>(i + kN)] = static_cast<std::uint8_t>(v);
            log[v] = static_cast<std::int8_t>(i);
            v <<= 1;
            if (v & 0x20u) v ^= kPrimPoly;
        }
        log[0] = -1;
    }

    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp[static_cast<std::size_t>(log[a] + log[b])];
    }
    std::uint8_t div(std::uint8_t a, std::uint8_t b) const {
        if (a == 0) return 0;
        return exp[static_cast<std::size_t>(log[a] + kN - log[b])];
    }
    std::uint8_t pow_alpha(int e) const {
        e %= kN;
        if (e < 0) e += kN;
        return exp[static_cast<std::size_t>(e)];
    }
};

const Gf32& gf() {
    static const Gf32 f;
    return f;
}

void check_k(int k) {
    if (k < 1 || k >= kN || (kN - k) % 2 != 0) {
        throw std::invalid_argument("unsupported rs k: " + std::to_string(k));
    }
}

std::vector<std::uint8_t> unpack_symbols(const Bits& bits) {
    std::vector<std::uint8_t> syms(bits.size() / 5);
    for (std::size_t i = 0; i < syms.size(); ++i) {
        unsigned v = 0;
        for (int b = 0; b < 5; ++b) v = (v << 1) | (bits[i * 5 + static_cast<std::size_t>(b)] & 1u);
        syms[i] = static_cast<std::uint8_t>(v);
    }
    return syms;
}

Bits pack_symbols(const std::vector<std::uint8_t>& syms) {
    Bits bits(syms.size() * 5);
    for (std::size_t i = 0; i < syms.size(); ++i) {
        for (int b = 0; b < 5; ++b) {
            bits[i * 5 + static_cast<std::size_t>(b)] =
                static_cast<std::uint8_t>((syms[i] >> (4 - b)) & 1u);
        }
    }
    return bits;
}

// g(x) = prod_{j=1}^{2t} (x + alpha^j), coefficients indexed by power of x.
std::vector<std::uint8_t> generator_poly(int n_parity) {
    const auto& f = gf();
    std::vector<std::uint8_t> g{1};
    for (int j = 1; j <= n_parity; ++j) {
        const std::uint8_t root = f.pow_alpha(j);
        g.push_back(0);
        for (std::size_t i = g.size() - 1; i > 0; --i) {
            g[i] = static_cast<std::uint8_t>(g[i - 1] ^ f.mul(g[i], root));
        }
        g[0] = f.mul(g[0], root);
    }
    return g;
}

}  // namespace

Bits rs_encode(const Bits& bits, int k) {
    check_k(k);
    if (bits.size() != static_cast<std::size_t>(5 * k)) {
        throw std::invalid_argument("rs encode input must be " + std::to_string(5 * k) +
                                    " bits, got " + std::to_string(bits.size()));
    }
    const auto& f = gf();
    const int n_parity = kN - k;
    const auto g = generator_poly(n_parity);
    const auto msg = unpack_symbols(bits);

    // LFSR division: parity = m(x) * x^(n-k) mod g(x), parity[i] = coeff of x^i.
    std::vector<std::uint8_t> parity(static_cast<std::size_t>(n_parity), 0);
    for (const std::uint8_t m : msg) {
        const std::uint8_t fb = static_cast<std::uint8_t>(m ^ parity[parity.size() - 1]);
        for (std::size_t i = parity.size() - 1; i > 0; --i) {
            parity[i] = static_cast<std::uint8_t>(parity[i - 1] ^ f.mul(fb, g[i]));
        }
        parity[0] = f.mul(fb, g[0]);
    }

    std::vector<std::uint8_t> cw(msg);
    cw.reserve(kN);
    for (std::size_t i = parity.size(); i-- > 0;) cw.push_back(parity[i]);
    return pack_symbols(cw);
}

RsDecodeResult rs_decode(const Bits& coded, int k) {
    check_k(k);
    if (coded.size() != static_cast<std::size_t>(5 * kN)) {
        throw std::invalid_argument("rs decode input must be " + std::to_string(5 * kN) +
                                    " bits, got " + std::to_string(coded.size()));
    }
    const auto& f = gf();
    const int t = (kN - k) / 2;
    const int n_synd = 2 * t;
    auto word = unpack_symbols(coded);
    const std::vector<std::uint8_t> received_msg(word.begin(),
                                                 word.begin() + static_cast<std::ptrdiff_t>(k));

    const auto corrected = [&] {
        return RsDecodeResult{
            pack_symbols({word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k)}), true};
    };
    const auto failed = [&] { return RsDecodeResult{pack_symbols(received_msg), false}; };

    // Received symbol i carries the coefficient of x^(30-i); Horner from the top.
    const auto syndromes = [&] {
        std::vector<std::uint8_t> s(static_cast<std::size_t>(n_synd));
        for (int j = 1; j <= n_synd; ++j) {
            const std::uint8_t aj = f.pow_alpha(j);
            std::uint8_t acc = 0;
            for (int i = 0; i < kN; ++i) {
                acc = static_cast<std::uint8_t>(f.mul(acc, aj) ^ word[static_cast<std::size_t>(i)]);
            }
            s[static_cast<std::size_t>(j - 1)] = acc;
        }
        return s;
    };

    auto synd = syndromes();
    bool clean = true;
    for (const auto s : synd) clean = clean && s == 0;
    if (clean) return corrected();

    // Berlekamp-Massey for the error locator Lambda(x).
    std::vector<std::uint8_t> lambda{1}, prev{1};
    int errors = 0, shift = 1;
    std::uint8_t prev_delta = 1;
    for (int n = 0; n < n_synd; ++n) {
        std::uint8_t delta = synd[static_cast<std::size_t>(n)];
        for (int i = 1; i <= errors && i < static_cast<int>(lambda.size()); ++i) {
            delta = static_cast<std::uint8_t>(
                delta ^ f.mul(lambda[static_cast<std::size_t>(i)],
                              synd[static_cast<std::size_t>(n - i)]));
        }
        if (delta == 0) {
            ++shift;
        } else if (2 * errors <= n) {
            const auto saved = lambda;
            const std::uint8_t scale = f.div(delta, prev_delta);
            lambda.resize(std::max(lambda.size(), prev.size() + static_cast<std::size_t>(shift)),
                          0);
            for (std::size_t i = 0; i < prev.size(); ++i) {
                lambda[i + static_cast<std::size_t>(shift)] = static_cast<std::uint8_t>(
                    lambda[i + static_cast<std::size_t>(shift)] ^ f.mul(scale, prev[i]));
            }
            errors = n + 1 - errors;
            prev = saved;
            prev_delta = delta;
            shift = 1;
        } else {
            const std::uint8_t scale = f.div(delta, prev_delta);
            lambda.resize(std::max(lambda.size(), prev.size() + static_cast<std::size_t>(shift)),
                          0);
            for (std::size_t i = 0; i < prev.size(); ++i) {
                lambda[i + static_cast<std::size_t>(shift)] = static_cast<std::uint8_t>(
                    lambda[i + static_cast<std::size_t>(shift)] ^ f.mul(scale, prev[i]));
            }
            ++shift;
        }
    }
    if (errors > t) return failed();

    const auto eval = [&](const std::vector<std::uint8_t>& p, std::uint8_t x) {
        std::uint8_t acc = 0;
        for (std::size_t i = p.size(); i-- > 0;) acc = static_cast<std::uint8_t>(f.mul(acc, x) ^ p[i]);
        return acc;
    };

    // Chien search over all positions; power e is the degree of position i = 30 - e.
    std::vector<int> err_pos;      // transmitted indices
    std::vector<std::uint8_t> xinv;  // alpha^-e per error
    for (int e = 0; e < kN; ++e) {
        const std::uint8_t x = f.pow_alpha(-e);
        if (eval(lambda, x) == 0) {
            err_pos.push_back(kN - 1 - e);
            xinv.push_back(x);
        }
    }
    if (static_cast<int>(err_pos.size()) != errors) return failed();

    // Forney: omega(x) = S(x) * Lambda(x) mod x^(2t); magnitude = omega(Xinv)/Lambda'(Xinv).
    std::vector<std::uint8_t> omega(static_cast<std::size_t>(n_synd), 0);
    for (std::size_t i = 0; i < omega.size(); ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j <= i && j < lambda.size(); ++j) {
            acc = static_cast<std::uint8_t>(acc ^ f.mul(lambda[j], synd[i - j]));
        }
        omega[i] = acc;
    }
    for (std::size_t m = 0; m < err_pos.size(); ++m) {
        std::uint8_t denom = 0;  // formal derivative keeps odd-power terms
        for (std::size_t i = 1; i < lambda.size(); i += 2) {
            std::uint8_t term = lambda[i];
            for (std::size_t p = 0; p + 1 < i; ++p) term = f.mul(term, xinv[m]);
            denom = static_cast<std::uint8_t>(denom ^ term);
        }
        if (denom == 0) return failed();
        const std::uint8_t mag = f.div(eval(omega, xinv[m]), denom);
        word[static_cast<std::size_t>(err_pos[m])] =
            static_cast<std::uint8_t>(word[static_cast<std::size_t>(err_pos[m])] ^ mag);
    }

    synd = syndromes();
    for (const auto s : synd) {
        if (s != 0) return failed();
    }
    return corrected();
}

}  // namespace splink::fec

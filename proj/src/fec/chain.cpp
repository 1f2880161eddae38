#include "splink/fec/chain.hpp"

#include <numeric>
#include <stdexcept>

namespace splink::fec {

namespace {

constexpr int kRsCodedBits = 155;  // 31 symbols * 5 bits

Rational cc_rational(CcRate rate) {
    switch (rate) {
        case CcRate::Half: return {1, 2};
        case CcRate::TwoThirds: return {2, 3};
        case CcRate::FiveSixths: return {5, 6};
    }
    throw std::invalid_argument("unsupported cc rate");
}

}  // namespace

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Cc: return "CC";
        case Scheme::Rs: return "RS";
        case Scheme::RsCc: return "RS+CC";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "CC" || name == "cc") return Scheme::Cc;
    if (name == "RS" || name == "rs") return Scheme::Rs;
    if (name == "RS+CC" || name == "RS_CC" || name == "rs+cc" || name == "rs_cc")
        return Scheme::RsCc;
    throw std::invalid_argument("unknown coding scheme: " + name);
}

CodecChain CodecChain::cc(CcRate rate) { return CodecChain{Scheme::Cc, rate, 21, 0}; }

CodecChain CodecChain::rs(int k) { return CodecChain{Scheme::Rs, CcRate::Half, k, 0}; }

CodecChain CodecChain::rs_cc(int k, CcRate rate) { return CodecChain{Scheme::RsCc, rate, k, 0}; }

void CodecChain::validate() const {
    if (scheme != Scheme::Cc) {
        if (rs_k != 17 && rs_k != 21 && rs_k != 25 && rs_k != 29) {
            throw std::invalid_argument("rs_k must be one of 17, 21, 25, 29; got " +
                                        std::to_string(rs_k));
        }
        if (granularity > 0 && granularity % (5 * rs_k) != 0) {
            throw std::invalid_argument("granularity must be a multiple of the " +
                                        std::to_string(5 * rs_k) + "-bit RS message");
        }
    }
    if (granularity < 0) throw std::invalid_argument("granularity must be positive");
    (void)cc_rational(cc_rate);
}

int CodecChain::effective_granularity() const {
    if (granularity > 0) return granularity;
    switch (scheme) {
        case Scheme::Cc:
            switch (cc_rate) {
                case CcRate::Half: return 2;
                case CcRate::TwoThirds: return 3;
                case CcRate::FiveSixths: return 6;
            }
            break;
        case Scheme::Rs:
        case Scheme::RsCc: return 5 * rs_k;
    }
    throw std::invalid_argument("unsupported scheme");
}

Rational CodecChain::rate() const {
    switch (scheme) {
        case Scheme::Cc: return cc_rational(cc_rate);
        case Scheme::Rs: return {rs_k, 31};
        case Scheme::RsCc: {
            const Rational inner = cc_rational(cc_rate);
            int num = rs_k * inner.num;
            int den = 31 * inner.den;
            const int g = std::gcd(num, den);
            return {num / g, den / g};
        }
    }
    throw std::invalid_argument("unsupported scheme");
}

std::string CodecChain::name() const {
    const std::string cc_part = std::string("CC(") + fec::to_string(cc_rate) + ")";
    const std::string rs_part = "RS(31," + std::to_string(rs_k) + ")";
    switch (scheme) {
        case Scheme::Cc: return cc_part;
        case Scheme::Rs: return rs_part;
        case Scheme::RsCc: return rs_part + "+" + cc_part;
    }
    return "?";
}

CodecChain chain_from_string(const std::string& name) {
    const auto parse_cc = [](const std::string& s) {
        if (s.size() != 7 || s.compare(0, 3, "CC(") != 0 || s.back() != ')') {
            throw std::invalid_argument("bad cc chain name: " + s);
        }
        return cc_rate_from_string(s.substr(3, 3));
    };
    const auto parse_rs_k = [](const std::string& s) {
        if (s.compare(0, 6, "RS(31,") != 0 || s.back() != ')') {
            throw std::invalid_argument("bad rs chain name: " + s);
        }
        return std::stoi(s.substr(6, s.size() - 7));
    };

    CodecChain chain;
    const std::size_t plus = name.find('+');
    if (name.compare(0, 3, "CC(") == 0) {
        chain = CodecChain::cc(parse_cc(name));
    } else if (plus == std::string::npos) {
        chain = CodecChain::rs(parse_rs_k(name));
    } else {
        chain = CodecChain::rs_cc(parse_rs_k(name.substr(0, plus)),
                                  parse_cc(name.substr(plus + 1)));
    }
    chain.validate();
    return chain;
}

namespace {

Bits rs_encode_blocks(const Bits& bits, int k) {
    const std::size_t block = static_cast<std::size_t>(5 * k);
    if (bits.empty() || bits.size() % block != 0) {
        throw std::invalid_argument("rs chain input must be a non-empty multiple of " +
                                    std::to_string(block) + " bits");
    }
    Bits out;
    out.reserve(bits.size() / block * kRsCodedBits);
    for (std::size_t off = 0; off < bits.size(); off += block) {
        const Bits chunk(bits.begin() + static_cast<std::ptrdiff_t>(off),
                         bits.begin() + static_cast<std::ptrdiff_t>(off + block));
        const Bits coded = rs_encode(chunk, k);
        out.insert(out.end(), coded.begin(), coded.end());
    }
    return out;
}

ChainDecodeResult rs_decode_blocks(const Bits& coded, int k) {
    if (coded.empty() || coded.size() % static_cast<std::size_t>(kRsCodedBits) != 0) {
        throw std::invalid_argument("rs chain decode input must be a non-empty multiple of " +
                                    std::to_string(kRsCodedBits) + " bits");
    }
    ChainDecodeResult result{{}, true};
    for (std::size_t off = 0; off < coded.size();
         off += static_cast<std::size_t>(kRsCodedBits)) {
        const Bits chunk(coded.begin() + static_cast<std::ptrdiff_t>(off),
                         coded.begin() + static_cast<std::ptrdiff_t>(off + kRsCodedBits));
        RsDecodeResult block = rs_decode(chunk, k);
        result.ok = result.ok && block.ok;
        result.bits.insert(result.bits.end(), block.bits.begin(), block.bits.end());
    }
    return result;
}

}  // namespace

Bits chain_encode(const Bits& bits, const CodecChain& chain) {
    chain.validate();
    switch (chain.scheme) {
        case Scheme::Cc: return cc_encode(bits, chain.cc_rate);
        case Scheme::Rs: return rs_encode_blocks(bits, chain.rs_k);
        case Scheme::RsCc: return cc_encode(rs_encode_blocks(bits, chain.rs_k), chain.cc_rate);
    }
    throw std::invalid_argument("unsupported scheme");
}

ChainDecodeResult chain_decode(const Bits& coded, const CodecChain& chain) {
    chain.validate();
    switch (chain.scheme) {
        case Scheme::Cc: return {viterbi_decode(coded, chain.cc_rate), true};
        case Scheme::Rs: return rs_decode_blocks(coded, chain.rs_k);
        case Scheme::RsCc: return rs_decode_blocks(viterbi_decode(coded, chain.cc_rate), chain.rs_k);
    }
    throw std::invalid_argument("unsupported scheme");
}

}  // namespace splink::fec

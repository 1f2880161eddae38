#include "splink/framing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "splink/fft32.hpp"
#include "splink/kernels.hpp"
#include "splink/rng.hpp"

namespace splink {

const SubcarrierMap& SubcarrierMap::standard() {
    static const SubcarrierMap map = [] {
        SubcarrierMap m;
        m.guard_idx = {-16, -15, -14, 13, 14, 15};
        m.pilot_idx = {-11, -4, 4, 11};
        m.dc_idx = 0;
        std::size_t n = 0;
        for (int sc = -16; sc <= 15; ++sc) {
            bool taken = sc == m.dc_idx;
            for (const int g : m.guard_idx) taken = taken || sc == g;
            for (const int p : m.pilot_idx) taken = taken || sc == p;
            if (!taken) m.data_idx[n++] = sc;
        }
        if (n != kDataBins) throw std::logic_error("subcarrier map does not leave 21 data bins");
        return m;
    }();
    return map;
}

ChannelEstimate ChannelEstimate::identity() {
    ChannelEstimate est;
    est.gain.fill({1.0, 0.0});
    return est;
}

const std::array<std::complex<double>, SubcarrierMap::kFftSize>& preamble_bins() {
    static const auto bins = [] {
        const auto& map = SubcarrierMap::standard();
        std::array<std::complex<double>, SubcarrierMap::kFftSize> b{};
        auto rng = make_rng(kPreambleSeed);
        std::array<int, 25> active{};
        std::size_t n = 0;
        for (int sc = -16; sc <= 15; ++sc) {
            bool is_active = false;
            for (const int d : map.data_idx) is_active = is_active || sc == d;
            for (const int p : map.pilot_idx) is_active = is_active || sc == p;
            if (is_active) active[n++] = sc;
        }
        const Bits draw = random_bits(rng, active.size());
        for (std::size_t i = 0; i < active.size(); ++i) {
            b[static_cast<std::size_t>(SubcarrierMap::bin(active[i]))] = {
                1.0 - 2.0 * draw[i], 0.0};
        }
        return b;
    }();
    return bins;
}

namespace {

// IFFT the 32 bins and append a 2-sample cyclic prefix plus the symbol.
void emit_symbol(std::array<std::complex<double>, 32> bins,
                 std::vector<std::complex<double>>& out) {
    ifft32(bins.data());
    constexpr int cp = ComplexFrame::kSamplesPerSymbol - SubcarrierMap::kFftSize;
    for (int i = SubcarrierMap::kFftSize - cp; i < SubcarrierMap::kFftSize; ++i) {
        out.push_back(bins[static_cast<std::size_t>(i)]);
    }
    out.insert(out.end(), bins.begin(), bins.end());
}

}  // namespace

ComplexFrame modulate_frame(const Bits& interleaved, const PaddingPlan& plan) {
    if (interleaved.size() != static_cast<std::size_t>(plan.n_data_symbols) * 21) {
        throw std::invalid_argument("modulate expects " +
                                    std::to_string(plan.n_data_symbols * 21) + " bits, got " +
                                    std::to_string(interleaved.size()));
    }
    const auto& map = SubcarrierMap::standard();

    ComplexFrame frame;
    frame.n_symbols = plan.n_symbols();
    frame.samples.reserve(static_cast<std::size_t>(frame.n_symbols) *
                          ComplexFrame::kSamplesPerSymbol);

    emit_symbol(preamble_bins(), frame.samples);
    for (int s = 0; s < plan.n_data_symbols; ++s) {
        std::array<std::complex<double>, 32> bins{};
        for (int i = 0; i < SubcarrierMap::kDataBins; ++i) {
            const std::uint8_t b = interleaved[static_cast<std::size_t>(s) * 21 +
                                               static_cast<std::size_t>(i)];
            bins[static_cast<std::size_t>(SubcarrierMap::bin(map.data_idx[i]))] = {
                1.0 - 2.0 * b, 0.0};
        }
        for (const int p : map.pilot_idx) {
            bins[static_cast<std::size_t>(SubcarrierMap::bin(p))] = kPilotValue;
        }
        emit_symbol(bins, frame.samples);
    }

    const double power =
        kernels::ops().sum_power(frame.samples.data(), frame.samples.size()) /
        static_cast<double>(frame.samples.size());
    const double scale = 1.0 / std::sqrt(power);
    for (auto& s : frame.samples) s *= scale;
    return frame;
}

Bits demodulate_frame(const ComplexFrame& frame, const ChannelEstimate& est) {
    constexpr int sps = ComplexFrame::kSamplesPerSymbol;
    if (frame.n_symbols < 2 ||
        frame.samples.size() != static_cast<std::size_t>(frame.n_symbols) * sps) {
        throw std::invalid_argument("frame sample count does not match its symbol count");
    }
    const auto& map = SubcarrierMap::standard();
    const auto& k = kernels::ops();

    const int n_data_symbols = frame.n_symbols - 1;
    Bits bits(static_cast<std::size_t>(n_data_symbols) * 21);
    std::array<std::complex<double>, 32> bins;
    std::array<std::complex<double>, 32> eq;
    std::array<std::complex<double>, SubcarrierMap::kDataBins> data;
    for (int s = 0; s < n_data_symbols; ++s) {
        const std::size_t off = static_cast<std::size_t>(s + 1) * sps + (sps - 32);
        for (int i = 0; i < 32; ++i) bins[static_cast<std::size_t>(i)] = frame.samples[off + i];
        fft32(bins.data());
        k.equalize(bins.data(), est.gain.data(), bins.size(), eq.data());

        // Common phase error: mean rotation of the unit pilots.
        std::complex<double> acc{0.0, 0.0};
        for (const int p : map.pilot_idx) {
            acc += eq[static_cast<std::size_t>(SubcarrierMap::bin(p))] / kPilotValue;
        }
        const double theta = std::arg(acc);
        const std::complex<double> rot{std::cos(theta), -std::sin(theta)};

        for (int i = 0; i < SubcarrierMap::kDataBins; ++i) {
            data[static_cast<std::size_t>(i)] =
                eq[static_cast<std::size_t>(SubcarrierMap::bin(map.data_idx[i]))] * rot;
        }
        k.bpsk_slice(data.data(), data.size(), bits.data() + static_cast<std::size_t>(s) * 21);
    }
    return bits;
}

}  // namespace splink

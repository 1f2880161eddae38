#include "splink/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "splink/kernels.hpp"

namespace splink {

namespace {

constexpr double kMaxTrainFreqHz = 700e3;

double mean_power(const ComplexFrame& frame) {
    if (frame.samples.empty()) throw std::invalid_argument("empty frame");
    return kernels::ops().sum_power(frame.samples.data(), frame.samples.size()) /
           static_cast<double>(frame.samples.size());
}

// Circular complex Gaussian with E|n|^2 = var.
void add_gaussian(ComplexFrame& frame, double var, Rng& rng) {
    if (var <= 0.0) return;
    std::normal_distribution<double> dist(0.0, std::sqrt(var / 2.0));
    for (auto& s : frame.samples) s += std::complex<double>{dist(rng), dist(rng)};
}

}  // namespace

const char* to_string(ImpulseModel model) {
    switch (model) {
        case ImpulseModel::Ieee1613Train: return "train";
        case ImpulseModel::BernoulliGauss: return "bernoulli_gauss";
        case ImpulseModel::MiddletonA: return "middleton_a";
    }
    return "?";
}

ImpulseModel impulse_model_from_string(const std::string& name) {
    if (name == "train" || name == "ieee1613_train") return ImpulseModel::Ieee1613Train;
    if (name == "bernoulli_gauss" || name == "bg") return ImpulseModel::BernoulliGauss;
    if (name == "middleton_a" || name == "ma") return ImpulseModel::MiddletonA;
    throw std::invalid_argument("unknown impulse model: " + name);
}

void ImpulseProfile::validate() const {
    if (!std::isfinite(gamma_db)) throw std::invalid_argument("gamma_db must be finite");
    if (model == ImpulseModel::Ieee1613Train) {
        if (!(impulse_freq_hz > 0.0 && impulse_freq_hz <= kMaxTrainFreqHz)) {
            throw std::invalid_argument("impulse_freq_hz must be in (0, 700e3]");
        }
        if (!(impulse_duration_s > 0.0)) {
            throw std::invalid_argument("impulse_duration_s must be positive");
        }
    }
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0, 1]");
    if (!(a > 0.0)) throw std::invalid_argument("impulse index a must be positive");
    if (!(sigma_i2 >= 0.0)) throw std::invalid_argument("sigma_i2 must be >= 0");
}

ImpulseProfile ImpulseProfile::ieee1613_swc() {
    ImpulseProfile profile;
    profile.model = ImpulseModel::Ieee1613Train;
    profile.impulse_freq_hz = 2.5e3;
    profile.impulse_duration_s = 50e-9;
    return profile;
}

void apply_awgn(ComplexFrame& frame, double snr_db, Rng& rng) {
    if (snr_db == kNoNoiseSnrDb) return;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite or +inf");
    add_gaussian(frame, mean_power(frame) / std::pow(10.0, snr_db / 10.0), rng);
}

void apply_impulse_train(ComplexFrame& frame, double gamma_db, double freq_hz,
                         double duration_s, Rng& rng, bool random_phase) {
    if (!(freq_hz > 0.0 && freq_hz <= kMaxTrainFreqHz)) {
        throw std::invalid_argument("impulse frequency must be in (0, 700e3] Hz");
    }
    if (!std::isfinite(gamma_db)) throw std::invalid_argument("gamma_db must be finite");

    // Amplitude against the normalized frame power P_frame = 1.
    const double amp = std::sqrt(std::pow(10.0, gamma_db / 10.0));
    const double period = ComplexFrame::kSampleRateHz / freq_hz;  // samples
    const auto width = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(duration_s * ComplexFrame::kSampleRateHz)));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    if (u == 0.0) u = 0.5;  // keeps the per-frame count within {floor(Tf), ceil(Tf)}
    double polarity = 1.0;
    const std::size_t n = frame.samples.size();
    for (int k = 0;; ++k, polarity = -polarity) {
        const double start = (u + k) * period;
        if (start >= static_cast<double>(n)) break;
        const auto idx = static_cast<std::size_t>(start);
        std::complex<double> hit{polarity * amp, 0.0};
        if (random_phase) {
            const double phi = unit(rng) * 2.0 * std::numbers::pi;
            hit = polarity * amp * std::complex<double>{std::cos(phi), std::sin(phi)};
        }
        for (std::size_t j = idx; j < std::min(idx + width, n); ++j) frame.samples[j] += hit;
    }
}

void apply_bernoulli_gauss(ComplexFrame& frame, double p, double sigma_i2, double sigma_w2,
                           Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0, 1]");
    std::bernoulli_distribution gate(p);
    std::normal_distribution<double> w(0.0, std::sqrt(std::max(0.0, sigma_w2) / 2.0));
    std::normal_distribution<double> g(0.0, std::sqrt(std::max(0.0, sigma_i2) / 2.0));
    for (auto& s : frame.samples) {
        if (sigma_w2 > 0.0) s += std::complex<double>{w(rng), w(rng)};
        if (p > 0.0 && gate(rng) && sigma_i2 > 0.0) s += std::complex<double>{g(rng), g(rng)};
    }
}

void apply_middleton_a(ComplexFrame& frame, double a, double sigma_i2, double sigma_w2, Rng& rng,
                       int max_terms) {
    if (!(a > 0.0)) throw std::invalid_argument("impulse index a must be positive");
    if (max_terms < 0) throw std::invalid_argument("max_terms must be >= 0");
    std::poisson_distribution<int> sources(a);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    for (auto& s : frame.samples) {
        const int n = std::min(sources(rng), max_terms);
        const double var = std::max(0.0, sigma_w2) + n * std::max(0.0, sigma_i2) / a;
        if (var <= 0.0) continue;
        const double sd = std::sqrt(var / 2.0);
        s += std::complex<double>{sd * unit_normal(rng), sd * unit_normal(rng)};
    }
}

void apply_profile(ComplexFrame& frame, const ImpulseProfile& profile, Rng& rng) {
    profile.validate();
    switch (profile.model) {
        case ImpulseModel::Ieee1613Train:
            apply_awgn(frame, profile.awgn_snr_db, rng);
            apply_impulse_train(frame, profile.gamma_db, profile.impulse_freq_hz,
                                profile.impulse_duration_s, rng, profile.random_phase);
            return;
        case ImpulseModel::BernoulliGauss:
        case ImpulseModel::MiddletonA: {
            double sigma_w2 = 0.0;
            if (profile.awgn_snr_db != kNoNoiseSnrDb) {
                sigma_w2 = mean_power(frame) / std::pow(10.0, profile.awgn_snr_db / 10.0);
            }
            if (profile.model == ImpulseModel::BernoulliGauss) {
                apply_bernoulli_gauss(frame, profile.p, profile.sigma_i2, sigma_w2, rng);
            } else {
                apply_middleton_a(frame, profile.a, profile.sigma_i2, sigma_w2, rng);
            }
            return;
        }
    }
    throw std::invalid_argument("unsupported impulse model");
}

}  // namespace splink

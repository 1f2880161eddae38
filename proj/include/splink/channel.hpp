#pragma once

#include <limits>
#include <string>

#include "splink/framing.hpp"
#include "splink/rng.hpp"

namespace splink {

/// SNR sentinel that disables additive noise entirely.
inline constexpr double kNoNoiseSnrDb = std::numeric_limits<double>::infinity();

enum class ImpulseModel { Ieee1613Train, BernoulliGauss, MiddletonA };

const char* to_string(ImpulseModel model);
ImpulseModel impulse_model_from_string(const std::string& name);

// Interference description. gamma_db is the ratio of impulse peak power to
// frame average power, 10*log10(P_ip / P_frame); for the stochastic models
// the per-impulse power sigma_i2 is used directly.
struct ImpulseProfile {
    ImpulseModel model = ImpulseModel::Ieee1613Train;
    double gamma_db = 20.0;
    double impulse_freq_hz = 50e3;       // train repetition frequency
    double impulse_duration_s = 100e-9;  // rounded to >= 1 baseband sample
    bool random_phase = false;           // default: impulses hit the real axis
    double p = 0.01;                     // Bernoulli impulse probability
    double a = 0.1;                      // Middleton class-A impulse index
    double sigma_i2 = 1.0;               // impulse power (stochastic models)
    double awgn_snr_db = kNoNoiseSnrDb;  // background AWGN level

    void validate() const;

    /// Surge-withstand-style oscillatory test profile: 2.5 kHz train of 50 ns
    /// impulses. Outside the 50-700 kHz sweep band, so usable with `run` and
    /// `calibrate` but not as a sweep axis value.
    static ImpulseProfile ieee1613_swc();
};

/// Add circular complex Gaussian noise; the variance is set from the frame's
/// measured average power and snr_db. The infinity sentinel is a no-op.
void apply_awgn(ComplexFrame& frame, double snr_db, Rng& rng);

/// Add a periodic train of rectangular bipolar impulses: period 1/freq_hz,
/// each impulse round(duration_s * 5 MHz) samples (minimum 1), amplitude set
/// so the per-sample peak power is 10^(gamma_db/10) times the frame average
/// power, polarity strictly alternating, start offset uniform in one period.
/// Expects a normalized frame (average power 1), as produced by
/// modulate_frame.
void apply_impulse_train(ComplexFrame& frame, double gamma_db, double freq_hz,
                         double duration_s, Rng& rng, bool random_phase = false);

/// Per-sample noise w + b*g with w ~ CN(0, sigma_w2), P(b=1) = p and
/// g ~ CN(0, sigma_i2).
void apply_bernoulli_gauss(ComplexFrame& frame, double p, double sigma_i2, double sigma_w2,
                           Rng& rng);

/// Per-sample Gaussian noise whose variance is sigma_w2 + n*sigma_i2/a with
/// n ~ Poisson(a) truncated at max_terms.
void apply_middleton_a(ComplexFrame& frame, double a, double sigma_i2, double sigma_w2, Rng& rng,
                       int max_terms = 10);

/// Apply the profile's background AWGN and impulse model to the frame.
void apply_profile(ComplexFrame& frame, const ImpulseProfile& profile, Rng& rng);

}  // namespace splink

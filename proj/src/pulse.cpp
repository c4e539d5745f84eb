#include "tqsim/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace tqsim {

namespace {

void check_envelope(const Envelope& env, double t) {
    if (!(env.duration > 0.0))
        throw std::invalid_argument("Envelope: duration must be > 0");
    if (env.shape != EnvelopeShape::Square && !(env.sigma_ratio > 0.0))
        throw std::invalid_argument("Envelope: sigma_ratio must be > 0");
    if (t < 0.0 || t > env.duration)
        throw std::invalid_argument("envelope: t outside [0, duration]");
}

}  // namespace

Envelope Envelope::gaussian(double peak_amp, double duration, double sigma_ratio) {
    return Envelope{EnvelopeShape::Gaussian, peak_amp, duration, 0.0, sigma_ratio};
}

Envelope Envelope::square(double peak_amp, double duration) {
    return Envelope{EnvelopeShape::Square, peak_amp, duration, 0.0, kGaussianSigmaRatio};
}

Envelope Envelope::drag_gaussian(double peak_amp, double duration, double beta,
                                 double sigma_ratio) {
    return Envelope{EnvelopeShape::DragGaussian, peak_amp, duration, beta, sigma_ratio};
}

double envelope_value(const Envelope& env, double t) {
    check_envelope(env, t);
    if (env.shape == EnvelopeShape::Square)
        return (t > 0.0 && t < env.duration) ? env.peak_amp : 0.0;
    const double sigma = env.sigma_ratio * env.duration;
    const double u = t - env.duration / 2.0;
    const double g = std::exp(-u * u / (2.0 * sigma * sigma));
    const double g0 = std::exp(-env.duration * env.duration / (8.0 * sigma * sigma));
    return env.peak_amp * (g - g0) / (1.0 - g0);
}

double envelope_derivative(const Envelope& env, double t) {
    check_envelope(env, t);
    if (env.shape == EnvelopeShape::Square) return 0.0;
    const double sigma = env.sigma_ratio * env.duration;
    const double u = t - env.duration / 2.0;
    const double g = std::exp(-u * u / (2.0 * sigma * sigma));
    const double g0 = std::exp(-env.duration * env.duration / (8.0 * sigma * sigma));
    return env.peak_amp * (-u / (sigma * sigma)) * g / (1.0 - g0);
}

double drive_signal(std::span<const DriveComponent> components, double t) {
    double v = 0.0;
    for (const DriveComponent& c : components) {
        const double arg = kTwoPi * c.carrier_freq * t + c.phase;
        v += envelope_value(c.envelope, t) * std::cos(arg);
        if (c.envelope.shape == EnvelopeShape::DragGaussian)
            v -= c.envelope.beta * envelope_derivative(c.envelope, t) * std::sin(arg);
    }
    return v;
}

double drive_signal(const std::vector<DriveComponent>& components, double t) {
    return drive_signal(std::span<const DriveComponent>(components), t);
}

}  // namespace tqsim

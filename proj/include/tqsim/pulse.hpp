// pulse.hpp — Drive envelopes, analytic derivatives and carrier mixing.

#pragma once

#include <span>
#include <vector>

#include "tqsim/types.hpp"

namespace tqsim {

// Gaussian width as a fraction of the pulse duration. Calibrated against the
// reference hardware stack's 142.2 ns X90 pulse; configurable per envelope.
inline constexpr double kGaussianSigmaRatio = 0.27;

enum class EnvelopeShape { Gaussian, Square, DragGaussian };

// Envelope of one drive component. Gaussian-family envelopes are lifted so they
// evaluate to exactly zero at t = 0 and t = T:
//   A (G(t) - G(0)) / (1 - G(0)),  G(t) = exp(-(t - T/2)^2 / (2 sigma^2)).
struct Envelope {
    EnvelopeShape shape{EnvelopeShape::Gaussian};
    double peak_amp{0.0};   // GHz (Omega/2pi at the envelope maximum)
    double duration{0.0};   // ns
    double beta{0.0};       // ns, DRAG coefficient (DragGaussian only)
    double sigma_ratio{kGaussianSigmaRatio};

    static Envelope gaussian(double peak_amp, double duration,
                             double sigma_ratio = kGaussianSigmaRatio);
    static Envelope square(double peak_amp, double duration);
    static Envelope drag_gaussian(double peak_amp, double duration, double beta,
                                  double sigma_ratio = kGaussianSigmaRatio);
};

double envelope_value(const Envelope& env, double t);
double envelope_derivative(const Envelope& env, double t);

struct DriveComponent {
    Envelope envelope;
    double carrier_freq{0.0};  // GHz (omega_dr/2pi)
    double phase{0.0};         // radians
};

// V(t) = sum_i Omega_i(t) cos(2 pi f_i t + gamma_i); DragGaussian components add
// the quadrature term -beta dOmega/dt sin(2 pi f t + gamma).
double drive_signal(std::span<const DriveComponent> components, double t);
double drive_signal(const std::vector<DriveComponent>& components, double t);

}  // namespace tqsim

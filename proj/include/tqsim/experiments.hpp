// experiments.hpp — The comparative experiments: Rabi amplitude sweeps, pi/2
// amplitude optimization, cross-model amplitude/frequency calibration, detuned
// square-pulse infidelity maps and the sextic-correction attribution curves.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "tqsim/propagator.hpp"

namespace tqsim {

struct ExperimentOptions {
    SolverConfig solver{};
    int resonator_levels{3};
    int threads{1};
    double sigma_ratio{kGaussianSigmaRatio};
};

// Assembled model with its eigensystem and dressed qubit frequency, reused
// across the cells of a sweep.
struct PreparedModel {
    DriveSystem system;
    Eigensystem eig;
    double omega01{0.0};
    QuantumState ground;
    QuantumState excited;  // dressed (1, 0)
};

PreparedModel prepare_model(ModelVariant model, const EnergyParams& params,
                            const ExperimentOptions& opts, int transmon_levels = 0);

// Final-time dressed (1,0) population after a pulse, ground-state start.
double final_p1(const PreparedModel& pm, const std::vector<DriveComponent>& drive,
                double duration, const SolverConfig& solver);

struct SweepResult {
    std::vector<double> axis;          // amplitude GHz (or detuning, or ratio)
    std::vector<ModelVariant> models;
    Eigen::MatrixXd values;            // models x axis
};

// Final-time first-excited population per model per pulse amplitude; each model
// is driven by an identical Gaussian mixed with a carrier at its own dressed
// qubit frequency.
SweepResult rabi_amplitude_sweep(const std::vector<ModelVariant>& models,
                                 const EnergyParams& params, double duration,
                                 double amp_lo, double amp_hi, int n_points,
                                 const ExperimentOptions& opts = {});

// Amplitude on the first monotone rise of P1 where the final population crosses
// one half (an RX(pi/2) pulse). Throws NoCrossing if the first rise never
// reaches 0.5 below amp_max.
double optimize_pi2_amplitude(ModelVariant model, const EnergyParams& params,
                              double duration, double amp_max,
                              const ExperimentOptions& opts = {});

// Scalar s minimizing the mismatch between model_a's P1 time series under the
// probe drive and model_b's under the s-scaled drive, golden-section search to
// 1e-4. Both models are driven resonantly at their own dressed frequencies.
double calibrate_amplitude_scale(ModelVariant model_a, ModelVariant model_b,
                                 const EnergyParams& params, const Envelope& probe,
                                 const ExperimentOptions& opts = {});
double calibrate_amplitude_scale(const PreparedModel& a, const PreparedModel& b,
                                 const Envelope& probe, const SolverConfig& solver);

// Drive frequency maximizing the peak P1 contrast over one Rabi cycle of a
// square pulse (scan plus parabolic refinement).
double calibrate_stark_frequency(ModelVariant model, const EnergyParams& params,
                                 double amplitude, double f_lo, double f_hi,
                                 const ExperimentOptions& opts = {});
double calibrate_stark_frequency(const PreparedModel& pm, double amplitude, double f_lo,
                                 double f_hi, const SolverConfig& solver);

struct CalibrationResult {
    double amplitude_scale{1.0};
    double stark_freq_a{0.0};
    double stark_freq_b{0.0};
};

// GR energy parameters whose dressed qubit frequency and anharmonicity match a
// target pair, 2-D Newton refinement to below 1 kHz residual.
EnergyParams match_gr_parameters(double omega01, double anharmonicity,
                                 const EnergyParams& base, int resonator_levels = 3);

struct DetuningRow {
    double ratio{0.0};
    EnergyParams do3_params;
    EnergyParams gr_params;
    CalibrationResult calibration;
    std::vector<double> detunings;
    std::vector<double> infidelity;         // max-over-time state infidelity
    std::vector<Transition> transitions;    // DO3 dressed transitions, levels <= 3
    bool masked{false};                     // ambiguous labelling near resonance
};

// One row of the detuned-control comparison at a fixed E_J/E_C ratio: amplitude
// and Stark calibrations applied, then DO3 and GR evolved side by side from the
// dressed computational superposition under detuned square pulses.
DetuningRow detuning_row(double ratio, const EnergyParams& base,
                         const std::vector<double>& detunings, double duration,
                         double base_amp, const ExperimentOptions& opts = {});

struct DetuningMap {
    std::vector<double> ratios;
    std::vector<double> detunings;
    Eigen::MatrixXd infidelity;  // ratios x detunings, NaN on masked rows
    std::vector<DetuningRow> rows;
};

DetuningMap detuning_infidelity_map(const std::vector<double>& ratios,
                                    const std::vector<double>& detunings,
                                    const EnergyParams& base, double duration = 5.0,
                                    double base_amp = 0.19,
                                    const ExperimentOptions& opts = {});

struct Gr3Deltas {
    std::vector<double> axis;      // amplitude GHz
    std::vector<double> delta_do3; // P1(GR3) - P1(DO3)
    std::vector<double> delta_gr;  // P1(GR3) - P1(GR)
};

// Population differences isolating the first-order perturbative approximation
// from the sextic-term omission.
Gr3Deltas gr3_delta_curves(const EnergyParams& params, double duration, double amp_lo,
                           double amp_hi, int n_points, const ExperimentOptions& opts = {});

}  // namespace tqsim

// propagator.hpp — Lab-frame time-dependent Schroedinger integration with
// population and fidelity extraction, plus the Hilbert-space convergence probe.

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "tqsim/model.hpp"
#include "tqsim/pulse.hpp"
#include "tqsim/spectra.hpp"
#include "tqsim/types.hpp"

namespace tqsim {

struct StateBasis {
    ModelVariant variant{ModelVariant::Gr};
    int transmon_levels{0};
    int resonator_levels{0};
    bool dressed{false};  // whether the state was prepared as a dressed eigenstate
};

struct QuantumState {
    Eigen::VectorXcd amplitudes;  // bare product basis, index j * n_r + k
    StateBasis basis;
};

struct SolverConfig {
    double rel_tol{1e-6};
    double abs_tol{1e-8};
    int output_points{5000};
    // Labelled sub-grid for population tracking; -1 labels the full basis.
    int label_transmon{-1};
    int label_resonator{-1};

    void validate() const;
};

struct EvolutionRecord {
    Eigen::VectorXd times;                 // strictly increasing, 0 .. T
    std::vector<Eigen::VectorXcd> states;  // bare amplitudes at each output time
    Eigen::MatrixXd populations;           // labelled dressed populations x time
    DressedLabelMap labels;
    StateBasis basis;
    double norm_drift{0.0};
};

// Integrates i dpsi/dt = 2 pi (H0 + V(t) H_drive) psi with the real lab-frame
// signal V(t), adaptive error-controlled stepping, dense output at
// cfg.output_points uniformly spaced times.
EvolutionRecord evolve(const HermitianOperator& h0, const HermitianOperator& h_drive,
                       const std::vector<DriveComponent>& drive, const QuantumState& psi0,
                       double duration, const SolverConfig& cfg);

EvolutionRecord evolve(const DriveSystem& system, const std::vector<DriveComponent>& drive,
                       const QuantumState& psi0, double duration, const SolverConfig& cfg);

// Final state only; skips dense output and population tracking.
Eigen::VectorXcd evolve_final_state(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& h_drive,
                                    const std::vector<DriveComponent>& drive,
                                    const Eigen::VectorXcd& psi0, double duration,
                                    const SolverConfig& cfg);

double population(const EvolutionRecord& record, int j, int k, Eigen::Index t_index);

// |<a|b>|^2 after zero-padding the smaller transmon dimension; resonator
// dimensions must agree.
double state_fidelity(const QuantumState& a, const QuantumState& b);

// Dressed eigenstate with bare label (j, k), global phase fixed so the largest
// amplitude is real positive.
QuantumState dressed_state(const DriveSystem& system, int j, int k);
QuantumState ground_state(const DriveSystem& system);

// Smallest transmon dimension N in [3, 20] whose driven computational-subspace
// populations differ from N-1 by less than tol on time average (the R variant
// is two-dimensional by definition).
int convergence_dimension(const ModelSpec& spec, const EnergyParams& params,
                          const DriveComponent& drive, double tol,
                          const SolverConfig& cfg = {});

}  // namespace tqsim

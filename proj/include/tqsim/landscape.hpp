// landscape.hpp — Control-landscape grids, gradient optimization over the DRAG
// (amplitude, beta) plane with forward-sensitivity gradients, trajectory-ratio
// statistics and endpoint-distribution analysis.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "tqsim/experiments.hpp"

namespace tqsim {

struct LandscapeGrid {
    std::vector<double> amp_axis;   // GHz
    std::vector<double> time_axis;  // ns
    Eigen::MatrixXd p1;             // amp x time, in [0, 1]
};

// Final-time dressed (1,0) population per (amplitude, duration) cell under a
// Gaussian pulse at the model's dressed frequency, ground-state start.
LandscapeGrid landscape_grid(ModelVariant model, const EnergyParams& params,
                             const std::vector<double>& amp_axis,
                             const std::vector<double>& time_axis,
                             const ExperimentOptions& opts = {});

// Elementwise |a - b|; axes must match.
Eigen::MatrixXd landscape_diff(const LandscapeGrid& a, const LandscapeGrid& b);

struct ControlPoint {
    double amplitude{0.0};  // GHz
    double beta{0.0};       // ns
};

enum class Termination { Converged, StepLimit, AdoptedPath };

struct Trajectory {
    std::vector<ControlPoint> points;
    std::vector<double> objectives;  // non-decreasing over accepted steps
    Termination termination{Termination::StepLimit};
    bool started_converged{false};
};

struct GoatOptions {
    double duration{20.0};          // ns, DRAG pulse span
    int resonator_levels{1};
    int transmon_levels{0};         // 0 = per-variant default
    SolverConfig solver{};
    double sigma_ratio{kGaussianSigmaRatio};
    double omega_scale{1e-3};       // GHz per nondimensional amplitude unit (1 MHz)
    double beta_scale{1.0};         // ns per nondimensional beta unit
    double converge_threshold{1.0 - 5e-5};
    int max_steps{100};
    double initial_step{0.1};       // nondimensional step length
    double max_step{2.0};           // nondimensional step-length ceiling
    double adopt_eps_frac{0.01};    // AdoptedPath proximity, fraction of endpoint scale
    // Ensemble start sampling: sigma per coordinate is 10% of the optimum
    // coordinate with an absolute floor in nondimensional units. The optimum
    // beta sits near -1/omega01 (a fraction of a ns), so a pure-percentage
    // sigma would never explore the beta direction.
    double start_sigma_frac{0.10};
    double start_sigma_floor{0.5};
    int threads{1};
};

// Prepared model plus drive bookkeeping shared by all evaluations of one
// optimization run.
struct GoatContext {
    PreparedModel pm;
    GoatOptions opts;
    double carrier{0.0};
};

GoatContext make_goat_context(ModelVariant model, const EnergyParams& params,
                              const GoatOptions& opts = {});

struct GradientResult {
    double p1{0.0};
    double d_amp{0.0};   // dP1/dOmega, per GHz
    double d_beta{0.0};  // dP1/dbeta, per ns
};

// P1 and its gradient via forward-sensitivity integration (the state is
// augmented with dpsi/dOmega and dpsi/dbeta driven by dH/dtheta psi).
GradientResult objective_and_gradient(const GoatContext& ctx, const ControlPoint& point);

double goat_objective(const GoatContext& ctx, const ControlPoint& point);

// Gradient ascent with a backtracking Armijo line search in nondimensional
// coordinates. Terminates Converged above the population threshold, StepLimit
// past max_steps, or AdoptedPath within reach of a known converged endpoint.
Trajectory goat_optimize(const GoatContext& ctx, const ControlPoint& start,
                         const std::vector<ControlPoint>* known_endpoints = nullptr);

// Path length over endpoint distance in nondimensional coordinates; >= 1.
double r_metric(const Trajectory& traj, double omega_scale = 1e-3, double beta_scale = 1.0);

struct EnsembleStats {
    double mean_r{0.0};
    double std_r{0.0};
    int n_converged{0};
    int n_adopted{0};
    int n_steplimit{0};
    int n_started_converged{0};
    int n_in_stats{0};
};

struct EnsembleResult {
    std::vector<Trajectory> trajectories;
    EnsembleStats stats;
};

// Seeded Gaussian start-point ensemble around an established optimum (diagonal
// covariance, sigma = 10% of each coordinate). StepLimit runs whose endpoints
// match a converged endpoint are reclassified AdoptedPath; R-metric statistics
// exclude unmatched StepLimit runs and runs that started inside the
// termination region.
EnsembleResult trajectory_ensemble(const GoatContext& ctx, const ControlPoint& optimum,
                                   int n, std::uint64_t seed);

struct EndpointStats {
    ControlPoint centroid;
    double omega_extent{0.0};  // std of nondimensional amplitude coordinate
    double beta_extent{0.0};   // std of nondimensional beta coordinate
    Eigen::Vector2d axis_major{Eigen::Vector2d::Zero()};
    Eigen::Vector2d axis_minor{Eigen::Vector2d::Zero()};
    double extent_major{0.0};
    double extent_minor{0.0};
};

// Centroid and principal-component extents of the converged endpoint cloud
// (starts inside the termination region omitted). Requires >= 10 endpoints.
EndpointStats endpoint_stats(const std::vector<Trajectory>& trajs,
                             double omega_scale = 1e-3, double beta_scale = 1.0);

// Reference optimum: pulse-area seed refined by gradient ascent.
ControlPoint locate_optimum(const GoatContext& ctx);

}  // namespace tqsim

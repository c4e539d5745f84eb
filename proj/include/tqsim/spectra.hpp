// spectra.hpp — Eigensystems, dressed-state labelling, spectral feature
// extraction, E_J/E_C sweeps and measured-parameter inversion.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "tqsim/model.hpp"
#include "tqsim/types.hpp"

namespace tqsim {

struct Eigensystem {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // orthonormal columns
};

// Dense Hermitian eigensolve; rejects non-Hermitian input.
Eigensystem eigensystem(const HermitianOperator& h);

// Assignment of bare product labels (j, k) to coupled eigenstates by maximal
// squared overlap, greedy with conflict resolution by next-best available.
// Only the sub-grid j < label_t, k < label_r is labelled (the full grid by
// default); raises AmbiguousLabel when any assigned overlap fails to hold a
// clear majority. Two-state hybridization pins the best overlap at exactly
// one half on resonance, so the ambiguity test carries a small margin.
class DressedLabelMap {
public:
    DressedLabelMap(int n_t, int n_r, int label_t, int label_r);

    int eig_index(int j, int k) const;
    double overlap(int j, int k) const;
    int labelled_t() const { return label_t_; }
    int labelled_r() const { return label_r_; }

    void assign(int j, int k, int eig, double ovl);

private:
    int n_t_, n_r_, label_t_, label_r_;
    std::vector<int> index_;
    std::vector<double> overlap_;
};

inline constexpr double kMajorityMargin = 0.02;

DressedLabelMap dressed_labels(const Eigen::MatrixXcd& eigenvectors, int n_t, int n_r,
                               int label_t = -1, int label_r = -1,
                               double majority_margin = kMajorityMargin);

struct SpectralFeatures {
    double omega01{0.0};
    std::optional<double> anharmonicity;  // absent for the R variant
    std::optional<double> chi;            // absent when resonator_levels < 2
};

// Dressed features of the coupled system: omega01 = E(1,0) - E(0,0),
// alpha = E(2,0) - 2 E(1,0) + E(0,0), chi = [E(1,1) - E(1,0) - E(0,1) + E(0,0)] / 2.
SpectralFeatures spectral_features(const ModelSpec& spec, const EnergyParams& params);

// Features of an already assembled system (avoids rebuilding in sweeps).
SpectralFeatures spectral_features(const DriveSystem& system);

struct Transition {
    int from{0};
    int to{0};
    bool two_photon{false};
    double freq{0.0};  // GHz; half the level splitting for two-photon rows
};

// Single- and two-photon transition frequencies between dressed transmon levels
// (resonator index 0) for all j < k <= max_level.
std::vector<Transition> transition_frequencies(const ModelSpec& spec,
                                               const EnergyParams& params, int max_level);

enum class SweepMode { ConstantFreq, ConstantAnharm };

struct EjcSweepRow {
    ModelVariant model;
    double n_exp{0.0};
    double ec{0.0};
    double ej{0.0};
    double omega01{0.0};
    std::optional<double> anharmonicity;
    std::optional<double> chi;
};

// Reference experimental ratio E_J/E_C; n_exp multiplies it.
inline constexpr double kReferenceEjEcRatio = 29.19;

// Parameters at a sweep point. ConstantFreq holds the GR qubit frequency at the
// base value; ConstantAnharm holds E_C (the GR anharmonicity) fixed.
EnergyParams ejc_sweep_point(SweepMode mode, double n_exp, const EnergyParams& base);

std::vector<EjcSweepRow> ejc_sweep(SweepMode mode, const std::vector<double>& n_exp_values,
                                   const EnergyParams& base,
                                   const std::vector<ModelVariant>& models,
                                   int resonator_levels = 3);

// Recovers device energy parameters from measured (omega01, omega12, chi) and the
// resonator frequency. GR/R inverts in closed form; CPB/DO3 root-finds on
// (E_C, E_J, g) seeded by the closed-form estimate, to 1e-6 GHz residual.
EnergyParams invert_parameters(double omega01_meas, double omega12_meas, double chi_meas,
                               double omega_r, const ModelSpec& target);

}  // namespace tqsim

// model.hpp — Hamiltonian builders for the transmon-resonator model hierarchy:
// charge-basis CPB, quartic/sextic Duffing oscillators, generalised Rabi (with
// and without sextic eigenenergy corrections), the two-level Rabi model, the
// resonator coupling and the charge drive operator.

#pragma once

#include <Eigen/Dense>

#include "tqsim/types.hpp"

namespace tqsim {

// Charge operator n = diag(-n_c .. n_c).
Eigen::MatrixXcd charge_number_operator(int n_c);

// Annihilation operator truncated to n levels.
Eigen::MatrixXcd lowering_operator(int n);

// Tensor product with transmon-major ordering: index = j * n_res + k.
Eigen::MatrixXcd tensor(const Eigen::MatrixXcd& transmon, const Eigen::MatrixXcd& resonator);

// Isolated CPB Hamiltonian in the charge basis: diagonal 4 E_C (n - n_g)^2 with
// -E_J/2 on the first off-diagonals. Dimension 2 n_c + 1.
HermitianOperator build_transmon_charge(const EnergyParams& params, int n_c);

// Duffing oscillator of order K in {2, 3}: harmonic ladder minus the quartic
// term, plus the sextic term for K = 3. Ladder operators are truncated to n_t
// levels before matrix powers are taken.
HermitianOperator build_duffing(const EnergyParams& params, int order_k, int n_t);

// Diagonal transmon: harmonic ladder plus first-order eigenenergy corrections
// (quartic for Gr, quartic plus sextic for Gr3).
HermitianOperator build_gr(const EnergyParams& params, ModelVariant variant, int n_t);

// Two-level Rabi transmon: (sqrt(8 E_C E_J) - E_C) sigma_z / 2, ground state first.
HermitianOperator build_r(const EnergyParams& params);

// Coupled operator on the transmon (x) resonator space:
//   transmon_h (x) 1 + 1 (x) omega_r a'a + coupling,
// where the coupling form is variant specific:
//   Cpb:           g n (x) (a + a')      (n in the charge basis)
//   Do2/Do3/Gr3:   i g (b' - b) (x) (a + a')
//   Gr:            g (b' + b) (x) (a + a')
//   R:             g sigma_x (x) (a + a')
HermitianOperator couple_with_resonator(const HermitianOperator& transmon_h,
                                        const ModelSpec& spec,
                                        const EnergyParams& params);

// Charge drive operator tensored with the resonator identity. CPB uses the
// charge-basis n; oscillator-basis variants use (i / 2 sqrt(eta)) (b' - b)
// truncated to the spec's transmon dimension (two levels for R).
HermitianOperator build_drive_operator(const ModelSpec& spec, const EnergyParams& params);

// Transmon block in the simulation basis. For the CPB variant this is the
// truncated eigenbasis of the charge Hamiltonian with the charge operator
// projected onto it; all other variants keep their native basis.
struct TransmonBlock {
    Eigen::MatrixXcd h;         // transmon Hamiltonian, n_t x n_t
    Eigen::MatrixXcd coupling;  // operator C in the coupling term g C (x) (a + a')
    Eigen::MatrixXcd drive;     // charge drive operator in the same basis
};

TransmonBlock build_transmon_block(const ModelSpec& spec, const EnergyParams& params);

// Fully assembled static Hamiltonian and drive operator for propagation.
struct DriveSystem {
    ModelSpec spec;
    EnergyParams params;
    HermitianOperator h0;
    HermitianOperator h_drive;
};

DriveSystem assemble_system(ModelSpec spec, const EnergyParams& params);

// Default per-variant simulation dimensions (transmon levels established by the
// convergence study; resonator levels default 3).
ModelSpec default_sim_spec(ModelVariant variant, int resonator_levels = 3);

}  // namespace tqsim

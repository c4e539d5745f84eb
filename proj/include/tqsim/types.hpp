// types.hpp — Core domain types and error taxonomy for the transmon model hierarchy.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace tqsim {

inline constexpr const char* kVersion = "0.1.0";

// All stored frequencies are /2pi in GHz; times are in ns. The 2pi is applied
// exactly once, inside the propagator RHS.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class ModelVariant { Cpb, Do2, Do3, Gr, Gr3, R };

const char* variant_name(ModelVariant v);
ModelVariant variant_from_name(const std::string& name);

// Physical constants of a device, stored as frequency/2pi in GHz.
struct EnergyParams {
    double ec{0.0};       // charging energy E_C/2pi
    double ej{0.0};       // Josephson energy E_J/2pi
    double g{0.0};        // transmon-resonator coupling g/2pi
    double omega_r{0.0};  // resonator frequency omega_r/2pi
    double ng{0.0};       // offset charge (dimensionless)

    void validate() const;
};

// eta = sqrt(2 E_C / E_J), the small expansion parameter of the oscillator basis.
struct Eta {
    double value;
    explicit Eta(const EnergyParams& p);
};

// Which Hamiltonian variant plus basis dimensions.
struct ModelSpec {
    ModelVariant variant{ModelVariant::Cpb};
    int charge_cutoff{30};    // CPB only: charge states n in [-N_c, N_c]
    int transmon_levels{2};
    int resonator_levels{3};

    // Normalizes (R forces two transmon levels) and checks invariants.
    void validate();
};

// Dense Hermitian matrix with hermiticity enforced at construction
// (conjugate-transpose residual below 1e-12 relative).
class HermitianOperator {
public:
    explicit HermitianOperator(Eigen::MatrixXcd m);

    Eigen::Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

private:
    Eigen::MatrixXcd mat_;
};

struct AmbiguousLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeDiscriminant : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoCrossing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WindowTooNarrow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateTrajectory : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tqsim

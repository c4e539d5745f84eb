#include "tqsim/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tqsim/stepper.hpp"

namespace tqsim {

void SolverConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("SolverConfig: tolerances must be > 0");
    if (output_points < 2)
        throw std::invalid_argument("SolverConfig: output_points must be >= 2");
}

namespace {

struct SchroedingerRhs {
    const Eigen::MatrixXcd& m0;  // -i 2 pi H0
    const Eigen::MatrixXcd& md;  // -i 2 pi H_drive
    const std::vector<DriveComponent>& drive;

    void operator()(double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dydt) const {
        dydt.noalias() = m0 * y;
        if (!drive.empty())
            dydt.noalias() += drive_signal(drive, t) * (md * y);
    }
};

void check_dims(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& hd,
                const Eigen::VectorXcd& psi0) {
    if (h0.rows() != hd.rows())
        throw std::invalid_argument("evolve: h0 and h_drive dimensions differ");
    if (psi0.size() != h0.rows())
        throw std::invalid_argument("evolve: state dimension does not match operators");
}

}  // namespace

EvolutionRecord evolve(const HermitianOperator& h0, const HermitianOperator& h_drive,
                       const std::vector<DriveComponent>& drive, const QuantumState& psi0,
                       double duration, const SolverConfig& cfg) {
    cfg.validate();
    check_dims(h0.matrix(), h_drive.matrix(), psi0.amplitudes);
    if (!(duration > 0.0)) throw std::invalid_argument("evolve: duration must be > 0");
    if (psi0.basis.transmon_levels * psi0.basis.resonator_levels != h0.dim())
        throw std::invalid_argument("evolve: state basis does not match operator dimension");
    if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("evolve: psi0 must be normalized");
    for (const DriveComponent& c : drive)
        if (std::abs(c.envelope.duration - duration) > 1e-12)
            throw std::invalid_argument("evolve: envelope duration does not match evolution span");

    const int n_t = psi0.basis.transmon_levels;
    const int n_r = psi0.basis.resonator_levels;
    const int label_t = cfg.label_transmon < 0 ? n_t : std::min(cfg.label_transmon, n_t);
    const int label_r = cfg.label_resonator < 0 ? n_r : std::min(cfg.label_resonator, n_r);

    const Eigensystem eig = eigensystem(h0);
    DressedLabelMap labels = dressed_labels(eig.vectors, n_t, n_r, label_t, label_r);

    const std::complex<double> mi2pi(0.0, -kTwoPi);
    const Eigen::MatrixXcd m0 = mi2pi * h0.matrix();
    const Eigen::MatrixXcd md = mi2pi * h_drive.matrix();
    const SchroedingerRhs rhs{m0, md, drive};

    const int n_out = cfg.output_points;
    EvolutionRecord rec{Eigen::VectorXd(n_out),
                        {},
                        Eigen::MatrixXd(label_t * label_r, n_out),
                        labels,
                        psi0.basis,
                        0.0};
    rec.states.reserve(n_out);

    Eigen::MatrixXcd y = psi0.amplitudes;
    AdaptiveStepper stepper(cfg.rel_tol, cfg.abs_tol, y.rows(), 1);
    double t = 0.0;
    for (int i = 0; i < n_out; ++i) {
        const double t_i = duration * static_cast<double>(i) / (n_out - 1);
        stepper.advance(rhs, y, t, t_i);
        rec.times(i) = t_i;
        rec.states.emplace_back(y.col(0));
        for (int j = 0; j < label_t; ++j)
            for (int k = 0; k < label_r; ++k) {
                const int e = labels.eig_index(j, k);
                const std::complex<double> ovl = eig.vectors.col(e).dot(y.col(0));
                rec.populations(j * label_r + k, i) = std::norm(ovl);
            }
    }
    rec.norm_drift = std::abs(y.col(0).norm() - 1.0);
    return rec;
}

EvolutionRecord evolve(const DriveSystem& system, const std::vector<DriveComponent>& drive,
                       const QuantumState& psi0, double duration, const SolverConfig& cfg) {
    return evolve(system.h0, system.h_drive, drive, psi0, duration, cfg);
}

Eigen::VectorXcd evolve_final_state(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& h_drive,
                                    const std::vector<DriveComponent>& drive,
                                    const Eigen::VectorXcd& psi0, double duration,
                                    const SolverConfig& cfg) {
    check_dims(h0, h_drive, psi0);
    const std::complex<double> mi2pi(0.0, -kTwoPi);
    const Eigen::MatrixXcd m0 = mi2pi * h0;
    const Eigen::MatrixXcd md = mi2pi * h_drive;
    const SchroedingerRhs rhs{m0, md, drive};
    Eigen::MatrixXcd y = psi0;
    AdaptiveStepper stepper(cfg.rel_tol, cfg.abs_tol, y.rows(), 1);
    double t = 0.0;
    stepper.advance(rhs, y, t, duration);
    return y.col(0);
}

double population(const EvolutionRecord& record, int j, int k, Eigen::Index t_index) {
    if (t_index < 0 || t_index >= record.times.size())
        throw std::invalid_argument("population: time index out of range");
    if (j < 0 || j >= record.labels.labelled_t() || k < 0 || k >= record.labels.labelled_r())
        throw std::invalid_argument("population: unknown dressed label");
    return record.populations(j * record.labels.labelled_r() + k, t_index);
}

double state_fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.basis.resonator_levels != b.basis.resonator_levels)
        throw std::invalid_argument("state_fidelity: incompatible resonator dimensions");
    const int n_r = a.basis.resonator_levels;
    const int n_t = std::max(a.basis.transmon_levels, b.basis.transmon_levels);
    std::complex<double> ovl(0.0, 0.0);
    for (int j = 0; j < n_t; ++j)
        for (int k = 0; k < n_r; ++k) {
            const Eigen::Index ia = static_cast<Eigen::Index>(j) * n_r + k;
            if (j >= a.basis.transmon_levels || j >= b.basis.transmon_levels) continue;
            const Eigen::Index ib = static_cast<Eigen::Index>(j) * n_r + k;
            ovl += std::conj(a.amplitudes(ia)) * b.amplitudes(ib);
        }
    return std::norm(ovl);
}

QuantumState dressed_state(const DriveSystem& system, int j, int k) {
    const int n_t = system.spec.transmon_levels;
    const int n_r = system.spec.resonator_levels;
    const Eigensystem eig = eigensystem(system.h0);
    const DressedLabelMap labels =
        dressed_labels(eig.vectors, n_t, n_r, std::min(n_t, std::max(j + 1, 2)),
                       std::min(n_r, std::max(k + 1, 1)));
    Eigen::VectorXcd v = eig.vectors.col(labels.eig_index(j, k));
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const std::complex<double> ph = v(imax) / std::abs(v(imax));
    v /= ph;
    return QuantumState{std::move(v),
                        StateBasis{system.spec.variant, n_t, n_r, true}};
}

QuantumState ground_state(const DriveSystem& system) { return dressed_state(system, 0, 0); }

int convergence_dimension(const ModelSpec& spec, const EnergyParams& params,
                          const DriveComponent& drive, double tol, const SolverConfig& cfg) {
    if (!(tol > 0.0)) throw std::invalid_argument("convergence_dimension: tol must be > 0");
    if (spec.variant == ModelVariant::R) return 2;

    SolverConfig run_cfg = cfg;
    run_cfg.label_transmon = 2;
    run_cfg.label_resonator = 1;

    const auto run = [&](int n_t) -> Eigen::MatrixXd {
        ModelSpec s = spec;
        s.transmon_levels = n_t;
        s.validate();
        const DriveSystem system = assemble_system(s, params);
        const EvolutionRecord rec = evolve(system, {drive}, ground_state(system),
                                           drive.envelope.duration, run_cfg);
        return rec.populations;
    };

    Eigen::MatrixXd prev = run(2);
    for (int n = 3; n <= 20; ++n) {
        const Eigen::MatrixXd cur = run(n);
        const double d = (cur - prev).cwiseAbs().sum() / static_cast<double>(cur.cols());
        if (d < tol) return n;
        prev = cur;
    }
    throw NoConvergence("convergence_dimension: not converged by N = 20");
}

}  // namespace tqsim

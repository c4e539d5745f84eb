#include "tqsim/model.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>

namespace tqsim {

using std::complex;

const char* variant_name(ModelVariant v) {
    switch (v) {
        case ModelVariant::Cpb: return "cpb";
        case ModelVariant::Do2: return "do2";
        case ModelVariant::Do3: return "do3";
        case ModelVariant::Gr:  return "gr";
        case ModelVariant::Gr3: return "gr3";
        case ModelVariant::R:   return "r";
    }
    return "?";
}

ModelVariant variant_from_name(const std::string& name) {
    if (name == "cpb") return ModelVariant::Cpb;
    if (name == "do2") return ModelVariant::Do2;
    if (name == "do3") return ModelVariant::Do3;
    if (name == "gr")  return ModelVariant::Gr;
    if (name == "gr3") return ModelVariant::Gr3;
    if (name == "r")   return ModelVariant::R;
    throw std::invalid_argument("unknown model variant: " + name);
}

void EnergyParams::validate() const {
    if (!(ec > 0.0)) throw std::invalid_argument("EnergyParams: ec must be > 0");
    if (!(ej > 0.0)) throw std::invalid_argument("EnergyParams: ej must be > 0");
    if (!(omega_r > 0.0)) throw std::invalid_argument("EnergyParams: omega_r must be > 0");
    if (g < 0.0) throw std::invalid_argument("EnergyParams: g must be >= 0");
}

Eta::Eta(const EnergyParams& p) : value(std::sqrt(2.0 * p.ec / p.ej)) {
    if (!(value > 0.0)) throw std::invalid_argument("Eta: requires ec > 0 and ej > 0");
}

void ModelSpec::validate() {
    if (variant == ModelVariant::R) transmon_levels = 2;
    if (transmon_levels < 1) throw std::invalid_argument("ModelSpec: transmon_levels must be >= 1");
    if (resonator_levels < 1) throw std::invalid_argument("ModelSpec: resonator_levels must be >= 1");
    if (variant == ModelVariant::Cpb && charge_cutoff < 10)
        throw std::invalid_argument("ModelSpec: charge_cutoff must be >= 10 for CPB");
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
        throw std::invalid_argument("HermitianOperator: matrix must be square");
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    const double resid = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (resid > 1e-12 * scale)
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
    // Symmetrize so downstream eigensolves see an exactly Hermitian matrix.
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

Eigen::MatrixXcd charge_number_operator(int n_c) {
    const int dim = 2 * n_c + 1;
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) n(i, i) = static_cast<double>(i - n_c);
    return n;
}

Eigen::MatrixXcd lowering_operator(int n) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) b(i - 1, i) = std::sqrt(static_cast<double>(i));
    return b;
}

Eigen::MatrixXcd tensor(const Eigen::MatrixXcd& t, const Eigen::MatrixXcd& r) {
    const Eigen::Index nt = t.rows(), nr = r.rows();
    Eigen::MatrixXcd out(nt * nr, t.cols() * r.cols());
    for (Eigen::Index i = 0; i < nt; ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j)
            out.block(i * nr, j * r.cols(), nr, r.cols()) = t(i, j) * r;
    return out;
}

HermitianOperator build_transmon_charge(const EnergyParams& params, int n_c) {
    params.validate();
    if (n_c < 10) throw std::invalid_argument("build_transmon_charge: n_c must be >= 10");
    const int dim = 2 * n_c + 1;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double n = static_cast<double>(i - n_c) - params.ng;
        h(i, i) = 4.0 * params.ec * n * n;
        if (i + 1 < dim) {
            h(i, i + 1) = -params.ej / 2.0;
            h(i + 1, i) = -params.ej / 2.0;
        }
    }
    return HermitianOperator(std::move(h));
}

HermitianOperator build_duffing(const EnergyParams& params, int order_k, int n_t) {
    params.validate();
    if (order_k != 2 && order_k != 3)
        throw std::invalid_argument("build_duffing: order_k must be 2 or 3");
    if (n_t < 2) throw std::invalid_argument("build_duffing: n_t must be >= 2");
    const Eigen::MatrixXcd b = lowering_operator(n_t);
    const Eigen::MatrixXcd bd = b.adjoint();
    const Eigen::MatrixXcd x = b + bd;
    const Eigen::MatrixXcd x2 = x * x;
    const Eigen::MatrixXcd x4 = x2 * x2;
    Eigen::MatrixXcd h = std::sqrt(8.0 * params.ec * params.ej) *
                             (bd * b + 0.5 * Eigen::MatrixXcd::Identity(n_t, n_t)) -
                         params.ej * Eigen::MatrixXcd::Identity(n_t, n_t) -
                         (params.ec / 12.0) * x4;
    if (order_k == 3) {
        h += (params.ej / 720.0) * std::pow(2.0 * params.ec / params.ej, 1.5) * (x4 * x2);
    }
    return HermitianOperator(std::move(h));
}

HermitianOperator build_gr(const EnergyParams& params, ModelVariant variant, int n_t) {
    params.validate();
    if (variant != ModelVariant::Gr && variant != ModelVariant::Gr3)
        throw std::invalid_argument("build_gr: variant must be Gr or Gr3");
    if (n_t < 2) throw std::invalid_argument("build_gr: n_t must be >= 2");
    const double w = std::sqrt(8.0 * params.ec * params.ej);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_t, n_t);
    for (int m = 0; m < n_t; ++m) {
        double e = w * (m + 0.5) - params.ej -
                   (params.ec / 12.0) * (6.0 * m * m + 6.0 * m + 3.0);
        if (variant == ModelVariant::Gr3) {
            e += (params.ej / 720.0) * std::pow(2.0 * params.ec / params.ej, 1.5) *
                 (20.0 * m * m * m + 30.0 * m * m + 40.0 * m + 15.0);
        }
        h(m, m) = e;
    }
    return HermitianOperator(std::move(h));
}

HermitianOperator build_r(const EnergyParams& params) {
    params.validate();
    const double w01 = std::sqrt(8.0 * params.ec * params.ej) - params.ec;
    Eigen::MatrixXcd h(2, 2);
    h << -w01 / 2.0, 0.0, 0.0, w01 / 2.0;
    return HermitianOperator(std::move(h));
}

namespace {

// Variant-specific transmon operator C in the coupling term g C (x) (a + a').
Eigen::MatrixXcd coupling_block(ModelVariant variant, int dim) {
    const complex<double> i1(0.0, 1.0);
    switch (variant) {
        case ModelVariant::Cpb:
            throw std::logic_error("coupling_block: CPB handled separately");
        case ModelVariant::Do2:
        case ModelVariant::Do3:
        case ModelVariant::Gr3: {
            const Eigen::MatrixXcd b = lowering_operator(dim);
            return i1 * (b.adjoint() - b);
        }
        case ModelVariant::Gr: {
            const Eigen::MatrixXcd b = lowering_operator(dim);
            return Eigen::MatrixXcd(b.adjoint() + b);
        }
        case ModelVariant::R: {
            Eigen::MatrixXcd sx(2, 2);
            sx << 0.0, 1.0, 1.0, 0.0;
            return sx;
        }
    }
    throw std::logic_error("coupling_block: unreachable");
}

Eigen::MatrixXcd resonator_coupled(const Eigen::MatrixXcd& ht, const Eigen::MatrixXcd& ct,
                                   const EnergyParams& params, int n_r) {
    const Eigen::MatrixXcd a = lowering_operator(n_r);
    const Eigen::MatrixXcd ad = a.adjoint();
    const Eigen::MatrixXcd it = Eigen::MatrixXcd::Identity(ht.rows(), ht.cols());
    const Eigen::MatrixXcd ir = Eigen::MatrixXcd::Identity(n_r, n_r);
    return tensor(ht, ir) + params.omega_r * tensor(it, ad * a) +
           params.g * tensor(ct, a + ad);
}

}  // namespace

HermitianOperator couple_with_resonator(const HermitianOperator& transmon_h,
                                        const ModelSpec& spec,
                                        const EnergyParams& params) {
    params.validate();
    if (spec.resonator_levels < 1)
        throw std::invalid_argument("couple_with_resonator: resonator_levels must be >= 1");
    Eigen::MatrixXcd ct;
    if (spec.variant == ModelVariant::Cpb) {
        const Eigen::Index expect = 2 * spec.charge_cutoff + 1;
        if (transmon_h.dim() != expect)
            throw std::invalid_argument(
                "couple_with_resonator: CPB transmon operator must be in the charge basis "
                "(dim 2 n_c + 1)");
        ct = charge_number_operator(spec.charge_cutoff);
    } else {
        ct = coupling_block(spec.variant, static_cast<int>(transmon_h.dim()));
        if (spec.variant == ModelVariant::R && transmon_h.dim() != 2)
            throw std::invalid_argument("couple_with_resonator: R transmon must be 2x2");
    }
    return HermitianOperator(
        resonator_coupled(transmon_h.matrix(), ct, params, spec.resonator_levels));
}

namespace {

Eigen::MatrixXcd oscillator_drive(const EnergyParams& params, int n_t) {
    const Eta eta(params);
    const complex<double> i1(0.0, 1.0);
    const Eigen::MatrixXcd b = lowering_operator(n_t);
    return (i1 / (2.0 * std::sqrt(eta.value))) * (b.adjoint() - b);
}

// Mandatory truncation gate: the lowest ten CPB eigenvalues must agree with an
// enlarged cutoff (n_c + 10) to 1e-8 GHz, otherwise warn.
void warn_if_cutoff_unconverged(const EnergyParams& params, int n_c,
                                const Eigen::VectorXd& evals) {
    const HermitianOperator href = build_transmon_charge(params, n_c + 10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(href.matrix(),
                                                       Eigen::EigenvaluesOnly);
    const int n_check = std::min<int>(10, static_cast<int>(evals.size()));
    double drift = 0.0;
    for (int i = 0; i < n_check; ++i)
        drift = std::max(drift, std::abs(evals(i) - es.eigenvalues()(i)));
    if (drift > 1e-8)
        std::cerr << "tqsim: warning: CPB charge cutoff n_c=" << n_c
                  << " not converged (lowest-" << n_check << " eigenvalue drift "
                  << drift << " GHz)\n";
}

}  // namespace

HermitianOperator build_drive_operator(const ModelSpec& spec, const EnergyParams& params) {
    params.validate();
    const Eigen::MatrixXcd ir =
        Eigen::MatrixXcd::Identity(spec.resonator_levels, spec.resonator_levels);
    if (spec.variant == ModelVariant::Cpb)
        return HermitianOperator(tensor(charge_number_operator(spec.charge_cutoff), ir));
    const int n_t = spec.variant == ModelVariant::R ? 2 : spec.transmon_levels;
    return HermitianOperator(tensor(oscillator_drive(params, n_t), ir));
}

TransmonBlock build_transmon_block(const ModelSpec& spec, const EnergyParams& params) {
    params.validate();
    TransmonBlock blk;
    const int n_t = spec.variant == ModelVariant::R ? 2 : spec.transmon_levels;
    switch (spec.variant) {
        case ModelVariant::Cpb: {
            // Truncated eigenbasis of the charge Hamiltonian; the charge operator
            // is projected onto the kept levels.
            const HermitianOperator hc = build_transmon_charge(params, spec.charge_cutoff);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hc.matrix());
            if (es.info() != Eigen::Success)
                throw std::runtime_error("build_transmon_block: charge-basis eigensolve failed");
            warn_if_cutoff_unconverged(params, spec.charge_cutoff, es.eigenvalues());
            if (n_t > es.eigenvalues().size())
                throw std::invalid_argument("build_transmon_block: transmon_levels exceeds basis");
            const Eigen::MatrixXcd u = es.eigenvectors().leftCols(n_t);
            blk.h = Eigen::MatrixXcd::Zero(n_t, n_t);
            for (int i = 0; i < n_t; ++i) blk.h(i, i) = es.eigenvalues()(i);
            Eigen::MatrixXcd n_eig = u.adjoint() * charge_number_operator(spec.charge_cutoff) * u;
            blk.coupling = n_eig;
            blk.drive = std::move(n_eig);
            break;
        }
        case ModelVariant::Do2:
        case ModelVariant::Do3:
            blk.h = build_duffing(params, spec.variant == ModelVariant::Do2 ? 2 : 3, n_t).matrix();
            blk.coupling = coupling_block(spec.variant, n_t);
            blk.drive = oscillator_drive(params, n_t);
            break;
        case ModelVariant::Gr:
        case ModelVariant::Gr3:
            blk.h = build_gr(params, spec.variant, n_t).matrix();
            blk.coupling = coupling_block(spec.variant, n_t);
            blk.drive = oscillator_drive(params, n_t);
            break;
        case ModelVariant::R:
            blk.h = build_r(params).matrix();
            blk.coupling = coupling_block(spec.variant, 2);
            blk.drive = oscillator_drive(params, 2);
            break;
    }
    return blk;
}

DriveSystem assemble_system(ModelSpec spec, const EnergyParams& params) {
    spec.validate();
    const TransmonBlock blk = build_transmon_block(spec, params);
    const Eigen::MatrixXcd ir =
        Eigen::MatrixXcd::Identity(spec.resonator_levels, spec.resonator_levels);
    return DriveSystem{spec, params,
                       HermitianOperator(resonator_coupled(blk.h, blk.coupling, params,
                                                           spec.resonator_levels)),
                       HermitianOperator(tensor(blk.drive, ir))};
}

ModelSpec default_sim_spec(ModelVariant variant, int resonator_levels) {
    ModelSpec spec;
    spec.variant = variant;
    spec.resonator_levels = resonator_levels;
    switch (variant) {
        case ModelVariant::Cpb: spec.transmon_levels = 13; break;
        case ModelVariant::Do2: spec.transmon_levels = 12; break;
        case ModelVariant::Do3: spec.transmon_levels = 12; break;
        case ModelVariant::Gr:  spec.transmon_levels = 6;  break;
        case ModelVariant::Gr3: spec.transmon_levels = 6;  break;
        case ModelVariant::R:   spec.transmon_levels = 2;  break;
    }
    spec.validate();
    return spec;
}

}  // namespace tqsim

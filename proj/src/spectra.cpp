#include "tqsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

namespace tqsim {

Eigensystem eigensystem(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensystem: eigensolve failed");
    return Eigensystem{es.eigenvalues(), es.eigenvectors()};
}

DressedLabelMap::DressedLabelMap(int n_t, int n_r, int label_t, int label_r)
    : n_t_(n_t), n_r_(n_r), label_t_(label_t), label_r_(label_r),
      index_(static_cast<size_t>(label_t) * label_r, -1),
      overlap_(static_cast<size_t>(label_t) * label_r, 0.0) {}

int DressedLabelMap::eig_index(int j, int k) const {
    if (j < 0 || j >= label_t_ || k < 0 || k >= label_r_)
        throw std::invalid_argument("DressedLabelMap: label (" + std::to_string(j) + "," +
                                    std::to_string(k) + ") outside labelled subset");
    return index_[static_cast<size_t>(j) * label_r_ + k];
}

double DressedLabelMap::overlap(int j, int k) const {
    if (j < 0 || j >= label_t_ || k < 0 || k >= label_r_)
        throw std::invalid_argument("DressedLabelMap: label outside labelled subset");
    return overlap_[static_cast<size_t>(j) * label_r_ + k];
}

void DressedLabelMap::assign(int j, int k, int eig, double ovl) {
    index_[static_cast<size_t>(j) * label_r_ + k] = eig;
    overlap_[static_cast<size_t>(j) * label_r_ + k] = ovl;
}

DressedLabelMap dressed_labels(const Eigen::MatrixXcd& eigenvectors, int n_t, int n_r,
                               int label_t, int label_r, double majority_margin) {
    if (label_t < 0) label_t = n_t;
    if (label_r < 0) label_r = n_r;
    const int dim = n_t * n_r;
    if (eigenvectors.rows() != dim)
        throw std::invalid_argument("dressed_labels: eigenvector dimension must be n_t * n_r");
    if (label_t > n_t || label_r > n_r)
        throw std::invalid_argument("dressed_labels: labelled subset exceeds basis");

    // Bare product states are computational basis vectors (index j * n_r + k),
    // so overlaps are squared eigenvector components.
    struct Cand {
        double ovl;
        int bare;
        int eig;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<size_t>(label_t) * label_r * eigenvectors.cols());
    for (int j = 0; j < label_t; ++j)
        for (int k = 0; k < label_r; ++k) {
            const int bare = j * n_r + k;
            for (int e = 0; e < eigenvectors.cols(); ++e)
                cands.push_back({std::norm(eigenvectors(bare, e)), j * label_r + k, e});
        }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.ovl > b.ovl; });

    DressedLabelMap map(n_t, n_r, label_t, label_r);
    std::vector<char> bare_done(static_cast<size_t>(label_t) * label_r, 0);
    std::vector<char> eig_done(eigenvectors.cols(), 0);
    int remaining = label_t * label_r;
    for (const Cand& c : cands) {
        if (remaining == 0) break;
        if (bare_done[c.bare] || eig_done[c.eig]) continue;
        bare_done[c.bare] = 1;
        eig_done[c.eig] = 1;
        map.assign(c.bare / label_r, c.bare % label_r, c.eig, c.ovl);
        --remaining;
    }
    for (int j = 0; j < label_t; ++j)
        for (int k = 0; k < label_r; ++k)
            if (map.overlap(j, k) < 0.5 + majority_margin) {
                std::ostringstream msg;
                msg << "dressed_labels: bare state (" << j << "," << k
                    << ") has best available overlap " << map.overlap(j, k)
                    << " (near-resonant hybridization)";
                throw AmbiguousLabel(msg.str());
            }
    return map;
}

namespace {

int feature_label_t(const ModelSpec& spec) {
    return std::min(spec.variant == ModelVariant::R ? 2 : spec.transmon_levels, 3);
}

}  // namespace

SpectralFeatures spectral_features(const DriveSystem& system) {
    const ModelSpec& spec = system.spec;
    const Eigensystem eig = eigensystem(system.h0);
    const int label_t = feature_label_t(spec);
    const int label_r = std::min(spec.resonator_levels, 2);
    const DressedLabelMap map = dressed_labels(eig.vectors, spec.transmon_levels,
                                               spec.resonator_levels, label_t, label_r);
    const auto energy = [&](int j, int k) { return eig.values(map.eig_index(j, k)); };

    SpectralFeatures f;
    f.omega01 = energy(1, 0) - energy(0, 0);
    if (label_t >= 3)
        f.anharmonicity = energy(2, 0) - 2.0 * energy(1, 0) + energy(0, 0);
    if (label_r >= 2)
        f.chi = (energy(1, 1) - energy(1, 0) - energy(0, 1) + energy(0, 0)) / 2.0;
    return f;
}

SpectralFeatures spectral_features(const ModelSpec& spec, const EnergyParams& params) {
    ModelSpec s = spec;
    s.validate();
    return spectral_features(assemble_system(s, params));
}

std::vector<Transition> transition_frequencies(const ModelSpec& spec,
                                               const EnergyParams& params, int max_level) {
    ModelSpec s = spec;
    s.validate();
    if (max_level >= s.transmon_levels)
        throw std::invalid_argument("transition_frequencies: max_level must be < transmon_levels");
    const DriveSystem system = assemble_system(s, params);
    const Eigensystem eig = eigensystem(system.h0);
    const DressedLabelMap map = dressed_labels(eig.vectors, s.transmon_levels,
                                               s.resonator_levels, max_level + 1, 1);
    std::vector<Transition> out;
    for (int j = 0; j <= max_level; ++j)
        for (int k = j + 1; k <= max_level; ++k) {
            const double de = eig.values(map.eig_index(k, 0)) - eig.values(map.eig_index(j, 0));
            out.push_back({j, k, false, de});
            out.push_back({j, k, true, de / 2.0});
        }
    return out;
}

EnergyParams ejc_sweep_point(SweepMode mode, double n_exp, const EnergyParams& base) {
    if (!(n_exp > 0.0)) throw std::invalid_argument("ejc_sweep: n_exp must be > 0");
    const double r = kReferenceEjEcRatio * n_exp;
    if (r <= 0.125)
        throw std::invalid_argument("ejc_sweep: ratio must exceed 1/8");
    EnergyParams p = base;
    if (mode == SweepMode::ConstantFreq) {
        const double target = std::sqrt(8.0 * base.ec * base.ej) - base.ec;
        p.ec = target / (std::sqrt(8.0 * r) - 1.0);
        p.ej = r * p.ec;
    } else {
        p.ec = base.ec;
        p.ej = r * base.ec;
    }
    return p;
}

std::vector<EjcSweepRow> ejc_sweep(SweepMode mode, const std::vector<double>& n_exp_values,
                                   const EnergyParams& base,
                                   const std::vector<ModelVariant>& models,
                                   int resonator_levels) {
    std::vector<EjcSweepRow> rows;
    for (double n_exp : n_exp_values) {
        const EnergyParams p = ejc_sweep_point(mode, n_exp, base);
        for (ModelVariant m : models) {
            const SpectralFeatures f =
                spectral_features(default_sim_spec(m, resonator_levels), p);
            rows.push_back({m, n_exp, p.ec, p.ej, f.omega01, f.anharmonicity, f.chi});
        }
    }
    return rows;
}

namespace {

// Closed-form inversion under the GR relations.
EnergyParams invert_closed_form(double w01, double w12, double chi, double omega_r) {
    EnergyParams p;
    p.ec = w01 - w12;
    if (!(p.ec > 0.0))
        throw std::invalid_argument("invert_parameters: omega01 - omega12 must be > 0");
    p.ej = (w01 + p.ec) * (w01 + p.ec) / (8.0 * p.ec);
    p.omega_r = omega_r;
    const double delta = w01 - omega_r;
    const double arg = -chi * delta * (delta - p.ec) / p.ec;
    if (arg < 0.0)
        throw NegativeDiscriminant(
            "invert_parameters: chi sign inconsistent with the detuning");
    p.g = std::sqrt(arg);
    return p;
}

}  // namespace

EnergyParams invert_parameters(double omega01_meas, double omega12_meas, double chi_meas,
                               double omega_r, const ModelSpec& target) {
    ModelSpec spec = target;
    spec.validate();
    EnergyParams seed = invert_closed_form(omega01_meas, omega12_meas, chi_meas, omega_r);
    if (spec.variant == ModelVariant::Gr || spec.variant == ModelVariant::Gr3 ||
        spec.variant == ModelVariant::R)
        return seed;

    // Damped Newton iteration on (ec, ej, g) against the dressed features of the
    // target model, finite-difference Jacobian.
    Eigen::Vector3d x(seed.ec, seed.ej, seed.g);
    const Eigen::Vector3d target_f(omega01_meas, omega12_meas, chi_meas);
    const auto residual = [&](const Eigen::Vector3d& v) -> Eigen::Vector3d {
        EnergyParams p = seed;
        p.ec = v(0);
        p.ej = v(1);
        p.g = v(2);
        const SpectralFeatures f = spectral_features(spec, p);
        if (!f.anharmonicity || !f.chi)
            throw std::invalid_argument("invert_parameters: target model lacks features");
        return Eigen::Vector3d(f.omega01, f.omega01 + *f.anharmonicity, *f.chi) - target_f;
    };

    Eigen::Vector3d r = residual(x);
    for (int iter = 0; iter < 200; ++iter) {
        if (r.cwiseAbs().maxCoeff() < 1e-6) {
            EnergyParams p = seed;
            p.ec = x(0);
            p.ej = x(1);
            p.g = x(2);
            return p;
        }
        Eigen::Matrix3d jac;
        for (int c = 0; c < 3; ++c) {
            Eigen::Vector3d xp = x;
            const double h = std::max(1e-7, 1e-6 * std::abs(x(c)));
            xp(c) += h;
            jac.col(c) = (residual(xp) - r) / h;
        }
        Eigen::Vector3d step = jac.fullPivLu().solve(-r);
        double lambda = 1.0;
        for (; lambda > 1e-4; lambda *= 0.5) {
            Eigen::Vector3d xn = x + lambda * step;
            if (xn(0) <= 0.0 || xn(1) <= 0.0 || xn(2) < 0.0) continue;
            Eigen::Vector3d rn = residual(xn);
            if (rn.norm() < r.norm()) {
                x = xn;
                r = rn;
                break;
            }
        }
        if (lambda <= 1e-4)
            throw NoConvergence("invert_parameters: Newton line search stalled");
    }
    throw NoConvergence("invert_parameters: no convergence after 200 iterations");
}

}  // namespace tqsim

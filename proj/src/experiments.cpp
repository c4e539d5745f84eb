#include "tqsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tqsim/parallel.hpp"

namespace tqsim {

PreparedModel prepare_model(ModelVariant model, const EnergyParams& params,
                            const ExperimentOptions& opts, int transmon_levels) {
    ModelSpec spec = default_sim_spec(model, opts.resonator_levels);
    if (transmon_levels > 0) spec.transmon_levels = transmon_levels;
    spec.validate();
    DriveSystem system = assemble_system(spec, params);
    Eigensystem eig = eigensystem(system.h0);
    const DressedLabelMap labels = dressed_labels(
        eig.vectors, spec.transmon_levels, spec.resonator_levels, 2, 1);
    const int e0 = labels.eig_index(0, 0);
    const int e1 = labels.eig_index(1, 0);
    const double omega01 = eig.values(e1) - eig.values(e0);

    const auto fixed_phase = [&](int e) {
        Eigen::VectorXcd v = eig.vectors.col(e);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        v /= v(imax) / std::abs(v(imax));
        return v;
    };
    const StateBasis basis{model, spec.transmon_levels, spec.resonator_levels, true};
    QuantumState ground{fixed_phase(e0), basis};
    QuantumState excited{fixed_phase(e1), basis};
    return PreparedModel{std::move(system), std::move(eig), omega01, std::move(ground),
                         std::move(excited)};
}

double final_p1(const PreparedModel& pm, const std::vector<DriveComponent>& drive,
                double duration, const SolverConfig& solver) {
    const Eigen::VectorXcd psi =
        evolve_final_state(pm.system.h0.matrix(), pm.system.h_drive.matrix(), drive,
                           pm.ground.amplitudes, duration, solver);
    return std::norm(pm.excited.amplitudes.dot(psi));
}

SweepResult rabi_amplitude_sweep(const std::vector<ModelVariant>& models,
                                 const EnergyParams& params, double duration,
                                 double amp_lo, double amp_hi, int n_points,
                                 const ExperimentOptions& opts) {
    if (n_points < 2) throw std::invalid_argument("rabi_amplitude_sweep: n_points must be >= 2");
    SweepResult out;
    out.models = models;
    out.axis.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        out.axis[i] = amp_lo + (amp_hi - amp_lo) * i / (n_points - 1);
    out.values.resize(static_cast<Eigen::Index>(models.size()), n_points);

    std::vector<PreparedModel> prepared;
    prepared.reserve(models.size());
    for (ModelVariant m : models) prepared.push_back(prepare_model(m, params, opts));

    parallel_for(models.size() * static_cast<std::size_t>(n_points), opts.threads,
                 [&](std::size_t cell) {
                     const std::size_t mi = cell / n_points;
                     const int ai = static_cast<int>(cell % n_points);
                     const PreparedModel& pm = prepared[mi];
                     const double amp = out.axis[ai];
                     if (amp == 0.0) {
                         out.values(mi, ai) = 0.0;
                         return;
                     }
                     const DriveComponent drive{
                         Envelope::gaussian(amp, duration, opts.sigma_ratio), pm.omega01, 0.0};
                     out.values(mi, ai) = final_p1(pm, {drive}, duration, opts.solver);
                 });
    return out;
}

double optimize_pi2_amplitude(ModelVariant model, const EnergyParams& params,
                              double duration, double amp_max,
                              const ExperimentOptions& opts) {
    const PreparedModel pm = prepare_model(model, params, opts);
    const auto p1_at = [&](double amp) {
        const DriveComponent drive{Envelope::gaussian(amp, duration, opts.sigma_ratio),
                                   pm.omega01, 0.0};
        return final_p1(pm, {drive}, duration, opts.solver);
    };

    // Bracket the 0.5 crossing on the first rise, then bisect to well below the
    // 0.01 MHz grid contract.
    const double step = amp_max / 64.0;
    double lo = 0.0, p_prev = 0.0, hi = 0.0;
    for (double amp = step;; amp += step) {
        if (amp > amp_max + 0.5 * step)
            throw NoCrossing("optimize_pi2_amplitude: P1 never reaches 0.5 on the grid");
        const double p = p1_at(amp);
        if (p >= 0.5) {
            hi = amp;
            break;
        }
        if (p < p_prev - 0.05)
            throw NoCrossing("optimize_pi2_amplitude: first rise peaked below 0.5");
        lo = amp;
        p_prev = p;
    }
    for (int iter = 0; iter < 40 && hi - lo > 1e-9; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (p1_at(mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Golden-section minimization on [lo, hi] to absolute tolerance tol.
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.61803398874989484820;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

Eigen::VectorXd p1_series(const PreparedModel& pm, const std::vector<DriveComponent>& drive,
                          double duration, SolverConfig solver, int points) {
    solver.output_points = points;
    solver.label_transmon = 2;
    solver.label_resonator = 1;
    const EvolutionRecord rec = evolve(pm.system, drive, pm.ground, duration, solver);
    return rec.populations.row(1).transpose();
}

}  // namespace

double calibrate_amplitude_scale(const PreparedModel& a, const PreparedModel& b,
                                 const Envelope& probe, const SolverConfig& solver) {
    constexpr int kPoints = 181;
    const DriveComponent drive_a{probe, a.omega01, 0.0};
    const Eigen::VectorXd ref = p1_series(a, {drive_a}, probe.duration, solver, kPoints);
    const auto mismatch = [&](double s) {
        Envelope env = probe;
        env.peak_amp *= s;
        const DriveComponent drive_b{env, b.omega01, 0.0};
        return (p1_series(b, {drive_b}, probe.duration, solver, kPoints) - ref).squaredNorm();
    };
    return golden_min(mismatch, 0.7, 1.4, 1e-4);
}

double calibrate_amplitude_scale(ModelVariant model_a, ModelVariant model_b,
                                 const EnergyParams& params, const Envelope& probe,
                                 const ExperimentOptions& opts) {
    const PreparedModel a = prepare_model(model_a, params, opts);
    const PreparedModel b = prepare_model(model_b, params, opts);
    return calibrate_amplitude_scale(a, b, probe, opts.solver);
}

double calibrate_stark_frequency(const PreparedModel& pm, double amplitude, double f_lo,
                                 double f_hi, const SolverConfig& solver) {
    if (!(f_hi > f_lo))
        throw std::invalid_argument("calibrate_stark_frequency: empty frequency window");
    // One Rabi cycle of a square pulse at this drive strength.
    const double d01 = std::abs(
        pm.excited.amplitudes.dot(pm.system.h_drive.matrix() * pm.ground.amplitudes));
    const double period = 1.0 / (amplitude * d01);
    const auto peak_contrast = [&](double f) {
        const DriveComponent drive{Envelope::square(amplitude, period), f, 0.0};
        return p1_series(pm, {drive}, period, solver, 128).maxCoeff();
    };

    constexpr int kScan = 17;
    double lo = f_lo, hi = f_hi;
    double best_f = 0.0;
    for (int round = 0; round < 3; ++round) {
        int best = 0;
        double best_val = -1.0;
        std::vector<double> freqs(kScan), vals(kScan);
        for (int i = 0; i < kScan; ++i) {
            freqs[i] = lo + (hi - lo) * i / (kScan - 1);
            vals[i] = peak_contrast(freqs[i]);
            if (vals[i] > best_val) {
                best_val = vals[i];
                best = i;
            }
        }
        if (round == 0 && (best == 0 || best == kScan - 1))
            throw WindowTooNarrow("calibrate_stark_frequency: maximum sits on the window edge");
        best = std::clamp(best, 1, kScan - 2);
        // Parabolic refinement through the bracketing triple.
        const double d = hi - lo;
        const double y0 = vals[best - 1], y1 = vals[best], y2 = vals[best + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        double shift = 0.0;
        if (std::abs(denom) > 1e-300) shift = 0.5 * (y0 - y2) / denom;
        shift = std::clamp(shift, -1.0, 1.0);
        best_f = freqs[best] + shift * d / (kScan - 1);
        const double half = d / (kScan - 1);
        lo = best_f - half;
        hi = best_f + half;
    }
    return best_f;
}

double calibrate_stark_frequency(ModelVariant model, const EnergyParams& params,
                                 double amplitude, double f_lo, double f_hi,
                                 const ExperimentOptions& opts) {
    const PreparedModel pm = prepare_model(model, params, opts);
    return calibrate_stark_frequency(pm, amplitude, f_lo, f_hi, opts.solver);
}

EnergyParams match_gr_parameters(double omega01, double anharmonicity,
                                 const EnergyParams& base, int resonator_levels) {
    EnergyParams p = base;
    p.ec = -anharmonicity;
    if (!(p.ec > 0.0))
        throw std::invalid_argument("match_gr_parameters: anharmonicity must be negative");
    p.ej = (omega01 + p.ec) * (omega01 + p.ec) / (8.0 * p.ec);

    ModelSpec spec = default_sim_spec(ModelVariant::Gr, resonator_levels);
    const auto features = [&](double ec, double ej) {
        EnergyParams q = p;
        q.ec = ec;
        q.ej = ej;
        const SpectralFeatures f = spectral_features(spec, q);
        return std::pair<double, double>(f.omega01, *f.anharmonicity);
    };
    double ec = p.ec, ej = p.ej;
    for (int iter = 0; iter < 50; ++iter) {
        const auto [w, a] = features(ec, ej);
        const double r1 = w - omega01, r2 = a - anharmonicity;
        if (std::abs(r1) < 1e-6 && std::abs(r2) < 1e-6) {
            p.ec = ec;
            p.ej = ej;
            return p;
        }
        const double h1 = std::max(1e-8, 1e-6 * ec), h2 = std::max(1e-8, 1e-6 * ej);
        const auto [w_ec, a_ec] = features(ec + h1, ej);
        const auto [w_ej, a_ej] = features(ec, ej + h2);
        const double j11 = (w_ec - w) / h1, j12 = (w_ej - w) / h2;
        const double j21 = (a_ec - a) / h1, j22 = (a_ej - a) / h2;
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300)
            throw NoConvergence("match_gr_parameters: singular Jacobian");
        ec -= (j22 * r1 - j12 * r2) / det;
        ej -= (-j21 * r1 + j11 * r2) / det;
        if (ec <= 0.0 || ej <= 0.0)
            throw NoConvergence("match_gr_parameters: iterate left the physical domain");
    }
    throw NoConvergence("match_gr_parameters: Newton did not reach 1 kHz residual");
}

DetuningRow detuning_row(double ratio, const EnergyParams& base,
                         const std::vector<double>& detunings, double duration,
                         double base_amp, const ExperimentOptions& opts) {
    DetuningRow row;
    row.ratio = ratio;
    row.detunings = detunings;
    row.infidelity.assign(detunings.size(), std::numeric_limits<double>::quiet_NaN());
    row.do3_params = base;
    row.do3_params.ej = ratio * base.ec;

    try {
        const PreparedModel do3 = prepare_model(ModelVariant::Do3, row.do3_params, opts);
        const SpectralFeatures f_do3 =
            spectral_features(default_sim_spec(ModelVariant::Do3, opts.resonator_levels),
                              row.do3_params);
        row.gr_params = match_gr_parameters(f_do3.omega01, *f_do3.anharmonicity,
                                            row.do3_params, opts.resonator_levels);
        const PreparedModel gr = prepare_model(ModelVariant::Gr, row.gr_params, opts);

        // Amplitude scaling over a few Rabi cycles, then per-model Stark-shifted
        // frequencies at the working amplitude.
        const Eta eta(row.do3_params);
        const double rabi_period = 1.0 / (base_amp / (2.0 * std::sqrt(eta.value)));
        const Envelope probe = Envelope::square(base_amp, 3.0 * rabi_period);
        row.calibration.amplitude_scale =
            calibrate_amplitude_scale(do3, gr, probe, opts.solver);
        const double half_window = 0.12;
        row.calibration.stark_freq_a = calibrate_stark_frequency(
            do3, base_amp, do3.omega01 - half_window, do3.omega01 + half_window, opts.solver);
        row.calibration.stark_freq_b = calibrate_stark_frequency(
            gr, row.calibration.amplitude_scale * base_amp, gr.omega01 - half_window,
            gr.omega01 + half_window, opts.solver);

        row.transitions = transition_frequencies(
            default_sim_spec(ModelVariant::Do3, opts.resonator_levels), row.do3_params, 3);

        // Dressed computational superpositions.
        const auto superpose = [](const PreparedModel& pm) {
            QuantumState s = pm.ground;
            s.amplitudes = (pm.ground.amplitudes + pm.excited.amplitudes) / std::sqrt(2.0);
            return s;
        };
        const QuantumState psi_a = superpose(do3);
        const QuantumState psi_b = superpose(gr);

        SolverConfig solver = opts.solver;
        solver.output_points = 50;
        solver.label_transmon = 2;
        solver.label_resonator = 1;

        parallel_for(detunings.size(), opts.threads, [&](std::size_t i) {
            const double delta = detunings[i];
            const DriveComponent da{Envelope::square(base_amp, duration),
                                    row.calibration.stark_freq_a + delta, 0.0};
            const DriveComponent db{
                Envelope::square(row.calibration.amplitude_scale * base_amp, duration),
                row.calibration.stark_freq_b + delta, 0.0};
            const EvolutionRecord ra = evolve(do3.system, {da}, psi_a, duration, solver);
            const EvolutionRecord rb = evolve(gr.system, {db}, psi_b, duration, solver);
            double worst = 0.0;
            for (Eigen::Index t = 0; t < ra.times.size(); ++t) {
                const QuantumState sa{ra.states[t], ra.basis};
                const QuantumState sb{rb.states[t], rb.basis};
                worst = std::max(worst, 1.0 - state_fidelity(sa, sb));
            }
            row.infidelity[i] = worst;
        });
    } catch (const AmbiguousLabel&) {
        row.masked = true;
    }
    return row;
}

DetuningMap detuning_infidelity_map(const std::vector<double>& ratios,
                                    const std::vector<double>& detunings,
                                    const EnergyParams& base, double duration,
                                    double base_amp, const ExperimentOptions& opts) {
    DetuningMap map;
    map.ratios = ratios;
    map.detunings = detunings;
    map.infidelity.resize(static_cast<Eigen::Index>(ratios.size()),
                          static_cast<Eigen::Index>(detunings.size()));
    map.rows.reserve(ratios.size());
    for (double r : ratios)
        map.rows.push_back(detuning_row(r, base, detunings, duration, base_amp, opts));
    for (std::size_t i = 0; i < ratios.size(); ++i)
        for (std::size_t j = 0; j < detunings.size(); ++j)
            map.infidelity(i, j) = map.rows[i].infidelity[j];
    return map;
}

Gr3Deltas gr3_delta_curves(const EnergyParams& params, double duration, double amp_lo,
                           double amp_hi, int n_points, const ExperimentOptions& opts) {
    const std::vector<ModelVariant> models{ModelVariant::Gr3, ModelVariant::Do3,
                                           ModelVariant::Gr};
    const SweepResult sweep =
        rabi_amplitude_sweep(models, params, duration, amp_lo, amp_hi, n_points, opts);
    Gr3Deltas out;
    out.axis = sweep.axis;
    out.delta_do3.resize(n_points);
    out.delta_gr.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        out.delta_do3[i] = sweep.values(0, i) - sweep.values(1, i);
        out.delta_gr[i] = sweep.values(0, i) - sweep.values(2, i);
    }
    return out;
}

}  // namespace tqsim

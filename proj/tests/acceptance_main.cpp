// acceptance_main.cpp — End-to-end acceptance suite. Each numbered criterion
// prints one PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tqsim/bench.hpp"
#include "tqsim/landscape.hpp"
#include "oracles.hpp"

using namespace tqsim;

namespace {

const EnergyParams kRef{0.348, 10.158, 0.02, 6.99, 0.0};
constexpr std::uint64_t kSeed = 20507;

class Reporter {
public:
    void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
        std::printf("[%s] %2d. %-22s %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures_;
    }
    int failures() const { return failures_; }

private:
    int failures_{0};
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

double sec_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. Spectral deviation and monotone convergence of the model hierarchy.

void criterion_spectral(Reporter& rep) {
    const std::vector<double> grid{1, 2, 4, 8, 16, 32, 64};
    const std::vector<ModelVariant> pair{ModelVariant::Cpb, ModelVariant::Gr};
    const auto freq_rows = ejc_sweep(SweepMode::ConstantFreq, grid, kRef, pair, 3);
    const auto anh_rows = ejc_sweep(SweepMode::ConstantAnharm, grid, kRef, pair, 3);

    std::vector<double> wgap, agap;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        wgap.push_back(std::abs(freq_rows[2 * i].omega01 - freq_rows[2 * i + 1].omega01));
        agap.push_back(std::abs(*anh_rows[2 * i].anharmonicity -
                                *anh_rows[2 * i + 1].anharmonicity));
    }
    bool mono = true;
    for (std::size_t i = 1; i < grid.size(); ++i)
        mono = mono && wgap[i] < wgap[i - 1] && agap[i] < agap[i - 1];
    const bool ok = wgap[0] > 0.015 && agap[0] > 0.050 && mono;
    rep.report(1, "spectral-deviation", ok,
               fmt("|dw01|=%.1f MHz (>15), |dalpha|=%.1f MHz (>50), shrink %s",
                   wgap[0] * 1e3, agap[0] * 1e3, mono ? "monotone" : "NOT monotone"));
}

// ---------------------------------------------------------------------------
// 2. Closed forms of the diagonal model.

void criterion_gr_closed_forms(Reporter& rep) {
    EnergyParams p = kRef;
    p.g = 0.0;
    const SpectralFeatures f = spectral_features(default_sim_spec(ModelVariant::Gr, 3), p);
    const double w_expect = std::sqrt(8.0 * p.ec * p.ej) - p.ec;
    const bool ok = std::abs(f.omega01 - w_expect) < 1e-9 &&
                    std::abs(*f.anharmonicity + p.ec) < 1e-9 &&
                    std::abs(f.omega01 - 4.9699) < 1e-4;
    rep.report(2, "gr-closed-forms", ok,
               fmt("w01=%.6f GHz (target 4.9699), alpha=%.6f GHz (target -0.348)", f.omega01,
                   *f.anharmonicity));
}

// ---------------------------------------------------------------------------
// 3. Rabi-sweep divergence between model families.

void criterion_rabi(Reporter& rep) {
    const SweepResult sweep = rabi_amplitude_sweep(
        {ModelVariant::Cpb, ModelVariant::Do3, ModelVariant::Gr}, kRef, 142.2, 0.0, 0.075, 41);
    double cpb_do3 = 0.0, do3_gr = 0.0;
    for (int i = 0; i < 41; ++i) {
        cpb_do3 = std::max(cpb_do3, std::abs(sweep.values(0, i) - sweep.values(1, i)));
        do3_gr = std::max(do3_gr, std::abs(sweep.values(1, i) - sweep.values(2, i)));
    }
    const bool ok = cpb_do3 < 0.02 && do3_gr > 0.2;
    rep.report(3, "rabi-divergence", ok,
               fmt("max|P1 cpb-do3|=%.4f (<0.02), max|P1 do3-gr|=%.3f (>0.2)", cpb_do3,
                   do3_gr));
}

// ---------------------------------------------------------------------------
// 4. Optimized pi/2 amplitudes.

void criterion_pi2(Reporter& rep) {
    const double cpb = optimize_pi2_amplitude(ModelVariant::Cpb, kRef, 142.2, 0.008);
    const double do3 = optimize_pi2_amplitude(ModelVariant::Do3, kRef, 142.2, 0.008);
    const double gr = optimize_pi2_amplitude(ModelVariant::Gr, kRef, 142.2, 0.008);
    const double r = optimize_pi2_amplitude(ModelVariant::R, kRef, 142.2, 0.008);
    const auto in_band = [](double amp, double target) {
        return std::abs(amp - target) <= 0.05e-3;
    };
    const bool ok = in_band(cpb, 3.38e-3) && in_band(do3, 3.38e-3) && in_band(gr, 3.25e-3) &&
                    in_band(r, 3.25e-3);
    rep.report(4, "pi2-amplitudes", ok,
               fmt("cpb=%.3f do3=%.3f (3.38+/-0.05), gr=%.3f r=%.3f (3.25+/-0.05) MHz",
                   cpb * 1e3, do3 * 1e3, gr * 1e3, r * 1e3));
}

// ---------------------------------------------------------------------------
// 5. Attribution of the sextic-term omission.

void criterion_gr3(Reporter& rep) {
    const Gr3Deltas deltas = gr3_delta_curves(kRef, 142.2, 0.0, 0.075, 41);
    double max_do3 = 0.0, max_gr = 0.0;
    for (std::size_t i = 0; i < deltas.axis.size(); ++i) {
        max_do3 = std::max(max_do3, std::abs(deltas.delta_do3[i]));
        max_gr = std::max(max_gr, std::abs(deltas.delta_gr[i]));
    }
    const bool ok = max_do3 >= 5.0 * max_gr;
    rep.report(5, "gr3-attribution", ok,
               fmt("max|d(gr3,do3)|=%.3f >= 5 x max|d(gr3,gr)|=%.3f", max_do3, max_gr));
}

// ---------------------------------------------------------------------------
// 6. Detuned-control cross-section at E_J/E_C = 100.

void criterion_detuning(Reporter& rep) {
    const int n_det = 81;
    const std::vector<double> dets = linspace(-0.70, 0.10, n_det);
    const double step = dets[1] - dets[0];
    const DetuningRow row = detuning_row(100.0, kRef, dets, 5.0, 0.19);
    if (row.masked) {
        rep.report(6, "detuned-cross-section", false, "row unexpectedly masked");
        return;
    }
    const SpectralFeatures f =
        spectral_features(default_sim_spec(ModelVariant::Do3, 3), row.do3_params);
    // Transition detunings as seen on the calibrated (Stark-shifted) drive axis.
    const double stark_offset = row.calibration.stark_freq_a - f.omega01;
    double pred13 = 0.0, pred02 = 0.0;
    for (const Transition& t : row.transitions) {
        if (t.from == 1 && t.to == 3 && t.two_photon) pred13 = t.freq - f.omega01 - stark_offset;
        if (t.from == 0 && t.to == 2 && t.two_photon) pred02 = t.freq - f.omega01 - stark_offset;
    }
    const auto value_at = [&](double d) {
        int best = 0;
        for (int i = 1; i < n_det; ++i)
            if (std::abs(dets[i] - d) < std::abs(dets[best] - d)) best = i;
        return row.infidelity[best];
    };
    const auto nearest_peak = [&](double d) {
        double best = 1e9;
        for (int i = 1; i + 1 < n_det; ++i)
            if (row.infidelity[i] > row.infidelity[i - 1] &&
                row.infidelity[i] > row.infidelity[i + 1] &&
                std::abs(dets[i] - d) < std::abs(best - d))
                best = dets[i];
        return best;
    };
    const double zero = value_at(0.0);
    const double two_photon_13 = value_at(pred13);
    const double peak13 = nearest_peak(pred13);
    const double peak02 = nearest_peak(pred02);
    const bool aligned =
        std::abs(peak13 - pred13) <= 1.5 * step && std::abs(peak02 - pred02) <= 1.5 * step;
    const bool ok = zero < 0.01 && two_photon_13 > 0.5 && aligned;
    rep.report(6, "detuned-cross-section", ok,
               fmt("infid(0)=%.4f (<0.01), infid(1->3/2ph)=%.3f (>0.5), peak offsets "
                   "%.0f/%.0f MHz (res %.0f)",
                   zero, two_photon_13, std::abs(peak13 - pred13) * 1e3,
                   std::abs(peak02 - pred02) * 1e3, step * 1e3));
}

// ---------------------------------------------------------------------------
// 7. Gaussian control-landscape deviation.

void criterion_landscape(Reporter& rep) {
    ExperimentOptions opts;
    opts.resonator_levels = 1;  // resonator dressing is O((g/Delta)^2), far below
                                // the thresholds probed here
    const std::vector<double> amps = linspace(0.0, 0.075, 31);
    const std::vector<double> times = linspace(10.0, 150.0, 15);
    const LandscapeGrid do3 = landscape_grid(ModelVariant::Do3, kRef, amps, times, opts);
    const LandscapeGrid gr = landscape_grid(ModelVariant::Gr, kRef, amps, times, opts);
    const double max_diff = landscape_diff(do3, gr).maxCoeff();

    const LandscapeGrid do3_pt =
        landscape_grid(ModelVariant::Do3, kRef, {3.38e-3}, {142.2}, opts);
    const LandscapeGrid gr_pt = landscape_grid(ModelVariant::Gr, kRef, {3.38e-3}, {142.2}, opts);
    const double pt_diff = std::abs(do3_pt.p1(0, 0) - gr_pt.p1(0, 0));
    const bool ok = max_diff > 0.7 && pt_diff < 0.1;
    rep.report(7, "landscape-deviation", ok,
               fmt("max|dP1|=%.3f (>0.7), |dP1| at (3.38 MHz, 142.2 ns)=%.4f (<0.1)", max_diff,
                   pt_diff));
}

// ---------------------------------------------------------------------------
// 8. Hilbert-space convergence dimensions.

void criterion_dims(Reporter& rep) {
    const auto probe_dim = [&](ModelVariant m) {
        const ModelSpec spec = default_sim_spec(m, 3);
        const SpectralFeatures f = spectral_features(spec, kRef);
        const DriveComponent probe{Envelope::gaussian(0.075, 142.2), f.omega01, 0.0};
        return convergence_dimension(spec, kRef, probe, 1e-5);
    };
    const int cpb = probe_dim(ModelVariant::Cpb);
    const int do3 = probe_dim(ModelVariant::Do3);
    const int gr = probe_dim(ModelVariant::Gr);
    const int r = probe_dim(ModelVariant::R);
    const bool ok = std::abs(cpb - 13) <= 2 && std::abs(do3 - 12) <= 2 &&
                    std::abs(gr - 6) <= 1 && r == 2 && cpb >= do3 && do3 > gr;
    rep.report(8, "convergence-dims", ok,
               fmt("cpb=%d (13+/-2), do3=%d (12+/-2), gr=%d (6+/-1), r=%d (=2), ordering %s",
                   cpb, do3, gr, r, (cpb >= do3 && do3 > gr) ? "ok" : "VIOLATED"));
}

// ---------------------------------------------------------------------------
// 9/10. Trajectory-ratio ensembles and endpoint geometry (smoke size).

struct GoatModelRun {
    ModelVariant model;
    EnsembleStats stats;
    EndpointStats endpoints;
};

std::vector<GoatModelRun> run_goat_ensembles(int n_traj) {
    std::vector<GoatModelRun> runs;
    for (ModelVariant m :
         {ModelVariant::Cpb, ModelVariant::Do3, ModelVariant::Gr, ModelVariant::R}) {
        GoatOptions opts;
        // Eight transmon levels hold the objective to within a few 1e-6 of the
        // full basis at this pulse strength (spot-checked below).
        const bool reduced = m == ModelVariant::Cpb || m == ModelVariant::Do3;
        opts.transmon_levels = reduced ? 8 : 0;
        const GoatContext ctx = make_goat_context(m, kRef, opts);
        const ControlPoint opt = locate_optimum(ctx);
        if (reduced) {
            GoatOptions full = opts;
            full.transmon_levels = 12;
            const GoatContext ctx_full = make_goat_context(m, kRef, full);
            const double gap =
                std::abs(goat_objective(ctx, opt) - goat_objective(ctx_full, opt));
            if (gap > 5e-6)
                std::fprintf(stderr, "warning: %s reduced-basis objective gap %.2e\n",
                             variant_name(m), gap);
        }
        const EnsembleResult ens = trajectory_ensemble(ctx, opt, n_traj, kSeed);
        runs.push_back({m, ens.stats, endpoint_stats(ens.trajectories)});
    }
    return runs;
}

void criterion_rmetric(Reporter& rep, const std::vector<GoatModelRun>& runs) {
    const double targets[4] = {1.185, 1.190, 1.188, 1.167};
    const double band = 0.08;  // smoke-size bands
    bool ok = true;
    double lo_mean = 1e9, hi_mean = -1e9;
    std::ostringstream detail;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const EnsembleStats& s = runs[i].stats;
        ok = ok && std::abs(s.mean_r - targets[i]) <= band && std::abs(s.std_r - 0.17) <= band;
        lo_mean = std::min(lo_mean, s.mean_r);
        hi_mean = std::max(hi_mean, s.mean_r);
        detail << variant_name(runs[i].model) << "=" << fmt("%.3f/%.3f ", s.mean_r, s.std_r);
    }
    ok = ok && (hi_mean - lo_mean) < band;
    rep.report(9, "r-metric-ensemble", ok,
               detail.str() + fmt("(mean/std targets 1.185/1.190/1.188/1.167, 0.17, +/-%.2f; "
                                  "spread %.3f)",
                                  band, hi_mean - lo_mean));
}

void criterion_endpoints(Reporter& rep, const std::vector<GoatModelRun>& runs) {
    bool shape_ok = true;
    for (const GoatModelRun& r : runs)
        shape_ok = shape_ok && r.endpoints.beta_extent > r.endpoints.omega_extent;
    const auto nd = [&](const ControlPoint& p) {
        return Eigen::Vector2d(p.amplitude / 1e-3, p.beta / 1.0);
    };
    const Eigen::Vector2d cpb = nd(runs[0].endpoints.centroid);
    const Eigen::Vector2d do3 = nd(runs[1].endpoints.centroid);
    const Eigen::Vector2d gr = nd(runs[2].endpoints.centroid);
    const double d_cpb_do3 = (cpb - do3).norm();
    const double d_cpb_gr = (cpb - gr).norm();
    const double d_do3_gr = (do3 - gr).norm();
    const bool centroid_ok = d_cpb_do3 < d_cpb_gr && d_cpb_do3 < d_do3_gr;
    rep.report(10, "endpoint-geometry", shape_ok && centroid_ok,
               fmt("beta>omega extent %s; centroid dist cpb-do3=%.2f vs cpb-gr=%.2f, "
                   "do3-gr=%.2f",
                   shape_ok ? "all models" : "VIOLATED", d_cpb_do3, d_cpb_gr, d_do3_gr));
}

// ---------------------------------------------------------------------------
// 11. Always-on property bundle.

void criterion_properties(Reporter& rep) {
    std::ostringstream notes;
    bool ok = true;

    // Hermiticity residuals across parameter draws.
    {
        std::mt19937_64 rng(kSeed);
        std::uniform_real_distribution<double> ec_d(0.15, 0.55), ratio_d(15.0, 90.0);
        double worst = 0.0;
        for (int i = 0; i < 8; ++i) {
            EnergyParams p{ec_d(rng), 0.0, 0.02, 6.99, 0.0};
            p.ej = p.ec * ratio_d(rng);
            for (ModelVariant m : {ModelVariant::Cpb, ModelVariant::Do2, ModelVariant::Do3,
                                   ModelVariant::Gr, ModelVariant::Gr3, ModelVariant::R}) {
                const DriveSystem sys = assemble_system(default_sim_spec(m, 3), p);
                const Eigen::MatrixXcd& h = sys.h0.matrix();
                const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
                worst = std::max(worst, (h - h.adjoint()).cwiseAbs().maxCoeff() / scale);
            }
        }
        ok = ok && worst < 1e-12;
        notes << fmt("herm=%.1e ", worst);
    }

    // Norm conservation through a strong pulse.
    {
        const DriveSystem sys = assemble_system(default_sim_spec(ModelVariant::Cpb, 3), kRef);
        const SpectralFeatures f = spectral_features(sys);
        SolverConfig cfg;
        cfg.output_points = 2;
        cfg.label_transmon = 2;
        cfg.label_resonator = 1;
        const DriveComponent drive{Envelope::gaussian(0.075, 142.2), f.omega01, 0.0};
        const EvolutionRecord rec = evolve(sys, {drive}, ground_state(sys), 142.2, cfg);
        ok = ok && rec.norm_drift < 1e-6;
        notes << fmt("norm=%.1e ", rec.norm_drift);
    }

    // Zero-coupling tensor-sum spectra.
    {
        EnergyParams p = kRef;
        p.g = 0.0;
        double worst = 0.0;
        for (ModelVariant m : {ModelVariant::Do3, ModelVariant::Gr}) {
            ModelSpec spec = default_sim_spec(m, 3);
            const TransmonBlock blk = build_transmon_block(spec, p);
            const Eigensystem coupled = eigensystem(assemble_system(spec, p).h0);
            const Eigensystem tr = eigensystem(HermitianOperator(blk.h));
            std::vector<double> sums;
            for (int j = 0; j < spec.transmon_levels; ++j)
                for (int k = 0; k < spec.resonator_levels; ++k)
                    sums.push_back(tr.values(j) + p.omega_r * k);
            std::sort(sums.begin(), sums.end());
            for (Eigen::Index i = 0; i < coupled.values.size(); ++i)
                worst = std::max(worst, std::abs(coupled.values(i) - sums[i]));
        }
        ok = ok && worst < 1e-9;
        notes << fmt("tensor=%.1e ", worst);
    }

    // Unitary equivalence of the two coupling phase conventions.
    {
        const HermitianOperator ht = build_gr(kRef, ModelVariant::Gr, 6);
        ModelSpec spec;
        spec.variant = ModelVariant::Gr;
        spec.transmon_levels = 6;
        const Eigensystem a = eigensystem(couple_with_resonator(ht, spec, kRef));
        const Eigen::MatrixXcd b = lowering_operator(6);
        const Eigen::MatrixXcd ar = lowering_operator(3);
        const std::complex<double> i1(0.0, 1.0);
        const Eigen::MatrixXcd alt =
            tensor(ht.matrix(), Eigen::MatrixXcd::Identity(3, 3)) +
            kRef.omega_r * tensor(Eigen::MatrixXcd::Identity(6, 6), ar.adjoint() * ar) +
            kRef.g * tensor(i1 * (b.adjoint() - b), ar + ar.adjoint());
        const Eigensystem c = eigensystem(HermitianOperator(alt));
        const double worst = (a.values - c.values).cwiseAbs().maxCoeff();
        ok = ok && worst < 1e-10;
        notes << fmt("phase=%.1e ", worst);
    }

    // Forward-sensitivity gradients against finite differences, twenty random
    // control points per model.
    {
        double worst = 0.0;
        for (ModelVariant m :
             {ModelVariant::Cpb, ModelVariant::Do3, ModelVariant::Gr, ModelVariant::R}) {
            GoatOptions opts;
            if (m == ModelVariant::Cpb || m == ModelVariant::Do3) opts.transmon_levels = 8;
            const GoatContext ctx = make_goat_context(m, kRef, opts);
            std::mt19937_64 rng(kSeed ^ (0xabcd | static_cast<std::uint64_t>(m) << 8));
            std::uniform_real_distribution<double> amp_d(0.005, 0.070), beta_d(0.0, 5.0);
            for (int i = 0; i < 20; ++i) {
                const ControlPoint pt{amp_d(rng), beta_d(rng)};
                const GradientResult g = objective_and_gradient(ctx, pt);
                const double fd_amp = oracles::central_diff(
                    [&](double a) { return goat_objective(ctx, {a, pt.beta}); }, pt.amplitude,
                    1e-5);
                const double fd_beta = oracles::central_diff(
                    [&](double b2) { return goat_objective(ctx, {pt.amplitude, b2}); },
                    pt.beta, 1e-2);
                worst = std::max(worst,
                                 std::abs(g.d_amp - fd_amp) / std::max(std::abs(fd_amp), 1e-3));
                worst = std::max(worst, std::abs(g.d_beta - fd_beta) /
                                            std::max(std::abs(fd_beta), 1e-3));
            }
        }
        ok = ok && worst < 1e-3;
        notes << fmt("grad=%.1e ", worst);
    }

    // Parameter-inversion round trips for all four variants.
    {
        double worst = 0.0;
        for (ModelVariant m :
             {ModelVariant::Cpb, ModelVariant::Do3, ModelVariant::Gr, ModelVariant::R}) {
            const ModelSpec spec = default_sim_spec(m, 3);
            double w01, w12, chi;
            if (m == ModelVariant::Gr || m == ModelVariant::R) {
                w01 = std::sqrt(8.0 * kRef.ec * kRef.ej) - kRef.ec;
                w12 = w01 - kRef.ec;
                chi = oracles::dispersive_chi(kRef.g, kRef.ec, w01, kRef.omega_r);
            } else {
                const SpectralFeatures f = spectral_features(spec, kRef);
                w01 = f.omega01;
                w12 = f.omega01 + *f.anharmonicity;
                chi = *f.chi;
            }
            const EnergyParams rec = invert_parameters(w01, w12, chi, kRef.omega_r, spec);
            worst = std::max({worst, std::abs(rec.ec - kRef.ec) / kRef.ec,
                              std::abs(rec.ej - kRef.ej) / kRef.ej,
                              std::abs(rec.g - kRef.g) / kRef.g});
        }
        ok = ok && worst < 1e-3;
        notes << fmt("invert=%.1e ", worst);
    }

    // Nearest-neighbour decay of the charge matrix elements.
    {
        ModelSpec spec = default_sim_spec(ModelVariant::Cpb, 1);
        const TransmonBlock blk = build_transmon_block(spec, kRef);
        const double pref = 1.0 / (2.0 * std::sqrt(Eta(kRef).value));
        bool decay = true;
        for (int j : {0, 1}) {
            const double n1 = std::abs(blk.drive(j + 1, j));
            decay = decay && std::abs(n1 - std::sqrt(j + 1.0) * pref) < 0.08 * n1 &&
                    std::abs(blk.drive(j + 2, j)) < 0.05 * n1;
        }
        ok = ok && decay;
        notes << (decay ? "nn-decay=ok " : "nn-decay=FAIL ");
    }

    // Resonator-dimension doubling gate on a representative driven population.
    {
        double worst = 0.0;
        for (ModelVariant m : {ModelVariant::Do3, ModelVariant::Gr}) {
            double p1[2];
            for (int pass = 0; pass < 2; ++pass) {
                ExperimentOptions opts;
                opts.resonator_levels = pass == 0 ? 3 : 6;
                const PreparedModel pm = prepare_model(m, kRef, opts);
                const DriveComponent drive{Envelope::gaussian(0.02, 142.2), pm.omega01, 0.0};
                p1[pass] = final_p1(pm, {drive}, 142.2, opts.solver);
            }
            worst = std::max(worst, std::abs(p1[0] - p1[1]));
        }
        ok = ok && worst < 1e-5;
        notes << fmt("nr-gate=%.1e", worst);
    }

    rep.report(11, "property-suite", ok, notes.str());
}

// ---------------------------------------------------------------------------
// 12. Runtime benchmark ordering.

void criterion_bench(Reporter& rep) {
    const std::vector<double> durations{10, 30, 50, 70, 90, 110, 130, 150};
    const BenchReport report = runtime_bench(
        {ModelVariant::Cpb, ModelVariant::Do3, ModelVariant::Gr, ModelVariant::R}, kRef,
        durations, 0.075, 3);
    double slope[4] = {0, 0, 0, 0}, speed[4] = {0, 0, 0, 0}, r2min = 1.0;
    for (const BenchModelResult& r : report.models) {
        const int idx = r.model == ModelVariant::Cpb   ? 0
                        : r.model == ModelVariant::Do3 ? 1
                        : r.model == ModelVariant::Gr  ? 2
                                                       : 3;
        slope[idx] = r.slope;
        speed[idx] = r.speedup_vs_cpb;
        r2min = std::min(r2min, r.r2);
    }
    const bool order = slope[3] < slope[2] && slope[2] < slope[1] && slope[1] <= slope[0];
    const bool floors = speed[2] >= 2.0 && speed[3] >= 6.0;
    const bool ok = order && floors && r2min > 0.95;
    rep.report(12, "benchmark-ordering", ok,
               fmt("speedups do3=%.2fx gr=%.2fx r=%.2fx (gr>=2, r>=6), order %s, min R2=%.3f",
                   speed[1], speed[2], speed[3], order ? "ok" : "VIOLATED", r2min));
}

}  // namespace

int main() {
    Reporter rep;
    const auto t0 = std::chrono::steady_clock::now();

    criterion_spectral(rep);
    criterion_gr_closed_forms(rep);
    criterion_rabi(rep);
    criterion_pi2(rep);
    criterion_gr3(rep);
    criterion_detuning(rep);
    criterion_landscape(rep);
    criterion_dims(rep);
    const std::vector<GoatModelRun> goat = run_goat_ensembles(100);
    criterion_rmetric(rep, goat);
    criterion_endpoints(rep, goat);
    criterion_properties(rep);
    criterion_bench(rep);

    std::printf("acceptance: %d criterion(s) failed, %.0f s total\n", rep.failures(),
                sec_since(t0));
    return rep.failures() == 0 ? 0 : 1;
}

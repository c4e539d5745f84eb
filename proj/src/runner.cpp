#include <nlohmann/json.hpp>

#include <cmath>
#include <iostream>

#include "tqsim/bench.hpp"
#include "tqsim/config.hpp"
#include "tqsim/io.hpp"
#include "tqsim/landscape.hpp"

namespace tqsim {

namespace {

using nlohmann::json;

json params_json(const EnergyParams& p) {
    return json{{"ec", p.ec}, {"ej", p.ej}, {"g", p.g}, {"omega_r", p.omega_r}, {"ng", p.ng}};
}

json base_sidecar(const RunConfig& cfg) {
    json doc;
    doc["experiment"] = cfg.experiment;
    doc["version"] = kVersion;
    doc["seed"] = cfg.seed;
    doc["threads"] = cfg.threads;
    doc["params"] = params_json(cfg.params);
    doc["solver"] = {{"rel_tol", cfg.solver.rel_tol},
                     {"abs_tol", cfg.solver.abs_tol},
                     {"output_points", cfg.solver.output_points}};
    doc["resonator_levels"] = cfg.resonator_levels;
    doc["sigma_ratio"] = cfg.sigma_ratio;
    json models = json::array();
    for (ModelVariant m : cfg.models) models.push_back(variant_name(m));
    doc["models"] = models;
    return doc;
}

ExperimentOptions make_opts(const RunConfig& cfg) {
    ExperimentOptions opts;
    opts.solver = cfg.solver;
    opts.resonator_levels = cfg.resonator_levels;
    opts.threads = cfg.threads;
    opts.sigma_ratio = cfg.sigma_ratio;
    return opts;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

CsvCell opt_cell(const std::optional<double>& v) {
    return v ? CsvCell{*v} : CsvCell{std::string("nan")};
}

void run_spectra_sweep(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    const SweepMode mode = cfg.spectra.mode == "constant-anharm" ? SweepMode::ConstantAnharm
                                                                 : SweepMode::ConstantFreq;
    if (cfg.spectra.mode != "constant-anharm" && cfg.spectra.mode != "constant-freq")
        throw ConfigError("config: field 'spectra-sweep.mode' must be constant-freq or "
                          "constant-anharm");
    const auto rows =
        ejc_sweep(mode, cfg.spectra.n_exp, cfg.params, cfg.models, cfg.resonator_levels);
    CsvWriter csv(dir + "/spectra_sweep.csv",
                  {"model", "n_exp", "ec", "ej", "omega01", "anharmonicity", "chi"});
    for (const EjcSweepRow& r : rows)
        csv.row({std::string(variant_name(r.model)), r.n_exp, r.ec, r.ej, r.omega01,
                 opt_cell(r.anharmonicity), opt_cell(r.chi)});
    sidecar["mode"] = cfg.spectra.mode;
    sidecar["n_exp"] = cfg.spectra.n_exp;
}

void run_rabi_sweep(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    const SweepResult sweep =
        rabi_amplitude_sweep(cfg.models, cfg.params, cfg.rabi.duration, cfg.rabi.amp_min,
                             cfg.rabi.amp_max, cfg.rabi.points, make_opts(cfg));
    CsvWriter csv(dir + "/rabi_sweep.csv", {"amplitude", "model", "p1"});
    for (std::size_t m = 0; m < sweep.models.size(); ++m)
        for (std::size_t i = 0; i < sweep.axis.size(); ++i)
            csv.row({sweep.axis[i], std::string(variant_name(sweep.models[m])),
                     sweep.values(m, i)});
    sidecar["duration"] = cfg.rabi.duration;
    sidecar["amp_range"] = {cfg.rabi.amp_min, cfg.rabi.amp_max};
    sidecar["points"] = cfg.rabi.points;
}

void run_pi2(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    CsvWriter csv(dir + "/pi2_amplitudes.csv", {"model", "duration", "amplitude"});
    json amps;
    for (ModelVariant m : cfg.models) {
        const double amp = optimize_pi2_amplitude(m, cfg.params, cfg.pi2.duration,
                                                  cfg.pi2.amp_max, make_opts(cfg));
        csv.row({std::string(variant_name(m)), cfg.pi2.duration, amp});
        amps[variant_name(m)] = amp;
    }
    sidecar["duration"] = cfg.pi2.duration;
    sidecar["amplitudes"] = amps;
}

void run_calibrate(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    const ModelVariant a = variant_from_name(cfg.calibrate.model_a);
    const ModelVariant b = variant_from_name(cfg.calibrate.model_b);
    const ExperimentOptions opts = make_opts(cfg);
    const PreparedModel pa = prepare_model(a, cfg.params, opts);
    const PreparedModel pb = prepare_model(b, cfg.params, opts);
    const Eta eta(cfg.params);
    const double period = 1.0 / (cfg.calibrate.amplitude / (2.0 * std::sqrt(eta.value)));
    const Envelope probe =
        Envelope::square(cfg.calibrate.amplitude, cfg.calibrate.probe_cycles * period);
    const double scale = calibrate_amplitude_scale(pa, pb, probe, opts.solver);
    const double fa = calibrate_stark_frequency(pa, cfg.calibrate.amplitude,
                                                pa.omega01 - cfg.calibrate.window,
                                                pa.omega01 + cfg.calibrate.window, opts.solver);
    const double fb = calibrate_stark_frequency(pb, scale * cfg.calibrate.amplitude,
                                                pb.omega01 - cfg.calibrate.window,
                                                pb.omega01 + cfg.calibrate.window, opts.solver);
    CsvWriter csv(dir + "/calibration.csv",
                  {"model_a", "model_b", "amplitude", "amplitude_scale", "stark_freq_a",
                   "stark_freq_b"});
    csv.row({std::string(variant_name(a)), std::string(variant_name(b)),
             cfg.calibrate.amplitude, scale, fa, fb});
    sidecar["amplitude_scale"] = scale;
    sidecar["stark_freq_a"] = fa;
    sidecar["stark_freq_b"] = fb;
}

void run_detuning_map(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    const auto ratios =
        linspace(cfg.detuning.ratio_min, cfg.detuning.ratio_max, cfg.detuning.ratio_points);
    const auto dets = linspace(cfg.detuning.det_min, cfg.detuning.det_max,
                               cfg.detuning.det_points);
    const DetuningMap map = detuning_infidelity_map(ratios, dets, cfg.params,
                                                    cfg.detuning.duration,
                                                    cfg.detuning.amplitude, make_opts(cfg));
    CsvWriter csv(dir + "/detuning_map.csv", {"ratio", "detuning", "infidelity", "masked"});
    for (std::size_t i = 0; i < map.ratios.size(); ++i)
        for (std::size_t j = 0; j < map.detunings.size(); ++j)
            csv.row({map.ratios[i], map.detunings[j], map.infidelity(i, j),
                     static_cast<long long>(map.rows[i].masked ? 1 : 0)});
    json rows = json::array();
    for (const DetuningRow& r : map.rows)
        rows.push_back({{"ratio", r.ratio},
                        {"masked", r.masked},
                        {"gr_params", params_json(r.gr_params)},
                        {"amplitude_scale", r.calibration.amplitude_scale},
                        {"stark_freq_do3", r.calibration.stark_freq_a},
                        {"stark_freq_gr", r.calibration.stark_freq_b}});
    sidecar["rows"] = rows;
    sidecar["duration"] = cfg.detuning.duration;
    sidecar["amplitude"] = cfg.detuning.amplitude;
}

void run_gr3(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    const Gr3Deltas deltas = gr3_delta_curves(cfg.params, cfg.gr3.duration, 0.0,
                                              cfg.gr3.amp_max, cfg.gr3.points, make_opts(cfg));
    CsvWriter csv(dir + "/gr3_compare.csv", {"amplitude", "delta_gr3_do3", "delta_gr3_gr"});
    for (std::size_t i = 0; i < deltas.axis.size(); ++i)
        csv.row({deltas.axis[i], deltas.delta_do3[i], deltas.delta_gr[i]});
    sidecar["duration"] = cfg.gr3.duration;
}

void run_landscape(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    ExperimentOptions opts = make_opts(cfg);
    opts.resonator_levels = cfg.landscape.resonator_levels;
    const auto amps = linspace(cfg.landscape.amp_min, cfg.landscape.amp_max,
                               cfg.landscape.amp_points);
    const auto times = linspace(cfg.landscape.t_min, cfg.landscape.t_max,
                                cfg.landscape.t_points);
    std::vector<LandscapeGrid> grids;
    for (ModelVariant m : cfg.models) {
        grids.push_back(landscape_grid(m, cfg.params, amps, times, opts));
        CsvWriter csv(dir + "/landscape_" + variant_name(m) + ".csv",
                      {"amplitude", "duration", "p1"});
        for (std::size_t a = 0; a < amps.size(); ++a)
            for (std::size_t t = 0; t < times.size(); ++t)
                csv.row({amps[a], times[t], grids.back().p1(a, t)});
    }
    const auto it_do3 = std::find(cfg.models.begin(), cfg.models.end(), ModelVariant::Do3);
    const auto it_gr = std::find(cfg.models.begin(), cfg.models.end(), ModelVariant::Gr);
    if (it_do3 != cfg.models.end() && it_gr != cfg.models.end()) {
        const Eigen::MatrixXd diff =
            landscape_diff(grids[it_do3 - cfg.models.begin()], grids[it_gr - cfg.models.begin()]);
        CsvWriter csv(dir + "/landscape_diff_do3_gr.csv", {"amplitude", "duration", "diff"});
        for (std::size_t a = 0; a < amps.size(); ++a)
            for (std::size_t t = 0; t < times.size(); ++t)
                csv.row({amps[a], times[t], diff(a, t)});
        sidecar["max_diff_do3_gr"] = diff.maxCoeff();
    }
    sidecar["amp_axis"] = {cfg.landscape.amp_min, cfg.landscape.amp_max};
    sidecar["time_axis"] = {cfg.landscape.t_min, cfg.landscape.t_max};
    sidecar["landscape_resonator_levels"] = cfg.landscape.resonator_levels;
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::StepLimit: return "step-limit";
        case Termination::AdoptedPath: return "adopted-path";
    }
    return "?";
}

void run_goat(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    json summary;
    for (ModelVariant m : cfg.models) {
        GoatOptions gopts;
        gopts.duration = cfg.goat.duration;
        gopts.solver = cfg.solver;
        gopts.sigma_ratio = cfg.sigma_ratio;
        gopts.threads = cfg.threads;
        const GoatContext ctx = make_goat_context(m, cfg.params, gopts);
        const ControlPoint opt = locate_optimum(ctx);
        const EnsembleResult ens =
            trajectory_ensemble(ctx, opt, cfg.goat.trajectories, cfg.seed);
        CsvWriter csv(dir + "/goat_" + variant_name(m) + "_trajectories.csv",
                      {"trajectory", "step", "amplitude", "beta", "p1", "termination"});
        for (std::size_t ti = 0; ti < ens.trajectories.size(); ++ti) {
            const Trajectory& t = ens.trajectories[ti];
            for (std::size_t s = 0; s < t.points.size(); ++s)
                csv.row({static_cast<long long>(ti), static_cast<long long>(s),
                         t.points[s].amplitude, t.points[s].beta, t.objectives[s],
                         std::string(termination_name(t.termination))});
        }
        const EndpointStats ep = endpoint_stats(ens.trajectories);
        summary[variant_name(m)] = {
            {"optimum", {{"amplitude", opt.amplitude}, {"beta", opt.beta}}},
            {"mean_r", ens.stats.mean_r},
            {"std_r", ens.stats.std_r},
            {"n_converged", ens.stats.n_converged},
            {"n_adopted", ens.stats.n_adopted},
            {"n_steplimit", ens.stats.n_steplimit},
            {"n_started_converged", ens.stats.n_started_converged},
            {"centroid", {{"amplitude", ep.centroid.amplitude}, {"beta", ep.centroid.beta}}},
            {"omega_extent", ep.omega_extent},
            {"beta_extent", ep.beta_extent}};
    }
    write_json(dir + "/goat_summary.json", summary);
    sidecar["duration"] = cfg.goat.duration;
    sidecar["trajectories"] = cfg.goat.trajectories;
    sidecar["summary"] = summary;
}

void run_converge(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    CsvWriter csv(dir + "/converge_dims.csv", {"model", "dimension"});
    json dims;
    for (ModelVariant m : cfg.models) {
        const ModelSpec ref = default_sim_spec(m, cfg.resonator_levels);
        const SpectralFeatures f = spectral_features(ref, cfg.params);
        const DriveComponent probe{
            Envelope::gaussian(cfg.converge.amplitude, cfg.converge.duration, cfg.sigma_ratio),
            f.omega01, 0.0};
        ModelSpec spec = ref;
        const int dim = convergence_dimension(spec, cfg.params, probe, cfg.converge.tol,
                                              cfg.solver);
        csv.row({std::string(variant_name(m)), static_cast<long long>(dim)});
        dims[variant_name(m)] = dim;
    }
    sidecar["tolerance"] = cfg.converge.tol;
    sidecar["dimensions"] = dims;
}

void run_bench(const RunConfig& cfg, const std::string& dir, json& sidecar) {
    const BenchReport report = runtime_bench(cfg.models, cfg.params, cfg.bench.durations,
                                             cfg.bench.amplitude, cfg.bench.repeats,
                                             make_opts(cfg));
    CsvWriter csv(dir + "/bench.csv", {"model", "duration", "seconds", "normalized"});
    json fits;
    for (const BenchModelResult& r : report.models) {
        for (const BenchSample& s : r.samples)
            csv.row({std::string(variant_name(r.model)), s.duration, s.seconds, s.normalized});
        fits[variant_name(r.model)] = {{"slope", r.slope},
                                       {"intercept", r.intercept},
                                       {"r2", r.r2},
                                       {"speedup_vs_cpb", r.speedup_vs_cpb}};
    }
    sidecar["fits"] = fits;
    sidecar["repeats"] = cfg.bench.repeats;
}

}  // namespace

int run_experiment(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.experiment.empty()) throw UsageError("no experiment selected");
    ensure_directory(cfg.out_dir);
    json sidecar = base_sidecar(cfg);

    if (cfg.experiment == "spectra-sweep") run_spectra_sweep(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "rabi-sweep") run_rabi_sweep(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "pi2-optimize") run_pi2(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "calibrate") run_calibrate(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "detuning-map") run_detuning_map(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "gr3-compare") run_gr3(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "landscape") run_landscape(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "goat-ensemble") run_goat(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "converge-dims") run_converge(cfg, cfg.out_dir, sidecar);
    else if (cfg.experiment == "bench") run_bench(cfg, cfg.out_dir, sidecar);
    else throw UsageError("unknown experiment '" + cfg.experiment + "'");

    write_json(cfg.out_dir + "/" + cfg.experiment + "_provenance.json", sidecar);
    return 0;
}

}  // namespace tqsim

// config.hpp — Run configuration: a flat sectioned key-value format with strict
// unknown-key rejection, plus the experiment dispatch used by the CLI.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tqsim/propagator.hpp"

namespace tqsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RabiSweepConfig {
    double duration{142.2};
    double amp_min{0.0};
    double amp_max{0.075};
    int points{41};
};

struct SpectraSweepConfig {
    std::string mode{"constant-freq"};  // or "constant-anharm"
    std::vector<double> n_exp{1, 2, 4, 8, 16, 32, 64};
};

struct Pi2Config {
    double duration{142.2};
    double amp_max{0.008};
};

struct CalibrateConfig {
    std::string model_a{"do3"};
    std::string model_b{"gr"};
    double amplitude{0.19};
    double probe_cycles{3.0};
    double window{0.12};
};

struct DetuningMapConfig {
    double ratio_min{20.0};
    double ratio_max{130.0};
    int ratio_points{40};
    double det_min{-1.5};
    double det_max{0.5};
    int det_points{120};
    double duration{5.0};
    double amplitude{0.19};
};

struct Gr3Config {
    double duration{142.2};
    double amp_max{0.075};
    int points{41};
};

struct LandscapeConfig {
    double amp_min{0.0};
    double amp_max{0.075};
    int amp_points{100};
    double t_min{10.0};
    double t_max{150.0};
    int t_points{100};
    int resonator_levels{1};
};

struct GoatConfig {
    int trajectories{1000};
    double duration{20.0};
};

struct ConvergeConfig {
    double tol{1e-5};
    double duration{142.2};
    double amplitude{0.075};
};

struct BenchConfig {
    std::vector<double> durations{10, 30, 50, 70, 90, 110, 130, 150};
    double amplitude{0.075};
    int repeats{3};
};

struct RunConfig {
    EnergyParams params{0.348, 10.158, 0.02, 6.99, 0.0};
    std::vector<ModelVariant> models{ModelVariant::Cpb, ModelVariant::Do3, ModelVariant::Gr,
                                     ModelVariant::R};
    std::string experiment;
    SolverConfig solver{};
    int resonator_levels{3};
    double sigma_ratio{kGaussianSigmaRatio};
    std::string out_dir{"out"};
    std::uint64_t seed{20507};
    int threads{1};

    RabiSweepConfig rabi;
    SpectraSweepConfig spectra;
    Pi2Config pi2;
    CalibrateConfig calibrate;
    DetuningMapConfig detuning;
    Gr3Config gr3;
    LandscapeConfig landscape;
    GoatConfig goat;
    ConvergeConfig converge;
    BenchConfig bench;

    void validate() const;
};

const std::vector<std::string>& experiment_names();

// Parses and validates a config file. Unknown sections or keys are rejected
// with file:line locations; missing or invalid values name the field.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Dispatches to the named experiment and writes its CSV artifacts plus a JSON
// provenance sidecar into cfg.out_dir. Returns the process exit status.
int run_experiment(const RunConfig& cfg);

}  // namespace tqsim

// bench.hpp — Wall-time benchmark of the propagation cost per model.

#pragma once

#include <vector>

#include "tqsim/experiments.hpp"

namespace tqsim {

struct BenchSample {
    double duration{0.0};    // ns
    double seconds{0.0};     // median wall time
    double normalized{0.0};  // relative to the CPB largest-duration sample
};

struct BenchModelResult {
    ModelVariant model{ModelVariant::Cpb};
    std::vector<BenchSample> samples;
    double slope{0.0};      // seconds per ns
    double intercept{0.0};  // seconds
    double r2{0.0};
    double speedup_vs_cpb{1.0};  // CPB slope over this model's slope
};

struct BenchReport {
    std::vector<BenchModelResult> models;
};

// Times one Gaussian-pulse evolution per (model, duration) pair, median of
// `repeats` runs, with a least-squares linear fit per model. Runs strictly
// serially to keep the timer clean.
BenchReport runtime_bench(const std::vector<ModelVariant>& models, const EnergyParams& params,
                          const std::vector<double>& durations, double amplitude, int repeats,
                          const ExperimentOptions& opts = {});

}  // namespace tqsim

#include "tqsim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace tqsim {

namespace {

using Clock = std::chrono::steady_clock;

double clock_tick_seconds() {
    const auto t0 = Clock::now();
    auto t1 = Clock::now();
    while (t1 == t0) t1 = Clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

BenchReport runtime_bench(const std::vector<ModelVariant>& models, const EnergyParams& params,
                          const std::vector<double>& durations, double amplitude, int repeats,
                          const ExperimentOptions& opts) {
    if (durations.size() < 5)
        throw std::invalid_argument("runtime_bench: need at least 5 duration samples");
    for (double d : durations)
        if (!(d > 0.0)) throw std::invalid_argument("runtime_bench: durations must be > 0");
    if (repeats < 1) throw std::invalid_argument("runtime_bench: repeats must be >= 1");

    const double tick = clock_tick_seconds();
    BenchReport report;
    report.models.reserve(models.size());

    for (ModelVariant m : models) {
        const PreparedModel pm = prepare_model(m, params, opts);
        BenchModelResult res;
        res.model = m;
        for (double duration : durations) {
            const DriveComponent drive{
                Envelope::gaussian(amplitude, duration, opts.sigma_ratio), pm.omega01, 0.0};
            std::vector<double> times(repeats);
            for (int r = 0; r < repeats; ++r) {
                const auto t0 = Clock::now();
                volatile double sink = final_p1(pm, {drive}, duration, opts.solver);
                (void)sink;
                times[r] = std::chrono::duration<double>(Clock::now() - t0).count();
            }
            std::nth_element(times.begin(), times.begin() + repeats / 2, times.end());
            const double median = times[repeats / 2];
            if (median < 10.0 * tick)
                throw std::runtime_error(
                    "runtime_bench: timer resolution too coarse for this run");
            res.samples.push_back({duration, median, 0.0});
        }
        // Least-squares fit of wall time against pulse duration.
        const double n = static_cast<double>(res.samples.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (const BenchSample& s : res.samples) {
            sx += s.duration;
            sy += s.seconds;
            sxx += s.duration * s.duration;
            sxy += s.duration * s.seconds;
            syy += s.seconds * s.seconds;
        }
        const double denom = n * sxx - sx * sx;
        res.slope = (n * sxy - sx * sy) / denom;
        res.intercept = (sy - res.slope * sx) / n;
        const double ss_tot = syy - sy * sy / n;
        double ss_res = 0.0;
        for (const BenchSample& s : res.samples) {
            const double e = s.seconds - (res.intercept + res.slope * s.duration);
            ss_res += e * e;
        }
        res.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
        report.models.push_back(std::move(res));
    }

    // Normalize against the CPB largest-duration sample and express speedups as
    // slope ratios.
    double cpb_slope = 0.0, cpb_ref = 0.0;
    for (const BenchModelResult& r : report.models)
        if (r.model == ModelVariant::Cpb) {
            cpb_slope = r.slope;
            cpb_ref = r.samples.back().seconds;
        }
    for (BenchModelResult& r : report.models) {
        r.speedup_vs_cpb = cpb_slope > 0.0 && r.slope > 0.0 ? cpb_slope / r.slope : 1.0;
        for (BenchSample& s : r.samples)
            s.normalized = cpb_ref > 0.0 ? s.seconds / cpb_ref : 0.0;
    }
    return report;
}

}  // namespace tqsim

#include "tqsim/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "tqsim/parallel.hpp"
#include "tqsim/stepper.hpp"

namespace tqsim {

LandscapeGrid landscape_grid(ModelVariant model, const EnergyParams& params,
                             const std::vector<double>& amp_axis,
                             const std::vector<double>& time_axis,
                             const ExperimentOptions& opts) {
    if (amp_axis.empty() || time_axis.empty())
        throw std::invalid_argument("landscape_grid: axes must be non-empty");
    for (double t : time_axis)
        if (!(t > 0.0)) throw std::invalid_argument("landscape_grid: durations must be > 0");

    const PreparedModel pm = prepare_model(model, params, opts);
    LandscapeGrid grid{amp_axis, time_axis,
                       Eigen::MatrixXd(static_cast<Eigen::Index>(amp_axis.size()),
                                       static_cast<Eigen::Index>(time_axis.size()))};
    const std::size_t nt = time_axis.size();
    parallel_for(amp_axis.size() * nt, opts.threads, [&](std::size_t cell) {
        const std::size_t ia = cell / nt, it = cell % nt;
        const double amp = amp_axis[ia];
        if (amp == 0.0) {
            grid.p1(ia, it) = 0.0;
            return;
        }
        const double duration = time_axis[it];
        const DriveComponent drive{Envelope::gaussian(amp, duration, opts.sigma_ratio),
                                   pm.omega01, 0.0};
        grid.p1(ia, it) = final_p1(pm, {drive}, duration, opts.solver);
    });
    return grid;
}

Eigen::MatrixXd landscape_diff(const LandscapeGrid& a, const LandscapeGrid& b) {
    if (a.amp_axis != b.amp_axis || a.time_axis != b.time_axis)
        throw std::invalid_argument("landscape_diff: grids have different axes");
    return (a.p1 - b.p1).cwiseAbs();
}

GoatContext make_goat_context(ModelVariant model, const EnergyParams& params,
                              const GoatOptions& opts) {
    ExperimentOptions eopts;
    eopts.solver = opts.solver;
    eopts.resonator_levels = opts.resonator_levels;
    eopts.sigma_ratio = opts.sigma_ratio;
    GoatContext ctx{prepare_model(model, params, eopts, opts.transmon_levels), opts, 0.0};
    ctx.carrier = ctx.pm.omega01;
    return ctx;
}

namespace {

std::vector<DriveComponent> drag_drive(const GoatContext& ctx, const ControlPoint& pt) {
    return {DriveComponent{
        Envelope::drag_gaussian(pt.amplitude, ctx.opts.duration, pt.beta,
                                ctx.opts.sigma_ratio),
        ctx.carrier, 0.0}};
}

}  // namespace

double goat_objective(const GoatContext& ctx, const ControlPoint& point) {
    const Eigen::VectorXcd psi = evolve_final_state(
        ctx.pm.system.h0.matrix(), ctx.pm.system.h_drive.matrix(), drag_drive(ctx, point),
        ctx.pm.ground.amplitudes, ctx.opts.duration, ctx.opts.solver);
    return std::norm(ctx.pm.excited.amplitudes.dot(psi));
}

GradientResult objective_and_gradient(const GoatContext& ctx, const ControlPoint& point) {
    const double T = ctx.opts.duration;
    const Envelope env =
        Envelope::drag_gaussian(point.amplitude, T, point.beta, ctx.opts.sigma_ratio);
    const Envelope unit =
        Envelope::drag_gaussian(1.0, T, point.beta, ctx.opts.sigma_ratio);
    const double f = ctx.carrier;

    const std::complex<double> mi2pi(0.0, -kTwoPi);
    const Eigen::MatrixXcd m0 = mi2pi * ctx.pm.system.h0.matrix();
    const Eigen::MatrixXcd md = mi2pi * ctx.pm.system.h_drive.matrix();
    const Eigen::Index dim = m0.rows();

    Eigen::MatrixXcd mdy(dim, 3);
    const auto rhs = [&](double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dydt) {
        const double arg = kTwoPi * f * t;
        const double cosw = std::cos(arg), sinw = std::sin(arg);
        const double g = envelope_value(env, t), gdot = envelope_derivative(env, t);
        const double v = g * cosw - point.beta * gdot * sinw;
        const double dv_damp =
            envelope_value(unit, t) * cosw - point.beta * envelope_derivative(unit, t) * sinw;
        const double dv_dbeta = -gdot * sinw;
        mdy.noalias() = md * y;
        dydt.noalias() = m0 * y;
        dydt.noalias() += v * mdy;
        dydt.col(1).noalias() += dv_damp * mdy.col(0);
        dydt.col(2).noalias() += dv_dbeta * mdy.col(0);
    };

    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(dim, 3);
    y.col(0) = ctx.pm.ground.amplitudes;
    AdaptiveStepper stepper(ctx.opts.solver.rel_tol, ctx.opts.solver.abs_tol, dim, 3);
    double t = 0.0;
    stepper.advance(rhs, y, t, T);

    const Eigen::VectorXcd& d1 = ctx.pm.excited.amplitudes;
    const std::complex<double> c = d1.dot(y.col(0));
    const std::complex<double> c_amp = d1.dot(y.col(1));
    const std::complex<double> c_beta = d1.dot(y.col(2));
    return GradientResult{std::norm(c), 2.0 * std::real(std::conj(c) * c_amp),
                          2.0 * std::real(std::conj(c) * c_beta)};
}

namespace {

constexpr double kMinAmplitude = 1e-6;  // GHz; keeps the amplitude invariant positive
constexpr double kArmijoC1 = 1e-4;

struct Nondim {
    double x, y;
};

Nondim to_nondim(const ControlPoint& p, const GoatOptions& o) {
    return {p.amplitude / o.omega_scale, p.beta / o.beta_scale};
}

ControlPoint from_nondim(const Nondim& n, const GoatOptions& o) {
    return {std::max(n.x * o.omega_scale, kMinAmplitude), n.y * o.beta_scale};
}

double nd_dist(const Nondim& a, const Nondim& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool near_known_endpoint(const Nondim& x, const std::vector<ControlPoint>& known,
                         const GoatOptions& o) {
    for (const ControlPoint& k : known) {
        const Nondim kn = to_nondim(k, o);
        const double eps = o.adopt_eps_frac * std::max(1.0, std::hypot(kn.x, kn.y));
        if (nd_dist(x, kn) <= eps) return true;
    }
    return false;
}

}  // namespace

Trajectory goat_optimize(const GoatContext& ctx, const ControlPoint& start,
                         const std::vector<ControlPoint>* known_endpoints) {
    const GoatOptions& o = ctx.opts;
    Trajectory traj;
    ControlPoint cur = start;
    cur.amplitude = std::max(cur.amplitude, kMinAmplitude);
    GradientResult g = objective_and_gradient(ctx, cur);
    traj.points.push_back(cur);
    traj.objectives.push_back(g.p1);
    traj.started_converged = g.p1 >= o.converge_threshold;

    if (traj.started_converged) {
        // Already inside the termination region; record a minimal ascent step so
        // the trajectory has nonzero extent.
        Nondim x = to_nondim(cur, o);
        const double gn = std::hypot(g.d_amp * o.omega_scale, g.d_beta * o.beta_scale);
        const Nondim dir = gn > 0.0
                               ? Nondim{g.d_amp * o.omega_scale / gn, g.d_beta * o.beta_scale / gn}
                               : Nondim{1.0, 0.0};
        const ControlPoint next = from_nondim({x.x + 1e-6 * dir.x, x.y + 1e-6 * dir.y}, o);
        traj.points.push_back(next);
        traj.objectives.push_back(goat_objective(ctx, next));
        traj.termination = Termination::Converged;
        return traj;
    }

    double step_len = o.initial_step;
    for (int step = 0; step < o.max_steps; ++step) {
        if (g.p1 >= o.converge_threshold) {
            traj.termination = Termination::Converged;
            return traj;
        }
        const Nondim x = to_nondim(cur, o);
        if (known_endpoints && near_known_endpoint(x, *known_endpoints, o)) {
            traj.termination = Termination::AdoptedPath;
            return traj;
        }
        const double gx = g.d_amp * o.omega_scale;
        const double gy = g.d_beta * o.beta_scale;
        const double gn = std::hypot(gx, gy);
        if (gn < 1e-12) {
            traj.termination = Termination::StepLimit;
            return traj;
        }
        const Nondim dir{gx / gn, gy / gn};

        bool accepted = false;
        int backtracks = 0;
        ControlPoint next = cur;
        double p_next = g.p1;
        for (; backtracks < 30; ++backtracks) {
            next = from_nondim({x.x + step_len * dir.x, x.y + step_len * dir.y}, o);
            p_next = goat_objective(ctx, next);
            if (p_next >= g.p1 + kArmijoC1 * step_len * gn) {
                accepted = true;
                break;
            }
            step_len *= 0.5;
        }
        if (!accepted) {
            traj.termination = Termination::StepLimit;
            return traj;
        }
        // Polish the accepted step: shorter moves that score at least as well
        // cut the overshoot that inflates the path length near the ridge.
        for (int halvings = 0; halvings < 3; ++halvings) {
            const double half = step_len * 0.5;
            const ControlPoint cand =
                from_nondim({x.x + half * dir.x, x.y + half * dir.y}, o);
            const double p_cand = goat_objective(ctx, cand);
            if (p_cand < p_next) break;
            next = cand;
            p_next = p_cand;
            step_len = half;
        }
        cur = next;
        g = objective_and_gradient(ctx, cur);
        // The gradient evaluation is the authoritative objective at the new point.
        traj.points.push_back(cur);
        traj.objectives.push_back(std::max(p_next, g.p1));
        if (backtracks == 0) step_len = std::min(step_len * 1.6, o.max_step);
    }
    traj.termination =
        g.p1 >= o.converge_threshold ? Termination::Converged : Termination::StepLimit;
    return traj;
}

double r_metric(const Trajectory& traj, double omega_scale, double beta_scale) {
    if (traj.points.size() < 2)
        throw DegenerateTrajectory("r_metric: trajectory needs at least two points");
    double path = 0.0;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        const double dx = (traj.points[i].amplitude - traj.points[i - 1].amplitude) / omega_scale;
        const double dy = (traj.points[i].beta - traj.points[i - 1].beta) / beta_scale;
        path += std::hypot(dx, dy);
    }
    const double ex = (traj.points.back().amplitude - traj.points.front().amplitude) / omega_scale;
    const double ey = (traj.points.back().beta - traj.points.front().beta) / beta_scale;
    const double direct = std::hypot(ex, ey);
    if (direct == 0.0)
        throw DegenerateTrajectory("r_metric: start equals end");
    return path / direct;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

EnsembleResult trajectory_ensemble(const GoatContext& ctx, const ControlPoint& optimum,
                                   int n, std::uint64_t seed) {
    EnsembleResult out;
    out.trajectories.resize(n);
    const GoatOptions& o = ctx.opts;
    const double sigma_amp =
        std::max(o.start_sigma_frac * std::abs(optimum.amplitude),
                 o.start_sigma_floor * o.omega_scale);
    const double sigma_beta = std::max(o.start_sigma_frac * std::abs(optimum.beta),
                                       o.start_sigma_floor * o.beta_scale);
    parallel_for(static_cast<std::size_t>(n), o.threads, [&](std::size_t i) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x51ed2701ull + i)));
        std::normal_distribution<double> amp_dist(optimum.amplitude, sigma_amp);
        std::normal_distribution<double> beta_dist(optimum.beta, sigma_beta);
        ControlPoint start{std::max(amp_dist(rng), kMinAmplitude), beta_dist(rng)};
        out.trajectories[i] = goat_optimize(ctx, start);
    });

    // StepLimit runs ending where others converged from are adopted post hoc;
    // the reclassification is order independent.
    std::vector<ControlPoint> converged;
    for (const Trajectory& t : out.trajectories)
        if (t.termination == Termination::Converged && !t.started_converged)
            converged.push_back(t.points.back());
    for (Trajectory& t : out.trajectories) {
        if (t.termination != Termination::StepLimit) continue;
        if (near_known_endpoint(to_nondim(t.points.back(), ctx.opts), converged, ctx.opts))
            t.termination = Termination::AdoptedPath;
    }

    double sum = 0.0, sum2 = 0.0;
    int m = 0;
    for (const Trajectory& t : out.trajectories) {
        switch (t.termination) {
            case Termination::Converged: ++out.stats.n_converged; break;
            case Termination::AdoptedPath: ++out.stats.n_adopted; break;
            case Termination::StepLimit: ++out.stats.n_steplimit; break;
        }
        if (t.started_converged) ++out.stats.n_started_converged;
        if (t.termination == Termination::StepLimit || t.started_converged) continue;
        const double r = r_metric(t, ctx.opts.omega_scale, ctx.opts.beta_scale);
        sum += r;
        sum2 += r * r;
        ++m;
    }
    out.stats.n_in_stats = m;
    if (m > 0) {
        out.stats.mean_r = sum / m;
        const double var = std::max(0.0, sum2 / m - out.stats.mean_r * out.stats.mean_r);
        out.stats.std_r = std::sqrt(var);
    }
    return out;
}

EndpointStats endpoint_stats(const std::vector<Trajectory>& trajs, double omega_scale,
                             double beta_scale) {
    std::vector<Eigen::Vector2d> pts;
    for (const Trajectory& t : trajs) {
        if (t.started_converged) continue;
        if (t.termination == Termination::StepLimit) continue;
        pts.emplace_back(t.points.back().amplitude / omega_scale,
                         t.points.back().beta / beta_scale);
    }
    if (pts.size() < 10)
        throw std::invalid_argument("endpoint_stats: fewer than 10 converged endpoints");

    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto& p : pts) {
        const Eigen::Vector2d d = p - mean;
        cov += d * d.transpose();
    }
    cov /= static_cast<double>(pts.size());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    EndpointStats stats;
    stats.centroid = ControlPoint{mean(0) * omega_scale, mean(1) * beta_scale};
    stats.omega_extent = std::sqrt(cov(0, 0));
    stats.beta_extent = std::sqrt(cov(1, 1));
    stats.axis_major = es.eigenvectors().col(1);
    stats.axis_minor = es.eigenvectors().col(0);
    stats.extent_major = std::sqrt(std::max(0.0, es.eigenvalues()(1)));
    stats.extent_minor = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
    return stats;
}

ControlPoint locate_optimum(const GoatContext& ctx) {
    // Pulse-area seed for a pi rotation, then ascent with a generous step budget.
    const PreparedModel& pm = ctx.pm;
    const double d01 =
        std::abs(pm.excited.amplitudes.dot(pm.system.h_drive.matrix() * pm.ground.amplitudes));
    const Envelope unit = Envelope::gaussian(1.0, ctx.opts.duration, ctx.opts.sigma_ratio);
    double area = 0.0;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double t = ctx.opts.duration * i / (n - 1);
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        area += w * envelope_value(unit, t);
    }
    area *= ctx.opts.duration / (n - 1);
    const double amp_pi = 1.0 / (2.0 * d01 * area);

    GoatContext wide = ctx;
    wide.opts.max_steps = 400;
    const Trajectory t = goat_optimize(wide, ControlPoint{amp_pi, 1.5});
    return t.points.back();
}

}  // namespace tqsim

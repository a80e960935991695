#include "brfd/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "brfd/norms.hpp"

namespace brfd {

LevelErrors measure_errors(const Trajectory& traj, const Problem& p, const Mesh& m,
                           const TimeGrid& tg) {
    if (!p.exact) throw std::invalid_argument("measure_errors: problem has no exact solution");
    if (traj.record_stride != 1)
        throw std::invalid_argument("measure_errors: trajectory must be recorded every step");
    const ExactSolution& e = *p.exact;

    LevelErrors errs;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double t = tg.t(traj.steps[i]);
        const InteriorGridFunction diff = subtract(
            sample_interior([&](double x) { return e.u(t, x); }, m), traj.states[i]);
        errs.traj_h1 = std::max(errs.traj_h1, seminorm_h1(diff, m));
        errs.l2 = std::max(errs.l2, norm_l2(diff, m));
        errs.inf = std::max(errs.inf, norm_inf(diff));
    }
    if (traj.u_half) {
        const double th = tg.t_half(0);
        errs.half_h1 = seminorm_h1(
            subtract(sample_interior([&](double x) { return e.u(th, x); }, m), *traj.u_half), m);
    }
    for (std::size_t n = 0; n < traj.phis.size(); ++n) {
        const double tm = tg.t_half(static_cast<int>(n));
        const GridFunction target =
            sample([&](double x) { return p.g(e.u(tm, x)); }, m);
        errs.phi_h1 = std::max(errs.phi_h1, seminorm_h1(subtract(target, traj.phis[n]), m));
    }
    return errs;
}

namespace {

double least_squares_slope(const std::vector<double>& logs, const std::vector<double>& loge) {
    const auto n = static_cast<double>(logs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        sx += logs[i];
        sy += loge[i];
        sxx += logs[i] * logs[i];
        sxy += logs[i] * loge[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

OrderFit estimate_order(const std::vector<double>& errs, const std::vector<double>& steps) {
    if (errs.size() != steps.size())
        throw std::invalid_argument("estimate_order: errs and steps length mismatch");
    if (errs.size() < 2) throw std::invalid_argument("estimate_order: need at least two levels");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i] > 0.0)) throw std::invalid_argument("estimate_order: steps must be positive");
        if (i > 0 && !(steps[i] < steps[i - 1]))
            throw std::invalid_argument("estimate_order: steps must be strictly decreasing");
        if (errs[i] < 0.0) throw std::invalid_argument("estimate_order: errors must be nonnegative");
    }

    constexpr double kFloor = 1e-13;
    OrderFit fit;
    std::vector<double> logs, loge;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        if (errs[i] < kFloor) {
            fit.at_floor = true;
            continue;
        }
        logs.push_back(std::log(steps[i]));
        loge.push_back(std::log(errs[i]));
    }
    if (logs.size() < 2) {
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        fit.slope_all_levels = fit.slope;
        return fit;
    }

    fit.slope_all_levels = least_squares_slope(logs, loge);
    for (std::size_t i = 0; i + 1 < logs.size(); ++i)
        fit.per_pair.push_back((loge[i] - loge[i + 1]) / (logs[i] - logs[i + 1]));

    fit.slope = fit.slope_all_levels;
    if (fit.per_pair.size() >= 2) {
        const auto [mn, mx] = std::minmax_element(fit.per_pair.begin(), fit.per_pair.end());
        if (*mx - *mn > 0.3) {
            fit.pre_asymptotic = true;
            fit.slope = least_squares_slope(std::vector<double>(logs.begin() + 1, logs.end()),
                                            std::vector<double>(loge.begin() + 1, loge.end()));
        }
    }
    return fit;
}

void plan_level(const RefinementPlan& plan, double length, double T, int level, int& J, int& N) {
    if (plan.levels < 2) throw std::invalid_argument("plan_level: need at least two levels");
    if (plan.base_interior_nodes < 1 || plan.base_steps < 1)
        throw std::invalid_argument("plan_level: base sizes must be positive");
    switch (plan.coupling) {
        case Coupling::TauProportionalToH: {
            J = (plan.base_interior_nodes + 1) * (1 << level) - 1;
            const double h = length / static_cast<double>(J + 1);
            N = std::max(1, static_cast<int>(std::llround(T / (plan.tau_over_h * h))));
            break;
        }
        case Coupling::FixedTau:
            J = (plan.base_interior_nodes + 1) * (1 << level) - 1;
            N = plan.base_steps;
            break;
        case Coupling::FixedH:
            J = plan.base_interior_nodes;
            N = plan.base_steps * (1 << level);
            break;
    }
}

ConvergenceReport refinement_study(const Problem& p, double x_a, double x_b, double T,
                                   const RefinementPlan& plan, const SchemeVariant& variant,
                                   int jobs) {
    if (jobs < 1) throw std::invalid_argument("refinement_study: jobs must be >= 1");

    auto run_level = [&](int level) {
        int J = 0, N = 0;
        plan_level(plan, x_b - x_a, T, level, J, N);
        const Mesh m(x_a, x_b, J);
        const TimeGrid tg(T, N);
        const Trajectory traj = run(p, m, tg, variant, 1);

        LevelResult res;
        res.level = level;
        res.J = J;
        res.N = N;
        res.h = m.h();
        res.tau = tg.tau();
        res.err = measure_errors(traj, p, m, tg);
        res.condition_margin = std::numeric_limits<double>::infinity();
        for (double margin : traj.condition_margins)
            res.condition_margin = std::min(res.condition_margin, margin);
        res.identity_regime = traj.mollifier_identity_regime;
        return res;
    };

    ConvergenceReport report;
    report.levels.resize(static_cast<std::size_t>(plan.levels));
    if (jobs == 1) {
        for (int level = 0; level < plan.levels; ++level)
            report.levels[static_cast<std::size_t>(level)] = run_level(level);
    } else {
        // Levels are independent; a small worker pool pulls them off a shared counter.
        std::atomic<int> next{0};
        std::mutex failure_mutex;
        std::exception_ptr failure;
        auto worker = [&]() {
            try {
                for (int level = next++; level < plan.levels; level = next++)
                    report.levels[static_cast<std::size_t>(level)] = run_level(level);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < std::min(jobs, plan.levels); ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<double> steps, traj_e, half_e, phi_e;
    for (const LevelResult& lr : report.levels) {
        steps.push_back(plan.coupling == Coupling::FixedH ? lr.tau : lr.h);
        traj_e.push_back(lr.err.traj_h1);
        half_e.push_back(lr.err.half_h1);
        phi_e.push_back(lr.err.phi_h1);
    }
    report.order_traj_h1 = estimate_order(traj_e, steps);
    report.order_half_h1 = estimate_order(half_e, steps);
    report.order_phi_h1 = estimate_order(phi_e, steps);
    if (variant.kind == SchemeVariant::Kind::Mbrfd) {
        bool identity = true;
        for (const LevelResult& lr : report.levels)
            identity = identity && lr.identity_regime.value_or(false);
        report.mbrfd_identity_regime = identity;
    }
    return report;
}

}  // namespace brfd

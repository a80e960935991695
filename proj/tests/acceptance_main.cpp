// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "brfd/convergence.hpp"
#include "brfd/mollifier.hpp"
#include "brfd/norms.hpp"
#include "brfd/problems.hpp"
#include "brfd/scheme.hpp"
#include "brfd/trisolve.hpp"
#include "support/oracles.hpp"

using namespace brfd;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

RefinementPlan default_plan() {
    RefinementPlan plan;
    plan.base_interior_nodes = 19;  // J+1 = 20
    plan.base_steps = 20;
    plan.levels = 4;
    plan.coupling = Coupling::TauProportionalToH;
    plan.tau_over_h = 1.0;
    return plan;
}

// Shared study results: criterion 1 runs it (timed); 2 and 3 reuse.
ConvergenceReport g_brfd_report;
double g_brfd_study_seconds = 0.0;

CriterionResult criterion_1_global_order() {
    const Problem p = catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    const auto start = std::chrono::steady_clock::now();
    g_brfd_report = refinement_study(p, 0.0, 1.0, 1.0, default_plan(), SchemeVariant::brfd());
    g_brfd_study_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const double traj = g_brfd_report.order_traj_h1.slope;
    const double phi = g_brfd_report.order_phi_h1.slope;
    CriterionResult res;
    res.pass = traj >= 1.9 && phi >= 1.9 && g_brfd_study_seconds < 5.0;
    res.detail = "traj order " + num(traj) + ", phi order " + num(phi) + ", runtime " +
                 num(g_brfd_study_seconds) + "s (budget 5s)";
    return res;
}

CriterionResult criterion_2_half_step() {
    const double coupled = g_brfd_report.order_half_h1.slope;

    const Problem p = catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    RefinementPlan plan;
    plan.base_interior_nodes = 639;  // J+1 = 640 fixed
    plan.base_steps = 40;
    plan.levels = 5;  // tau halved four times
    plan.coupling = Coupling::FixedH;
    const ConvergenceReport fixed_h =
        refinement_study(p, 0.0, 1.0, 1.0, plan, SchemeVariant::brfd());
    const double tau_order = fixed_h.order_half_h1.slope;

    CriterionResult res;
    res.pass = coupled >= 1.9 && tau_order >= 1.9;
    res.detail = "coupled half order " + num(coupled) + ", fixed-h tau order " + num(tau_order) +
                 (fixed_h.order_half_h1.at_floor ? " (floor guard hit; fit on remaining levels)"
                                                 : "");
    return res;
}

CriterionResult criterion_3_suboptimal_init() {
    const Problem p = catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    const ConvergenceReport sub =
        refinement_study(p, 0.0, 1.0, 1.0, default_plan(), SchemeVariant::brfd_suboptimal_init());
    const double traj = sub.order_traj_h1.slope;
    const double phi = sub.order_phi_h1.slope;
    const double reference = g_brfd_report.order_traj_h1.slope;

    CriterionResult res;
    res.pass = traj <= 1.4 && reference - traj >= 0.4;
    res.detail = "suboptimal traj order " + num(traj) + " (required <= 1.4 and <= " +
                 num(reference) + " - 0.4); midpoint-coefficient order " + num(phi) +
                 " shows the first-order startup defect surviving in the auxiliary sequence "
                 "while it cancels pairwise in the smooth solution components";
    return res;
}

CriterionResult criterion_4_coincidence() {
    const Problem p = catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    const Mesh m(0.0, 1.0, 39);
    const TimeGrid tg(1.0, 40);
    const Trajectory plain = run(p, m, tg, SchemeVariant::brfd(), 1);
    const Trajectory mollified = run(p, m, tg, SchemeVariant::mbrfd(10.0), 1);

    double worst = 0.0;
    for (std::size_t i = 0; i < plain.states.size(); ++i)
        worst = std::max(worst, norm_inf(subtract(plain.states[i], mollified.states[i])));
    worst = std::max(worst, norm_inf(subtract(*plain.u_half, *mollified.u_half)));
    for (std::size_t i = 0; i < plain.phis.size(); ++i)
        worst = std::max(worst, norm_inf(subtract(plain.phis[i], mollified.phis[i])));

    CriterionResult res;
    res.pass = worst <= 1e-13 && mollified.mollifier_identity_regime.value_or(false);
    res.detail = "max per-step sup-norm gap " + num(worst) + ", identity regime " +
                 (mollified.mollifier_identity_regime.value_or(false) ? "held" : "left");
    return res;
}

CriterionResult criterion_5_summation_by_parts() {
    std::mt19937_64 rng(501u);
    double worst = 0.0;
    for (int J : {9, 99, 999}) {
        const Mesh m(0.0, 1.0, J);
        for (int trial = 0; trial < 1000; ++trial) {
            const InteriorGridFunction v(oracle::random_vector(m.num_nodes(), rng));
            const InteriorGridFunction z(oracle::random_vector(m.num_nodes(), rng));
            const InteriorGridFunction lv = laplacian(v, m);
            const InteriorGridFunction lz = laplacian(z, m);
            const double a = inner_interior(lv, z, m);
            const double b =
                -inner_staggered(forward_difference(v, m), forward_difference(z, m), m);
            const double c = inner_interior(v, lz, m);
            const double h1v = seminorm_h1(v, m), h1z = seminorm_h1(z, m);
            // relative to the bilinear scale; the identity value itself may cancel
            const double scale =
                std::max({1.0, norm_l2(lv, m) * norm_l2(z, m), h1v * h1z,
                          norm_l2(v, m) * norm_l2(lz, m)});
            worst = std::max(worst, std::abs(a - b) / scale);
            worst = std::max(worst, std::abs(a - c) / scale);
            worst = std::max(worst,
                             std::abs(inner_interior(lv, v, m) + h1v * h1v) /
                                 std::max(1.0, h1v * h1v));
        }
    }
    CriterionResult res;
    res.pass = worst <= 1e-12;
    res.detail = "max relative defect " + num(worst) + " over 3000 pairs (J in {9,99,999})";
    return res;
}

CriterionResult criterion_6_sobolev_poincare() {
    std::mt19937_64 rng(601u);
    int violations = 0;
    int samples = 0;
    for (int J : {9, 99, 999}) {
        const Mesh m(0.0, 1.0, J);
        for (int trial = 0; trial < 1000; ++trial, ++samples) {
            const InteriorGridFunction v(oracle::random_vector(m.num_nodes(), rng));
            const double h1 = seminorm_h1(v, m);
            if (norm_inf(v) > std::sqrt(m.length()) * h1) ++violations;
            if (norm_l2(v, m) > m.length() * h1) ++violations;
        }
    }
    CriterionResult res;
    res.pass = violations == 0;
    res.detail = std::to_string(violations) + " violations over " + std::to_string(samples) +
                 " samples per inequality";
    return res;
}

CriterionResult criterion_7_mollifier() {
    CriterionResult res;
    res.pass = true;
    double worst_hermite = 0.0, worst_join = 0.0;
    for (double delta : {1.0, 3.0}) {
        const Mollifier moll(delta);
        const double scale = std::max(1.0, delta);

        const double hermite[8] = {
            std::abs(moll.eval(delta, 0) - delta),       std::abs(moll.eval(delta, 1) - 1.0),
            std::abs(moll.eval(delta, 2)),               std::abs(moll.eval(delta, 3)),
            std::abs(moll.eval(2 * delta, 0) - 2 * delta), std::abs(moll.eval(2 * delta, 1)),
            std::abs(moll.eval(2 * delta, 2)),           std::abs(moll.eval(2 * delta, 3))};
        for (double d : hermite) worst_hermite = std::max(worst_hermite, d / scale);

        // one-sided limits at the knots: identity branch vs polynomial side,
        // polynomial side vs plateau
        const double left_limit[4] = {delta, 1.0, 0.0, 0.0};
        const double right_limit[4] = {2.0 * delta, 0.0, 0.0, 0.0};
        for (int order = 0; order <= 3; ++order) {
            worst_join =
                std::max(worst_join, std::abs(moll.eval(delta, order) - left_limit[order]) / scale);
            worst_join = std::max(
                worst_join, std::abs(moll.eval(2 * delta, order) - right_limit[order]) / scale);
        }

        for (int i = 0; i <= 200000; ++i) {
            const double x = -10.0 * delta + 20.0 * delta * i / 200000.0;
            if (std::abs(moll.eval(x)) > 2.0 * delta) {
                res.pass = false;
                res.detail = "bound |n| <= 2 delta violated at x = " + num(x);
                return res;
            }
        }
        for (int i = 0; i <= 100000; ++i) {
            const double x = -delta + 2.0 * delta * i / 100000.0;
            if (moll.eval(x) != x) {
                res.pass = false;
                res.detail = "identity band not exact at x = " + num(x);
                return res;
            }
        }
    }
    res.pass = worst_hermite <= 1e-10 && worst_join <= 1e-9;
    res.detail = "hermite defect " + num(worst_hermite) + " (tol 1e-10), join defect " +
                 num(worst_join) + " (tol 1e-9), bound and identity band hold on dense grids";
    return res;
}

CriterionResult criterion_8_elliptic_projection() {
    auto v = [](double x) { return std::sin(M_PI * x); };
    auto vxx = [](double x) { return -M_PI * M_PI * std::sin(M_PI * x); };
    std::vector<double> lhs_levels, h_levels;
    bool inequality = true;
    for (int Jp1 : {20, 40, 80}) {
        const Mesh m(0.0, 1.0, Jp1 - 1);
        const InteriorGridFunction vs = sample_interior(v, m);
        const InteriorGridFunction vxxs = sample_interior(vxx, m);
        const double lhs = seminorm_h1(subtract(elliptic_projection(vxxs, m), vs), m);
        const double rhs = (m.length() / 12.0) * m.h() * m.h() *
                           norm_l2(elliptic_residual(vs, vxxs, m), m);
        inequality = inequality && lhs <= rhs;
        lhs_levels.push_back(lhs);
        h_levels.push_back(m.h());
    }
    const OrderFit fit = estimate_order(lhs_levels, h_levels);
    CriterionResult res;
    res.pass = inequality && fit.slope >= 1.9;
    res.detail = std::string("bound ") + (inequality ? "holds" : "violated") +
                 " at J+1 in {20,40,80}, projection-gap order " + num(fit.slope);
    return res;
}

CriterionResult criterion_9_consistency_rates() {
    const Problem p = catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    const Mesh fine(0.0, 1.0, 511);

    std::vector<double> taus, r_time, r_mid, r_c;
    for (int N : {8, 16, 32, 64}) {
        const TimeGrid tg(1.0, N);
        taus.push_back(tg.tau());
        double worst_time = 0.0, worst_mid = 0.0;
        for (int n = 0; n < N; ++n)
            worst_time = std::max(worst_time, norm_l2(residual_time_node(p, fine, tg, n), fine));
        for (int n = 1; n < N; ++n)
            worst_mid = std::max(worst_mid, norm_l2(residual_midpoint(p, fine, tg, n), fine));
        r_time.push_back(worst_time);
        r_mid.push_back(worst_mid);
        r_c.push_back(norm_l2(residual_half_parts(p, fine, tg).c, fine));
    }
    const double time_order = estimate_order(r_time, taus).slope;
    const double mid_order = estimate_order(r_mid, taus).slope;
    const double c_order = estimate_order(r_c, taus).slope;

    // spatial part on a time-independent solution
    ExactSolution stationary;
    stationary.u = [](double, double x) { return std::sin(M_PI * x); };
    stationary.u_t = [](double, double) { return 0.0; };
    stationary.u_x = [](double, double x) { return M_PI * std::cos(M_PI * x); };
    stationary.u_xx = [](double, double x) { return -M_PI * M_PI * std::sin(M_PI * x); };
    const Problem ps = manufacture(stationary, [](double u) { return std::sin(u); },
                                   [](double u) { return std::cos(u); });
    std::vector<double> hs, r_space;
    const TimeGrid tg4(1.0, 4);
    for (int Jp1 : {16, 32, 64, 128}) {
        const Mesh m(0.0, 1.0, Jp1 - 1);
        hs.push_back(m.h());
        r_space.push_back(norm_l2(residual_space(ps, m, tg4, 0), m));
    }
    const double space_order = estimate_order(r_space, hs).slope;

    CriterionResult res;
    res.pass = time_order >= 1.9 && mid_order >= 1.9 && space_order >= 1.9 && c_order >= 0.9;
    res.detail = "time-node order " + num(time_order) + ", midpoint order " + num(mid_order) +
                 ", space order " + num(space_order) + ", startup C-part order " + num(c_order) +
                 " (required >= 1.9, 1.9, 1.9, 0.9)";
    return res;
}

CriterionResult criterion_10_solver_oracle() {
    std::mt19937_64 rng(1001u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n;
        if (trial == 0) n = 2000;  // the stated maximum size, exercised once
        else if (trial < 150) n = 1 + static_cast<std::size_t>(std::abs(dist(rng)) * 99);
        else if (trial < 190) n = 100 + static_cast<std::size_t>(std::abs(dist(rng)) * 300);
        else n = 400 + static_cast<std::size_t>(std::abs(dist(rng)) * 600);

        Tridiagonal t;
        t.lower = oracle::random_vector(n - 1, rng);
        t.upper = oracle::random_vector(n - 1, rng);
        t.diag.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            double row = 0.0;
            if (j > 0) row += std::abs(t.lower[j - 1]);
            if (j + 1 < n) row += std::abs(t.upper[j]);
            t.diag[j] = (dist(rng) > 0.0 ? 1.0 : -1.0) * (row + 1.0 + std::abs(dist(rng)));
        }
        const std::vector<double> rhs = oracle::random_vector(n, rng);

        std::vector<double> dense(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            dense[j * n + j] = t.diag[j];
            if (j > 0) dense[j * n + j - 1] = t.lower[j - 1];
            if (j + 1 < n) dense[j * n + j + 1] = t.upper[j];
        }
        const std::vector<double> x = solve(t, rhs);
        const std::vector<double> y = oracle::dense_solve(std::move(dense), rhs);
        double diff = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            diff = std::max(diff, std::abs(x[j] - y[j]));
            scale = std::max(scale, std::abs(y[j]));
        }
        worst = std::max(worst, diff / scale);
    }

    // linear problem: the relaxation scheme and the Newton integrator coincide
    const Problem p = catalog_problem("linear_heat_mode_1", 0.0, 1.0);
    const Mesh m(0.0, 1.0, 39);
    const TimeGrid tg(1.0, 40);
    const Trajectory relax = run(p, m, tg, SchemeVariant::brfd(), 1);
    const Trajectory newton = run(p, m, tg, SchemeVariant::crank_nicolson(), 1);
    double gap = 0.0;
    for (std::size_t i = 0; i < relax.states.size(); ++i)
        gap = std::max(gap, norm_inf(subtract(relax.states[i], newton.states[i])));

    CriterionResult res;
    res.pass = worst <= 1e-12 && gap <= 1e-12;
    res.detail = "thomas-vs-dense max relative discrepancy " + num(worst) +
                 " over 200 systems (J up to 2000), relaxation-vs-newton gap " + num(gap);
    return res;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<CriterionResult()> fn;
    };
    const std::vector<Entry> criteria{
        {"global second-order convergence (traj and midpoint coefficient)",
         criterion_1_global_order},
        {"half-step estimate under coupled and tau-only refinement", criterion_2_half_step},
        {"suboptimal startup initialization degrades the fitted order",
         criterion_3_suboptimal_init},
        {"mollified and plain runs coincide inside the identity band", criterion_4_coincidence},
        {"summation-by-parts and energy identities", criterion_5_summation_by_parts},
        {"discrete Sobolev and Poincare inequalities", criterion_6_sobolev_poincare},
        {"mollifier construction (Hermite conditions, joins, bound, identity band)",
         criterion_7_mollifier},
        {"elliptic projection bound and rate", criterion_8_elliptic_projection},
        {"consistency-probe rates", criterion_9_consistency_rates},
        {"solver oracle (Thomas vs dense; relaxation vs Newton on linear data)",
         criterion_10_solver_oracle},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        const CriterionResult res = criteria[i].fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu: %s — %s [%.2fs]\n", res.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, res.detail.c_str(), secs);
        if (!res.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}

#pragma once

#include <vector>

#include "brfd/scheme.hpp"

namespace brfd {

/// How the time step follows the mesh width across refinement levels.
enum class Coupling {
    TauProportionalToH,  // tau = c * h, N rounded to keep N * tau = T
    FixedTau,            // refine h only
    FixedH,              // refine tau only
};

struct RefinementPlan {
    int base_interior_nodes = 19;  // J at the coarsest level
    int base_steps = 20;           // N at the coarsest level
    int levels = 4;
    Coupling coupling = Coupling::TauProportionalToH;
    double tau_over_h = 1.0;  // c in tau = c * h
};

struct LevelErrors {
    double traj_h1 = 0.0;  // max_n |u^n - U^n|_{1,h}
    double half_h1 = 0.0;  // |u^{1/2} - U^{1/2}|_{1,h}
    double phi_h1 = 0.0;   // max_n |g(u^{n+1/2}) - Phi^{n+1/2}|_{1,h}
    double l2 = 0.0;       // max_n ||u^n - U^n||_{0,h}
    double inf = 0.0;      // max_n |u^n - U^n|_{inf,h}
};

struct LevelResult {
    int level = 0;
    int J = 0;
    int N = 0;
    double h = 0.0;
    double tau = 0.0;
    LevelErrors err;
    double condition_margin = 0.0;           // min over the run's linear solves
    std::optional<bool> identity_regime;     // MBRFD only
};

struct OrderFit {
    double slope = 0.0;             // guarded fit (coarsest dropped when pre-asymptotic)
    double slope_all_levels = 0.0;  // plain least-squares fit over all kept levels
    std::vector<double> per_pair;   // log2-style pairwise slopes between kept levels
    bool at_floor = false;          // some level sat below the 1e-13 error floor
    bool pre_asymptotic = false;    // pairwise slopes spread by more than 0.3
};

struct ConvergenceReport {
    std::vector<LevelResult> levels;
    OrderFit order_traj_h1;
    OrderFit order_half_h1;
    OrderFit order_phi_h1;
    /// Set on mollified runs: whether every level stayed in the identity band.
    std::optional<bool> mbrfd_identity_regime;
};

/// Errors of a stride-1 trajectory against the problem's exact solution.
LevelErrors measure_errors(const Trajectory& traj, const Problem& p, const Mesh& m,
                           const TimeGrid& tg);

/// Least-squares slope of log(err) against log(step), with pairwise slopes,
/// an at-floor guard for errors below 1e-13 and a pre-asymptotic guard that
/// refits without the coarsest level when the pairwise slopes spread.
OrderFit estimate_order(const std::vector<double>& errs, const std::vector<double>& steps);

/// Mesh/time-grid sizes of one refinement level under the plan's coupling.
void plan_level(const RefinementPlan& plan, double length, double T, int level, int& J, int& N);

ConvergenceReport refinement_study(const Problem& p, double x_a, double x_b, double T,
                                   const RefinementPlan& plan, const SchemeVariant& variant,
                                   int jobs = 1);

}  // namespace brfd

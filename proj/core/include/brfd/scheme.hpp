#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brfd/grid.hpp"
#include "brfd/problems.hpp"

namespace brfd {

/// Newton failed to meet its residual target within the iteration budget.
class NewtonDivergenceError : public std::runtime_error {
public:
    NewtonDivergenceError(int step, double residual)
        : std::runtime_error("Newton did not converge at step " + std::to_string(step) +
                             " (residual " + std::to_string(residual) + ")"),
          step(step),
          residual(residual) {}
    int step;
    double residual;
};

struct SchemeVariant {
    enum class Kind { Brfd, Mbrfd, BrfdSuboptimalInit, CrankNicolsonNewton };

    Kind kind = Kind::Brfd;
    double delta = 0.0;        // Mbrfd only
    double newton_tol = 1e-12; // CrankNicolsonNewton only
    int newton_max_iter = 25;

    static SchemeVariant brfd() { return {}; }
    static SchemeVariant mbrfd(double delta) {
        if (!(delta > 0.0)) throw std::invalid_argument("mbrfd: delta must be positive");
        SchemeVariant v;
        v.kind = Kind::Mbrfd;
        v.delta = delta;
        return v;
    }
    static SchemeVariant brfd_suboptimal_init() {
        SchemeVariant v;
        v.kind = Kind::BrfdSuboptimalInit;
        return v;
    }
    static SchemeVariant crank_nicolson(double tol = 1e-12, int max_iter = 25) {
        if (!(tol > 0.0)) throw std::invalid_argument("crank_nicolson: tol must be positive");
        if (max_iter < 1) throw std::invalid_argument("crank_nicolson: max_iter must be >= 1");
        SchemeVariant v;
        v.kind = Kind::CrankNicolsonNewton;
        v.newton_tol = tol;
        v.newton_max_iter = max_iter;
        return v;
    }

    bool is_relaxation() const { return kind != Kind::CrankNicolsonNewton; }
};

/// Snapshot after reaching time node n. phi holds the midpoint coefficient of
/// the step that produced u (defined once n >= 1); u_half is kept from the
/// startup step.
struct SchemeState {
    int n = 0;
    InteriorGridFunction u{2};
    std::optional<InteriorGridFunction> u_half;
    std::optional<GridFunction> phi;
    double condition_margin = std::numeric_limits<double>::infinity();
    bool mollifier_identity = true;  // MBRFD: no saturation seen so far
};

struct Trajectory {
    std::vector<int> steps;                   // recorded time-node indices
    std::vector<InteriorGridFunction> states; // U at those nodes
    std::optional<InteriorGridFunction> u_half;
    std::vector<GridFunction> phis;           // midpoint coefficients, full sequence at stride 1
    std::vector<double> condition_margins;    // one per linear solve
    bool condition_warning = false;
    std::optional<bool> mollifier_identity_regime;  // MBRFD runs only
    int record_stride = 1;
    int total_steps = 0;
};

/// Startup: U^0 from the initial data (compatibility enforced) and the half
/// step with the coefficient frozen at g(u^0). Identical for all relaxation
/// variants; it is a linear solve, not a nonlinear one.
SchemeState scheme_initialize(const Problem& p, const Mesh& m, const TimeGrid& tg);

/// First full step: defines the startup midpoint coefficient and advances to n = 1.
SchemeState scheme_first_step(SchemeState state, const Problem& p, const Mesh& m,
                              const TimeGrid& tg, const SchemeVariant& variant);

/// Reflection update of the midpoint coefficient followed by the averaged
/// linear step; advances n -> n+1 for n >= 1.
SchemeState scheme_advance(SchemeState state, const Problem& p, const Mesh& m, const TimeGrid& tg,
                           const SchemeVariant& variant);

/// One fully nonlinear averaged step solved by Newton iteration.
InteriorGridFunction crank_nicolson_step(const InteriorGridFunction& u, int n, const Problem& p,
                                         const Mesh& m, const TimeGrid& tg, double tol,
                                         int max_iter);

Trajectory run(const Problem& p, const Mesh& m, const TimeGrid& tg, const SchemeVariant& variant,
               int record_stride = 1);

}  // namespace brfd

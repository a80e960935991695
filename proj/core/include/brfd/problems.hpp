#pragma once

#include <functional>
#include <optional>
#include <string>

#include "brfd/grid.hpp"

namespace brfd {

/// Closed-form solution with the derivatives the residual probes need.
/// All callables take (t, x).
struct ExactSolution {
    std::function<double(double, double)> u;
    std::function<double(double, double)> u_t;
    std::function<double(double, double)> u_x;
    std::function<double(double, double)> u_xx;
};

/// Data for u_t = u_xx + g(u) u + f with homogeneous Dirichlet boundaries.
struct Problem {
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    std::function<double(double, double)> f;  // (t, x)
    std::function<double(double)> u0;
    std::optional<ExactSolution> exact;
};

/// Method of manufactured solutions: f := u_t - u_xx - g(u) u, u0 := u(0, .).
Problem manufacture(ExactSolution exact, std::function<double(double)> g,
                    std::function<double(double)> g_prime);

/// Built-in catalog: "zero", "mms_exp_sine_gsin", "mms_exp_sine_gu",
/// "linear_heat_mode_<k>" (plain "linear_heat_mode_k" means k = 1).
Problem catalog_problem(const std::string& name, double x_a, double x_b);

/// Time consistency defect of the full-step averaged relation at step n
/// (0 <= n <= N-1), computed by rearrangement; endpoints zeroed.
InteriorGridFunction residual_time_node(const Problem& p, const Mesh& m, const TimeGrid& tg, int n);

/// Same defect for the startup half step.
InteriorGridFunction residual_half_node(const Problem& p, const Mesh& m, const TimeGrid& tg);

/// The four pieces of the half-step defect: a and b carry second/third time
/// derivatives, d the forcing midpoint defect; c is the genuinely first-order
/// piece driven by the frozen coefficient g(u^0).
struct HalfResidualParts {
    InteriorGridFunction a;
    InteriorGridFunction b;
    InteriorGridFunction c;
    InteriorGridFunction d;
};
HalfResidualParts residual_half_parts(const Problem& p, const Mesh& m, const TimeGrid& tg);

/// Spatial truncation part: sampled second-derivative average minus the
/// discrete Laplacian of the averaged samples, at step n / at the half step.
InteriorGridFunction residual_space(const Problem& p, const Mesh& m, const TimeGrid& tg, int n);
InteriorGridFunction residual_space_half(const Problem& p, const Mesh& m, const TimeGrid& tg);

/// Midpoint reflection defect (g(u^{n+1/2}) + g(u^{n-1/2}))/2 - g(u^n), 1 <= n <= N-1.
InteriorGridFunction residual_midpoint(const Problem& p, const Mesh& m, const TimeGrid& tg, int n);

/// Grid function whose discrete Laplacian matches the given second-derivative
/// samples. The system is always solvable on the zero-boundary subspace.
InteriorGridFunction elliptic_projection(const InteriorGridFunction& v_xx_samples, const Mesh& m);

/// Convenience wrapper sampling u_xx(t, .) of an exact solution.
InteriorGridFunction elliptic_projection_at(const ExactSolution& exact, double t, const Mesh& m);

/// Fourth-derivative defect kernel, recovered by rearrangement:
/// (12/h^2) * (Laplacian(v samples) - v'' samples). Requires v to vanish at
/// the endpoints, as all projected quantities here do.
InteriorGridFunction elliptic_residual(const InteriorGridFunction& v_samples,
                                       const InteriorGridFunction& v_xx_samples, const Mesh& m);

}  // namespace brfd

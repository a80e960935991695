#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "brfd/grid.hpp"

namespace brfd {

/// Elimination hit a pivot below the singularity threshold.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(std::size_t pivot_index, double pivot)
        : std::runtime_error("singular tridiagonal system: pivot " + std::to_string(pivot) +
                             " at row " + std::to_string(pivot_index)),
          pivot_index(pivot_index) {}
    SingularSystemError(const std::string& message, std::size_t pivot_index)
        : std::runtime_error(message), pivot_index(pivot_index) {}
    std::size_t pivot_index;
};

/// Tridiagonal operator on the interior unknowns v_1..v_J.
struct Tridiagonal {
    std::vector<double> lower;  // J-1
    std::vector<double> diag;   // J
    std::vector<double> upper;  // J-1

    std::size_t order() const { return diag.size(); }
};

struct StepCondition {
    bool pass;
    double margin;  // 1/2 - dt * phi_bound / 4
};

/// Matrix of v -> v - (dt/2) Laplacian(v) - (dt/2) phi (x) v on interior nodes:
/// diag_j = 1 + dt/h^2 - (dt/2) phi_j, off-diagonals -dt/(2 h^2). The same
/// assembly serves the startup half step (dt = tau/2) and full steps (dt = tau).
Tridiagonal assemble_step_operator(const Mesh& m, double dt, const GridFunction& phi);

/// Thomas elimination without pivoting; the solvability condition enforced by
/// check_step_condition is exactly the diagonally dominant regime where this is safe.
std::vector<double> solve(const Tridiagonal& t, std::vector<double> rhs);

/// y = T x.
std::vector<double> matvec(const Tridiagonal& t, const std::vector<double>& x);

/// Pass iff dt * (phi_bound / 4) <= 1/2; callers treat failure as a warning.
StepCondition check_step_condition(double dt, double phi_bound);

}  // namespace brfd

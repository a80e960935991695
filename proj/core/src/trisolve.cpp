#include "brfd/trisolve.hpp"

#include <cmath>

namespace brfd {

Tridiagonal assemble_step_operator(const Mesh& m, double dt, const GridFunction& phi) {
    if (!(dt > 0.0)) throw std::invalid_argument("assemble_step_operator: dt must be positive");
    require_conforming(phi, m, "assemble_step_operator");

    const auto n = static_cast<std::size_t>(m.J());
    const double off = -0.5 * dt / (m.h() * m.h());
    Tridiagonal t;
    t.lower.assign(n - 1, off);
    t.upper.assign(n - 1, off);
    t.diag.resize(n);
    for (std::size_t j = 0; j < n; ++j) t.diag[j] = 1.0 - 2.0 * off - 0.5 * dt * phi[j + 1];
    return t;
}

std::vector<double> solve(const Tridiagonal& t, std::vector<double> rhs) {
    const std::size_t n = t.order();
    if (rhs.size() != n) throw std::invalid_argument("solve: rhs length mismatch");
    if (t.lower.size() + 1 != n || t.upper.size() + 1 != n)
        throw std::invalid_argument("solve: inconsistent band lengths");

    double max_diag = 0.0;
    for (double d : t.diag) max_diag = std::max(max_diag, std::abs(d));
    const double pivot_floor = 1e-14 * max_diag;

    std::vector<double> scratch(n > 1 ? n - 1 : 0);
    double pivot = t.diag[0];
    if (std::abs(pivot) <= pivot_floor) throw SingularSystemError(0, pivot);
    rhs[0] /= pivot;
    for (std::size_t j = 1; j < n; ++j) {
        scratch[j - 1] = t.upper[j - 1] / pivot;
        pivot = t.diag[j] - t.lower[j - 1] * scratch[j - 1];
        if (std::abs(pivot) <= pivot_floor) throw SingularSystemError(j, pivot);
        rhs[j] = (rhs[j] - t.lower[j - 1] * rhs[j - 1]) / pivot;
    }
    for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= scratch[j] * rhs[j + 1];
    return rhs;
}

std::vector<double> matvec(const Tridiagonal& t, const std::vector<double>& x) {
    const std::size_t n = t.order();
    if (x.size() != n) throw std::invalid_argument("apply: vector length mismatch");
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = t.diag[j] * x[j];
        if (j > 0) s += t.lower[j - 1] * x[j - 1];
        if (j + 1 < n) s += t.upper[j] * x[j + 1];
        y[j] = s;
    }
    return y;
}

StepCondition check_step_condition(double dt, double phi_bound) {
    if (dt < 0.0 || phi_bound < 0.0)
        throw std::invalid_argument("check_step_condition: negative input");
    const double margin = 0.5 - dt * phi_bound / 4.0;
    return StepCondition{margin >= 0.0, margin};
}

}  // namespace brfd

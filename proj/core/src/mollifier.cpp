#include "brfd/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brfd {

namespace {

// Two-point Hermite conditions pinning the unit bridge, written in the shifted
// variable s = y - 1 on [0, 1]: p(0) = 1, p'(0) = 1, p''(0) = p'''(0) = 0,
// p(1) = 2, p'(1) = p''(1) = p'''(1) = 0. Solved once with partially pivoted
// elimination. The shifted basis keeps the coefficients small (the monomial
// ones reach 1480 and cancel violently near the knots).
std::array<double, 8> solve_unit_bridge_shifted() {
    constexpr int n = 8;
    double a[n][n + 1] = {};
    const double knots[2] = {0.0, 1.0};
    const double rhs[2][4] = {{1.0, 1.0, 0.0, 0.0}, {2.0, 0.0, 0.0, 0.0}};
    int row = 0;
    for (int knot = 0; knot < 2; ++knot) {
        for (int order = 0; order < 4; ++order, ++row) {
            for (int i = order; i < n; ++i) {
                double factor = 1.0;
                for (int t = 0; t < order; ++t) factor *= static_cast<double>(i - t);
                double power = 1.0;
                for (int t = 0; t < i - order; ++t) power *= knots[knot];
                a[row][i] = factor * power;
            }
            a[row][n] = rhs[knot][order];
        }
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        for (int c = col; c <= n; ++c) std::swap(a[col][c], a[pivot][c]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::array<double, 8> coeffs{};
    for (int r = n - 1; r >= 0; --r) {
        double s = a[r][n];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * coeffs[static_cast<std::size_t>(c)];
        coeffs[static_cast<std::size_t>(r)] = s / a[r][r];
    }
    return coeffs;
}

const std::array<double, 8>& shifted_bridge_coefficients() {
    static const std::array<double, 8> coeffs = solve_unit_bridge_shifted();
    return coeffs;
}

// Monomial coefficients of p_1(y) = sum_k c_k (y - 1)^k via binomial expansion;
// the arithmetic stays in exactly representable integers.
std::array<double, 8> expand_to_monomial(const std::array<double, 8>& shifted) {
    std::array<double, 8> monomial{};
    std::array<std::array<double, 8>, 8> binom{};
    for (int k = 0; k < 8; ++k) {
        binom[static_cast<std::size_t>(k)][0] = 1.0;
        for (int i = 1; i <= k; ++i)
            binom[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                binom[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)] +
                (i < k ? binom[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)] : 0.0);
    }
    for (int k = 0; k < 8; ++k) {
        // (y - 1)^k = sum_i C(k, i) y^i (-1)^(k-i)
        for (int i = 0; i <= k; ++i) {
            const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
            monomial[static_cast<std::size_t>(i)] +=
                shifted[static_cast<std::size_t>(k)] *
                binom[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * sign;
        }
    }
    return monomial;
}

const std::array<double, 8>& monomial_bridge_coefficients() {
    static const std::array<double, 8> coeffs = expand_to_monomial(shifted_bridge_coefficients());
    return coeffs;
}

// Horner evaluation of the order-th derivative in the shifted variable.
double bridge_derivative_shifted(double s, int order) {
    const std::array<double, 8>& c = shifted_bridge_coefficients();
    double acc = 0.0;
    for (int i = 7; i >= order; --i) {
        double factor = 1.0;
        for (int t = 0; t < order; ++t) factor *= static_cast<double>(i - t);
        acc = acc * s + c[static_cast<std::size_t>(i)] * factor;
    }
    return acc;
}

}  // namespace

Mollifier::Mollifier(double delta) : delta_(delta), coeffs_(monomial_bridge_coefficients()) {
    if (!(delta > 0.0)) throw std::invalid_argument("Mollifier: delta must be positive");
}

double Mollifier::eval(double x, int order) const {
    if (order < 0 || order > 3) throw std::invalid_argument("Mollifier::eval: order must be 0..3");
    if (x < 0.0) {
        // Odd extension: even-order derivatives flip sign, odd-order ones do not.
        const double v = eval(-x, order);
        return (order % 2 == 0) ? -v : v;
    }
    if (x < delta_) {
        if (order == 0) return x;
        return order == 1 ? 1.0 : 0.0;
    }
    if (x <= 2.0 * delta_) {
        // s = (x - delta)/delta in [0, 1]; the subtraction is exact on this branch.
        const double s = (x - delta_) / delta_;
        // p_delta^(k)(x) = delta^(1-k) * p_1^(k); exact powers keep the identity
        // band exact at the left knot.
        double scale = 1.0;
        if (order == 0) scale = delta_;
        else if (order == 2) scale = 1.0 / delta_;
        else if (order == 3) scale = 1.0 / (delta_ * delta_);
        const double value = scale * bridge_derivative_shifted(s, order);
        // the plateau must never be overshot by roundoff
        if (order == 0) return std::min(value, 2.0 * delta_);
        return value;
    }
    return order == 0 ? 2.0 * delta_ : 0.0;
}

GridFunction Mollifier::apply(const GridFunction& v) const {
    GridFunction out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = eval(v[j]);
    return out;
}

InteriorGridFunction Mollifier::apply(const InteriorGridFunction& v) const {
    return InteriorGridFunction(apply(static_cast<const GridFunction&>(v)));
}

}  // namespace brfd

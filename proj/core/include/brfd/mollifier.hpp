#pragma once

#include <array>

#include "brfd/grid.hpp"

namespace brfd {

/// Odd C^3 saturation function: identity on [0, delta], a degree-7 Hermite
/// bridge on (delta, 2*delta], the constant 2*delta beyond. The bridge for
/// general delta is the rescaled unit bridge, p_delta(x) = delta * p_1(x/delta).
class Mollifier {
public:
    explicit Mollifier(double delta);

    double delta() const { return delta_; }

    /// sup |n_delta| over the real line.
    double sup() const { return 2.0 * delta_; }

    /// Monomial coefficients of the unit bridge p_1, ascending degree.
    const std::array<double, 8>& bridge_coefficients() const { return coeffs_; }

    /// n_delta or one of its first three derivatives. At exactly x = delta or
    /// x = 2*delta the polynomial-side value is returned (the C^3 joins make
    /// the choice immaterial at the tested tolerance).
    double eval(double x, int order = 0) const;

    GridFunction apply(const GridFunction& v) const;
    InteriorGridFunction apply(const InteriorGridFunction& v) const;

private:
    double delta_;
    std::array<double, 8> coeffs_;
};

}  // namespace brfd

#pragma once

#include "dorfman/chart.hpp"
#include "dorfman/polynomial.hpp"

namespace dorfman {

/// Canonical graded Poisson bracket of the chart.
///
/// This is the single place the sign convention is fixed; everything else in
/// the library inherits it.  With left derivatives throughout:
///
/// Even chart (weight -2 symplectic bracket), for parity-homogeneous f:
///
///   [f,g] = sum_a ( df/dp_a dg/dx^a - df/dx^a dg/dp_a )
///         + (-1)^{f+1} sum_a ( df/dpi_a dg/dxi^a + df/dxi^a dg/dpi_a )
///
/// equivalently (d_r f/dp_a)(d_l g/dx^a) - (d_r f/dx^a)(d_l g/dp_a)
/// + (d_r f/dpi_a)(d_l g/dxi^a) + (d_r f/dxi^a)(d_l g/dpi_a) with the right
/// derivative in the first slot.  Generator relations: [p_a, x^b] = delta,
/// [pi_a, xi^b] = [xi^b, pi_a] = delta.
///
/// Odd chart (Schouten bracket on the shifted cotangent bundle):
///
///   [f,g] = sum_a ( df/dx^a dg/dxs_a - (-1)^{f+1} df/dxs_a dg/dx^a )
///
/// Both satisfy their graded antisymmetry, Leibniz and Jacobi identities, and
/// the even bracket reproduces the classical Dorfman/Cartan calculus through
/// the derived-bracket layer; those identities are what pin the convention.
inline SuperPolynomial poisson_bracket(const SuperPolynomial& f, const SuperPolynomial& g) {
    require_same_chart(f.chart(), g.chart());
    const ChartPtr& chart = f.chart();
    const unsigned dim = chart->dim();
    SuperPolynomial out(chart);

    const SuperPolynomial f_even = f.parity_component(Parity::even);
    const SuperPolynomial f_odd = f.parity_component(Parity::odd);

    if (chart->bracket_parity() == BracketParity::even) {
        for (unsigned a = 1; a <= dim; ++a) {
            const auto x = chart->position(CoordKind::base, a);
            const auto xi = chart->position(CoordKind::fiber_odd_1, a);
            const auto pi = chart->position(CoordKind::fiber_odd_2, a);
            const auto p = chart->position(CoordKind::momentum, a);
            out += f.partial_derivative(p) * g.partial_derivative(x);
            out -= f.partial_derivative(x) * g.partial_derivative(p);
            // (-1)^{f+1}: minus on even f-terms, plus on odd ones.
            out -= f_even.partial_derivative(pi) * g.partial_derivative(xi);
            out -= f_even.partial_derivative(xi) * g.partial_derivative(pi);
            out += f_odd.partial_derivative(pi) * g.partial_derivative(xi);
            out += f_odd.partial_derivative(xi) * g.partial_derivative(pi);
        }
    } else {
        for (unsigned a = 1; a <= dim; ++a) {
            const auto x = chart->position(CoordKind::base, a);
            const auto xs = chart->position(CoordKind::antimomentum, a);
            out += f.partial_derivative(x) * g.partial_derivative(xs);
            // -(-1)^{f+1}: plus on even f-terms, minus on odd ones.
            out += f_even.partial_derivative(xs) * g.partial_derivative(x);
            out -= f_odd.partial_derivative(xs) * g.partial_derivative(x);
        }
    }
    return out;
}

}  // namespace dorfman

#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "dorfman/poisson.hpp"
#include "dorfman/polynomial.hpp"

namespace dorfman {

class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Projector onto the weight 0 and weight 1 components.
inline SuperPolynomial project_p(const SuperPolynomial& f) {
    return f.weight_component(0) + f.weight_component(1);
}

/// Secondary projector onto the weight 0 component.
inline SuperPolynomial project_w(const SuperPolynomial& f) {
    return f.weight_component(0);
}

/// An inner derivation Q = [theta, -] of the chart's Poisson algebra.
///
/// The generating Hamiltonian must satisfy P(theta) = 0, i.e. have no weight
/// 0 or weight 1 part; that is what makes Q preserve ker P (so PQP = PQ).
/// theta is odd in the standard setting, and `require_odd` enforces that for
/// callers that need it; the multivector lifts of odd multivector components
/// produce even Hamiltonian summands, which the bracket arithmetic handles
/// term by term, so oddness is not a construction-time requirement.
class HamiltonianDerivation {
public:
    explicit HamiltonianDerivation(SuperPolynomial theta, bool require_odd = false)
        : theta_(std::move(theta)), theta_squared_(theta_.chart()) {
        if (!project_p(theta_).is_zero())
            throw InvariantError(
                "theta must have no weight 0 or weight 1 component (P theta = 0)");
        if (require_odd && theta_.parity() != Parity::odd)
            throw InvariantError("theta must be odd");
        theta_squared_ = poisson_bracket(theta_, theta_) * Rational(1, 2);
    }

    const ChartPtr& chart() const { return theta_.chart(); }
    const SuperPolynomial& theta() const { return theta_; }

    /// Q f = [theta, f].
    SuperPolynomial apply(const SuperPolynomial& f) const { return poisson_bracket(theta_, f); }

    /// The Hamiltonian (1/2)[theta, theta] generating Q^2 as an inner
    /// derivation.  Kept independent of iterated application of Q.
    const SuperPolynomial& theta_squared() const { return theta_squared_; }

    bool is_homological() const { return theta_squared_.is_zero(); }
    bool is_odd() const { return theta_.parity() == Parity::odd; }

private:
    SuperPolynomial theta_;
    SuperPolynomial theta_squared_;
};

}  // namespace dorfman

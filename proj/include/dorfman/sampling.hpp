#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dorfman/polynomial.hpp"
#include "dorfman/section.hpp"

namespace dorfman {

/// Deterministic sampler for test inputs.  Draws are reduced modulo the
/// range directly from the engine output, so a given seed produces the same
/// values on every platform.  Sections follow the fixed recipe: polynomial
/// coefficients of degree <= 2 with integer coefficients in [-3, 3].
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Random polynomial in the base coordinates of total degree <= max_degree.
    SuperPolynomial base_polynomial(const ChartPtr& chart, unsigned max_degree = 2,
                                    int bound = 3) {
        SuperPolynomial f(chart);
        std::vector<unsigned> exps(chart->dim(), 0);
        emit_terms(chart, f, exps, 0, max_degree, bound);
        return f;
    }

    /// Random section: sum over a of c_a(x) xi^a + e_a(x) pi_a.  The chi-image
    /// is odd, so the section parity is even.
    SectionExpr section(const ChartPtr& chart) {
        SuperPolynomial chi(chart);
        for (unsigned a = 1; a <= chart->dim(); ++a) {
            chi += base_polynomial(chart) *
                   SuperPolynomial::coordinate(chart, CoordKind::fiber_odd_1, a);
            chi += base_polynomial(chart) *
                   SuperPolynomial::coordinate(chart, CoordKind::fiber_odd_2, a);
        }
        if (chi.is_zero())
            chi = SuperPolynomial::coordinate(chart, CoordKind::fiber_odd_1, 1);
        return SectionExpr(chi);
    }

    /// Random parity-homogeneous polynomial with small exponents, for the
    /// algebra axiom sweeps.
    SuperPolynomial homogeneous_polynomial(const ChartPtr& chart, Parity parity,
                                           unsigned terms = 3) {
        SuperPolynomial f(chart);
        unsigned guard = 0;
        while (f.term_count() < terms && guard++ < 40 * terms) {
            Monomial m(chart->size());
            for (std::size_t i = 0; i < chart->size(); ++i) {
                const auto& c = chart->coord(i);
                if (c.parity == Parity::odd)
                    m.set_exponent(i, static_cast<unsigned>(uniform_int(0, 1)));
                else if (c.kind == CoordKind::base)
                    m.set_exponent(i, static_cast<unsigned>(uniform_int(0, 2)));
                else
                    m.set_exponent(i, static_cast<unsigned>(uniform_int(0, 1)));
            }
            if (m.parity(*chart) != parity) continue;
            int c = uniform_int(-3, 3);
            if (c == 0) c = 1;
            f.add_term(m, c);
        }
        return f;
    }

private:
    void emit_terms(const ChartPtr& chart, SuperPolynomial& f, std::vector<unsigned>& exps,
                    unsigned pos, unsigned budget, int bound) {
        if (pos == exps.size()) {
            const int c = uniform_int(-bound, bound);
            if (c == 0) return;
            Monomial m(chart->size());
            for (unsigned a = 0; a < exps.size(); ++a) m.set_exponent(a, exps[a]);
            f.add_term(m, c);
            return;
        }
        for (unsigned e = 0; e <= budget; ++e) {
            exps[pos] = e;
            emit_terms(chart, f, exps, pos + 1, budget - e, bound);
        }
        exps[pos] = 0;
    }

    std::mt19937_64 rng_;
};

}  // namespace dorfman

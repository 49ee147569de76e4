#pragma once

#include <utility>
#include <vector>

#include "dorfman/derivation.hpp"
#include "dorfman/poisson.hpp"
#include "dorfman/polynomial.hpp"

namespace dorfman {

/// A section of the pseudo-Euclidean bundle, represented purely by its image
/// under the parity-reversing isomorphism chi into the weight 1 functions.
/// The section's own parity is chi's parity plus one; bracket-built sections
/// carry their formal parity even when the value happens to vanish.
class SectionExpr {
public:
    /// Wrap a weight 1, parity-homogeneous value; the section parity is
    /// derived from the value.
    explicit SectionExpr(SuperPolynomial chi) : chi_(std::move(chi)) {
        validate_weight();
        const auto p = chi_.parity();
        if (!p) throw InvariantError("section value must be parity-homogeneous");
        parity_ = flip(*p);
    }

    /// Wrap with a declared section parity (used by the bracket operations,
    /// whose results carry a formal parity independent of vanishing).
    SectionExpr(SuperPolynomial chi, Parity section_parity)
        : chi_(std::move(chi)), parity_(section_parity) {
        validate_weight();
        if (!chi_.is_zero()) {
            const auto p = chi_.parity();
            if (!p || *p != flip(parity_))
                throw InvariantError("section value parity conflicts with declared parity");
        }
    }

    const SuperPolynomial& chi() const { return chi_; }
    const ChartPtr& chart() const { return chi_.chart(); }
    Parity section_parity() const { return parity_; }
    bool is_zero() const { return chi_.is_zero(); }

private:
    void validate_weight() const {
        if (!chi_.is_weight_homogeneous(1))
            throw InvariantError("section value must lie in the weight 1 component");
    }

    SuperPolynomial chi_;
    Parity parity_ = Parity::even;
};

/// The bilinear form on sections: g(u,v) = (-1)^{u} [chi_u, chi_v], a weight
/// zero function, graded symmetric in u and v.
inline SuperPolynomial pairing_g(const SectionExpr& u, const SectionExpr& v) {
    SuperPolynomial b = poisson_bracket(u.chi(), v.chi());
    if (u.section_parity() == Parity::odd) b *= Rational(-1);
    return b;
}

struct KoszulSign {
    int sgn = 1;     // permutation parity
    int koszul = 1;  // sign from moving graded elements past one another
    int combined() const { return sgn * koszul; }
};

/// Signs of a permutation acting on a list of graded elements.  `sigma` holds
/// 0-based images: position t of the output receives element sigma[t].
inline KoszulSign koszul_sign(const std::vector<unsigned>& sigma,
                              const std::vector<Parity>& parities) {
    if (sigma.size() != parities.size())
        throw std::invalid_argument("permutation and parity list sizes differ");
    KoszulSign out;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        for (std::size_t b = a + 1; b < sigma.size(); ++b) {
            if (sigma[a] > sigma[b]) {
                out.sgn = -out.sgn;
                if (parities[sigma[a]] == Parity::odd && parities[sigma[b]] == Parity::odd)
                    out.koszul = -out.koszul;
            }
        }
    }
    return out;
}

}  // namespace dorfman

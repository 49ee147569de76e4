#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "dorfman/derivation.hpp"
#include "dorfman/section.hpp"
#include "dorfman/unshuffles.hpp"

namespace dorfman {

/// Left-nested bracket [...[[H,a1],a2],...,ak] generated by a Hamiltonian H.
inline SuperPolynomial nested_bracket_from(const SuperPolynomial& hamiltonian,
                                           const std::vector<SuperPolynomial>& args) {
    if (args.empty()) throw std::invalid_argument("nested bracket needs at least one argument");
    SuperPolynomial acc = poisson_bracket(hamiltonian, args.front());
    for (std::size_t t = 1; t < args.size(); ++t) acc = poisson_bracket(acc, args[t]);
    return acc;
}

/// [...[Q a1, a2],...,ak] for Q = [theta, -].
inline SuperPolynomial nested_bracket(const HamiltonianDerivation& d,
                                      const std::vector<SuperPolynomial>& args) {
    return nested_bracket_from(d.theta(), args);
}

namespace detail {

inline Parity sum_section_parities(const std::vector<SectionExpr>& sections) {
    Parity s = Parity::even;
    for (const auto& u : sections) s = s + u.section_parity();
    return s;
}

/// (-1)^{(k-1)u1 + (k-2)u2 + ... + u_{k-1}} over the first k-1 sections.
inline int descending_weight_sign(const std::vector<SectionExpr>& sections) {
    const std::size_t k = sections.size();
    unsigned e = 0;
    for (std::size_t t = 0; t + 1 < k; ++t)
        if (sections[t].section_parity() == Parity::odd) e += static_cast<unsigned>(k - 1 - t);
    return (e & 1) ? -1 : 1;
}

/// Wraps an engine-produced weight 1 value as a section.  Nonzero values
/// determine their own parity; zero values keep the formal parity expected
/// from the argument count, which is what downstream sign bookkeeping uses.
inline SectionExpr make_section(SuperPolynomial value, Parity formal) {
    if (value.is_zero()) return SectionExpr(std::move(value), formal);
    const auto p = value.parity();
    if (!p) throw InvariantError("bracket produced a parity-mixed section value");
    return SectionExpr(std::move(value), flip(*p));
}

}  // namespace detail

/// chi-image of the k-th higher derived bracket generated by the Hamiltonian:
///
///   (+/-) P[...[Q chi_1, chi_2],...,chi_k]
///       - (+/-) [P[...[Q chi_1, chi_2],...,chi_{k-1}], chi_k]
///
/// with the sign (-1)^{(k-1)u1+...+u_{k-1}} in front of both terms.  Since
/// P(H) = 0 is required of every generating Hamiltonian, the k = 1 case
/// degenerates correctly: the subtracted term [P(H), chi_1] vanishes.
inline SuperPolynomial derived_bracket_chi(const SuperPolynomial& hamiltonian,
                                           const std::vector<SectionExpr>& sections) {
    if (sections.empty())
        throw std::invalid_argument("derived bracket needs at least one section");
    SuperPolynomial acc = hamiltonian;  // nested chain, starting from H itself
    SuperPolynomial prev = acc;
    for (const auto& u : sections) {
        prev = acc;
        acc = poisson_bracket(acc, u.chi());
    }
    SuperPolynomial value =
        project_p(acc) - poisson_bracket(project_p(prev), sections.back().chi());
    const int sign = detail::descending_weight_sign(sections);
    if (sign < 0) value *= Rational(-1);
    return value;
}

/// The k-th higher derived Dorfman bracket d_k(u_1,...,u_k).  The result lies
/// in the weight 1 component and carries section parity k + u1 + ... + uk.
inline SectionExpr dorfman_bracket(const HamiltonianDerivation& d,
                                   const std::vector<SectionExpr>& sections) {
    SuperPolynomial value = derived_bracket_chi(d.theta(), sections);
    Parity parity = detail::sum_section_parities(sections);
    if (sections.size() & 1) parity = flip(parity);
    return detail::make_section(std::move(value), parity);
}

/// The n-th derived bracket evaluated with Q replaced by Q^2, computed as the
/// inner derivation generated by (1/2)[theta,theta] rather than by iterating
/// Q, which keeps it independent of the Loday-identity evaluation.  The n-th
/// Loday identity satisfies chi(J_n) + q_squared_dorfman(...) = 0.
inline SectionExpr q_squared_dorfman(const HamiltonianDerivation& d,
                                     const std::vector<SectionExpr>& sections) {
    SuperPolynomial value = derived_bracket_chi(d.theta_squared(), sections);
    Parity parity = flip(detail::sum_section_parities(sections));
    if (sections.size() & 1) parity = flip(parity);
    return detail::make_section(std::move(value), parity);
}

/// The k-th defect map D_k(u_1,...,u_{k-2} | f) for a weight 0 function f:
/// the weight 1 part of [...[Q chi_1,...,chi_{k-2}], f], with the sign
/// (-1)^{u1 (k-3) + ... + u_{k-3}}.
inline SectionExpr defect_map(const HamiltonianDerivation& d,
                              const std::vector<SectionExpr>& sections,
                              const SuperPolynomial& f) {
    if (!f.is_weight_homogeneous(0) && !f.is_zero())
        throw InvariantError("defect map requires a weight 0 function");
    const auto fp = f.parity();
    if (!fp) throw InvariantError("defect map requires a parity-homogeneous function");
    const std::size_t k = sections.size() + 2;

    SuperPolynomial acc = d.theta();
    for (const auto& u : sections) acc = poisson_bracket(acc, u.chi());
    acc = poisson_bracket(acc, f);

    unsigned e = 0;
    for (std::size_t t = 0; t + 1 < sections.size(); ++t)
        if (sections[t].section_parity() == Parity::odd)
            e += static_cast<unsigned>(sections.size() - 1 - t);  // weights k-3, k-4, ..., 1
    SuperPolynomial value = acc.weight_component(1);
    if (e & 1) value *= Rational(-1);

    Parity parity = detail::sum_section_parities(sections) + *fp;
    if (k & 1) parity = flip(parity);
    return detail::make_section(std::move(value), parity);
}

/// Checks the adjacent-swap symmetry relation at position i (1-based,
/// 1 <= i < k):
///
///   d_k(...,u_i,u_{i+1},...) + (-1)^{u_i u_{i+1}} d_k(...,u_{i+1},u_i,...)
///     = (-1)^{(u_i+u_{i+1})(u_{i+2}+...+u_k)} D_k(..., no u_i,u_{i+1} | g(u_i,u_{i+1}))
inline bool symmetry_defect_check(const HamiltonianDerivation& d,
                                  const std::vector<SectionExpr>& sections, std::size_t i) {
    const std::size_t k = sections.size();
    if (i < 1 || i >= k) throw std::invalid_argument("swap position out of range");
    std::vector<SectionExpr> swapped = sections;
    std::swap(swapped[i - 1], swapped[i]);

    SuperPolynomial lhs = dorfman_bracket(d, sections).chi();
    SuperPolynomial swapped_val = dorfman_bracket(d, swapped).chi();
    const bool both_odd = sections[i - 1].section_parity() == Parity::odd &&
                          sections[i].section_parity() == Parity::odd;
    lhs += both_odd ? -swapped_val : swapped_val;

    std::vector<SectionExpr> rest;
    rest.reserve(k - 2);
    for (std::size_t t = 0; t < k; ++t)
        if (t != i - 1 && t != i) rest.push_back(sections[t]);
    SuperPolynomial g = pairing_g(sections[i - 1], sections[i]);
    SuperPolynomial rhs = defect_map(d, rest, g).chi();

    unsigned tail = 0;
    for (std::size_t t = i + 1; t < k; ++t)
        if (sections[t].section_parity() == Parity::odd) ++tail;
    const unsigned pair = (sections[i - 1].section_parity() == Parity::odd ? 1 : 0) +
                          (sections[i].section_parity() == Parity::odd ? 1 : 0);
    if ((pair * tail) & 1) rhs *= Rational(-1);

    return lhs == rhs;
}

struct LodayReport {
    std::size_t arity;
    std::vector<SectionExpr> arguments;
    SuperPolynomial residual;          // chi(J_n)
    SuperPolynomial q_squared_bracket; // q_squared_dorfman on the same arguments
    bool matched;                      // residual + q_squared_bracket == 0

    explicit LodayReport(const ChartPtr& chart)
        : arity(0), residual(chart), q_squared_bracket(chart), matched(false) {}
};

/// Evaluates the n-th higher Loday identity
///
///   J_n = sum_{i+j=n+1} sum_{k=j}^{n} sum_{sigma in Sh(k-j, j-1)}
///         K(sigma) (-1)^{(k+1)(j+1)} (-1)^{j (u_{sigma(1)}+...+u_{sigma(k-j)})}
///         d_i(u_{sigma(1)},...,u_{sigma(k-j)},
///             d_j(u_{sigma(k-j+1)},...,u_{sigma(k-1)}, u_k), u_{k+1},...,u_n)
///
/// and the matching Q^2 bracket.  sigma permutes the k-1 arguments before the
/// fixed u_k; the trailing arguments u_{k+1},...,u_n fill the outer bracket.
inline LodayReport loday_identity(const HamiltonianDerivation& d,
                                  const std::vector<SectionExpr>& sections) {
    const std::size_t n = sections.size();
    if (n == 0) throw std::invalid_argument("the Loday identity needs at least one argument");
    LodayReport report(d.chart());
    report.arity = n;
    report.arguments = sections;
    report.residual = SuperPolynomial::zero(d.chart());

    std::vector<Parity> parities(n);
    for (std::size_t t = 0; t < n; ++t) parities[t] = sections[t].section_parity();

    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = j; k <= n; ++k) {
            const auto unshuffles = enumerate_unshuffles(static_cast<unsigned>(k),
                                                         static_cast<unsigned>(j));
            for (const auto& sh : unshuffles) {
                // Koszul sign of sigma on the parities of u_1..u_{k-1}.
                std::vector<unsigned> perm0(sh.sigma.size());
                for (std::size_t t = 0; t < sh.sigma.size(); ++t) perm0[t] = sh.sigma[t] - 1;
                std::vector<Parity> head(parities.begin(), parities.begin() + (k - 1));
                const KoszulSign ks = koszul_sign(perm0, head);

                int sign = ks.combined();
                if (((k + 1) * (j + 1)) & 1) sign = -sign;
                unsigned front_odd = 0;
                for (std::size_t t = 0; t < k - j; ++t)
                    if (parities[sh.sigma[t] - 1] == Parity::odd) ++front_odd;
                if ((j * front_odd) & 1) sign = -sign;

                std::vector<SectionExpr> inner_args;
                inner_args.reserve(j);
                for (std::size_t t = k - j; t < k - 1; ++t)
                    inner_args.push_back(sections[sh.sigma[t] - 1]);
                inner_args.push_back(sections[k - 1]);

                std::vector<SectionExpr> outer_args;
                outer_args.reserve(n + 1 - j);
                for (std::size_t t = 0; t < k - j; ++t)
                    outer_args.push_back(sections[sh.sigma[t] - 1]);
                outer_args.push_back(dorfman_bracket(d, inner_args));
                for (std::size_t t = k; t < n; ++t) outer_args.push_back(sections[t]);

                SuperPolynomial term = dorfman_bracket(d, outer_args).chi();
                if (sign < 0) term *= Rational(-1);
                report.residual += term;
            }
        }
    }

    report.q_squared_bracket = q_squared_dorfman(d, sections).chi();
    report.matched = (report.residual + report.q_squared_bracket).is_zero();
    return report;
}

/// The diagonal Loday identity for an even section, computed through the
/// signed unshuffle counts instead of full enumeration:
///
///   J_n(u) = sum_{i+j=n+1} sum_{k=j}^{n} C(k,j) (-1)^{(k+1)(j+1)}
///            d_i(u,...,u, d_j(u,...,u), u,...,u)
inline SuperPolynomial polarised_loday(const HamiltonianDerivation& d, const SectionExpr& u,
                                       std::size_t n) {
    if (u.section_parity() != Parity::even)
        throw InvariantError("polarisation requires an even section");
    if (n == 0) throw std::invalid_argument("arity must be positive");
    SuperPolynomial residual = SuperPolynomial::zero(d.chart());
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = j; k <= n; ++k) {
            const long long count = signed_count_closed_form(static_cast<unsigned>(k),
                                                             static_cast<unsigned>(j));
            if (count == 0) continue;
            const SectionExpr inner = dorfman_bracket(d, std::vector<SectionExpr>(j, u));
            std::vector<SectionExpr> outer_args(k - j, u);
            outer_args.push_back(inner);
            outer_args.insert(outer_args.end(), n - k, u);
            long long c = count;
            if (((k + 1) * (j + 1)) & 1) c = -c;
            residual += dorfman_bracket(d, outer_args).chi() * Rational(c);
        }
    }
    return residual;
}

/// The k-th Courant bracket: graded skew-symmetrisation of the Dorfman
/// bracket, (1/k!) sum_{sigma} K(sigma) d_k(u_{sigma(1)},...,u_{sigma(k)}).
inline SectionExpr courant(const HamiltonianDerivation& d,
                           const std::vector<SectionExpr>& sections) {
    const std::size_t k = sections.size();
    if (k == 0) throw std::invalid_argument("the Courant bracket needs at least one argument");
    std::vector<Parity> parities(k);
    for (std::size_t t = 0; t < k; ++t) parities[t] = sections[t].section_parity();

    std::vector<unsigned> perm(k);
    std::iota(perm.begin(), perm.end(), 0u);
    SuperPolynomial acc = SuperPolynomial::zero(d.chart());
    Rational factorial = 1;
    for (std::size_t t = 2; t <= k; ++t) factorial *= static_cast<int>(t);
    do {
        std::vector<SectionExpr> args;
        args.reserve(k);
        for (unsigned idx : perm) args.push_back(sections[idx]);
        SuperPolynomial term = dorfman_bracket(d, args).chi();
        if (koszul_sign(perm, parities).combined() < 0) term *= Rational(-1);
        acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc *= Rational(1) / factorial;

    Parity parity = detail::sum_section_parities(sections);
    if (k & 1) parity = flip(parity);
    return detail::make_section(std::move(acc), parity);
}

}  // namespace dorfman

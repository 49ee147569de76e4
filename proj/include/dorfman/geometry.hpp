#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dorfman/brackets.hpp"
#include "dorfman/derivation.hpp"
#include "dorfman/poisson.hpp"
#include "dorfman/polynomial.hpp"
#include "dorfman/section.hpp"

namespace dorfman {

/// The Hamiltonian of the de Rham vector field: Delta = sum_a xi^a p_a,
/// odd, weight 3, bidegree (2,1).
inline SuperPolynomial delta_hamiltonian(const ChartPtr& chart) {
    if (chart->bracket_parity() != BracketParity::even)
        throw ChartError("Delta lives on the even symplectic chart");
    SuperPolynomial delta(chart);
    for (unsigned a = 1; a <= chart->dim(); ++a)
        delta += SuperPolynomial::coordinate(chart, CoordKind::fiber_odd_1, a) *
                 SuperPolynomial::coordinate(chart, CoordKind::momentum, a);
    return delta;
}

/// Transport between the odd chart (x, xs) and the even chart: xs_a <-> pi_a.
/// Both renamings preserve the relative order of occupied odd coordinates,
/// so no Koszul sign arises.
inline SuperPolynomial odd_to_even(const SuperPolynomial& f, const ChartPtr& even_chart) {
    const ChartPtr& oc = f.chart();
    std::vector<std::size_t> mapping(oc->size());
    for (std::size_t i = 0; i < oc->size(); ++i) {
        const auto& c = oc->coord(i);
        mapping[i] = c.kind == CoordKind::base
                         ? even_chart->position(CoordKind::base, c.index)
                         : even_chart->position(CoordKind::fiber_odd_2, c.index);
    }
    return f.rename(even_chart, mapping);
}

/// Inverse transport; the input may involve x and pi only.
inline SuperPolynomial even_to_odd(const SuperPolynomial& f, const ChartPtr& odd_chart) {
    const ChartPtr& ec = f.chart();
    std::vector<std::size_t> mapping(ec->size(), 0);
    for (std::size_t i = 0; i < ec->size(); ++i) {
        const auto& c = ec->coord(i);
        if (c.kind == CoordKind::base)
            mapping[i] = odd_chart->position(CoordKind::base, c.index);
        else if (c.kind == CoordKind::fiber_odd_2)
            mapping[i] = odd_chart->position(CoordKind::antimomentum, c.index);
        else {
            for (const auto& [m, coeff] : f.terms())
                if (m.exponent(i))
                    throw ChartError("value does not describe a multivector field");
        }
    }
    return f.rename(odd_chart, mapping);
}

/// A multivector field: a function on the odd chart.  Components are graded
/// by antimomentum degree; a degree k component is a k-vector.  Homotopy
/// Poisson structures are those with vanishing self-bracket.
class Multivector {
public:
    explicit Multivector(SuperPolynomial value) : value_(std::move(value)) {
        if (value_.chart()->bracket_parity() != BracketParity::odd)
            throw ChartError("multivector fields live on the odd chart");
    }

    const SuperPolynomial& value() const { return value_; }
    const ChartPtr& chart() const { return value_.chart(); }

    SuperPolynomial component(unsigned degree) const {
        return value_.kind_degree_component(CoordKind::antimomentum, degree);
    }
    unsigned max_degree() const { return value_.max_kind_degree(CoordKind::antimomentum); }

    bool is_homotopy_poisson() const { return poisson_bracket(value_, value_).is_zero(); }

private:
    SuperPolynomial value_;
};

/// The odd-side Hamiltonian K_P on the even chart encoding the higher Koszul
/// brackets of P.  Component-wise, with s = +1 on even-parity components and
/// s = -1 on odd ones,
///
///   K_P = -sum_a (dP/dxs_a)|_{xs->pi} p_a - s sum_a (dP/dx^a)|_{xs->pi} xi^a.
///
/// The relative sign of the two summands is forced by [Delta, K_P] = 0
/// (mixed second derivatives of P must cancel between them); the overall
/// normalisation is pinned by the binary Koszul bracket on exact forms
/// matching the Poisson bracket differential, [df,dg] = d{f,g}, and makes
/// the two differential routes agree: -[K_P, chi_X] = chi([P, X]).  A weight
/// count shows each degree k component contributes at weight k+1 with
/// bidegree (1,k), so P may not contain 1-vector terms (they would break the
/// P K_P = 0 requirement) and degree 0 terms must be constant.
inline SuperPolynomial lift_multivector(const Multivector& p, const ChartPtr& even_chart) {
    SuperPolynomial k_p(even_chart);
    const ChartPtr& oc = p.chart();
    const unsigned dim = oc->dim();
    for (unsigned deg = 0; deg <= p.max_degree(); ++deg) {
        const SuperPolynomial comp = p.component(deg);
        if (comp.is_zero()) continue;
        if (deg == 0) {
            for (unsigned a = 1; a <= dim; ++a)
                if (!comp.partial_derivative(CoordKind::base, a).is_zero())
                    throw InvariantError("degree 0 multivector components must be constant");
            continue;  // constants lift to zero
        }
        if (deg == 1)
            throw InvariantError(
                "1-vector components lift to weight 2 and are not admissible");
        const int s = (deg % 2 == 0) ? 1 : -1;
        for (unsigned a = 1; a <= dim; ++a) {
            const SuperPolynomial head =
                odd_to_even(comp.partial_derivative(CoordKind::antimomentum, a), even_chart);
            k_p -= head * SuperPolynomial::coordinate(even_chart, CoordKind::momentum, a);
            const SuperPolynomial tail =
                odd_to_even(comp.partial_derivative(CoordKind::base, a), even_chart);
            k_p -= Rational(s) * tail *
                   SuperPolynomial::coordinate(even_chart, CoordKind::fiber_odd_1, a);
        }
    }
    return k_p;
}

/// Higher Poisson brackets of base functions generated by a multivector:
///
///   {f_1,...,f_k} = -[...[[P, f_1], f_2],...,f_k] |_M
///
/// The overall minus makes the unary bracket of a vector field act as the
/// field itself and the binary bracket of a bivector the classical one.
inline SuperPolynomial higher_poisson_bracket(const Multivector& p,
                                              const std::vector<SuperPolynomial>& fs) {
    if (fs.empty()) throw std::invalid_argument("higher Poisson bracket needs arguments");
    for (const auto& f : fs)
        if (!f.depends_only_on(CoordKind::base))
            throw InvariantError("higher Poisson brackets take base functions");
    SuperPolynomial acc = p.value();
    for (const auto& f : fs) acc = poisson_bracket(acc, f);
    return -acc.restrict_to(CoordKind::base);
}

enum class TensorKind { form, field, section };

/// A differential form, multivector field or generalized section presented
/// through its chi-image on the even chart: degree k forms are xi-degree k
/// values, degree k fields pi-degree k values, sections weight 1 values.
class FormOrField {
public:
    static FormOrField form(SuperPolynomial chi) {
        for (const auto& [m, c] : chi.terms())
            for (std::size_t i = 0; i < chi.chart()->size(); ++i) {
                const auto kind = chi.chart()->coord(i).kind;
                if (m.exponent(i) && kind != CoordKind::base && kind != CoordKind::fiber_odd_1)
                    throw InvariantError("a form depends on x and xi only");
            }
        return FormOrField(TensorKind::form, std::move(chi));
    }

    static FormOrField field(SuperPolynomial chi) {
        for (const auto& [m, c] : chi.terms())
            for (std::size_t i = 0; i < chi.chart()->size(); ++i) {
                const auto kind = chi.chart()->coord(i).kind;
                if (m.exponent(i) && kind != CoordKind::base && kind != CoordKind::fiber_odd_2)
                    throw InvariantError("a multivector field depends on x and pi only");
            }
        return FormOrField(TensorKind::field, std::move(chi));
    }

    static FormOrField section(SuperPolynomial chi) {
        if (!chi.is_weight_homogeneous(1))
            throw InvariantError("a generalized section has weight 1");
        return FormOrField(TensorKind::section, std::move(chi));
    }

    TensorKind kind() const { return kind_; }
    const SuperPolynomial& chi() const { return chi_; }
    const ChartPtr& chart() const { return chi_.chart(); }
    bool is_zero() const { return chi_.is_zero(); }

    /// Homogeneous tensor degree: xi-count for forms, pi-count for fields.
    unsigned degree() const {
        const CoordKind counted =
            kind_ == TensorKind::field ? CoordKind::fiber_odd_2 : CoordKind::fiber_odd_1;
        const unsigned d = chi_.max_kind_degree(counted);
        if (!(chi_ - chi_.kind_degree_component(counted, d)).is_zero())
            throw InvariantError("tensor degree is not homogeneous");
        return d;
    }

    /// Parity of the tensor itself: chi parity plus the degree.
    Parity tensor_parity() const {
        const auto p = chi_.parity();
        if (!p) throw InvariantError("tensor value must be parity-homogeneous");
        return (degree() & 1) ? flip(*p) : *p;
    }

private:
    FormOrField(TensorKind kind, SuperPolynomial chi) : kind_(kind), chi_(std::move(chi)) {}

    TensorKind kind_;
    SuperPolynomial chi_;
};

/// chi of a wedge product of 1-forms, with the interleaving prefactor
/// (-1)^{eta_1 (k-1) + eta_2 (k-2) + ... + eta_{k-1}} on the tensor parities.
inline FormOrField wedge(const std::vector<FormOrField>& one_forms) {
    if (one_forms.empty()) throw std::invalid_argument("empty wedge");
    const ChartPtr& chart = one_forms.front().chart();
    unsigned e = 0;
    const std::size_t k = one_forms.size();
    SuperPolynomial chi = SuperPolynomial::constant(chart, 1);
    for (std::size_t t = 0; t < k; ++t) {
        if (one_forms[t].degree() != 1) throw InvariantError("wedge expects 1-forms");
        if (one_forms[t].tensor_parity() == Parity::odd) e += static_cast<unsigned>(k - 1 - t);
        chi = chi * one_forms[t].chi();
    }
    if (e & 1) chi *= Rational(-1);
    return FormOrField::form(std::move(chi));
}

/// Cartan calculus realized through derived brackets of Delta and, when a
/// multivector lift is supplied, of K_P.
class CartanCalculus {
public:
    explicit CartanCalculus(ChartPtr chart)
        : chart_(std::move(chart)), delta_(delta_hamiltonian(chart_)), k_p_(chart_) {}

    CartanCalculus(ChartPtr chart, SuperPolynomial k_p)
        : chart_(std::move(chart)), delta_(delta_hamiltonian(chart_)), k_p_(std::move(k_p)) {}

    /// chi(i_X eta) = (-1)^X [chi_X, chi_eta]
    FormOrField insertion(const FormOrField& x, const FormOrField& eta) const {
        require_kinds(x, TensorKind::field, eta, TensorKind::form);
        SuperPolynomial v = poisson_bracket(x.chi(), eta.chi());
        if (x.tensor_parity() == Parity::odd) v *= Rational(-1);
        return FormOrField::form(std::move(v));
    }

    /// chi(d eta) = [Delta, chi_eta]
    FormOrField de_rham(const FormOrField& eta) const {
        if (eta.kind() != TensorKind::form) throw InvariantError("d acts on forms");
        return FormOrField::form(poisson_bracket(delta_, eta.chi()));
    }

    /// chi(L_X eta) = (-1)^X [[Delta, chi_X], chi_eta]
    FormOrField lie_derivative(const FormOrField& x, const FormOrField& eta) const {
        require_kinds(x, TensorKind::field, eta, TensorKind::form);
        SuperPolynomial v =
            poisson_bracket(poisson_bracket(delta_, x.chi()), eta.chi());
        if (x.tensor_parity() == Parity::odd) v *= Rational(-1);
        return FormOrField::form(std::move(v));
    }

    /// chi(i_eta X) = -(-1)^eta [chi_eta, chi_X]
    FormOrField insertion_by_form(const FormOrField& eta, const FormOrField& x) const {
        require_kinds(x, TensorKind::field, eta, TensorKind::form);
        SuperPolynomial v = poisson_bracket(eta.chi(), x.chi());
        if (eta.tensor_parity() == Parity::even) v *= Rational(-1);
        return FormOrField::field(std::move(v));
    }

    /// chi(d_P X) = -[K_P, chi_X]
    FormOrField differential_p(const FormOrField& x) const {
        if (x.kind() != TensorKind::field) throw InvariantError("d_P acts on fields");
        return FormOrField::field(-poisson_bracket(k_p_, x.chi()));
    }

    /// chi(L_eta X) = (-1)^eta [[K_P, chi_eta], chi_X]
    FormOrField lie_by_form(const FormOrField& eta, const FormOrField& x) const {
        require_kinds(x, TensorKind::field, eta, TensorKind::form);
        SuperPolynomial v = poisson_bracket(poisson_bracket(k_p_, eta.chi()), x.chi());
        if (eta.tensor_parity() == Parity::odd) v *= Rational(-1);
        return FormOrField::field(std::move(v));
    }

    /// chi(i_{X_1}...i_{X_n} eta)
    ///   = (-1)^{n X_1 + (n-1) X_2 + ... + X_n} [chi_{X_1},...,[chi_{X_n}, chi_eta]...]
    FormOrField grouped_insertion(const std::vector<FormOrField>& fields,
                                  const FormOrField& eta) const {
        if (eta.kind() != TensorKind::form) throw InvariantError("insertions act on forms");
        SuperPolynomial v = eta.chi();
        const std::size_t n = fields.size();
        unsigned e = 0;
        for (std::size_t t = n; t-- > 0;) {
            if (fields[t].kind() != TensorKind::field)
                throw InvariantError("grouped insertion expects fields");
            v = poisson_bracket(fields[t].chi(), v);
            if (fields[t].tensor_parity() == Parity::odd) e += static_cast<unsigned>(n - t);
        }
        if (e & 1) v *= Rational(-1);
        return FormOrField::form(std::move(v));
    }

    const SuperPolynomial& delta() const { return delta_; }
    const SuperPolynomial& k_p() const { return k_p_; }

private:
    static void require_kinds(const FormOrField& a, TensorKind ka, const FormOrField& b,
                              TensorKind kb) {
        if (a.kind() != ka || b.kind() != kb)
            throw InvariantError("operator applied to the wrong tensor kinds");
    }

    ChartPtr chart_;
    SuperPolynomial delta_;
    SuperPolynomial k_p_;
};

// Classical tensor-component operators.  These never touch a Poisson
// bracket, which is what makes them usable as ground truth against the
// bracket route above.

/// d eta, computed as sum_a xi^a d(eta)/dx^a.
inline SuperPolynomial de_rham_classical(const SuperPolynomial& form_chi) {
    const ChartPtr& chart = form_chi.chart();
    SuperPolynomial out(chart);
    for (unsigned a = 1; a <= chart->dim(); ++a)
        out += SuperPolynomial::coordinate(chart, CoordKind::fiber_odd_1, a) *
               form_chi.partial_derivative(CoordKind::base, a);
    return out;
}

/// i_X eta for a degree 1 field: sum_a X^a d(eta)/dxi^a.
inline SuperPolynomial insert_field_classical(const SuperPolynomial& field_chi,
                                              const SuperPolynomial& form_chi) {
    const ChartPtr& chart = form_chi.chart();
    SuperPolynomial out(chart);
    for (unsigned a = 1; a <= chart->dim(); ++a)
        out += field_chi.partial_derivative(CoordKind::fiber_odd_2, a) *
               form_chi.partial_derivative(CoordKind::fiber_odd_1, a);
    return out;
}

/// L_X eta via the homotopy formula d i_X + i_X d.
inline SuperPolynomial lie_field_classical(const SuperPolynomial& field_chi,
                                           const SuperPolynomial& form_chi) {
    return de_rham_classical(insert_field_classical(field_chi, form_chi)) +
           insert_field_classical(field_chi, de_rham_classical(form_chi));
}

/// [X, Y]_c for degree 1 fields.
inline SuperPolynomial commutator_classical(const SuperPolynomial& x_chi,
                                            const SuperPolynomial& y_chi) {
    const ChartPtr& chart = x_chi.chart();
    SuperPolynomial out(chart);
    for (unsigned b = 1; b <= chart->dim(); ++b) {
        SuperPolynomial comp(chart);
        for (unsigned a = 1; a <= chart->dim(); ++a) {
            const auto xa = x_chi.partial_derivative(CoordKind::fiber_odd_2, a);
            const auto ya = y_chi.partial_derivative(CoordKind::fiber_odd_2, a);
            comp += xa * y_chi.partial_derivative(CoordKind::fiber_odd_2, b)
                            .partial_derivative(CoordKind::base, a);
            comp -= ya * x_chi.partial_derivative(CoordKind::fiber_odd_2, b)
                            .partial_derivative(CoordKind::base, a);
        }
        out += comp * SuperPolynomial::coordinate(chart, CoordKind::fiber_odd_2, b);
    }
    return out;
}

/// i_eta A for a 1-form (even chart) and a multivector (odd chart):
/// sum_a eta_a dA/dxs_a on the odd chart.
inline SuperPolynomial insert_form_into_multivector(const SuperPolynomial& form_chi,
                                                    const SuperPolynomial& mv) {
    const ChartPtr& oc = mv.chart();
    SuperPolynomial out(oc);
    for (unsigned a = 1; a <= oc->dim(); ++a) {
        const SuperPolynomial eta_a =
            even_to_odd(form_chi.partial_derivative(CoordKind::fiber_odd_1, a), oc);
        out += eta_a * mv.partial_derivative(CoordKind::antimomentum, a);
    }
    return out;
}

/// <eta, X> for a 1-form and a degree 1 field.
inline SuperPolynomial pair_form_field(const SuperPolynomial& form_chi,
                                       const SuperPolynomial& field_chi) {
    const ChartPtr& chart = form_chi.chart();
    SuperPolynomial out(chart);
    for (unsigned a = 1; a <= chart->dim(); ++a)
        out += form_chi.partial_derivative(CoordKind::fiber_odd_1, a) *
               field_chi.partial_derivative(CoordKind::fiber_odd_2, a);
    return out;
}

/// iota_{eta_1} ... iota_{eta_m} A on the odd chart, rightmost applied first.
inline SuperPolynomial insertion_chain(const std::vector<SuperPolynomial>& forms,
                                       SuperPolynomial mv) {
    for (std::size_t t = forms.size(); t-- > 0;)
        mv = insert_form_into_multivector(forms[t], mv);
    return mv;
}

struct PropositionValue {
    SuperPolynomial chi;
    TensorKind kind;
    std::string note;
};

/// Closed formulas for the higher Dorfman brackets generated by
/// theta = Delta + K_P on 1-forms with at most one vector field, built from
/// classical tensor operations (contractions, the de Rham differential, Lie
/// derivatives, the Schouten differentials d^n_P = [P_{n+1}, -]):
///
///   d_1(X)                   = -d^0_P X
///   d_2(X,Y)                 = [X,Y]_c
///   d_2(X,eta)               = L_X eta + iota_eta d^1_P X
///   d_2(eta,X)               = -iota_eta d^1_P X - d^1_P<eta,X> - iota_X d eta
///   d_n(eta_1,...,eta_n)     = the higher Koszul bracket (via K_P alone)
///   d_{n+1}(...,X at i,...)  = (-1)^{i+1} (2-i) iota_{eta_1}...iota_{eta_n} d^n_P X
///                              - (-1)^{n+i} sum_{j<i} (-1)^j
///                                iota_{eta_1}...skip j...iota_{eta_n} L^n_{eta_j} X
///
/// with L^n_eta X = iota_eta (d^n_P X) - (-1)^n d^n_P <eta, X>.  Two or more
/// vector fields make every bracket of arity >= 3 vanish by bidegree
/// counting.  All arguments must be even tensors; the only odd tensors on
/// these charts have zero chi-image anyway.
inline PropositionValue proposition_oracle(const Multivector& p, const ChartPtr& even_chart,
                                           const std::vector<FormOrField>& args) {
    if (args.empty()) throw std::invalid_argument("oracle needs arguments");
    const ChartPtr& oc = p.chart();
    std::vector<std::size_t> field_pos;
    for (std::size_t t = 0; t < args.size(); ++t) {
        if (args[t].kind() == TensorKind::section)
            throw InvariantError("oracle arguments are 1-forms and vector fields");
        if (args[t].degree() != 1)
            throw InvariantError("oracle arguments must have tensor degree 1");
        if (args[t].tensor_parity() != Parity::even)
            throw InvariantError("oracle covers even tensors");
        if (args[t].kind() == TensorKind::field) field_pos.push_back(t);
    }
    const std::size_t m = args.size();

    if (field_pos.size() >= 2) {
        if (m == 2)
            return {commutator_classical(args[0].chi(), args[1].chi()), TensorKind::field, ""};
        return {SuperPolynomial::zero(even_chart), TensorKind::field,
                "two or more vector fields: zero by bidegree counting"};
    }

    if (field_pos.empty()) {
        // Higher Koszul bracket: the derived bracket of K_P by itself.
        std::vector<SectionExpr> sections;
        sections.reserve(m);
        for (const auto& a : args) sections.push_back(SectionExpr(a.chi()));
        const SuperPolynomial k_p = lift_multivector(p, even_chart);
        return {derived_bracket_chi(k_p, sections), TensorKind::form, ""};
    }

    const std::size_t i = field_pos.front() + 1;  // 1-based position of X
    const std::size_t n = m - 1;                  // number of 1-forms
    const SuperPolynomial& x_chi = args[field_pos.front()].chi();
    const SuperPolynomial x_odd = even_to_odd(x_chi, oc);
    std::vector<SuperPolynomial> forms;
    forms.reserve(n);
    for (std::size_t t = 0; t < m; ++t)
        if (t != field_pos.front()) forms.push_back(args[t].chi());

    if (m == 1)
        return {-odd_to_even(poisson_bracket(p.component(1), x_odd), even_chart),
                TensorKind::field, ""};

    const SuperPolynomial d_n_p_x = poisson_bracket(p.component(static_cast<unsigned>(n + 1)),
                                                    x_odd);
    auto d_n_p = [&](const SuperPolynomial& base_even) {
        return poisson_bracket(p.component(static_cast<unsigned>(n + 1)),
                               even_to_odd(base_even, oc));
    };
    auto lie_n = [&](const SuperPolynomial& eta) {
        SuperPolynomial l = insert_form_into_multivector(eta, d_n_p_x);
        SuperPolynomial d_pair = d_n_p(pair_form_field(eta, x_chi));
        return (n & 1) ? l + d_pair : l - d_pair;
    };

    SuperPolynomial value(even_chart);
    const long long lead = 2 - static_cast<long long>(i);
    if (lead != 0) {
        SuperPolynomial t1 = odd_to_even(insertion_chain(forms, d_n_p_x), even_chart);
        long long c = ((i + 1) & 1) ? -lead : lead;
        value += Rational(c) * t1;
    }
    for (std::size_t j = 1; j < i; ++j) {
        std::vector<SuperPolynomial> rest;
        rest.reserve(n - 1);
        for (std::size_t t = 0; t < n; ++t)
            if (t != j - 1) rest.push_back(forms[t]);
        SuperPolynomial term =
            odd_to_even(insertion_chain(rest, lie_n(forms[j - 1])), even_chart);
        const bool negate = ((n + i + j) & 1) == 0;  // -(-1)^{n+i}(-1)^j
        value += negate ? -term : term;
    }

    if (m == 2) {
        // Delta contributes only at arity 2: L_X eta when X leads,
        // -iota_X d eta when the form leads.
        if (i == 1)
            value += lie_field_classical(x_chi, forms[0]);
        else
            value -= insert_field_classical(x_chi, de_rham_classical(forms[0]));
        return {std::move(value), TensorKind::section, ""};
    }
    return {std::move(value), TensorKind::field, ""};
}

/// The classical Dorfman bracket of even generalized sections,
/// [X + eta, Y + tau] = [X,Y]_c + L_X tau - i_Y d eta, on chi-images.
inline SuperPolynomial classical_dorfman_chi(const SectionExpr& u, const SectionExpr& v) {
    auto field_part = [&](const SectionExpr& s) {
        return s.chi().kind_degree_component(CoordKind::fiber_odd_2, 1);
    };
    auto form_part = [&](const SectionExpr& s) {
        return s.chi().kind_degree_component(CoordKind::fiber_odd_1, 1);
    };
    SuperPolynomial out = commutator_classical(field_part(u), field_part(v));
    out += lie_field_classical(field_part(u), form_part(v));
    out -= insert_field_classical(field_part(v), de_rham_classical(form_part(u)));
    return out;
}

}  // namespace dorfman

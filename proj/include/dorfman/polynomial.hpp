#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dorfman/chart.hpp"
#include "dorfman/rational.hpp"

namespace dorfman {

/// A normalized monomial: one exponent per chart coordinate, stored in the
/// chart's canonical order.  Odd coordinates carry exponent 0 or 1; products
/// that would square an odd coordinate vanish.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n_coords) : exp_(n_coords, 0) {}

    std::uint32_t exponent(std::size_t i) const { return exp_[i]; }
    void set_exponent(std::size_t i, std::uint32_t e) { exp_[i] = e; }
    std::size_t size() const { return exp_.size(); }
    bool is_constant() const {
        for (auto e : exp_)
            if (e != 0) return false;
        return true;
    }

    Parity parity(const Chart& chart) const {
        unsigned s = 0;
        for (std::size_t i = 0; i < exp_.size(); ++i)
            if (chart.coord(i).parity == Parity::odd) s += exp_[i];
        return static_cast<Parity>(s & 1);
    }

    unsigned weight(const Chart& chart) const {
        unsigned w = 0;
        for (std::size_t i = 0; i < exp_.size(); ++i) w += chart.coord(i).weight * exp_[i];
        return w;
    }

    std::pair<unsigned, unsigned> bidegree(const Chart& chart) const {
        unsigned e1 = 0, e2 = 0;
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            e1 += chart.coord(i).bidegree.first * exp_[i];
            e2 += chart.coord(i).bidegree.second * exp_[i];
        }
        return {e1, e2};
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto e : exp_) d += e;
        return d;
    }

    bool operator==(const Monomial& o) const { return exp_ == o.exp_; }

    /// Koszul-signed product.  Returns false when a shared odd coordinate
    /// makes the product vanish; otherwise writes the merged monomial and
    /// flips `negate` once per odd transposition performed during the merge.
    static bool multiply(const Chart& chart, const Monomial& a, const Monomial& b,
                         Monomial& out, bool& negate) {
        out.exp_.assign(a.exp_.size(), 0);
        unsigned swaps = 0;
        // Count, for every odd generator contributed by b, the odd generators
        // of a sitting at a later canonical position (each such pair is one
        // transposition when interleaving b into a).
        unsigned odd_a_after = 0;
        for (std::size_t i = 0; i < a.exp_.size(); ++i)
            if (chart.coord(i).parity == Parity::odd && a.exp_[i]) ++odd_a_after;
        for (std::size_t i = 0; i < a.exp_.size(); ++i) {
            const bool odd = chart.coord(i).parity == Parity::odd;
            if (odd && a.exp_[i]) --odd_a_after;
            if (odd && b.exp_[i]) {
                if (a.exp_[i]) return false;  // odd square vanishes
                swaps += odd_a_after;
            }
            out.exp_[i] = a.exp_[i] + b.exp_[i];
        }
        if (swaps & 1) negate = !negate;
        return true;
    }

    struct Less {
        const Chart* chart;
        bool operator()(const Monomial& a, const Monomial& b) const {
            const unsigned wa = a.weight(*chart), wb = b.weight(*chart);
            if (wa != wb) return wa < wb;
            // Within a weight, descending lexicographic order on exponents:
            // x before xi before pi before p, higher powers first.
            return a.exp_ > b.exp_;
        }
    };

private:
    std::vector<std::uint32_t> exp_;
};

/// Exact sparse element of the graded algebra of chart functions: a map from
/// normalized monomials to nonzero rational coefficients.  The representation
/// is unique, so equality of values is equality of maps.
class SuperPolynomial {
public:
    using TermMap = std::map<Monomial, Rational, Monomial::Less>;

    explicit SuperPolynomial(ChartPtr chart)
        : chart_(std::move(chart)), terms_(Monomial::Less{chart_.get()}) {}

    static SuperPolynomial zero(const ChartPtr& chart) { return SuperPolynomial(chart); }

    static SuperPolynomial constant(const ChartPtr& chart, Rational c) {
        SuperPolynomial f(chart);
        if (c != 0) f.terms_.emplace(Monomial(chart->size()), std::move(c));
        return f;
    }

    static SuperPolynomial coordinate(const ChartPtr& chart, std::size_t pos) {
        Monomial m(chart->size());
        m.set_exponent(pos, 1);
        SuperPolynomial f(chart);
        f.terms_.emplace(std::move(m), Rational(1));
        return f;
    }

    static SuperPolynomial coordinate(const ChartPtr& chart, CoordKind kind, unsigned index) {
        return coordinate(chart, chart->position(kind, index));
    }

    const ChartPtr& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SuperPolynomial& operator+=(const SuperPolynomial& g) {
        require_same_chart(chart_, g.chart_);
        for (const auto& [m, c] : g.terms_) add_term(m, c);
        return *this;
    }
    SuperPolynomial& operator-=(const SuperPolynomial& g) {
        require_same_chart(chart_, g.chart_);
        for (const auto& [m, c] : g.terms_) add_term(m, -c);
        return *this;
    }
    SuperPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend SuperPolynomial operator+(SuperPolynomial f, const SuperPolynomial& g) {
        f += g;
        return f;
    }
    friend SuperPolynomial operator-(SuperPolynomial f, const SuperPolynomial& g) {
        f -= g;
        return f;
    }
    friend SuperPolynomial operator-(SuperPolynomial f) {
        for (auto& [m, c] : f.terms_) c = -c;
        return f;
    }
    friend SuperPolynomial operator*(SuperPolynomial f, const Rational& s) {
        f *= s;
        return f;
    }
    friend SuperPolynomial operator*(const Rational& s, SuperPolynomial f) {
        f *= s;
        return f;
    }

    /// Graded-commutative product with Koszul signs.
    friend SuperPolynomial operator*(const SuperPolynomial& f, const SuperPolynomial& g) {
        require_same_chart(f.chart_, g.chart_);
        SuperPolynomial out(f.chart_);
        const Chart& chart = *f.chart_;
        Monomial merged;
        for (const auto& [ma, ca] : f.terms_) {
            for (const auto& [mb, cb] : g.terms_) {
                bool negate = false;
                if (!Monomial::multiply(chart, ma, mb, merged, negate)) continue;
                Rational c = ca * cb;
                if (negate) c = -c;
                out.add_term(merged, c);
            }
        }
        return out;
    }

    bool operator==(const SuperPolynomial& g) const {
        if (!chart_->structurally_equal(*g.chart_)) return false;
        return terms_ == g.terms_;
    }

    /// Left partial derivative by the coordinate at `pos`: the sign counts the
    /// odd generators preceding the differentiated one in canonical order.
    SuperPolynomial partial_derivative(std::size_t pos) const {
        SuperPolynomial out(chart_);
        const Chart& chart = *chart_;
        const bool odd = chart.coord(pos).parity == Parity::odd;
        for (const auto& [m, c] : terms_) {
            const auto e = m.exponent(pos);
            if (e == 0) continue;
            Monomial d = m;
            d.set_exponent(pos, e - 1);
            Rational coeff = c;
            if (odd) {
                unsigned before = 0;
                for (std::size_t i = 0; i < pos; ++i)
                    if (chart.coord(i).parity == Parity::odd && m.exponent(i)) ++before;
                if (before & 1) coeff = -coeff;
            } else {
                coeff *= e;
            }
            out.add_term(d, coeff);
        }
        return out;
    }

    SuperPolynomial partial_derivative(CoordKind kind, unsigned index) const {
        return partial_derivative(chart_->position(kind, index));
    }

    /// The weight-k homogeneous component.
    SuperPolynomial weight_component(unsigned k) const {
        SuperPolynomial out(chart_);
        for (const auto& [m, c] : terms_)
            if (m.weight(*chart_) == k) out.terms_.emplace(m, c);
        return out;
    }

    unsigned max_weight() const {
        unsigned w = 0;
        for (const auto& [m, c] : terms_) w = std::max(w, m.weight(*chart_));
        return w;
    }

    bool is_weight_homogeneous(unsigned k) const {
        for (const auto& [m, c] : terms_)
            if (m.weight(*chart_) != k) return false;
        return true;
    }

    SuperPolynomial parity_component(Parity p) const {
        SuperPolynomial out(chart_);
        for (const auto& [m, c] : terms_)
            if (m.parity(*chart_) == p) out.terms_.emplace(m, c);
        return out;
    }

    /// Parity when homogeneous; nullopt for mixed-parity values.  The zero
    /// polynomial reports even.
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [m, c] : terms_) {
            const Parity mp = m.parity(*chart_);
            if (!p)
                p = mp;
            else if (*p != mp)
                return std::nullopt;
        }
        return p ? p : std::optional<Parity>(Parity::even);
    }

    /// Simultaneous Euler-field eigencomponent at bidegree (e1, e2).
    SuperPolynomial bidegree_component(unsigned e1, unsigned e2) const {
        SuperPolynomial out(chart_);
        for (const auto& [m, c] : terms_)
            if (m.bidegree(*chart_) == std::make_pair(e1, e2)) out.terms_.emplace(m, c);
        return out;
    }

    /// All occupied bidegrees, each with its component.
    std::vector<std::pair<std::pair<unsigned, unsigned>, SuperPolynomial>> bidegree_decomposition()
        const {
        std::vector<std::pair<std::pair<unsigned, unsigned>, SuperPolynomial>> parts;
        for (const auto& [m, c] : terms_) {
            const auto bd = m.bidegree(*chart_);
            auto it = std::find_if(parts.begin(), parts.end(),
                                   [&](const auto& p) { return p.first == bd; });
            if (it == parts.end()) {
                parts.emplace_back(bd, SuperPolynomial(chart_));
                it = std::prev(parts.end());
            }
            it->second.add_term(m, c);
        }
        return parts;
    }

    /// Component of total degree k in the coordinates of the given kind.
    SuperPolynomial kind_degree_component(CoordKind kind, unsigned k) const {
        SuperPolynomial out(chart_);
        for (const auto& [m, c] : terms_) {
            unsigned d = 0;
            for (std::size_t i = 0; i < chart_->size(); ++i)
                if (chart_->coord(i).kind == kind) d += m.exponent(i);
            if (d == k) out.terms_.emplace(m, c);
        }
        return out;
    }

    unsigned max_kind_degree(CoordKind kind) const {
        unsigned deg = 0;
        for (const auto& [m, c] : terms_) {
            unsigned d = 0;
            for (std::size_t i = 0; i < chart_->size(); ++i)
                if (chart_->coord(i).kind == kind) d += m.exponent(i);
            deg = std::max(deg, d);
        }
        return deg;
    }

    bool depends_only_on(CoordKind kind) const {
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < chart_->size(); ++i)
                if (chart_->coord(i).kind != kind && m.exponent(i)) return false;
        return true;
    }

    /// Substitute zero for every coordinate that is not of `kind` (the
    /// restriction to the base when kind == base).
    SuperPolynomial restrict_to(CoordKind kind) const {
        SuperPolynomial out(chart_);
        for (const auto& [m, c] : terms_) {
            bool keep = true;
            for (std::size_t i = 0; i < chart_->size() && keep; ++i)
                if (chart_->coord(i).kind != kind && m.exponent(i)) keep = false;
            if (keep) out.terms_.emplace(m, c);
        }
        return out;
    }

    /// Transport along a coordinate renaming into another chart.  `mapping`
    /// sends source positions to destination positions and must be strictly
    /// increasing on the odd coordinates occupied by each monomial, so no
    /// Koszul sign arises (the renamings used here, x* -> pi and kind-wise
    /// identity maps, all satisfy this).
    SuperPolynomial rename(const ChartPtr& dst, const std::vector<std::size_t>& mapping) const {
        SuperPolynomial out(dst);
        for (const auto& [m, c] : terms_) {
            Monomial d(dst->size());
            for (std::size_t i = 0; i < chart_->size(); ++i) {
                if (!m.exponent(i)) continue;
                d.set_exponent(mapping[i], m.exponent(i));
            }
            out.add_term(d, c);
        }
        return out;
    }

    std::string str() const;

private:
    ChartPtr chart_;
    TermMap terms_;
};

inline std::string SuperPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string factors;
        for (std::size_t i = 0; i < chart_->size(); ++i) {
            if (!m.exponent(i)) continue;
            if (!factors.empty()) factors += "*";
            factors += chart_->coord(i).name;
            if (m.exponent(i) > 1) factors += "^" + std::to_string(m.exponent(i));
        }
        if (factors.empty()) {
            os << a;
        } else if (a == 1) {
            os << factors;
        } else {
            os << a << "*" << factors;
        }
    }
    return os.str();
}

}  // namespace dorfman

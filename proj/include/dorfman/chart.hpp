#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dorfman {

enum class Parity : unsigned char { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}

inline Parity flip(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

/// Coordinate roles in a Darboux super chart.  The canonical ordering of
/// coordinates is by kind in the order listed here, then by index.
enum class CoordKind : unsigned char {
    base,         // x^a   even, weight 0
    fiber_odd_1,  // xi^a  odd,  weight 1, bidegree (1,0)
    fiber_odd_2,  // pi_a  odd,  weight 1, bidegree (0,1)
    momentum,     // p_a   even, weight 2, bidegree (1,1)
    antimomentum  // xs_a  odd,  weight 1 (odd chart on the shifted cotangent bundle)
};

struct Coordinate {
    std::string name;
    Parity parity = Parity::even;
    unsigned weight = 0;
    std::pair<unsigned, unsigned> bidegree{0, 0};  // (eps1, eps2) Euler eigenvalues
    CoordKind kind = CoordKind::base;
    unsigned index = 1;  // 1-based within its kind
};

enum class BracketParity : unsigned char { even = 0, odd = 1 };

class ChartError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Darboux chart: a fixed coordinate roster with a perfect conjugate
/// pairing and a canonical Poisson bracket (even symplectic variant of
/// weight -2, or the odd Schouten variant).
///
/// Even chart (dim n), canonical order:
///   x1..xn (base), xi1..xin, pi1..pin, p1..pn
///   pairing x^a <-> p_a, xi^a <-> pi_a.
/// Odd chart (dim n):
///   x1..xn (base), xs1..xsn with pairing x^a <-> xs_a.
class Chart {
public:
    static std::shared_ptr<const Chart> symplectic(unsigned dim) {
        if (dim < 1) throw ChartError("chart dimension must be at least 1");
        Chart c;
        c.dim_ = dim;
        c.bracket_parity_ = BracketParity::even;
        c.bracket_weight_ = -2;
        auto add = [&](CoordKind kind, const char* prefix, Parity par, unsigned w,
                       std::pair<unsigned, unsigned> bd) {
            for (unsigned a = 1; a <= dim; ++a)
                c.coords_.push_back({prefix + std::to_string(a), par, w, bd, kind, a});
        };
        add(CoordKind::base, "x", Parity::even, 0, {0, 0});
        add(CoordKind::fiber_odd_1, "xi", Parity::odd, 1, {1, 0});
        add(CoordKind::fiber_odd_2, "pi", Parity::odd, 1, {0, 1});
        add(CoordKind::momentum, "p", Parity::even, 2, {1, 1});
        c.conjugate_.resize(c.coords_.size());
        for (unsigned a = 0; a < dim; ++a) {
            c.conjugate_[a] = 3 * dim + a;        // x <-> p
            c.conjugate_[3 * dim + a] = a;
            c.conjugate_[dim + a] = 2 * dim + a;  // xi <-> pi
            c.conjugate_[2 * dim + a] = dim + a;
        }
        return std::make_shared<const Chart>(std::move(c));
    }

    static std::shared_ptr<const Chart> odd_cotangent(unsigned dim) {
        if (dim < 1) throw ChartError("chart dimension must be at least 1");
        Chart c;
        c.dim_ = dim;
        c.bracket_parity_ = BracketParity::odd;
        c.bracket_weight_ = -1;
        for (unsigned a = 1; a <= dim; ++a)
            c.coords_.push_back({"x" + std::to_string(a), Parity::even, 0, {0, 0}, CoordKind::base, a});
        for (unsigned a = 1; a <= dim; ++a)
            c.coords_.push_back(
                {"xs" + std::to_string(a), Parity::odd, 1, {0, 1}, CoordKind::antimomentum, a});
        c.conjugate_.resize(c.coords_.size());
        for (unsigned a = 0; a < dim; ++a) {
            c.conjugate_[a] = dim + a;
            c.conjugate_[dim + a] = a;
        }
        return std::make_shared<const Chart>(std::move(c));
    }

    std::size_t size() const { return coords_.size(); }
    unsigned dim() const { return dim_; }
    const Coordinate& coord(std::size_t i) const { return coords_[i]; }
    std::size_t conjugate(std::size_t i) const { return conjugate_[i]; }
    BracketParity bracket_parity() const { return bracket_parity_; }
    int bracket_weight() const { return bracket_weight_; }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i].name == name) return i;
        return std::nullopt;
    }

    /// Position of the coordinate of the given kind and 1-based index.
    std::size_t position(CoordKind kind, unsigned index) const {
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i].kind == kind && coords_[i].index == index) return i;
        throw ChartError("no such coordinate in chart");
    }

    bool structurally_equal(const Chart& other) const {
        if (dim_ != other.dim_ || bracket_parity_ != other.bracket_parity_ ||
            coords_.size() != other.coords_.size())
            return false;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i].name != other.coords_[i].name ||
                coords_[i].kind != other.coords_[i].kind)
                return false;
        return true;
    }

private:
    Chart() = default;

    unsigned dim_ = 0;
    BracketParity bracket_parity_ = BracketParity::even;
    int bracket_weight_ = -2;
    std::vector<Coordinate> coords_;
    std::vector<std::size_t> conjugate_;

public:
    Chart(Chart&&) = default;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return;
    if (a && b && a->structurally_equal(*b)) return;
    throw ChartError("operands live on different charts");
}

}  // namespace dorfman

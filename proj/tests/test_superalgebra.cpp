#include <catch2/catch_amalgamated.hpp>

#include "dorfman/parser.hpp"
#include "dorfman/poisson.hpp"
#include "dorfman/polynomial.hpp"
#include "dorfman/sampling.hpp"

using namespace dorfman;

namespace {

SuperPolynomial coord(const ChartPtr& c, CoordKind k, unsigned i) {
    return SuperPolynomial::coordinate(c, k, i);
}

int mutual_sign(Parity a, Parity b) {
    return (a == Parity::odd && b == Parity::odd) ? -1 : 1;
}

}  // namespace

TEST_CASE("chart coordinates carry the double vector bundle gradings") {
    auto c = Chart::symplectic(1);
    REQUIRE(c->size() == 4);
    // x, xi, pi, p in canonical order with weights 0, 1, 1, 2
    CHECK(c->coord(0).weight == 0);
    CHECK(c->coord(1).weight == 1);
    CHECK(c->coord(2).weight == 1);
    CHECK(c->coord(3).weight == 2);
    CHECK(c->coord(0).parity == Parity::even);
    CHECK(c->coord(1).parity == Parity::odd);
    CHECK(c->coord(2).parity == Parity::odd);
    CHECK(c->coord(3).parity == Parity::even);
    for (std::size_t i = 0; i < c->size(); ++i) {
        const auto& cd = c->coord(i);
        CHECK(cd.bidegree.first + cd.bidegree.second == cd.weight);
        CHECK(c->conjugate(c->conjugate(i)) == i);
        CHECK(c->coord(c->conjugate(i)).parity == cd.parity);
    }
    auto oc = Chart::odd_cotangent(2);
    for (std::size_t i = 0; i < oc->size(); ++i)
        CHECK(oc->coord(oc->conjugate(i)).parity == flip(oc->coord(i).parity));
}

TEST_CASE("products follow the Koszul sign rules") {
    auto c = Chart::symplectic(1);
    auto xi = coord(c, CoordKind::fiber_odd_1, 1);
    auto pi = coord(c, CoordKind::fiber_odd_2, 1);
    auto x = coord(c, CoordKind::base, 1);

    CHECK((xi * xi).is_zero());
    CHECK(xi * pi == -(pi * xi));
    CHECK((x + xi * pi) * x == x * x + x * xi * pi);
}

TEST_CASE("left partial derivatives") {
    auto c = Chart::symplectic(1);
    auto xi = coord(c, CoordKind::fiber_odd_1, 1);
    auto pi = coord(c, CoordKind::fiber_odd_2, 1);
    auto x = coord(c, CoordKind::base, 1);
    auto p = coord(c, CoordKind::momentum, 1);

    CHECK((xi * pi).partial_derivative(CoordKind::fiber_odd_1, 1) == pi);
    CHECK((xi * pi).partial_derivative(CoordKind::fiber_odd_2, 1) == -xi);
    CHECK((x * x * p).partial_derivative(CoordKind::base, 1) == Rational(2) * (x * p));
}

TEST_CASE("derivative commutation relations") {
    auto c = Chart::symplectic(2);
    Sampler s(31);
    for (int t = 0; t < 50; ++t) {
        auto f = s.homogeneous_polynomial(c, static_cast<Parity>(t & 1));
        auto dx1x2 = f.partial_derivative(CoordKind::base, 1).partial_derivative(CoordKind::base, 2);
        auto dx2x1 = f.partial_derivative(CoordKind::base, 2).partial_derivative(CoordKind::base, 1);
        CHECK(dx1x2 == dx2x1);
        auto da = f.partial_derivative(CoordKind::fiber_odd_1, 1)
                      .partial_derivative(CoordKind::fiber_odd_2, 2);
        auto db = f.partial_derivative(CoordKind::fiber_odd_2, 2)
                      .partial_derivative(CoordKind::fiber_odd_1, 1);
        CHECK(da == -db);
        CHECK(f.partial_derivative(CoordKind::fiber_odd_1, 1)
                  .partial_derivative(CoordKind::fiber_odd_1, 1)
                  .is_zero());
    }
}

TEST_CASE("canonical bracket on Darboux pairs") {
    auto c = Chart::symplectic(2);
    auto p1 = coord(c, CoordKind::momentum, 1);
    auto x1 = coord(c, CoordKind::base, 1);
    auto xi1 = coord(c, CoordKind::fiber_odd_1, 1);
    auto pi1 = coord(c, CoordKind::fiber_odd_2, 1);
    auto one = SuperPolynomial::constant(c, 1);

    CHECK(poisson_bracket(p1, x1) == one);
    CHECK(poisson_bracket(xi1, pi1) == one);
    CHECK(poisson_bracket(pi1, xi1) == one);
    CHECK(poisson_bracket(xi1 * pi1, x1).is_zero());

    auto delta = parse_expression(c, "xi1*p1 + xi2*p2");
    CHECK(poisson_bracket(delta, delta).is_zero());
}

TEST_CASE("graded algebra axioms hold on random homogeneous inputs") {
    for (auto chart : {Chart::symplectic(2), Chart::odd_cotangent(2)}) {
        const bool odd_bracket = chart->bracket_parity() == BracketParity::odd;
        Sampler s(odd_bracket ? 7 : 5);
        for (int t = 0; t < 120; ++t) {
            const Parity pf = static_cast<Parity>(s.uniform_int(0, 1));
            const Parity pg = static_cast<Parity>(s.uniform_int(0, 1));
            const Parity ph = static_cast<Parity>(s.uniform_int(0, 1));
            auto f = s.homogeneous_polynomial(chart, pf);
            auto g = s.homogeneous_polynomial(chart, pg);
            auto h = s.homogeneous_polynomial(chart, ph);

            REQUIRE(f * g == Rational(mutual_sign(pf, pg)) * (g * f));

            const Parity sf = odd_bracket ? flip(pf) : pf;
            const Parity sg = odd_bracket ? flip(pg) : pg;
            const int eps = mutual_sign(sf, sg);
            REQUIRE((poisson_bracket(f, g) + Rational(eps) * poisson_bracket(g, f)).is_zero());
            // result parity: f+g on the even chart, f+g+1 on the odd one
            const auto fg = poisson_bracket(f, g);
            if (!fg.is_zero())
                REQUIRE(fg.parity() == (odd_bracket ? flip(pf + pg) : pf + pg));
            // Jacobi in Leibniz form
            auto lhs = poisson_bracket(f, poisson_bracket(g, h));
            auto rhs = poisson_bracket(poisson_bracket(f, g), h) +
                       Rational(eps) * poisson_bracket(g, poisson_bracket(f, h));
            REQUIRE(lhs == rhs);
            // bracket-product Leibniz
            const int lsign =
                odd_bracket ? mutual_sign(flip(pf), pg) : mutual_sign(pf, pg);
            auto l2 = poisson_bracket(f, g * h);
            auto r2 = poisson_bracket(f, g) * h + Rational(lsign) * (g * poisson_bracket(f, h));
            REQUIRE(l2 == r2);
        }
    }
}

TEST_CASE("bracket weight additivity on the even chart") {
    auto c = Chart::symplectic(2);
    Sampler s(13);
    for (int t = 0; t < 60; ++t) {
        auto f = s.homogeneous_polynomial(c, static_cast<Parity>(s.uniform_int(0, 1)));
        auto g = s.homogeneous_polynomial(c, static_cast<Parity>(s.uniform_int(0, 1)));
        for (unsigned wf = 0; wf <= f.max_weight(); ++wf) {
            for (unsigned wg = 0; wg <= g.max_weight(); ++wg) {
                auto b = poisson_bracket(f.weight_component(wf), g.weight_component(wg));
                if (b.is_zero()) continue;
                REQUIRE(static_cast<int>(wf + wg) - 2 >= 0);
                REQUIRE(b.is_weight_homogeneous(wf + wg - 2));
            }
        }
    }
}

TEST_CASE("weight components decompose and reassemble") {
    auto c = Chart::symplectic(1);
    auto f = parse_expression(c, "x1 + xi1*pi1 + p1");
    CHECK(f.weight_component(2) == parse_expression(c, "xi1*pi1 + p1"));
    CHECK(f.weight_component(0) == parse_expression(c, "x1"));
    CHECK(SuperPolynomial::constant(c, 5).weight_component(1).is_zero());

    auto delta = parse_expression(c, "xi1*p1");
    CHECK(delta.weight_component(3) == delta);

    SuperPolynomial sum(c);
    for (unsigned w = 0; w <= f.max_weight(); ++w) sum += f.weight_component(w);
    CHECK(sum == f);
}

TEST_CASE("Euler fields measure the gradings") {
    // sum_i w_i z_i d/dz_i acts on a weight-homogeneous value as w, and the
    // two bidegree fields act as the bidegree components.
    auto c = Chart::symplectic(2);
    Sampler s(19);
    auto euler = [&](const SuperPolynomial& f, auto&& eigenvalue) {
        SuperPolynomial out(c);
        for (std::size_t i = 0; i < c->size(); ++i)
            out += Rational(eigenvalue(c->coord(i))) *
                   (SuperPolynomial::coordinate(c, i) * f.partial_derivative(i));
        return out;
    };
    for (int t = 0; t < 40; ++t) {
        auto f = s.homogeneous_polynomial(c, static_cast<Parity>(t & 1), 4);
        for (unsigned w = 0; w <= f.max_weight(); ++w) {
            auto comp = f.weight_component(w);
            REQUIRE(euler(comp, [](const Coordinate& z) { return z.weight; }) ==
                    Rational(w) * comp);
        }
        for (const auto& [bd, comp] : f.bidegree_decomposition()) {
            REQUIRE(euler(comp, [](const Coordinate& z) { return z.bidegree.first; }) ==
                    Rational(bd.first) * comp);
            REQUIRE(euler(comp, [](const Coordinate& z) { return z.bidegree.second; }) ==
                    Rational(bd.second) * comp);
        }
    }
}

TEST_CASE("bidegree refines the weight") {
    auto c = Chart::symplectic(2);
    auto delta = parse_expression(c, "xi1*p1 + xi2*p2");
    auto parts = delta.bidegree_decomposition();
    REQUIRE(parts.size() == 1);
    CHECK(parts.front().first == std::make_pair(2u, 1u));

    auto xi = coord(c, CoordKind::fiber_odd_1, 1);
    auto pi = coord(c, CoordKind::fiber_odd_2, 1);
    CHECK(xi.bidegree_component(1, 0) == xi);
    CHECK(pi.bidegree_component(0, 1) == pi);

    Sampler s(17);
    auto f = s.homogeneous_polynomial(c, Parity::even, 6);
    SuperPolynomial sum(c);
    for (const auto& [bd, comp] : f.bidegree_decomposition()) {
        CHECK(comp.is_weight_homogeneous(bd.first + bd.second));
        sum += comp;
    }
    CHECK(sum == f);
}

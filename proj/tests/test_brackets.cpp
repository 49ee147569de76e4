#include <catch2/catch_amalgamated.hpp>

#include "dorfman/brackets.hpp"
#include "dorfman/geometry.hpp"
#include "dorfman/parser.hpp"
#include "dorfman/sampling.hpp"

using namespace dorfman;

TEST_CASE("projectors single out the low weights") {
    auto c = Chart::symplectic(1);
    CHECK(project_p(parse_expression(c, "x1 + xi1 + p1")) == parse_expression(c, "x1 + xi1"));
    CHECK(project_p(parse_expression(c, "xi1*p1")).is_zero());
    CHECK(project_w(parse_expression(c, "x1 + xi1")) == parse_expression(c, "x1"));
    CHECK(project_w(parse_expression(c, "5/3")) == SuperPolynomial::constant(c, Rational(5, 3)));

    Sampler s(41);
    auto c2 = Chart::symplectic(2);
    for (int t = 0; t < 80; ++t) {
        auto f = s.homogeneous_polynomial(c2, static_cast<Parity>(t & 1), 5);
        REQUIRE(project_p(project_p(f)) == project_p(f));
        // [Pf, g] = W[f, g] for linear g
        auto g = s.section(c2).chi();
        REQUIRE(poisson_bracket(project_p(f), g) == project_w(poisson_bracket(f, g)));
    }
}

TEST_CASE("projector distributivity law") {
    auto c = Chart::symplectic(2);
    Sampler s(43);
    for (int t = 0; t < 100; ++t) {
        auto f = s.homogeneous_polynomial(c, static_cast<Parity>(s.uniform_int(0, 1)), 4);
        auto g = s.homogeneous_polynomial(c, static_cast<Parity>(s.uniform_int(0, 1)), 4);
        auto lhs = project_p(poisson_bracket(f, g)) + poisson_bracket(project_p(f), project_p(g));
        auto rhs = project_p(poisson_bracket(project_p(f), g)) +
                   project_p(poisson_bracket(f, project_p(g)));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("inner derivations require P theta = 0 and preserve ker P") {
    auto c = Chart::symplectic(1);
    CHECK_THROWS_AS(HamiltonianDerivation(parse_expression(c, "xi1 + xi1*p1")), InvariantError);
    CHECK_THROWS_AS(HamiltonianDerivation(parse_expression(c, "x1*xi1*pi1*p1"), true),
                    InvariantError);  // even theta rejected when oddness is required

    auto c2 = Chart::symplectic(2);
    HamiltonianDerivation d(parse_expression(c2, "xi1*p1 + xi2*p2 + x2*xi1*p1"));
    Sampler s(47);
    for (int t = 0; t < 100; ++t) {
        auto f = s.homogeneous_polynomial(c2, static_cast<Parity>(t & 1), 4);
        REQUIRE(project_p(d.apply(project_p(f))) == project_p(d.apply(f)));  // PQP = PQ
    }
}

TEST_CASE("Q is a derivation of the bracket") {
    auto c = Chart::symplectic(2);
    HamiltonianDerivation d(delta_hamiltonian(c) + parse_expression(c, "x2*xi1*p1"));
    Sampler s(53);
    for (int t = 0; t < 60; ++t) {
        const Parity pf = static_cast<Parity>(s.uniform_int(0, 1));
        auto f = s.homogeneous_polynomial(c, pf);
        auto g = s.homogeneous_polynomial(c, static_cast<Parity>(s.uniform_int(0, 1)));
        auto lhs = d.apply(poisson_bracket(f, g));
        auto rhs = poisson_bracket(d.apply(f), g) +
                   Rational(pf == Parity::odd ? -1 : 1) * poisson_bracket(f, d.apply(g));
        REQUIRE(lhs == rhs);
    }

    // [Delta, chi_eta] realizes the de Rham differential
    auto eta = parse_expression(c, "x1*x2*xi1 - 3*x2^2*xi2");
    HamiltonianDerivation dd(delta_hamiltonian(c));
    CHECK(dd.apply(eta) == de_rham_classical(eta));
    CHECK(dd.apply(SuperPolynomial::constant(c, 7)).is_zero());
}

TEST_CASE("nested bracket chains") {
    auto c = Chart::symplectic(1);
    HamiltonianDerivation d(delta_hamiltonian(c));
    auto u = SuperPolynomial::coordinate(c, CoordKind::fiber_odd_2, 1);
    CHECK(nested_bracket(d, {u}) == d.apply(u));
    CHECK_THROWS_AS(nested_bracket(d, {}), std::invalid_argument);
    CHECK_THROWS_AS(dorfman_bracket(d, {}), std::invalid_argument);
    CHECK_THROWS_AS(courant(d, {}), std::invalid_argument);
    CHECK_THROWS_AS(loday_identity(d, {}), std::invalid_argument);
}

TEST_CASE("operands must share a chart") {
    auto c1 = Chart::symplectic(1);
    auto c2 = Chart::symplectic(2);
    auto f = SuperPolynomial::coordinate(c1, CoordKind::base, 1);
    auto g = SuperPolynomial::coordinate(c2, CoordKind::base, 1);
    CHECK_THROWS_AS(f * g, ChartError);
    CHECK_THROWS_AS(f + g, ChartError);
    CHECK_THROWS_AS(poisson_bracket(f, g), ChartError);
}

TEST_CASE("chained insertions of a single section shift the generator index") {
    // [[[Phi^k, chi_l], xi], xi] = [Phi^{k+2}, chi_l] for any k and either
    // parity of chi_l, with xi the image of an even section.
    auto c = Chart::symplectic(2);
    auto theta = parse_expression(c, "xi1*p1 + xi2*p2 + x2*xi1*p1 + x1*xi2*p2^2");
    Sampler s(59);
    const SuperPolynomial xi = s.section(c).chi();
    std::vector<SuperPolynomial> phi = {theta};
    for (int k = 1; k <= 12; ++k) phi.push_back(poisson_bracket(phi.back(), xi));

    for (int k = 0; k <= 5; ++k) {
        for (Parity plc : {Parity::odd, Parity::even}) {
            SuperPolynomial chi_l = s.homogeneous_polynomial(c, plc, 3).weight_component(1);
            if (chi_l.is_zero())
                chi_l = plc == Parity::odd
                            ? SuperPolynomial::coordinate(c, CoordKind::fiber_odd_1, 1)
                            : SuperPolynomial::zero(c);
            auto lhs = poisson_bracket(
                poisson_bracket(poisson_bracket(phi[k], chi_l), xi), xi);
            REQUIRE(lhs == poisson_bracket(phi[k + 2], chi_l));
        }
    }

    // [...[Phi^k, Phi^l], xi], ..., xi] with 2r insertions expands binomially
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l)
            for (int r = 1; r <= 3; ++r) {
                SuperPolynomial lhs = poisson_bracket(phi[k], phi[l]);
                for (int t = 0; t < 2 * r; ++t) lhs = poisson_bracket(lhs, xi);
                SuperPolynomial rhs(c);
                for (int sdx = 0; sdx <= r; ++sdx)
                    rhs += Rational(binomial(r, sdx)) *
                           poisson_bracket(phi[k + 2 * sdx], phi[l + 2 * (r - sdx)]);
                REQUIRE(lhs == rhs);
            }
}

TEST_CASE("the binary bracket from Delta is the Dorfman bracket") {
    auto c = Chart::symplectic(1);
    HamiltonianDerivation d(delta_hamiltonian(c));
    SectionExpr u(SuperPolynomial::coordinate(c, CoordKind::fiber_odd_2, 1));  // d/dx
    SectionExpr v(parse_expression(c, "x1*xi1"));                              // x dx

    CHECK(dorfman_bracket(d, {u, v}).chi() == parse_expression(c, "xi1"));
    CHECK(dorfman_bracket(d, {v, u}).chi().is_zero());
    CHECK(dorfman_bracket(d, {u}).chi().is_zero());                // d_1 = 0
    CHECK(dorfman_bracket(d, {u, v, u}).chi().is_zero());          // d_3 = 0
    CHECK(dorfman_bracket(d, {v, u, v, u}).chi().is_zero());       // d_4 = 0
    CHECK(courant(d, {u, v}).chi() == parse_expression(c, "1/2*xi1"));

    CHECK(pairing_g(u, v) == parse_expression(c, "x1"));
    CHECK(defect_map(d, {}, pairing_g(u, v)).chi() == parse_expression(c, "xi1"));

    // classical Dorfman formula as an independent oracle
    auto c2 = Chart::symplectic(2);
    HamiltonianDerivation d2(delta_hamiltonian(c2));
    Sampler s(61);
    for (int t = 0; t < 30; ++t) {
        SectionExpr a = s.section(c2), b = s.section(c2);
        REQUIRE(dorfman_bracket(d2, {a, b}).chi() == classical_dorfman_chi(a, b));
    }
}

TEST_CASE("derived bracket values stay in the weight 1 component") {
    auto c = Chart::symplectic(2);
    auto theta = parse_expression(c, "xi1*p1 + xi2*p2 + x2*xi1*p1 + x1*xi2*p2^2");
    HamiltonianDerivation d(theta);
    Sampler s(67);
    for (std::size_t k = 1; k <= 4; ++k)
        for (int t = 0; t < 10; ++t) {
            std::vector<SectionExpr> args;
            for (std::size_t i = 0; i < k; ++i) args.push_back(s.section(c));
            const auto raw = derived_bracket_chi(theta, args);
            REQUIRE(raw.is_weight_homogeneous(1));
            REQUIRE_NOTHROW(dorfman_bracket(d, args));
        }
}

TEST_CASE("pairing g") {
    auto c = Chart::symplectic(2);
    SectionExpr dx(SuperPolynomial::coordinate(c, CoordKind::fiber_odd_1, 1));
    SectionExpr ddx(SuperPolynomial::coordinate(c, CoordKind::fiber_odd_2, 1));
    SectionExpr ddy(SuperPolynomial::coordinate(c, CoordKind::fiber_odd_2, 2));
    CHECK(pairing_g(ddx, dx) == SuperPolynomial::constant(c, 1));
    CHECK(pairing_g(ddx, ddy).is_zero());

    Sampler s(71);
    for (int t = 0; t < 40; ++t) {
        auto u = s.section(c), v = s.section(c);
        REQUIRE(pairing_g(u, v) == pairing_g(v, u));  // even sections
        REQUIRE(pairing_g(u, v).is_weight_homogeneous(0));
        // the canonical pairing of T M + T*M
        auto field = [&](const SectionExpr& w) {
            return w.chi().kind_degree_component(CoordKind::fiber_odd_2, 1);
        };
        auto form = [&](const SectionExpr& w) {
            return w.chi().kind_degree_component(CoordKind::fiber_odd_1, 1);
        };
        REQUIRE(pairing_g(u, v) ==
                pair_form_field(form(v), field(u)) + pair_form_field(form(u), field(v)));
    }
}

TEST_CASE("koszul signs of permutations") {
    const Parity e = Parity::even, o = Parity::odd;
    auto id = koszul_sign({0, 1}, {o, o});
    CHECK(id.sgn == 1);
    CHECK(id.koszul == 1);
    auto odd_swap = koszul_sign({1, 0}, {o, o});
    CHECK(odd_swap.sgn == -1);
    CHECK(odd_swap.koszul == -1);
    CHECK(odd_swap.combined() == 1);
    auto even_swap = koszul_sign({1, 0}, {e, e});
    CHECK(even_swap.sgn == -1);
    CHECK(even_swap.koszul == 1);
    CHECK(even_swap.combined() == -1);
}

TEST_CASE("symmetry defect relation") {
    auto c = Chart::symplectic(2);
    Sampler s(73);

    // k = 2 with Delta is the classical relation
    HamiltonianDerivation d0(delta_hamiltonian(c));
    for (int t = 0; t < 20; ++t) {
        auto u = s.section(c), v = s.section(c);
        REQUIRE(symmetry_defect_check(d0, {u, v}, 1));
        auto lhs = dorfman_bracket(d0, {u, v}).chi() + dorfman_bracket(d0, {v, u}).chi();
        REQUIRE(lhs == defect_map(d0, {}, pairing_g(u, v)).chi());
    }

    // equal arguments double the bracket
    for (int t = 0; t < 10; ++t) {
        auto u = s.section(c);
        auto lhs = Rational(2) * dorfman_bracket(d0, {u, u}).chi();
        REQUIRE(lhs == defect_map(d0, {}, pairing_g(u, u)).chi());
        REQUIRE(symmetry_defect_check(d0, {u, u}, 1));
    }

    // k = 3 with a weight 4 theta, and k = 2..4 with a weight 3 + 5 theta
    HamiltonianDerivation d4(parse_expression(c, "xi1*pi1*p2 + x1*xi2*pi2*p1"));
    for (int t = 0; t < 8; ++t) {
        std::vector<SectionExpr> args = {s.section(c), s.section(c), s.section(c)};
        REQUIRE(symmetry_defect_check(d4, args, 1));
        REQUIRE(symmetry_defect_check(d4, args, 2));
    }
    HamiltonianDerivation d35(parse_expression(c, "xi1*p1 + xi2*p2 + x2*xi1*p1 + x1*xi2*p2^2"));
    for (std::size_t k = 2; k <= 4; ++k)
        for (int t = 0; t < 4; ++t) {
            std::vector<SectionExpr> args;
            for (std::size_t i = 0; i < k; ++i) args.push_back(s.section(c));
            for (std::size_t i = 1; i < k; ++i) REQUIRE(symmetry_defect_check(d35, args, i));
        }

    CHECK_THROWS_AS(symmetry_defect_check(d0, {s.section(c), s.section(c)}, 2),
                    std::invalid_argument);
}

TEST_CASE("defect map edge cases") {
    auto c = Chart::symplectic(2);
    HamiltonianDerivation d(delta_hamiltonian(c) + parse_expression(c, "x2*xi1*p1"));
    Sampler s(79);
    auto u = s.section(c);
    CHECK(defect_map(d, {u}, SuperPolynomial::constant(c, 4)).chi().is_zero());
    CHECK_THROWS_AS(defect_map(d, {u}, parse_expression(c, "p1")), InvariantError);
}

TEST_CASE("the Courant bracket is the graded skew-symmetrisation") {
    auto c = Chart::symplectic(2);
    auto theta = parse_expression(c, "xi1*p1 + xi2*p2 + x2*xi1*p1");
    HamiltonianDerivation d(theta);
    Sampler s(83);
    for (std::size_t k = 2; k <= 3; ++k)
        for (int t = 0; t < 8; ++t) {
            std::vector<SectionExpr> args;
            for (std::size_t i = 0; i < k; ++i) args.push_back(s.section(c));
            auto base = courant(d, args).chi();
            // even sections: adjacent swap negates
            for (std::size_t i = 0; i + 1 < k; ++i) {
                auto swapped = args;
                std::swap(swapped[i], swapped[i + 1]);
                REQUIRE(courant(d, swapped).chi() == -base);
            }
        }
    for (int t = 0; t < 10; ++t) {
        auto u = s.section(c);
        REQUIRE(courant(d, {u, u}).chi().is_zero());
    }
}

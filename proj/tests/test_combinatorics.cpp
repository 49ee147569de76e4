#include <catch2/catch_amalgamated.hpp>

#include "dorfman/unshuffles.hpp"

using namespace dorfman;

TEST_CASE("unshuffle enumeration counts and order") {
    CHECK(enumerate_unshuffles(4, 2).size() == 3);
    CHECK(enumerate_unshuffles(6, 1).size() == 1);
    CHECK(enumerate_unshuffles(6, 6).size() == 1);

    // lexicographic by the leading block
    const auto u42 = enumerate_unshuffles(4, 2);
    CHECK(u42[0].sigma == std::vector<unsigned>{1, 2, 3});
    CHECK(u42[1].sigma == std::vector<unsigned>{1, 3, 2});
    CHECK(u42[2].sigma == std::vector<unsigned>{2, 3, 1});

    for (unsigned k = 1; k <= 12; ++k)
        for (unsigned j = 1; j <= k; ++j) {
            const auto all = enumerate_unshuffles(k, j);
            REQUIRE(Integer(all.size()) == binomial(k - 1, j - 1));
            for (const auto& u : all) {
                for (unsigned t = 0; t + 1 < k - j; ++t) REQUIRE(u.sigma[t] < u.sigma[t + 1]);
                for (unsigned t = k - j; t + 1 < k - 1; ++t) REQUIRE(u.sigma[t] < u.sigma[t + 1]);
            }
        }
}

TEST_CASE("signed counts: brute force and closed form") {
    CHECK(signed_count_brute_force(4, 2) == 1);
    CHECK(signed_count_brute_force(7, 4) == 0);
    CHECK(signed_count_brute_force(6, 3) == 2);
    CHECK(signed_count_closed_form(5, 5) == 1);
    CHECK(signed_count_closed_form(2, 2) == 1);

    for (unsigned k = 1; k <= 12; ++k)
        for (unsigned j = 1; j <= k; ++j) {
            const long long c = signed_count_closed_form(k, j);
            REQUIRE(c == signed_count_brute_force(k, j));
            REQUIRE(c >= 0);
            REQUIRE(Integer(c) <= binomial(k - 1, j - 1));
        }
}

TEST_CASE("hockey stick decomposition by leading element") {
    const auto d42 = hockey_stick_decomposition(4, 2);
    REQUIRE(d42 == std::vector<Integer>{2, 1});
    CHECK(hockey_stick_decomposition(7, 1) == std::vector<Integer>{1});

    for (unsigned k = 1; k <= 10; ++k)
        for (unsigned j = 1; j <= k; ++j) {
            const auto counts = hockey_stick_decomposition(k, j);
            Integer total = 0;
            for (const auto& c : counts) total += c;
            REQUIRE(total == binomial(k - 1, j - 1));
            if (j == k) continue;  // the single unshuffle has an empty leading block
            // per-element counts match enumeration filtered on sigma(1)
            std::vector<Integer> observed(j, 0);
            for (const auto& u : enumerate_unshuffles(k, j)) {
                REQUIRE(u.sigma.front() >= 1);
                REQUIRE(u.sigma.front() <= j);
                ++observed[u.sigma.front() - 1];
            }
            REQUIRE(observed == counts);
        }
}

TEST_CASE("parity transfer recursion from the leading element") {
    // C(k,j) = sum_{r=1}^{j} (-1)^{(r-1)(k-j)} C(k-r, j-r+1)
    for (unsigned k = 2; k <= 12; ++k)
        for (unsigned j = 1; j < k; ++j) {
            long long sum = 0;
            for (unsigned r = 1; r <= j && r < k; ++r) {
                const long long part = signed_count_brute_force(k - r, j - r + 1);
                sum += (((r - 1) * (k - j)) & 1) ? -part : part;
            }
            REQUIRE(sum == signed_count_brute_force(k, j));
        }
}

TEST_CASE("binomial telescoping identities") {
    const auto r1 = binomial_telescopes(4, 2, 0);
    CHECK(r1.ascending_lower);  // C(1,1)+C(2,1) = 3 = C(3,2)
    const auto r2 = binomial_telescopes(3, 1, 0);
    CHECK(r2.ascending_upper);  // C(0,0)+C(1,0)+C(2,0) = 3 = C(3,1)

    for (long long m = 0; m <= 10; ++m)
        for (long long p = 1; p <= m + 1; ++p)
            for (long long q = 0; q <= m; ++q) REQUIRE(binomial_telescopes(m, p, q).all());

    // degenerate empty ranges sum to zero and the closed forms agree
    CHECK(binomial_telescopes(2, 5, 4).all());
    CHECK(binomial(-1, 0) == 0);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(3, 5) == 0);
}

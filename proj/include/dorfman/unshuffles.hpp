#pragma once

#include <stdexcept>
#include <vector>

#include "dorfman/rational.hpp"

namespace dorfman {

/// Binomial coefficient over big integers, zero outside 0 <= m <= n.
inline Integer binomial(long long n, long long m) {
    if (m < 0 || n < 0 || m > n) return 0;
    Integer r = 1;
    for (long long i = 1; i <= m; ++i) {
        r *= (n - m + i);
        r /= i;
    }
    return r;
}

/// An order-preserving split of {1,...,k-1} into a first block of size k-j
/// and a second block of size j-1, recorded with the permutation's parity.
/// The element k stays fixed at the end and is not part of the permutation.
struct SignedUnshuffle {
    std::vector<unsigned> sigma;  // images sigma(1..k-1), 1-based
    bool odd;                     // permutation parity

    int sign() const { return odd ? -1 : 1; }
};

/// All (k-j, j-1)-unshuffles of {1,...,k-1}, ordered lexicographically by the
/// chosen first block.
inline std::vector<SignedUnshuffle> enumerate_unshuffles(unsigned k, unsigned j) {
    if (j < 1 || j > k) throw std::invalid_argument("unshuffles require 1 <= j <= k");
    const unsigned n = k - 1;       // permuted elements
    const unsigned head = k - j;    // first block size
    std::vector<SignedUnshuffle> out;

    std::vector<unsigned> pick(head);
    for (unsigned i = 0; i < head; ++i) pick[i] = i + 1;
    for (;;) {
        SignedUnshuffle u;
        u.sigma.reserve(n);
        std::vector<bool> used(n + 1, false);
        for (unsigned v : pick) {
            u.sigma.push_back(v);
            used[v] = true;
        }
        for (unsigned v = 1; v <= n; ++v)
            if (!used[v]) u.sigma.push_back(v);
        unsigned inversions = 0;
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = a + 1; b < n; ++b)
                if (u.sigma[a] > u.sigma[b]) ++inversions;
        u.odd = inversions & 1;
        out.push_back(std::move(u));

        if (head == 0) break;
        // next lexicographic subset
        int i = static_cast<int>(head) - 1;
        while (i >= 0 && pick[i] == n - (head - 1 - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (unsigned t = i + 1; t < head; ++t) pick[t] = pick[t - 1] + 1;
    }
    return out;
}

/// Number of even unshuffles minus odd ones, by direct enumeration.
inline long long signed_count_brute_force(unsigned k, unsigned j) {
    long long s = 0;
    for (const auto& u : enumerate_unshuffles(k, j)) s += u.sign();
    return s;
}

/// The same count from the four-case closed form, split on the parities of
/// k = 2p(+1) and j = 2q(+1).
inline long long signed_count_closed_form(unsigned k, unsigned j) {
    if (j < 1 || j > k) throw std::invalid_argument("signed count requires 1 <= j <= k");
    const long long p = k / 2, q = j / 2;
    Integer c;
    if (k % 2 == 0 && j % 2 == 0)
        c = binomial(p - 1, q - 1);
    else if (k % 2 == 1 && j % 2 == 0)
        c = 0;
    else if (k % 2 == 0 && j % 2 == 1)
        c = binomial(p - 1, q);
    else
        c = binomial(p, q);
    return static_cast<long long>(c);
}

/// Unshuffle counts grouped by the first element of the leading block:
/// entry r-1 holds the number of unshuffles with sigma(1) = r, which equals
/// C(k-1-r, k-j-1).  The entries sum to C(k-1, j-1).  For j = k the single
/// unshuffle has an empty leading block and is counted under r = j.
inline std::vector<Integer> hockey_stick_decomposition(unsigned k, unsigned j) {
    if (j < 1 || j > k) throw std::invalid_argument("decomposition requires 1 <= j <= k");
    std::vector<Integer> counts(j, 0);
    if (j == k) {
        counts[j - 1] = 1;
        return counts;
    }
    for (unsigned r = 1; r <= j; ++r)
        counts[r - 1] = binomial(static_cast<long long>(k) - 1 - r,
                                 static_cast<long long>(k) - j - 1);
    return counts;
}

struct TelescopeResult {
    bool ascending_lower = false;   // sum_{r=p}^{m-1} C(r-1,p-1) = C(m-1,p)
    bool ascending_upper = false;   // sum_{u=q}^{m-1} C(u,q)     = C(m,q+1)
    bool shifted = false;           // sum_{v=q+1}^{m-1} C(v-1,q) = C(m-1,q+1)

    bool all() const { return ascending_lower && ascending_upper && shifted; }
};

/// Checks the three binomial telescoping identities by direct summation.
/// Empty summation ranges contribute zero, which is where the out-of-range
/// convention of `binomial` matters.
inline TelescopeResult binomial_telescopes(long long m, long long p, long long q) {
    TelescopeResult res;
    Integer s1 = 0;
    for (long long r = p; r <= m - 1; ++r) s1 += binomial(r - 1, p - 1);
    res.ascending_lower = (s1 == binomial(m - 1, p));
    Integer s2 = 0;
    for (long long u = q; u <= m - 1; ++u) s2 += binomial(u, q);
    res.ascending_upper = (s2 == binomial(m, q + 1));
    Integer s3 = 0;
    for (long long v = q + 1; v <= m - 1; ++v) s3 += binomial(v - 1, q);
    res.shifted = (s3 == binomial(m - 1, q + 1));
    return res;
}

}  // namespace dorfman

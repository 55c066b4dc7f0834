#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rtcover/errors.hpp"
#include "rtcover/numeric.hpp"
#include "rtcover/poset.hpp"

namespace rtcover {

/// A word of Z_q^{ms}. symbols[i] is the coordinate at poset label i+1.
struct Word {
    int q = 2;
    std::vector<int> symbols;
};

inline void check_word_shape(const RTPoset& poset, const std::vector<int>& x) {
    if (static_cast<int>(x.size()) != poset.size())
        throw std::invalid_argument("word length does not match poset size");
}

/// d(x, y) = size of the ideal generated by the positions where x and y
/// differ: per block, the topmost differing height (0 if the block agrees).
inline int rt_distance(const RTPoset& poset, const std::vector<int>& x,
                       const std::vector<int>& y) {
    check_word_shape(poset, x);
    check_word_shape(poset, y);
    int total = 0;
    for (int b = 0; b < poset.m; ++b) {
        const int base = b * poset.s;
        for (int h = poset.s; h >= 1; --h) {
            if (x[base + h - 1] != y[base + h - 1]) {
                total += h;
                break;
            }
        }
    }
    return total;
}

inline int rt_distance(const RTPoset& poset, const Word& x, const Word& y) {
    if (x.q != y.q) throw std::invalid_argument("rt_distance: alphabet mismatch");
    for (int v : x.symbols)
        if (v < 0 || v >= x.q) throw std::invalid_argument("rt_distance: symbol out of range");
    for (int v : y.symbols)
        if (v < 0 || v >= y.q) throw std::invalid_argument("rt_distance: symbol out of range");
    return rt_distance(poset, x.symbols, y.symbols);
}

/// Weight = distance to the all-zero word.
inline int rt_weight(const RTPoset& poset, const std::vector<int>& x) {
    check_word_shape(poset, x);
    int total = 0;
    for (int b = 0; b < poset.m; ++b) {
        const int base = b * poset.s;
        for (int h = poset.s; h >= 1; --h) {
            if (x[base + h - 1] != 0) {
                total += h;
                break;
            }
        }
    }
    return total;
}

/// Ball volume in the [m x s] space over Z_q:
///   1 + sum_{i=1..R} sum_{j=1..min(m,i)} q^{i-j} (q-1)^j Omega_j(i),
/// where Omega_j(i) counts ideals of size i with j maximal elements. Exact.
inline Integer sphere_volume(int q, int m, int s, int R) {
    if (q < 2) throw std::invalid_argument("sphere_volume: q must be >= 2");
    if (m < 1 || s < 1) throw std::invalid_argument("sphere_volume: bad poset shape");
    if (R < 0 || R > m * s) throw std::invalid_argument("sphere_volume: R out of range 0..ms");
    Integer total = 1;
    for (long long i = 1; i <= R; ++i)
        for (long long j = 1; j <= std::min<long long>(m, i); ++j)
            total += int_pow(q, i - j) * int_pow(q - 1, j) * omega_count(m, s, i, j);
    return total;
}

/// Hamming ball volume: 1 + sum_{i=1..R} (q-1)^i C(m, i). Agrees with
/// sphere_volume(q, m, 1, R).
inline Integer hamming_volume(int q, int m, int R) {
    if (q < 2) throw std::invalid_argument("hamming_volume: q must be >= 2");
    if (m < 1) throw std::invalid_argument("hamming_volume: m must be positive");
    if (R < 0 || R > m) throw std::invalid_argument("hamming_volume: R out of range 0..m");
    Integer total = 1;
    for (long long i = 1; i <= R; ++i)
        total += int_pow(q - 1, i) * binomial(m, i);
    return total;
}

namespace detail {

/// Count words y with rank in [lo, hi) and rt_distance(center, y) <= R.
/// Ranks order words lexicographically with position 1 most significant.
inline long long sphere_count_in_range(int q, const RTPoset& poset, int R,
                                       const std::vector<int>& center, long long lo,
                                       long long hi) {
    const int n = poset.size();
    std::vector<int> word(n, 0);
    long long rank = lo;
    for (int i = n - 1; i >= 0 && rank > 0; --i) {
        word[i] = static_cast<int>(rank % q);
        rank /= q;
    }
    long long count = 0;
    for (long long r = lo; r < hi; ++r) {
        if (rt_distance(poset, center, word) <= R) ++count;
        // odometer increment, least significant position last
        for (int i = n - 1; i >= 0; --i) {
            if (++word[i] < q) break;
            word[i] = 0;
        }
    }
    return count;
}

} // namespace detail

/// Exhaustive oracle for sphere_volume: counts words within distance R of the
/// origin. Refuses spaces larger than `budget` points.
inline Integer sphere_volume_bruteforce(int q, int m, int s, int R,
                                        long long budget = 10'000'000) {
    if (q < 2) throw std::invalid_argument("sphere_volume_bruteforce: q must be >= 2");
    RTPoset poset(m, s);
    if (R < 0 || R > poset.size())
        throw std::invalid_argument("sphere_volume_bruteforce: R out of range");
    Integer space = int_pow(q, poset.size());
    if (space > budget)
        throw BudgetError("sphere_volume_bruteforce: space exceeds budget");
    long long points = static_cast<long long>(space);
    std::vector<int> origin(poset.size(), 0);
    return detail::sphere_count_in_range(q, poset, R, origin, 0, points);
}

} // namespace rtcover

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rtcover/array.hpp"
#include "rtcover/field.hpp"
#include "rtcover/numeric.hpp"

namespace rtcover {

namespace detail {

// Shared by extend_depth and oca_depth2_from_ca. Each block of the output
// gains a new minimal column that duplicates the maximal column of the next
// block (cyclic shift i -> i+1 mod m, a derangement for every m >= 2). Any
// size-t anti-ideal of the deeper poset is either unchanged or a full block,
// whose image (block minus minimum, plus the next block's maximum) is again
// an anti-ideal of the source poset, so coverage carries over.
inline OrderedArray add_minimal_level(const OrderedArray& a) {
    if (a.m < 2)
        throw std::invalid_argument("depth extension: needs m >= 2 (no derangement of one block)");
    OrderedArray out;
    out.t = a.t;
    out.m = a.m;
    out.s = a.s + 1;
    out.v = a.v;
    out.lambda = a.lambda;
    out.rows.reserve(a.rows.size());
    for (const auto& row : a.rows) {
        std::vector<int> nr;
        nr.reserve(static_cast<size_t>(out.columns()));
        for (int b = 0; b < a.m; ++b) {
            int next = (b + 1) % a.m;
            nr.push_back(row[static_cast<size_t>(next) * a.s + a.s - 1]);
            for (int h = 0; h < a.s; ++h)
                nr.push_back(row[static_cast<size_t>(b) * a.s + h]);
        }
        out.rows.push_back(std::move(nr));
    }
    return out;
}

} // namespace detail

/// OCA(N; t, m, t-1, v) -> OCA(N; t, m, t, v).
inline OrderedArray extend_depth(const OrderedArray& a) {
    validate_array(a);
    if (a.s != a.t - 1)
        throw std::invalid_argument("extend_depth: input depth must be t-1");
    return detail::add_minimal_level(a);
}

enum class RestrictMode {
    DropBottomLevel, // delete every block's minimal column: (t, m, s-1)
    DropBlock,       // delete all s columns of one block:    (t, m-1, s)
};

/// Column deletions that shrink the poset while preserving coverage.
inline OrderedArray restrict_array(const OrderedArray& a, RestrictMode mode,
                                   int block_index = 0) {
    validate_array(a);
    OrderedArray out;
    out.t = a.t;
    out.v = a.v;
    out.lambda = a.lambda;
    if (mode == RestrictMode::DropBottomLevel) {
        if (a.s < 2)
            throw std::invalid_argument("restrict: drop-bottom-level needs s >= 2");
        out.m = a.m;
        out.s = a.s - 1;
        if (a.t > out.columns())
            throw std::invalid_argument("restrict: strength no longer fits the poset");
        for (const auto& row : a.rows) {
            std::vector<int> nr;
            nr.reserve(static_cast<size_t>(out.columns()));
            for (int b = 0; b < a.m; ++b)
                for (int h = 1; h < a.s; ++h)
                    nr.push_back(row[static_cast<size_t>(b) * a.s + h]);
            out.rows.push_back(std::move(nr));
        }
    } else {
        if (a.m < 2) throw std::invalid_argument("restrict: drop-block needs m >= 2");
        if (block_index < 0 || block_index >= a.m)
            throw std::invalid_argument("restrict: block index out of range");
        out.m = a.m - 1;
        out.s = a.s;
        if (a.t > out.columns())
            throw std::invalid_argument("restrict: strength no longer fits the poset");
        for (const auto& row : a.rows) {
            std::vector<int> nr;
            nr.reserve(static_cast<size_t>(out.columns()));
            for (int b = 0; b < a.m; ++b) {
                if (b == block_index) continue;
                for (int h = 0; h < a.s; ++h)
                    nr.push_back(row[static_cast<size_t>(b) * a.s + h]);
            }
            out.rows.push_back(std::move(nr));
        }
    }
    validate_array(out);
    return out;
}

/// Strength-2 covering array -> depth-2 OCA with the same rows: block i is
/// (column i above, column i+1 mod m below). Inverse of drop-bottom-level.
inline OrderedArray oca_depth2_from_ca(const OrderedArray& ca) {
    validate_array(ca);
    if (ca.t != 2) throw std::invalid_argument("oca_depth2_from_ca: strength must be 2");
    if (ca.s != 1) throw std::invalid_argument("oca_depth2_from_ca: input must have depth 1");
    return detail::add_minimal_level(ca);
}

/// Alphabet reduction, removing two rows:
///  (i)  per column, swap symbols so row 0 becomes constant v-1; delete it;
///  (ii) let c = the new first row; in the other rows replace each v-1 in
///       column i by c_i (or by 0 when c_i = v-1 itself); delete c's row.
/// Every tuple the deleted rows covered is re-covered by a modified row, so
/// the result is an OCA over v-1 symbols with N-2 rows.
inline OrderedArray fuse(const OrderedArray& a) {
    validate_array(a);
    if (a.v <= 2) throw std::invalid_argument("fuse: needs alphabet size >= 3");
    if (a.row_count() < 2) throw std::invalid_argument("fuse: needs at least two rows");
    const int top = a.v - 1;
    OrderedArray out = a;
    for (int col = 0; col < a.columns(); ++col) {
        int x = out.rows[0][static_cast<size_t>(col)];
        if (x == top) continue;
        for (auto& row : out.rows) {
            if (row[static_cast<size_t>(col)] == x)
                row[static_cast<size_t>(col)] = top;
            else if (row[static_cast<size_t>(col)] == top)
                row[static_cast<size_t>(col)] = x;
        }
    }
    out.rows.erase(out.rows.begin());
    std::vector<int> c = out.rows.front();
    out.rows.erase(out.rows.begin());
    for (auto& row : out.rows)
        for (int col = 0; col < a.columns(); ++col)
            if (row[static_cast<size_t>(col)] == top)
                row[static_cast<size_t>(col)] = (c[static_cast<size_t>(col)] == top)
                                                    ? 0
                                                    : c[static_cast<size_t>(col)];
    out.v = a.v - 1;
    validate_array(out);
    return out;
}

/// Smallest N with m <= C(N-1, floor(N/2)-1); equals CAN(2, m, 2).
inline int kleitman_spencer_number(int m) {
    if (m < 2) throw std::invalid_argument("kleitman_spencer_number: m must be >= 2");
    for (int n = 2;; ++n)
        if (Integer(m) <= binomial(n - 1, n / 2 - 1)) return n;
}

/// Binary strength-2 covering array meeting the bound above. Columns are the
/// first m binary N-vectors with first coordinate 1 and weight floor(N/2),
/// enumerated as integer bitmasks (coordinate r = bit r) in ascending order.
/// Distinct equal-weight columns sharing a 1 in row 0 realize all four pairs.
inline OrderedArray kleitman_spencer_ca(int m) {
    const int n = kleitman_spencer_number(m);
    const int weight = n / 2;
    std::vector<std::uint64_t> cols;
    for (std::uint64_t mask = 1; mask < (1ULL << n) && static_cast<int>(cols.size()) < m;
         ++mask) {
        if ((mask & 1ULL) == 0) continue;
        if (__builtin_popcountll(mask) != weight) continue;
        cols.push_back(mask);
    }
    if (static_cast<int>(cols.size()) < m)
        throw std::logic_error("kleitman_spencer_ca: column family too small");
    OrderedArray ca;
    ca.t = 2;
    ca.m = m;
    ca.s = 1;
    ca.v = 2;
    ca.rows.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(m), 0));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < m; ++j)
            ca.rows[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                static_cast<int>((cols[static_cast<size_t>(j)] >> r) & 1ULL);
    validate_array(ca);
    return ca;
}

namespace detail {

/// k-th Hasse derivative of f (coefficients f[0..t-1], f[j] on x^j) at a:
/// sum_{j>=k} C(j,k) f_j a^{j-k}, with C(j,k) reduced into the field.
inline int hasse_derivative_at(const FieldTable& field, const std::vector<int>& f, int k,
                               int a) {
    int value = 0;
    int apow = 1;
    for (int j = k; j < static_cast<int>(f.size()); ++j) {
        int coef = field.mul(field.from_int(static_cast<long long>(binomial(j, k))),
                             f[static_cast<size_t>(j)]);
        value = field.add(value, field.mul(coef, apow));
        apow = field.mul(apow, a);
    }
    return value;
}

} // namespace detail

/// OOA(q^t; t, q+1, t, q) by polynomial evaluation: one row per polynomial f
/// of degree < t over GF(q). Block a (one per field element) stores the k-th
/// Hasse derivative of f at a on height t-k, so f(a) sits at the block's
/// maximal element; the extra block stores the coefficients, leading one on
/// top. Any t columns forming an anti-ideal read off Hermite interpolation
/// data plus leading coefficients, a bijection on polynomials, so each tuple
/// appears exactly once. The output is still re-checked by is_ooa in tests
/// rather than trusted.
inline OrderedArray rs_ooa(int q, int t) {
    if (t < 2) throw std::invalid_argument("rs_ooa: strength must be >= 2");
    const FieldTable& field = FieldTable::get(q);
    OrderedArray a;
    a.t = t;
    a.m = q + 1;
    a.s = t;
    a.v = q;
    Integer n = int_pow(q, t);
    if (n > (1LL << 26)) throw BudgetError("rs_ooa: q^t too large");
    const long long rows = static_cast<long long>(n);
    a.rows.reserve(static_cast<size_t>(rows));
    std::vector<int> f(static_cast<size_t>(t), 0);
    for (long long idx = 0; idx < rows; ++idx) {
        long long rest = idx;
        for (int k = 0; k < t; ++k) {
            f[static_cast<size_t>(k)] = static_cast<int>(rest % q);
            rest /= q;
        }
        std::vector<int> row;
        row.reserve(static_cast<size_t>(a.columns()));
        for (int elem = 0; elem < q; ++elem) {
            for (int h = 1; h <= t; ++h) // height h holds the (t-h)-th derivative
                row.push_back(detail::hasse_derivative_at(field, f, t - h, elem));
        }
        for (int h = 1; h <= t; ++h) row.push_back(f[static_cast<size_t>(h - 1)]);
        a.rows.push_back(std::move(row));
    }
    validate_array(a);
    return a;
}

} // namespace rtcover

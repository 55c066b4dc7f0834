#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rtcover/errors.hpp"
#include "rtcover/numeric.hpp"
#include "rtcover/poset.hpp"

namespace rtcover {

/// An N x (ms) symbol matrix whose columns are labeled by the poset [m x s].
/// Column c (0-based) carries poset label c+1, so block i occupies columns
/// is..(i+1)s-1 and column (i+1)s-1 is the block's maximal element.
///
/// The array is an OCA_lambda(N; t, m, s, v) when, for every anti-ideal J of
/// size t, the rows projected onto J's columns contain every t-tuple over the
/// alphabet at least lambda times. s = 1 is the plain covering array case.
struct OrderedArray {
    int t = 2;      // strength
    int m = 1;      // blocks
    int s = 1;      // block depth
    int v = 2;      // alphabet size
    int lambda = 1; // coverage multiplicity
    std::vector<std::vector<int>> rows;

    int columns() const { return m * s; }
    int row_count() const { return static_cast<int>(rows.size()); }
    RTPoset poset() const { return RTPoset(m, s); }
};

/// Structural well-formedness: dimensions, symbol ranges, 2 <= t <= ms and the
/// standing depth assumption s <= t (columns below height s-t would never be
/// probed). Throws std::invalid_argument.
inline void validate_array(const OrderedArray& a) {
    if (a.m < 1 || a.s < 1) throw std::invalid_argument("array: bad poset shape");
    if (a.v < 2) throw std::invalid_argument("array: alphabet must have at least 2 symbols");
    if (a.lambda < 1) throw std::invalid_argument("array: lambda must be positive");
    if (a.t < 2 || a.t > a.columns())
        throw std::invalid_argument("array: strength must satisfy 2 <= t <= ms");
    if (a.s > a.t) throw std::invalid_argument("array: depth must satisfy s <= t");
    for (const auto& row : a.rows) {
        if (static_cast<int>(row.size()) != a.columns())
            throw std::invalid_argument("array: row length does not match ms");
        for (int x : row)
            if (x < 0 || x >= a.v)
                throw std::invalid_argument("array: symbol out of range");
    }
}

struct CoverageViolation {
    std::vector<int> depths;  // anti-ideal, as its depth vector
    std::vector<int> missing; // t-tuple in ascending column order
    long long observed = 0;   // multiplicity found (< lambda)
};

struct CoverageReport {
    bool valid = false;
    std::vector<CoverageViolation> violations;
    long long anti_ideals_checked = 0;
    bool truncated = false; // true when more than kViolationCap violations exist

    static constexpr int kViolationCap = 100;
};

/// Check the defining coverage property anti-ideal by anti-ideal. Tuples are
/// counted by radix-encoding each projected row into an integer < v^t.
/// Violations are reported in ascending (depth vector, tuple value) order.
inline CoverageReport verify_oca(const OrderedArray& a) {
    validate_array(a);
    Integer tuple_space = int_pow(a.v, a.t);
    if (tuple_space > (1LL << 26))
        throw BudgetError("verify_oca: v^t tuple table exceeds budget");
    const long long tuples = static_cast<long long>(tuple_space);

    CoverageReport report;
    report.valid = true;
    std::vector<long long> counts(static_cast<size_t>(tuples));
    for (const AntiIdeal& ai : enumerate_anti_ideals(a.poset(), a.t)) {
        ++report.anti_ideals_checked;
        std::vector<int> cols;
        for (int label : ai.labels()) cols.push_back(label - 1);
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& row : a.rows) {
            long long code = 0;
            for (int c : cols) code = code * a.v + row[c];
            ++counts[static_cast<size_t>(code)];
        }
        for (long long code = 0; code < tuples; ++code) {
            if (counts[static_cast<size_t>(code)] >= a.lambda) continue;
            report.valid = false;
            if (static_cast<int>(report.violations.size()) >= CoverageReport::kViolationCap) {
                report.truncated = true;
                continue;
            }
            CoverageViolation viol;
            viol.depths = ai.depths();
            viol.missing.resize(a.t);
            long long rest = code;
            for (int i = a.t - 1; i >= 0; --i) {
                viol.missing[i] = static_cast<int>(rest % a.v);
                rest /= a.v;
            }
            viol.observed = counts[static_cast<size_t>(code)];
            report.violations.push_back(std::move(viol));
        }
    }
    return report;
}

/// An ordered orthogonal array is an OCA with N = lambda * v^t; every tuple
/// then occurs exactly lambda times, which is asserted directly here rather
/// than inferred.
inline bool is_ooa(const OrderedArray& a) {
    validate_array(a);
    Integer expected_rows = Integer(a.lambda) * int_pow(a.v, a.t);
    if (Integer(a.row_count()) != expected_rows) return false;
    Integer tuple_space = int_pow(a.v, a.t);
    if (tuple_space > (1LL << 26))
        throw BudgetError("is_ooa: v^t tuple table exceeds budget");
    const long long tuples = static_cast<long long>(tuple_space);
    std::vector<long long> counts(static_cast<size_t>(tuples));
    for (const AntiIdeal& ai : enumerate_anti_ideals(a.poset(), a.t)) {
        std::vector<int> cols;
        for (int label : ai.labels()) cols.push_back(label - 1);
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& row : a.rows) {
            long long code = 0;
            for (int c : cols) code = code * a.v + row[c];
            ++counts[static_cast<size_t>(code)];
        }
        for (long long code = 0; code < tuples; ++code)
            if (counts[static_cast<size_t>(code)] != a.lambda) return false;
    }
    return true;
}

// --- file format ------------------------------------------------------------
//
// First line:  oca t=<t> m=<m> s=<s> v=<v> lambda=<lambda> n=<N>
// Then N lines of ms space-separated symbols in 0..v-1; column j is poset
// label j.

inline void write_oca(std::ostream& out, const OrderedArray& a) {
    validate_array(a);
    out << "oca t=" << a.t << " m=" << a.m << " s=" << a.s << " v=" << a.v
        << " lambda=" << a.lambda << " n=" << a.row_count() << "\n";
    for (const auto& row : a.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << row[i];
        }
        out << "\n";
    }
}

namespace detail {

inline long long parse_field(const std::string& token, const std::string& key) {
    if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0 ||
        token[key.size()] != '=')
        throw ParseError("expected " + key + "=<int>, got '" + token + "'");
    try {
        return std::stoll(token.substr(key.size() + 1));
    } catch (const std::exception&) {
        throw ParseError("bad integer in '" + token + "'");
    }
}

} // namespace detail

inline OrderedArray read_oca(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty array file");
    std::istringstream hs(header);
    std::string magic, tok;
    hs >> magic;
    if (magic != "oca") throw ParseError("array file must start with 'oca'");
    OrderedArray a;
    long long n = -1;
    for (const char* key : {"t", "m", "s", "v", "lambda", "n"}) {
        if (!(hs >> tok)) throw ParseError("truncated array header");
        long long val = detail::parse_field(tok, key);
        if (std::string(key) == "t") a.t = static_cast<int>(val);
        else if (std::string(key) == "m") a.m = static_cast<int>(val);
        else if (std::string(key) == "s") a.s = static_cast<int>(val);
        else if (std::string(key) == "v") a.v = static_cast<int>(val);
        else if (std::string(key) == "lambda") a.lambda = static_cast<int>(val);
        else n = val;
    }
    if (n < 0) throw ParseError("array header missing row count");
    if (a.m < 1 || a.s < 1 || a.m > 1'000'000 || a.s > 1'000'000)
        throw ParseError("array header has unusable poset shape");
    a.rows.reserve(static_cast<size_t>(n));
    for (long long r = 0; r < n; ++r) {
        std::vector<int> row(static_cast<size_t>(a.columns()));
        for (int& x : row)
            if (!(in >> x)) throw ParseError("truncated array body");
        a.rows.push_back(std::move(row));
    }
    validate_array(a);
    return a;
}

} // namespace rtcover

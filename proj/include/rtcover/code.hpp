#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rtcover/array.hpp"
#include "rtcover/constructions.hpp"
#include "rtcover/errors.hpp"
#include "rtcover/metric.hpp"
#include "rtcover/numeric.hpp"
#include "rtcover/poset.hpp"

namespace rtcover {

/// A set of words of Z_q^{ms} tied to the poset [m x s]. claimed_radius is
/// the covering radius the code is supposed to achieve; verify_covering is
/// the ground truth for that claim.
struct Code {
    int q = 2;
    int m = 1;
    int s = 1;
    std::vector<std::vector<int>> words;
    std::optional<int> claimed_radius;

    RTPoset poset() const { return RTPoset(m, s); }
    int length() const { return m * s; }
    int size() const { return static_cast<int>(words.size()); }
};

inline void validate_code(const Code& c) {
    if (c.q < 2) throw std::invalid_argument("code: alphabet must have at least 2 symbols");
    if (c.m < 1 || c.s < 1) throw std::invalid_argument("code: bad poset shape");
    for (const auto& w : c.words) {
        if (static_cast<int>(w.size()) != c.length())
            throw std::invalid_argument("code: word length does not match ms");
        for (int x : w)
            if (x < 0 || x >= c.q) throw std::invalid_argument("code: symbol out of range");
    }
    auto sorted = c.words;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("code: duplicate words");
}

struct CoveringReport {
    bool valid = false;
    std::optional<std::vector<int>> first_uncovered; // lexicographically least
    long long points_checked = 0;
};

namespace detail {

inline long long word_rank(int q, const std::vector<int>& w) {
    long long r = 0;
    for (int x : w) r = r * q + x;
    return r;
}

inline std::vector<int> rank_word(int q, int length, long long rank) {
    std::vector<int> w(static_cast<size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        w[static_cast<size_t>(i)] = static_cast<int>(rank % q);
        rank /= q;
    }
    return w;
}

/// Visit every word of weight <= R once (the ball around the origin), block
/// by block. block_patterns[w] lists the patterns of one block whose topmost
/// nonzero entry sits at height w.
template <typename Visit>
inline void for_each_ball_delta(const RTPoset& poset,
                                const std::vector<std::vector<std::vector<int>>>& block_patterns,
                                int R, Visit&& visit) {
    std::vector<int> delta(static_cast<size_t>(poset.size()), 0);
    auto rec = [&](auto&& self, int block, int remaining) -> void {
        if (block == poset.m) {
            visit(delta);
            return;
        }
        for (int w = 0; w <= std::min(poset.s, remaining); ++w) {
            for (const auto& pat : block_patterns[static_cast<size_t>(w)]) {
                std::copy(pat.begin(), pat.end(),
                          delta.begin() + static_cast<size_t>(block) * poset.s);
                self(self, block + 1, remaining - w);
            }
        }
        std::fill(delta.begin() + static_cast<size_t>(block) * poset.s,
                  delta.begin() + static_cast<size_t>(block + 1) * poset.s, 0);
    };
    rec(rec, 0, R);
}

inline std::vector<std::vector<std::vector<int>>> block_patterns_by_weight(int q, int s) {
    std::vector<std::vector<std::vector<int>>> by_weight(static_cast<size_t>(s) + 1);
    std::vector<int> pat(static_cast<size_t>(s), 0);
    long long total = 1;
    for (int i = 0; i < s; ++i) total *= q;
    for (long long r = 0; r < total; ++r) {
        int w = 0;
        for (int h = s; h >= 1; --h)
            if (pat[static_cast<size_t>(h - 1)] != 0) {
                w = h;
                break;
            }
        by_weight[static_cast<size_t>(w)].push_back(pat);
        for (int i = s - 1; i >= 0; --i) {
            if (++pat[static_cast<size_t>(i)] < q) break;
            pat[static_cast<size_t>(i)] = 0;
        }
    }
    return by_weight;
}

enum class CoverStrategy { Auto, Mark, Scan };

inline CoveringReport verify_covering_impl(const Code& code, int R, long long budget,
                                           CoverStrategy strategy) {
    validate_code(code);
    RTPoset poset = code.poset();
    if (R < 0 || R > poset.size())
        throw std::invalid_argument("verify_covering: R out of range 0..ms");
    Integer space = int_pow(code.q, poset.size());
    if (space > budget) throw BudgetError("verify_covering: space exceeds budget");
    const long long points = static_cast<long long>(space);

    std::vector<bool> covered(static_cast<size_t>(points), false);
    Integer block_space = int_pow(code.q, poset.s);
    bool mark = strategy == CoverStrategy::Mark ||
                (strategy == CoverStrategy::Auto && block_space <= (1LL << 20));
    if (mark && !code.words.empty()) {
        auto patterns = detail::block_patterns_by_weight(code.q, poset.s);
        std::vector<long long> ranks;
        ranks.reserve(code.words.size());
        for (const auto& w : code.words) ranks.push_back(detail::word_rank(code.q, w));
        std::vector<long long> place(static_cast<size_t>(poset.size()));
        long long p = 1;
        for (int i = poset.size() - 1; i >= 0; --i) {
            place[static_cast<size_t>(i)] = p;
            p *= code.q;
        }
        detail::for_each_ball_delta(
            poset, patterns, R, [&](const std::vector<int>& delta) {
                for (size_t ci = 0; ci < code.words.size(); ++ci) {
                    const auto& w = code.words[ci];
                    long long r = ranks[ci];
                    for (int i = 0; i < poset.size(); ++i) {
                        int x = w[static_cast<size_t>(i)] + delta[static_cast<size_t>(i)];
                        if (x >= code.q) r -= place[static_cast<size_t>(i)] * code.q;
                        r += place[static_cast<size_t>(i)] * delta[static_cast<size_t>(i)];
                    }
                    covered[static_cast<size_t>(r)] = true;
                }
            });
    } else {
        std::vector<int> word(static_cast<size_t>(poset.size()), 0);
        for (long long r = 0; r < points; ++r) {
            for (const auto& c : code.words)
                if (rt_distance(poset, word, c) <= R) {
                    covered[static_cast<size_t>(r)] = true;
                    break;
                }
            for (int i = poset.size() - 1; i >= 0; --i) {
                if (++word[static_cast<size_t>(i)] < code.q) break;
                word[static_cast<size_t>(i)] = 0;
            }
        }
    }

    CoveringReport report;
    report.valid = true;
    report.points_checked = points;
    for (long long r = 0; r < points; ++r) {
        if (!covered[static_cast<size_t>(r)]) {
            report.valid = false;
            report.first_uncovered = rank_word(code.q, poset.size(), r);
            report.points_checked = r;
            break;
        }
    }
    return report;
}

} // namespace detail

/// Exhaustively checks that every word of the space lies within distance R of
/// some codeword. Balls are translates of the weight-<=R ball, so the union
/// is computed by marking codeword + delta for every small-weight delta; when
/// the per-block pattern table would be too large the verifier falls back to
/// a plain distance scan. first_uncovered is the lexicographically least
/// uncovered word; points_checked counts points confirmed covered before it.
inline CoveringReport verify_covering(const Code& code, int R,
                                      long long budget = 10'000'000) {
    return detail::verify_covering_impl(code, R, budget, detail::CoverStrategy::Auto);
}

namespace detail {

inline Code sorted_code(int q, int m, int s, std::set<std::vector<int>> words,
                        int claimed_radius) {
    Code c;
    c.q = q;
    c.m = m;
    c.s = s;
    c.words.assign(words.begin(), words.end());
    c.claimed_radius = claimed_radius;
    validate_code(c);
    return c;
}

} // namespace detail

/// The q^{ms-R} words vanishing on a fixed ideal of size R (blocks filled
/// left to right). Any point agrees with one of them outside the ideal, and
/// the disagreement ideal is contained in it.
inline Code trivial_covering(int q, int m, int s, int R) {
    RTPoset poset(m, s);
    if (q < 2) throw std::invalid_argument("trivial_covering: q must be >= 2");
    if (R <= 0 || R >= poset.size())
        throw std::invalid_argument("trivial_covering: need 0 < R < ms");
    std::vector<int> heights(static_cast<size_t>(m), 0);
    int left = R;
    for (int b = 0; b < m && left > 0; ++b) {
        heights[static_cast<size_t>(b)] = std::min(s, left);
        left -= heights[static_cast<size_t>(b)];
    }
    std::vector<int> free_cols;
    for (int b = 0; b < m; ++b)
        for (int h = heights[static_cast<size_t>(b)] + 1; h <= s; ++h)
            free_cols.push_back(poset.label_at(b, h) - 1);

    std::set<std::vector<int>> words;
    std::vector<int> word(static_cast<size_t>(poset.size()), 0);
    Integer count = int_pow(q, static_cast<long long>(free_cols.size()));
    if (count > (1LL << 24)) throw BudgetError("trivial_covering: code too large");
    const long long total = static_cast<long long>(count);
    for (long long r = 0; r < total; ++r) {
        long long rest = r;
        for (auto it = free_cols.rbegin(); it != free_cols.rend(); ++it) {
            word[static_cast<size_t>(*it)] = static_cast<int>(rest % q);
            rest /= q;
        }
        words.insert(word);
    }
    return detail::sorted_code(q, m, s, std::move(words), R);
}

/// All q constant words. When R = ms - t with m >= (t-1)q + 1, some symbol
/// agrees with any given word on at least t block maxima, so this is an
/// R-covering of size q.
inline Code constant_code(int q, int m, int s) {
    RTPoset poset(m, s);
    if (q < 2) throw std::invalid_argument("constant_code: q must be >= 2");
    std::set<std::vector<int>> words;
    for (int c = 0; c < q; ++c)
        words.insert(std::vector<int>(static_cast<size_t>(poset.size()), c));
    Code out;
    out.q = q;
    out.m = m;
    out.s = s;
    out.words.assign(words.begin(), words.end());
    validate_code(out);
    return out;
}

/// Hamming-space covering of radius (t-1)q - t on (t-1)q coordinates:
/// q-2 constant words (values 0..q-3) plus the rows of a binary strength-t
/// covering array mapped 0 -> q-2, 1 -> q-1. If no symbol 0..q-3 repeats t
/// times in a target word, at least t coordinates carry the top two symbols
/// and the covering array supplies a row matching t of them.
inline Code surjective_hamming_code(int q, int t, const OrderedArray* ca = nullptr) {
    if (q < 2) throw std::invalid_argument("surjective_hamming_code: q must be >= 2");
    if (t < 2) throw std::invalid_argument("surjective_hamming_code: t must be >= 2");
    const int m = (t - 1) * q;
    OrderedArray own;
    if (ca == nullptr) {
        if (t != 2)
            throw DependencyError(
                "surjective_hamming_code: needs a supplied CA for strengths above 2");
        own = kleitman_spencer_ca(m);
        ca = &own;
    }
    if (ca->t != t || ca->s != 1 || ca->m != m || ca->v != 2)
        throw std::invalid_argument("surjective_hamming_code: CA shape mismatch");
    std::set<std::vector<int>> words;
    for (int c = 0; c <= q - 3; ++c)
        words.insert(std::vector<int>(static_cast<size_t>(m), c));
    for (const auto& row : ca->rows) {
        std::vector<int> w(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            w[static_cast<size_t>(i)] = row[static_cast<size_t>(i)] == 0 ? q - 2 : q - 1;
        words.insert(std::move(w));
    }
    return detail::sorted_code(q, m, 1, std::move(words), m - t);
}

/// Spread a Hamming covering over depth-s blocks: each symbol moves to its
/// block's maximal element, zeros elsewhere. Distances to block maxima are
/// what survive, so radius m - t becomes ms - t. The input must re-verify at
/// its claimed radius first.
inline Code lift_hamming_to_rt(const Code& h, int s, long long budget = 10'000'000) {
    validate_code(h);
    if (s < 1) throw std::invalid_argument("lift_hamming_to_rt: s must be >= 1");
    if (h.s != 1) throw std::invalid_argument("lift_hamming_to_rt: input must be a Hamming-space code");
    if (!h.claimed_radius)
        throw DependencyError("lift_hamming_to_rt: input has no claimed radius");
    CoveringReport check = verify_covering(h, *h.claimed_radius, budget);
    if (!check.valid)
        throw DependencyError("lift_hamming_to_rt: input code failed verification");
    std::set<std::vector<int>> words;
    for (const auto& w : h.words) {
        std::vector<int> lifted(static_cast<size_t>(h.m) * s, 0);
        for (int b = 0; b < h.m; ++b)
            lifted[static_cast<size_t>(b) * s + s - 1] = w[static_cast<size_t>(b)];
        words.insert(std::move(lifted));
    }
    int radius = h.m * s - h.m + *h.claimed_radius;
    return detail::sorted_code(h.q, h.m, s, std::move(words), radius);
}

/// Code over Z_{vq} from an OCA over Z_v and a code over Z_q on the same
/// poset, pairing coordinates through x*q + y. The OCA must have strength
/// ms - R: its rows then match any target on the complement of the size-R
/// ideal where the inner code already agrees.
inline Code product_code(const OrderedArray& a, const Code& h) {
    validate_array(a);
    validate_code(h);
    if (a.m != h.m || a.s != h.s)
        throw std::invalid_argument("product_code: poset shapes differ");
    if (!h.claimed_radius)
        throw std::invalid_argument("product_code: inner code has no claimed radius");
    const int R = *h.claimed_radius;
    if (a.t != a.m * a.s - R)
        throw std::invalid_argument("product_code: need OCA strength ms - R");
    const int q_out = a.v * h.q;
    std::set<std::vector<int>> words;
    for (const auto& x : a.rows)
        for (const auto& y : h.words) {
            std::vector<int> g(static_cast<size_t>(a.columns()));
            for (int i = 0; i < a.columns(); ++i)
                g[static_cast<size_t>(i)] =
                    x[static_cast<size_t>(i)] * h.q + y[static_cast<size_t>(i)];
            words.insert(std::move(g));
        }
    return detail::sorted_code(q_out, a.m, a.s, std::move(words), R);
}

/// m = 2 blocks, radius s, size v^{s-2}(v^2 - 1). Start from the words that
/// vanish on the first block and carry (c1, c2, z) on the second; drop the
/// all-zero representative of each z-slice and, whenever c2 != 0, copy the
/// free pair to the top of the first block so it can stand in for the
/// deleted word.
inline Code two_chain_code(int v, int s) {
    if (v < 2) throw std::invalid_argument("two_chain_code: v must be >= 2");
    if (s < 2) throw std::invalid_argument("two_chain_code: s must be >= 2");
    std::set<std::vector<int>> words;
    std::vector<int> z(static_cast<size_t>(s - 2), 0);
    bool more = true;
    while (more) {
        for (int c1 = 0; c1 < v; ++c1)
            for (int c2 = 0; c2 < v; ++c2) {
                if (c1 == 0 && c2 == 0) continue;
                std::vector<int> w(static_cast<size_t>(2 * s), 0);
                w[static_cast<size_t>(s)] = c1;
                w[static_cast<size_t>(s) + 1] = c2;
                for (int i = 0; i < s - 2; ++i)
                    w[static_cast<size_t>(s) + 2 + i] = z[static_cast<size_t>(i)];
                if (c2 != 0) {
                    w[static_cast<size_t>(s - 2)] = c1;
                    w[static_cast<size_t>(s - 1)] = c2;
                }
                words.insert(std::move(w));
            }
        more = false;
        for (int i = s - 3; i >= 0; --i) {
            if (++z[static_cast<size_t>(i)] < v) {
                more = true;
                break;
            }
            z[static_cast<size_t>(i)] = 0;
        }
    }
    return detail::sorted_code(v, 2, s, std::move(words), s);
}

/// m = 3 blocks, radius 2s - 1, size v(v^s - 1). Words vanish on block 1 and
/// the bottom of block 2, carry z at block 2's top and a nonzero pattern on
/// block 3; when block 3's top entry is nonzero the pattern is copied into
/// block 1.
inline Code three_chain_code(int v, int s) {
    if (v < 2) throw std::invalid_argument("three_chain_code: v must be >= 2");
    if (s < 2) throw std::invalid_argument("three_chain_code: s must be >= 2");
    std::set<std::vector<int>> words;
    Integer block_count = int_pow(v, s);
    if (block_count > (1LL << 24)) throw BudgetError("three_chain_code: v^s too large");
    const long long patterns = static_cast<long long>(block_count);
    for (int z = 0; z < v; ++z) {
        for (long long r = 1; r < patterns; ++r) { // skip the all-zero pattern
            std::vector<int> b3(static_cast<size_t>(s));
            long long rest = r;
            for (int i = s - 1; i >= 0; --i) {
                b3[static_cast<size_t>(i)] = static_cast<int>(rest % v);
                rest /= v;
            }
            std::vector<int> w(static_cast<size_t>(3 * s), 0);
            w[static_cast<size_t>(2 * s - 1)] = z;
            for (int i = 0; i < s; ++i) w[static_cast<size_t>(2 * s + i)] = b3[static_cast<size_t>(i)];
            if (b3[static_cast<size_t>(s - 1)] != 0)
                for (int i = 0; i < s; ++i) w[static_cast<size_t>(i)] = b3[static_cast<size_t>(i)];
            words.insert(std::move(w));
        }
    }
    return detail::sorted_code(v, 3, s, std::move(words), 2 * s - 1);
}

// --- file format ------------------------------------------------------------
//
// First line:  code q=<q> m=<m> s=<s> r=<R>
// Then one word per line as ms space-separated symbols in 0..q-1.

inline void write_code(std::ostream& out, const Code& c) {
    validate_code(c);
    if (!c.claimed_radius) throw std::invalid_argument("write_code: no claimed radius");
    out << "code q=" << c.q << " m=" << c.m << " s=" << c.s << " r=" << *c.claimed_radius
        << "\n";
    for (const auto& w : c.words) {
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out << ' ';
            out << w[i];
        }
        out << "\n";
    }
}

inline Code read_code(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty code file");
    std::istringstream hs(header);
    std::string magic, tok;
    hs >> magic;
    if (magic != "code") throw ParseError("code file must start with 'code'");
    Code c;
    for (const char* key : {"q", "m", "s", "r"}) {
        if (!(hs >> tok)) throw ParseError("truncated code header");
        long long val = detail::parse_field(tok, key);
        if (std::string(key) == "q") c.q = static_cast<int>(val);
        else if (std::string(key) == "m") c.m = static_cast<int>(val);
        else if (std::string(key) == "s") c.s = static_cast<int>(val);
        else c.claimed_radius = static_cast<int>(val);
    }
    if (c.m < 1 || c.s < 1 || c.m > 1'000'000 || c.s > 1'000'000)
        throw ParseError("code header has unusable poset shape");
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> w;
        int x;
        while (ls >> x) w.push_back(x);
        if (w.empty()) continue;
        c.words.push_back(std::move(w));
    }
    validate_code(c);
    return c;
}

} // namespace rtcover

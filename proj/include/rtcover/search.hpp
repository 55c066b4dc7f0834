#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rtcover/array.hpp"
#include "rtcover/code.hpp"
#include "rtcover/errors.hpp"
#include "rtcover/metric.hpp"
#include "rtcover/numeric.hpp"

namespace rtcover {

/// Caps for the exhaustive searches. time_limit_seconds = 0 disables the
/// clock; with a node cap alone, results are reproducible bit for bit.
struct SearchBudget {
    long long max_points = 1'000'000;
    long long max_nodes = 10'000'000;
    double time_limit_seconds = 0.0;
};

namespace detail {

class Deadline {
public:
    explicit Deadline(double seconds)
        : enabled_(seconds > 0.0),
          end_(std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(seconds > 0.0 ? seconds : 0.0))) {}
    bool expired() const { return enabled_ && std::chrono::steady_clock::now() > end_; }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point end_;
};

/// Shared state for the point space Z_q^{ms}: radix places, the list of
/// ball deltas (words of weight <= R, flat-packed), and digit scratch.
struct PointSpace {
    int q = 2;
    RTPoset poset;
    long long points = 0;
    int length = 0;
    std::vector<long long> place;
    std::vector<int> deltas; // flat, ball_size * length entries
    long long ball_size = 0;

    PointSpace(int q_, const RTPoset& poset_, int radius, long long max_points)
        : q(q_), poset(poset_) {
        Integer space = int_pow(q, poset.size());
        if (space > max_points) throw BudgetError("search: space exceeds max_points budget");
        points = static_cast<long long>(space);
        length = poset.size();
        place.resize(static_cast<size_t>(length));
        long long p = 1;
        for (int i = length - 1; i >= 0; --i) {
            place[static_cast<size_t>(i)] = p;
            p *= q;
        }
        auto patterns = block_patterns_by_weight(q, poset.s);
        for_each_ball_delta(poset, patterns, radius, [&](const std::vector<int>& d) {
            deltas.insert(deltas.end(), d.begin(), d.end());
            ++ball_size;
        });
    }

    std::vector<int> decode(long long rank) const { return rank_word(q, length, rank); }

    void decode_into(long long rank, std::vector<int>& buf) const {
        for (int i = length - 1; i >= 0; --i) {
            buf[static_cast<size_t>(i)] = static_cast<int>(rank % q);
            rank /= q;
        }
    }

    long long add_delta(const std::vector<int>& digits, const int* delta) const {
        long long r = 0;
        for (int i = 0; i < length; ++i) {
            int x = digits[static_cast<size_t>(i)] + delta[i];
            if (x >= q) x -= q;
            r += place[static_cast<size_t>(i)] * x;
        }
        return r;
    }

    long long sub_delta(const std::vector<int>& digits, const int* delta) const {
        long long r = 0;
        for (int i = 0; i < length; ++i) {
            int x = digits[static_cast<size_t>(i)] - delta[i];
            if (x < 0) x += q;
            r += place[static_cast<size_t>(i)] * x;
        }
        return r;
    }
};

} // namespace detail

/// Repeatedly add the center covering the most still-uncovered points, ties
/// broken toward the lexicographically least center. Coverage counts are kept
/// incrementally: when a point becomes covered, the count of every ball
/// containing it drops by one.
inline Code greedy_covering(int q, int m, int s, int R, const SearchBudget& budget = {}) {
    RTPoset poset(m, s);
    if (q < 2) throw std::invalid_argument("greedy_covering: q must be >= 2");
    if (R < 0 || R > poset.size())
        throw std::invalid_argument("greedy_covering: R out of range 0..ms");
    detail::PointSpace space(q, poset, R, budget.max_points);

    std::vector<long long> count(static_cast<size_t>(space.points), space.ball_size);
    std::vector<bool> covered(static_cast<size_t>(space.points), false);
    long long uncovered = space.points;
    std::vector<std::vector<int>> picks;

    while (uncovered > 0) {
        long long best = 0;
        long long best_count = -1;
        for (long long c = 0; c < space.points; ++c)
            if (count[static_cast<size_t>(c)] > best_count) {
                best_count = count[static_cast<size_t>(c)];
                best = c;
            }
        std::vector<int> center = space.decode(best);
        picks.push_back(center);
        for (long long d = 0; d < space.ball_size; ++d) {
            const int* delta = space.deltas.data() + d * space.length;
            long long p = space.add_delta(center, delta);
            if (covered[static_cast<size_t>(p)]) continue;
            covered[static_cast<size_t>(p)] = true;
            --uncovered;
            std::vector<int> pd = space.decode(p);
            for (long long d2 = 0; d2 < space.ball_size; ++d2)
                --count[static_cast<size_t>(space.sub_delta(
                    pd, space.deltas.data() + d2 * space.length))];
        }
    }

    std::sort(picks.begin(), picks.end());
    Code out;
    out.q = q;
    out.m = m;
    out.s = s;
    out.words = std::move(picks);
    out.claimed_radius = R;
    validate_code(out);
    return out;
}

struct CodeSearchResult {
    Integer lower = 0;   // proven lower bound
    Integer upper = 0;   // size of the best code found
    bool exact = false;  // lower == upper == K, search ran to completion
    Code best;           // witness for the upper bound
    long long nodes_used = 0;
};

/// Exact minimum size of an R-covering, by set-cover branch and bound:
/// branch on which ball covers the lexicographically least uncovered point,
/// candidates ordered by how many uncovered points they would cover; prune
/// with chosen + ceil(uncovered / best remaining gain) against the incumbent.
/// The initial incumbent is the better of the greedy code and, when
/// 0 < R < ms, the fixed-ideal covering. The node cap also limits total
/// delta-processing work (64 units per allowed node), so huge balls exhaust
/// a small budget quickly instead of stalling inside one node. On budget
/// exhaustion the result degrades to the interval [sphere bound, incumbent]
/// flagged inexact.
inline CodeSearchResult exact_covering_number(int q, int m, int s, int R,
                                              const SearchBudget& budget = {}) {
    RTPoset poset(m, s);
    if (q < 2) throw std::invalid_argument("exact_covering_number: q must be >= 2");
    if (R < 0 || R > poset.size())
        throw std::invalid_argument("exact_covering_number: R out of range 0..ms");
    detail::PointSpace space(q, poset, R, budget.max_points);
    detail::Deadline deadline(budget.time_limit_seconds);

    CodeSearchResult result;
    result.best = greedy_covering(q, m, s, R, budget);
    if (R > 0 && R < poset.size()) {
        Code trivial = trivial_covering(q, m, s, R);
        if (trivial.size() < result.best.size()) result.best = trivial;
    }
    Integer sphere_bound = ceil_div(int_pow(q, poset.size()), sphere_volume(q, m, s, R));
    result.lower = sphere_bound;
    result.upper = result.best.size();
    if (result.lower == result.upper) {
        result.exact = true;
        return result;
    }

    std::vector<long long> count(static_cast<size_t>(space.points), space.ball_size);
    std::vector<bool> covered(static_cast<size_t>(space.points), false);
    long long uncovered = space.points;
    std::vector<long long> chosen;
    long long best_size = result.best.size();
    std::vector<long long> best_centers;
    bool aborted = false;
    long long work_used = 0;
    const long long work_cap = budget.max_nodes > (1LL << 50) ? (1LL << 62)
                                                              : budget.max_nodes * 64;
    std::vector<int> center_digits(static_cast<size_t>(space.length));
    std::vector<int> point_digits(static_cast<size_t>(space.length));

    auto cover_word = [&](long long center, std::vector<long long>& newly) {
        space.decode_into(center, center_digits);
        for (long long d = 0; d < space.ball_size; ++d) {
            long long p = space.add_delta(center_digits, space.deltas.data() + d * space.length);
            if (covered[static_cast<size_t>(p)]) continue;
            covered[static_cast<size_t>(p)] = true;
            --uncovered;
            newly.push_back(p);
            space.decode_into(p, point_digits);
            work_used += space.ball_size;
            for (long long d2 = 0; d2 < space.ball_size; ++d2)
                --count[static_cast<size_t>(space.sub_delta(
                    point_digits, space.deltas.data() + d2 * space.length))];
        }
    };
    auto uncover = [&](const std::vector<long long>& newly) {
        for (long long p : newly) {
            covered[static_cast<size_t>(p)] = false;
            ++uncovered;
            space.decode_into(p, point_digits);
            for (long long d2 = 0; d2 < space.ball_size; ++d2)
                ++count[static_cast<size_t>(space.sub_delta(
                    point_digits, space.deltas.data() + d2 * space.length))];
        }
    };

    auto dfs = [&](auto&& self) -> void {
        if (aborted) return;
        if (++result.nodes_used > budget.max_nodes || work_used > work_cap ||
            deadline.expired()) {
            aborted = true;
            return;
        }
        if (uncovered == 0) {
            if (static_cast<long long>(chosen.size()) < best_size) {
                best_size = static_cast<long long>(chosen.size());
                best_centers = chosen;
            }
            return;
        }
        // no future center can take more uncovered points than the current
        // best count anywhere
        long long max_gain = 0;
        for (long long c = 0; c < space.points; ++c)
            max_gain = std::max(max_gain, count[static_cast<size_t>(c)]);
        work_used += space.points;
        Integer bound = Integer(chosen.size()) + ceil_div(Integer(uncovered), max_gain);
        if (bound >= best_size) return;
        long long pivot = 0;
        while (covered[static_cast<size_t>(pivot)]) ++pivot;
        space.decode_into(pivot, point_digits);
        std::vector<std::pair<long long, long long>> cands; // (-gain, center)
        for (long long d = 0; d < space.ball_size; ++d) {
            long long c = space.sub_delta(point_digits, space.deltas.data() + d * space.length);
            cands.emplace_back(-count[static_cast<size_t>(c)], c);
        }
        std::sort(cands.begin(), cands.end());
        for (const auto& [neg_gain, center] : cands) {
            // within this subtree gains only shrink, so a candidate too weak
            // for the bound ends the sorted scan
            if (Integer(chosen.size()) + 1 +
                    ceil_div(Integer(uncovered + neg_gain), max_gain) >=
                best_size)
                break;
            std::vector<long long> newly;
            chosen.push_back(center);
            cover_word(center, newly);
            self(self);
            uncover(newly);
            chosen.pop_back();
            if (aborted) return;
        }
    };
    dfs(dfs);

    if (!aborted) {
        result.exact = true;
        result.lower = best_size;
        result.upper = best_size;
        if (!best_centers.empty() || best_size == 0) {
            Code found;
            found.q = q;
            found.m = m;
            found.s = s;
            for (long long c : best_centers) found.words.push_back(space.decode(c));
            std::sort(found.words.begin(), found.words.end());
            found.claimed_radius = R;
            if (found.size() == best_size) result.best = found;
        }
    }
    return result;
}

struct OcaSearchResult {
    long long lower = 0;                  // OCAN is at least this
    std::optional<long long> upper;       // row count of the witness, if found
    bool exact = false;                   // lower == upper == OCAN
    std::optional<OrderedArray> witness;
    long long nodes_used = 0;
};

/// Exact OCAN by row backtracking, N = v^t, v^t + 1, ... upward. Symmetry is
/// broken by fixing the first row to all zeros (justified by per-column
/// symbol relabeling) and requiring rows nondecreasing as base-v numbers
/// (row order is irrelevant to coverage). A partial array is abandoned as
/// soon as some anti-ideal misses more tuples than there are rows left to
/// add. Returns an interval flagged inexact when the node budget dies.
inline OcaSearchResult exact_ocan(int t, int m, int s, int v,
                                  const SearchBudget& budget = {},
                                  long long start_n = -1, long long max_n = -1) {
    RTPoset poset(m, s);
    if (v < 2) throw std::invalid_argument("exact_ocan: v must be >= 2");
    if (t < 2 || t > poset.size())
        throw std::invalid_argument("exact_ocan: need 2 <= t <= ms");
    if (s > t) throw std::invalid_argument("exact_ocan: need s <= t");
    Integer row_space = int_pow(v, poset.size());
    if (row_space > budget.max_points)
        throw BudgetError("exact_ocan: v^{ms} exceeds max_points budget");
    const long long symbols = static_cast<long long>(row_space);
    Integer tuple_space = int_pow(v, t);
    const long long tuples = static_cast<long long>(tuple_space);

    std::vector<std::vector<int>> colsets;
    for (const AntiIdeal& ai : enumerate_anti_ideals(poset, t)) {
        std::vector<int> cols;
        for (int label : ai.labels()) cols.push_back(label - 1);
        colsets.push_back(std::move(cols));
    }
    const int fams = static_cast<int>(colsets.size());

    // proj[j][row value] = radix code of the projected tuple
    std::vector<std::vector<int>> proj(static_cast<size_t>(fams));
    {
        std::vector<int> digits(static_cast<size_t>(poset.size()), 0);
        for (int j = 0; j < fams; ++j)
            proj[static_cast<size_t>(j)].resize(static_cast<size_t>(symbols));
        for (long long r = 0; r < symbols; ++r) {
            for (int j = 0; j < fams; ++j) {
                int code = 0;
                for (int c : colsets[static_cast<size_t>(j)]) code = code * v + digits[static_cast<size_t>(c)];
                proj[static_cast<size_t>(j)][static_cast<size_t>(r)] = code;
            }
            for (int i = poset.size() - 1; i >= 0; --i) {
                if (++digits[static_cast<size_t>(i)] < v) break;
                digits[static_cast<size_t>(i)] = 0;
            }
        }
    }

    OcaSearchResult result;
    detail::Deadline deadline(budget.time_limit_seconds);
    if (start_n < 0) start_n = tuples; // lambda = 1: every anti-ideal needs v^t rows
    result.lower = start_n;

    std::vector<std::vector<long long>> cnt(static_cast<size_t>(fams),
                                            std::vector<long long>(static_cast<size_t>(tuples)));
    std::vector<long long> missing(static_cast<size_t>(fams));
    std::vector<long long> rows;

    for (long long n = start_n; max_n < 0 || n <= max_n; ++n) {
        for (int j = 0; j < fams; ++j) {
            std::fill(cnt[static_cast<size_t>(j)].begin(), cnt[static_cast<size_t>(j)].end(), 0);
            missing[static_cast<size_t>(j)] = tuples;
        }
        rows.clear();
        bool aborted = false;
        bool found = false;

        auto apply = [&](long long r) {
            for (int j = 0; j < fams; ++j) {
                long long& c = cnt[static_cast<size_t>(j)][static_cast<size_t>(
                    proj[static_cast<size_t>(j)][static_cast<size_t>(r)])];
                if (++c == 1) --missing[static_cast<size_t>(j)];
            }
            rows.push_back(r);
        };
        auto undo = [&]() {
            long long r = rows.back();
            rows.pop_back();
            for (int j = 0; j < fams; ++j) {
                long long& c = cnt[static_cast<size_t>(j)][static_cast<size_t>(
                    proj[static_cast<size_t>(j)][static_cast<size_t>(r)])];
                if (--c == 0) ++missing[static_cast<size_t>(j)];
            }
        };

        auto dfs = [&](auto&& self, long long last) -> void {
            if (aborted || found) return;
            if (++result.nodes_used > budget.max_nodes || deadline.expired()) {
                aborted = true;
                return;
            }
            long long left = n - static_cast<long long>(rows.size());
            for (int j = 0; j < fams; ++j)
                if (missing[static_cast<size_t>(j)] > left) return;
            if (left == 0) {
                found = true;
                return;
            }
            for (long long r = last; r < symbols; ++r) {
                apply(r);
                self(self, r);
                if (found) return;
                undo();
                if (aborted) return;
            }
        };

        apply(0); // first row all zeros
        dfs(dfs, 0);

        if (found) {
            OrderedArray witness;
            witness.t = t;
            witness.m = m;
            witness.s = s;
            witness.v = v;
            for (long long r : rows)
                witness.rows.push_back(detail::rank_word(v, poset.size(), r));
            result.upper = n;
            result.exact = true;
            result.lower = n;
            result.witness = std::move(witness);
            return result;
        }
        if (aborted) {
            result.lower = n; // every count below n was refuted outright
            result.exact = false;
            return result;
        }
        result.lower = n + 1;
    }
    result.exact = false; // scanned up to max_n without finding
    return result;
}

} // namespace rtcover

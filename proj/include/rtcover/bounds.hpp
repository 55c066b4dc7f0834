#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtcover/array.hpp"
#include "rtcover/code.hpp"
#include "rtcover/constructions.hpp"
#include "rtcover/metric.hpp"
#include "rtcover/numeric.hpp"
#include "rtcover/search.hpp"

namespace rtcover {

// Rule vocabulary
// ---------------
// Lower bounds:
//   sphere-covering   ceil(q^{ms} / V)                K only
//   tuple-count       v^t                             OCAN only
// Upper bounds on K(q, m, s, R), with t = ms - R:
//   constant-words    q, when m >= (t-1)q + 1 (some symbol matches t block maxima)
//   surjective-ca     q-2 + CAN(t, (t-1)q, 2), when m = (t-1)q
//   two-chain         q^{s-2}(q^2-1), when m = 2 and R = s
//   three-chain       q(q^s-1), when m = 3 and R = 2s-1
//   oca-product       OCAN(t, m, s, v) * K(q', m, s, R) over factorizations q = v q'
//   ooa-product       q1^t * K(v, m, s, R), q1 a prime power, m <= q1+1, s <= t
//   fused-ooa-product (q1^t - 2) * K(v, m, s, R), alphabet (q1-1)v, m = q1+1, s = t
//   reduced-two-chain-product        q1^t v^{t-2}(v^2-1)   [formula-only]
//   reduced-three-chain-product      q1^{s+1} v(v^s-1)     [formula-only]
//   reduced-two-chain-fusion-product (q1^t-2) v^{t-2}(v^2-1) [formula-only]
//   paired-block-split q2(OCAN(3, m/2, s, 2) + CAN(2, m/2, 2)) [formula-only]
//   trivial-ideal     q^{ms-R}
//   greedy-search / exact-search      search results within budget
// Upper bounds on OCAN(t, m, s, v):
//   kleitman-spencer  least N with m <= C(N-1, floor(N/2)-1), when t = 2, v = 2, s <= 2
//   rs-ooa            v^t, when v is a supported prime power, m <= v+1, s <= t
//   fusion            (v+1)^t - 2, when v+1 is a supported prime power, m <= v+2, s <= t
//   exact-search      exact row-backtracking result within budget
//   depth-transfer(r) bound moved across the depth-t <-> depth-(t-1) equivalence

struct BoundsOptions {
    bool use_greedy = true;
    long long greedy_point_cap = 4096; // greedy only when q^{ms} is at most this
    bool use_exact_code_search = false;
    bool use_exact_oca_search = false;
    SearchBudget budget{};
    std::vector<OrderedArray> ca_library; // verified plain CAs for strengths above 2
};

struct RuleApplication {
    std::string rule;
    std::string inputs;    // rendered parameters / factorization
    std::string statement; // the inequality instance this rule applies
    Integer value = 0;
    bool winner = false;
    bool constructive = false;
    std::string side; // "lower", "upper" or "ingredient"
};

/// A witness backing a constructive upper bound: an array for OCAN records,
/// a code for K records (products may carry both along the way).
struct BoundWitness {
    std::optional<OrderedArray> array;
    std::optional<Code> code;
};

struct BoundRecord {
    std::string kind; // "K" or "OCAN"
    std::vector<std::pair<std::string, long long>> params;
    Integer lower = 0;
    std::string lower_rule;
    Integer upper = 0;
    std::string upper_rule;               // first winner in the fixed rule order
    std::vector<std::string> upper_rules; // every tied winner
    bool has_upper = false;
    bool constructive = false;
    std::vector<RuleApplication> chain;

    std::string params_text() const {
        std::string out;
        for (const auto& [k, v] : params) {
            if (!out.empty()) out += ' ';
            out += k + "=" + std::to_string(v);
        }
        return out;
    }
};

namespace detail {

struct UpperCandidate {
    std::string rule;
    Integer value;
    bool constructive = false;
    std::string inputs;
    std::string statement;
    std::function<BoundWitness()> make_witness;       // set when constructive
    std::vector<RuleApplication> ingredients;          // sub-results for composites
};

inline std::string param_str(std::initializer_list<std::pair<const char*, long long>> ps) {
    std::string out;
    for (const auto& [k, v] : ps) {
        if (!out.empty()) out += ' ';
        out += std::string(k) + "=" + std::to_string(v);
    }
    return out;
}

} // namespace detail

inline BoundRecord k_bounds(int q, int m, int s, int R, const BoundsOptions& options = {},
                            BoundWitness* witness_out = nullptr);

inline BoundRecord ocan_bounds(int t, int m, int s, int v,
                               const BoundsOptions& options = {},
                               BoundWitness* witness_out = nullptr,
                               bool allow_depth_transfer = true);

namespace detail {

inline void finish_record(BoundRecord& record, std::vector<UpperCandidate>&& candidates,
                          BoundWitness* witness_out) {
    record.has_upper = false;
    for (const auto& cand : candidates) {
        if (!record.has_upper || cand.value < record.upper) {
            record.upper = cand.value;
            record.has_upper = true;
        }
    }
    const UpperCandidate* winner = nullptr;
    for (auto& cand : candidates) {
        RuleApplication app;
        app.rule = cand.rule;
        app.inputs = cand.inputs;
        app.statement = cand.statement;
        app.value = cand.value;
        app.side = "upper";
        app.constructive = cand.constructive;
        app.winner = record.has_upper && cand.value == record.upper;
        if (app.winner) {
            record.upper_rules.push_back(cand.rule);
            if (record.upper_rule.empty()) record.upper_rule = cand.rule;
            if (cand.constructive && winner == nullptr) winner = &cand;
        }
        record.chain.push_back(app);
        if (app.winner)
            for (const auto& ing : cand.ingredients) record.chain.push_back(ing);
    }
    record.constructive = winner != nullptr;
    if (witness_out != nullptr && winner != nullptr) *witness_out = winner->make_witness();
}

inline RuleApplication ingredient_from(const BoundRecord& sub) {
    RuleApplication app;
    app.rule = sub.kind == "K" ? "K:" + sub.upper_rule : "OCAN:" + sub.upper_rule;
    app.inputs = sub.params_text();
    app.statement = "ingredient bound";
    app.value = sub.upper;
    app.side = "ingredient";
    app.constructive = sub.constructive;
    return app;
}

} // namespace detail

/// Best known bounds on OCAN(t, m, s, v) from the fixed rule set, with full
/// provenance. The depth-transfer equivalence is applied one level deep in
/// both directions (s = t picks up depth t-1 rules and vice versa).
inline BoundRecord ocan_bounds(int t, int m, int s, int v, const BoundsOptions& options,
                               BoundWitness* witness_out, bool allow_depth_transfer) {
    RTPoset poset(m, s);
    if (v < 2) throw std::invalid_argument("ocan_bounds: v must be >= 2");
    if (t < 2 || t > poset.size())
        throw std::invalid_argument("ocan_bounds: need 2 <= t <= ms");
    if (s > t) throw std::invalid_argument("ocan_bounds: need s <= t");

    BoundRecord record;
    record.kind = "OCAN";
    record.params = {{"t", t}, {"m", m}, {"s", s}, {"v", v}};
    record.lower = int_pow(v, t);
    record.lower_rule = "tuple-count";
    {
        RuleApplication app;
        app.rule = "tuple-count";
        app.inputs = record.params_text();
        app.statement = "every anti-ideal of size t needs all v^t tuples";
        app.value = record.lower;
        app.winner = true;
        app.side = "lower";
        record.chain.push_back(app);
    }

    std::vector<detail::UpperCandidate> candidates;

    if (t == 2 && v == 2 && s <= 2 && m >= 2) {
        detail::UpperCandidate cand;
        cand.rule = "kleitman-spencer";
        cand.value = kleitman_spencer_number(m);
        cand.constructive = true;
        cand.inputs = detail::param_str({{"m", m}});
        cand.statement = "least N with m <= C(N-1, floor(N/2)-1)";
        int depth = s;
        cand.make_witness = [m, depth]() {
            BoundWitness w;
            OrderedArray ca = kleitman_spencer_ca(m);
            w.array = depth == 1 ? ca : oca_depth2_from_ca(ca);
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    auto restricted_ooa = [](int q_field, int t_, int m_, int s_, bool fused) {
        OrderedArray a = rs_ooa(q_field, t_);
        if (fused) a = fuse(a);
        while (a.m > m_) a = restrict_array(a, RestrictMode::DropBlock, a.m - 1);
        while (a.s > s_) a = restrict_array(a, RestrictMode::DropBottomLevel);
        return a;
    };

    if (FieldTable::supported(v) && m <= v + 1 && s <= t) {
        detail::UpperCandidate cand;
        cand.rule = "rs-ooa";
        cand.value = int_pow(v, t);
        cand.constructive = true;
        cand.inputs = detail::param_str({{"q", v}, {"t", t}});
        cand.statement = "polynomial-evaluation OOA on q+1 blocks, restricted";
        cand.make_witness = [=]() {
            BoundWitness w;
            w.array = restricted_ooa(v, t, m, s, false);
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (FieldTable::supported(v + 1) && m <= v + 2 && s <= t) {
        detail::UpperCandidate cand;
        cand.rule = "fusion";
        cand.value = int_pow(v + 1, t) - 2;
        cand.constructive = true;
        cand.inputs = detail::param_str({{"q", v + 1}, {"t", t}});
        cand.statement = "OCAN(t,m,s,v) <= OCAN(t,m,s,v+1) - 2";
        cand.make_witness = [=]() {
            BoundWitness w;
            w.array = restricted_ooa(v + 1, t, m, s, true);
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (options.use_exact_oca_search &&
        int_pow(v, poset.size()) <= options.budget.max_points) {
        long long cap = -1;
        for (const auto& cand : candidates)
            if (cap < 0 || cand.value < cap) cap = static_cast<long long>(cand.value);
        OcaSearchResult found = exact_ocan(t, m, s, v, options.budget, -1, cap);
        if (found.exact && found.witness) {
            detail::UpperCandidate cand;
            cand.rule = "exact-search";
            cand.value = *found.upper;
            cand.constructive = true;
            cand.inputs = record.params_text();
            cand.statement = "row backtracking, exhaustive";
            OrderedArray witness = *found.witness;
            cand.make_witness = [witness]() {
                BoundWitness w;
                w.array = witness;
                return w;
            };
            candidates.push_back(std::move(cand));
        }
    }

    if (allow_depth_transfer && (s == t || s == t - 1)) {
        int other = s == t ? t - 1 : t;
        bool shape_ok = other >= 1 && other <= t && t <= m * other;
        if (shape_ok) {
            BoundRecord inner = ocan_bounds(t, m, other, v, options, nullptr, false);
            if (inner.has_upper) {
                detail::UpperCandidate cand;
                cand.rule = "depth-transfer(" + inner.upper_rule + ")";
                cand.value = inner.upper;
                cand.constructive = inner.constructive;
                cand.inputs = inner.params_text();
                cand.statement = "a depth-t array exists iff a depth-(t-1) array does";
                cand.ingredients.push_back(detail::ingredient_from(inner));
                if (inner.constructive) {
                    bool raise = s == t;
                    int tt = t, mm = m, vv = v;
                    BoundsOptions opts = options;
                    cand.make_witness = [=]() {
                        BoundWitness w;
                        ocan_bounds(tt, mm, other, vv, opts, &w, false);
                        if (!w.array) return w;
                        w.array = raise ? extend_depth(*w.array)
                                        : restrict_array(*w.array, RestrictMode::DropBottomLevel);
                        return w;
                    };
                }
                candidates.push_back(std::move(cand));
            }
        }
    }

    detail::finish_record(record, std::move(candidates), witness_out);
    return record;
}

/// Best known bounds on K(q, m, s, R) from the fixed rule set; the lower
/// bound is always the sphere-covering bound. Composite rules recurse into
/// smaller alphabets and into ocan_bounds; their provenance carries the
/// ingredient results.
inline BoundRecord k_bounds(int q, int m, int s, int R, const BoundsOptions& options,
                            BoundWitness* witness_out) {
    RTPoset poset(m, s);
    if (q < 2) throw std::invalid_argument("k_bounds: q must be >= 2");
    if (R <= 0 || R >= poset.size())
        throw std::invalid_argument("k_bounds: need 0 < R < ms");

    BoundRecord record;
    record.kind = "K";
    record.params = {{"q", q}, {"m", m}, {"s", s}, {"R", R}};
    Integer space = int_pow(q, poset.size());
    record.lower = ceil_div(space, sphere_volume(q, m, s, R));
    record.lower_rule = "sphere-covering";
    {
        RuleApplication app;
        app.rule = "sphere-covering";
        app.inputs = record.params_text();
        app.statement = "|space| / |ball|, rounded up";
        app.value = record.lower;
        app.winner = true;
        app.side = "lower";
        record.chain.push_back(app);
    }

    const int t = poset.size() - R; // strength that pairs with radius R
    std::vector<detail::UpperCandidate> candidates;

    if (t >= 2 && m >= (t - 1) * q + 1) {
        detail::UpperCandidate cand;
        cand.rule = "constant-words";
        cand.value = q;
        cand.constructive = true;
        cand.inputs = detail::param_str({{"q", q}, {"t", t}});
        cand.statement = "some symbol matches t block maxima; K = q here";
        cand.make_witness = [=]() {
            BoundWitness w;
            w.code = constant_code(q, m, s);
            w.code->claimed_radius = R;
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (t >= 2 && m == (t - 1) * q) {
        std::optional<Integer> can_value;
        std::optional<OrderedArray> library_ca;
        if (t == 2) {
            can_value = kleitman_spencer_number(m);
        } else {
            for (const auto& ca : options.ca_library)
                if (ca.t == t && ca.s == 1 && ca.m == m && ca.v == 2)
                    if (!can_value || Integer(ca.row_count()) < *can_value) {
                        can_value = ca.row_count();
                        library_ca = ca;
                    }
        }
        if (can_value) {
            detail::UpperCandidate cand;
            cand.rule = "surjective-ca";
            cand.value = Integer(q - 2) + *can_value;
            cand.constructive = true;
            cand.inputs = detail::param_str({{"q", q}, {"t", t}, {"CAN", static_cast<long long>(*can_value)}});
            cand.statement = "q-2 constants plus a binary strength-t CA on the block maxima";
            cand.make_witness = [=]() {
                BoundWitness w;
                Code h = library_ca ? surjective_hamming_code(q, t, &*library_ca)
                                    : surjective_hamming_code(q, t);
                w.code = lift_hamming_to_rt(h, s);
                return w;
            };
            candidates.push_back(std::move(cand));
        }
    }

    if (m == 2 && R == s && s >= 2) {
        detail::UpperCandidate cand;
        cand.rule = "two-chain";
        cand.value = int_pow(q, s - 2) * (Integer(q) * q - 1);
        cand.constructive = true;
        cand.inputs = detail::param_str({{"v", q}, {"s", s}});
        cand.statement = "K(v,2,s,s) <= v^{s-2}(v^2-1)";
        cand.make_witness = [=]() {
            BoundWitness w;
            w.code = two_chain_code(q, s);
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (m == 3 && R == 2 * s - 1 && s >= 2) {
        detail::UpperCandidate cand;
        cand.rule = "three-chain";
        cand.value = Integer(q) * (int_pow(q, s) - 1);
        cand.constructive = true;
        cand.inputs = detail::param_str({{"v", q}, {"s", s}});
        cand.statement = "K(v,3,s,2s-1) <= v(v^s-1)";
        cand.make_witness = [=]() {
            BoundWitness w;
            w.code = three_chain_code(q, s);
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (t >= 2 && s <= t) {
        for (int v = 2; v < q; ++v) {
            if (q % v != 0) continue;
            int q2 = q / v;
            if (q2 < 2) continue;
            BoundRecord oca = ocan_bounds(t, m, s, v, options, nullptr, true);
            if (!oca.has_upper) continue;
            BoundRecord inner = k_bounds(q2, m, s, R, options, nullptr);
            if (!inner.has_upper) continue;
            detail::UpperCandidate cand;
            cand.rule = "oca-product";
            cand.value = oca.upper * inner.upper;
            cand.constructive = oca.constructive && inner.constructive;
            cand.inputs = detail::param_str({{"v", v}, {"q", q2}, {"t", t}});
            cand.statement = "K(vq,m,s,R) <= OCAN(ms-R,m,s,v) * K(q,m,s,R)";
            cand.ingredients.push_back(detail::ingredient_from(oca));
            cand.ingredients.push_back(detail::ingredient_from(inner));
            if (cand.constructive) {
                BoundsOptions opts = options;
                cand.make_witness = [=]() {
                    BoundWitness ow, kw;
                    ocan_bounds(t, m, s, v, opts, &ow, true);
                    k_bounds(q2, m, s, R, opts, &kw);
                    BoundWitness w;
                    if (ow.array && kw.code) w.code = product_code(*ow.array, *kw.code);
                    return w;
                };
            }
            candidates.push_back(std::move(cand));
        }
    }

    if (t >= 2 && s <= t) {
        for (int q1 = 2; q1 < q; ++q1) {
            if (q % q1 != 0 || !FieldTable::supported(q1) || m > q1 + 1) continue;
            int v = q / q1;
            if (v < 2) continue;
            BoundRecord inner = k_bounds(v, m, s, R, options, nullptr);
            if (!inner.has_upper) continue;
            detail::UpperCandidate cand;
            cand.rule = "ooa-product";
            cand.value = int_pow(q1, t) * inner.upper;
            cand.constructive = inner.constructive;
            cand.inputs = detail::param_str({{"q1", q1}, {"v", v}, {"t", t}});
            cand.statement = "K(qv,m,s,ms-t) <= q^t K(v,m,s,ms-t) via an OOA";
            cand.ingredients.push_back(detail::ingredient_from(inner));
            if (cand.constructive) {
                BoundsOptions opts = options;
                cand.make_witness = [=]() {
                    BoundWitness kw;
                    k_bounds(v, m, s, R, opts, &kw);
                    BoundWitness w;
                    if (!kw.code) return w;
                    OrderedArray a = rs_ooa(q1, t);
                    while (a.m > m) a = restrict_array(a, RestrictMode::DropBlock, a.m - 1);
                    while (a.s > s) a = restrict_array(a, RestrictMode::DropBottomLevel);
                    w.code = product_code(a, *kw.code);
                    return w;
                };
            }
            candidates.push_back(std::move(cand));
        }
    }

    // The remaining product rules pass through a block-count reduction proved
    // elsewhere, so they are reported formula-only (no witness is built).
    if (s == t && s >= 2 && m >= 3 && FieldTable::supported(m - 1) && R == (m - 1) * s) {
        const int q1 = m - 1;
        if (q1 >= 3 && q % (q1 - 1) == 0) {
            int v = q / (q1 - 1);
            if (v >= 2) {
                BoundRecord inner = k_bounds(v, m, s, R, options, nullptr);
                if (inner.has_upper) {
                    detail::UpperCandidate cand;
                    cand.rule = "fused-ooa-product";
                    cand.value = (int_pow(q1, t) - 2) * inner.upper;
                    cand.constructive = false;
                    cand.inputs = detail::param_str({{"q1", q1}, {"v", v}, {"t", t}});
                    cand.statement = "K((q-1)v,q+1,t,qt) <= (q^t-2) K(v,q+1,t,qt)";
                    cand.ingredients.push_back(detail::ingredient_from(inner));
                    candidates.push_back(std::move(cand));
                }
            }
        }
        if (q1 >= 2 && q % q1 == 0) {
            int v = q / q1;
            if (v >= 2 && q1 + 1 <= (t - 1) * v) {
                detail::UpperCandidate cand;
                cand.rule = "reduced-two-chain-product";
                cand.value = int_pow(q1, t) * int_pow(v, t - 2) * (Integer(v) * v - 1);
                cand.constructive = false;
                cand.inputs = detail::param_str({{"q1", q1}, {"v", v}, {"t", t}});
                cand.statement = "K(qv,q+1,t,qt) <= q^t v^{t-2}(v^2-1)";
                candidates.push_back(std::move(cand));
            }
        }
        if (q1 >= 3 && q % (q1 - 1) == 0) {
            int v = q / (q1 - 1);
            if (v >= 2) {
                detail::UpperCandidate cand;
                cand.rule = "reduced-two-chain-fusion-product";
                cand.value = (int_pow(q1, t) - 2) * int_pow(v, t - 2) * (Integer(v) * v - 1);
                cand.constructive = false;
                cand.inputs = detail::param_str({{"q1", q1}, {"v", v}, {"t", t}});
                cand.statement = "K((q-1)v,q+1,t,qt) <= (q^t-2) v^{t-2}(v^2-1)";
                candidates.push_back(std::move(cand));
            }
        }
    }

    if (s >= 2 && R == poset.size() - (s + 1)) {
        for (int q1 = 2; q1 < q; ++q1) {
            if (q % q1 != 0 || !FieldTable::supported(q1) || m > q1 + 1) continue;
            int v = q / q1;
            if (v < 2) continue;
            detail::UpperCandidate cand;
            cand.rule = "reduced-three-chain-product";
            cand.value = int_pow(q1, s + 1) * Integer(v) * (int_pow(v, s) - 1);
            cand.constructive = false;
            cand.inputs = detail::param_str({{"q1", q1}, {"v", v}, {"s", s}});
            cand.statement = "K(qv,m,s,ms-(s+1)) <= q^{s+1} v(v^s-1)";
            candidates.push_back(std::move(cand));
        }
    }

    if (s >= 2 && s <= 3 && q % 2 == 0 && m % 2 == 0 && R == poset.size() - 3) {
        int q2 = q / 2;
        int m2 = m / 2;
        if (q2 >= 2 && m2 > q2 && m2 <= 2 * q2 && 3 <= m2 * s) {
            BoundRecord oca = ocan_bounds(3, m2, std::min(s, 3), 2, options, nullptr, true);
            if (oca.has_upper) {
                detail::UpperCandidate cand;
                cand.rule = "paired-block-split";
                cand.value = Integer(q2) * (oca.upper + kleitman_spencer_number(m2));
                cand.constructive = false;
                cand.inputs = detail::param_str({{"q", q2}, {"m", m2}, {"s", s}});
                cand.statement = "K(2q,2m,s,2ms-3) <= q(OCAN(3,m,s,2)+CAN(2,m,2))";
                cand.ingredients.push_back(detail::ingredient_from(oca));
                candidates.push_back(std::move(cand));
            }
        }
    }

    {
        detail::UpperCandidate cand;
        cand.rule = "trivial-ideal";
        cand.value = int_pow(q, poset.size() - R);
        cand.constructive = true;
        cand.inputs = record.params_text();
        cand.statement = "all words vanishing on a fixed size-R ideal";
        cand.make_witness = [=]() {
            BoundWitness w;
            w.code = trivial_covering(q, m, s, R);
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (options.use_greedy && space <= options.greedy_point_cap &&
        space <= options.budget.max_points) {
        Code greedy = greedy_covering(q, m, s, R, options.budget);
        detail::UpperCandidate cand;
        cand.rule = "greedy-search";
        cand.value = greedy.size();
        cand.constructive = true;
        cand.inputs = record.params_text();
        cand.statement = "largest-gain-first heuristic";
        cand.make_witness = [greedy]() {
            BoundWitness w;
            w.code = greedy;
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    if (options.use_exact_code_search && space <= options.budget.max_points) {
        CodeSearchResult found = exact_covering_number(q, m, s, R, options.budget);
        detail::UpperCandidate cand;
        cand.rule = "exact-search";
        cand.value = found.upper;
        cand.constructive = true;
        cand.inputs = record.params_text();
        cand.statement = found.exact ? "branch and bound, exhaustive"
                                     : "branch and bound, budget exhausted";
        Code best = found.best;
        cand.make_witness = [best]() {
            BoundWitness w;
            w.code = best;
            return w;
        };
        candidates.push_back(std::move(cand));
    }

    detail::finish_record(record, std::move(candidates), witness_out);
    return record;
}

// --- table rendering ---------------------------------------------------------

enum class TableFormat { Text, Csv, Json };

struct TableEntry {
    std::string request;
    bool ok = false;
    std::string error;
    std::optional<BoundRecord> record;
};

/// Requests are one per line: `K q m s R` or `OCAN t m s v`. Blank lines and
/// lines starting with '#' are skipped.
inline std::vector<TableEntry> evaluate_requests(std::istream& in,
                                                 const BoundsOptions& options = {}) {
    std::vector<TableEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
            trimmed.pop_back();
        if (trimmed.empty() || trimmed[0] == '#') continue;
        TableEntry entry;
        entry.request = trimmed;
        std::istringstream ls(trimmed);
        std::string kind;
        long long a = 0, b = 0, c = 0, d = 0;
        if (!(ls >> kind >> a >> b >> c >> d)) {
            entry.error = "malformed request (want: K q m s R | OCAN t m s v)";
            out.push_back(std::move(entry));
            continue;
        }
        std::string extra;
        if (ls >> extra) {
            entry.error = "trailing tokens in request";
            out.push_back(std::move(entry));
            continue;
        }
        try {
            if (kind == "K")
                entry.record = k_bounds(static_cast<int>(a), static_cast<int>(b),
                                        static_cast<int>(c), static_cast<int>(d), options);
            else if (kind == "OCAN")
                entry.record = ocan_bounds(static_cast<int>(a), static_cast<int>(b),
                                           static_cast<int>(c), static_cast<int>(d), options);
            else {
                entry.error = "unknown request kind '" + kind + "'";
                out.push_back(std::move(entry));
                continue;
            }
            entry.ok = true;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

inline nlohmann::ordered_json record_to_json(const BoundRecord& record) {
    nlohmann::ordered_json j;
    j["kind"] = record.kind;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : record.params) params[k] = v;
    j["params"] = params;
    j["lower"] = record.lower.str();
    j["lower_rule"] = record.lower_rule;
    if (record.has_upper) {
        j["upper"] = record.upper.str();
        j["upper_rule"] = record.upper_rule;
        j["upper_rules"] = record.upper_rules;
    }
    j["constructive"] = record.constructive;
    nlohmann::ordered_json chain = nlohmann::ordered_json::array();
    for (const auto& app : record.chain) {
        nlohmann::ordered_json e;
        e["rule"] = app.rule;
        e["side"] = app.side;
        e["inputs"] = app.inputs;
        e["statement"] = app.statement;
        e["value"] = app.value.str();
        e["winner"] = app.winner;
        e["constructive"] = app.constructive;
        chain.push_back(e);
    }
    j["chain"] = chain;
    return j;
}

inline BoundRecord record_from_json(const nlohmann::ordered_json& j) {
    BoundRecord record;
    record.kind = j.at("kind").get<std::string>();
    for (const auto& [k, v] : j.at("params").items())
        record.params.emplace_back(k, v.get<long long>());
    record.lower = Integer(j.at("lower").get<std::string>());
    record.lower_rule = j.at("lower_rule").get<std::string>();
    if (j.contains("upper")) {
        record.has_upper = true;
        record.upper = Integer(j.at("upper").get<std::string>());
        record.upper_rule = j.at("upper_rule").get<std::string>();
        record.upper_rules = j.at("upper_rules").get<std::vector<std::string>>();
    }
    record.constructive = j.at("constructive").get<bool>();
    for (const auto& e : j.at("chain")) {
        RuleApplication app;
        app.rule = e.at("rule").get<std::string>();
        app.side = e.at("side").get<std::string>();
        app.inputs = e.at("inputs").get<std::string>();
        app.statement = e.at("statement").get<std::string>();
        app.value = Integer(e.at("value").get<std::string>());
        app.winner = e.at("winner").get<bool>();
        app.constructive = e.at("constructive").get<bool>();
        record.chain.push_back(std::move(app));
    }
    return record;
}

inline void render_table(std::ostream& out, const std::vector<TableEntry>& entries,
                         TableFormat format) {
    if (format == TableFormat::Json) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& e : entries) {
            nlohmann::ordered_json row;
            row["request"] = e.request;
            row["ok"] = e.ok;
            if (!e.ok)
                row["error"] = e.error;
            else
                row["record"] = record_to_json(*e.record);
            rows.push_back(row);
        }
        out << rows.dump(2) << "\n";
        return;
    }
    if (format == TableFormat::Csv) {
        out << "request,ok,kind,params,lower,lower_rule,upper,upper_rule,constructive,error\n";
        for (const auto& e : entries) {
            out << '"' << e.request << "\"," << (e.ok ? "1" : "0") << ',';
            if (e.ok) {
                const BoundRecord& r = *e.record;
                out << r.kind << ",\"" << r.params_text() << "\"," << r.lower.str() << ','
                    << r.lower_rule << ',' << (r.has_upper ? r.upper.str() : "") << ','
                    << (r.has_upper ? r.upper_rule : "") << ','
                    << (r.constructive ? "1" : "0") << ',';
            } else {
                out << ",,,,,,,";
            }
            out << '"' << e.error << "\"\n";
        }
        return;
    }
    for (const auto& e : entries) {
        if (!e.ok) {
            out << e.request << ": error: " << e.error << "\n";
            continue;
        }
        const BoundRecord& r = *e.record;
        out << r.kind << ' ' << r.params_text() << ": lower=" << r.lower.str() << " ["
            << r.lower_rule << "]";
        if (r.has_upper) {
            out << " upper=" << r.upper.str() << " [" << r.upper_rule << "]";
            out << (r.constructive ? " constructive" : " formula-only");
        } else {
            out << " upper=?";
        }
        out << "\n";
        for (const auto& app : r.chain) {
            if (app.side == "lower") continue;
            out << "    " << (app.winner ? "* " : "  ") << app.side << ' ' << app.rule
                << " = " << app.value.str() << "  (" << app.inputs << ")\n";
        }
    }
}

} // namespace rtcover

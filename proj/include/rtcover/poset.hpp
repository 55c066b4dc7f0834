#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtcover/numeric.hpp"

namespace rtcover {

/// The poset [m x s]: m disjoint chains (blocks) of s elements each.
/// Labels run 1..ms; block i (0-based) holds labels is+1 .. (i+1)s,
/// ordered is+1 < is+2 < ... < (i+1)s, so label (i+1)s is the block's
/// maximal element. Height of a label is its 1-based position inside
/// its chain.
struct RTPoset {
    int m = 1; // number of chains (blocks)
    int s = 1; // chain length

    RTPoset(int chains, int depth) : m(chains), s(depth) {
        if (m < 1 || s < 1)
            throw std::invalid_argument("RTPoset: m and s must be positive");
    }

    int size() const { return m * s; }

    int block_of(int label) const {
        check_label(label);
        return (label - 1) / s;
    }
    int height_of(int label) const {
        check_label(label);
        return (label - 1) % s + 1;
    }
    int label_at(int block, int height) const { return block * s + height; }

    void check_label(int label) const {
        if (label < 1 || label > size())
            throw std::invalid_argument("RTPoset: label " + std::to_string(label) +
                                        " out of range 1.." + std::to_string(size()));
    }

    bool operator==(const RTPoset&) const = default;
};

/// A down-set of [m x s]. Since each block is a chain, an ideal is exactly a
/// choice of bottom segment per block; heights[i] in 0..s is the segment
/// length in block i.
class Ideal {
public:
    Ideal(RTPoset poset, std::vector<int> heights)
        : poset_(poset), heights_(std::move(heights)) {
        if (static_cast<int>(heights_.size()) != poset_.m)
            throw std::invalid_argument("Ideal: need one height per block");
        for (int h : heights_)
            if (h < 0 || h > poset_.s)
                throw std::invalid_argument("Ideal: height out of range 0..s");
    }

    const RTPoset& poset() const { return poset_; }
    const std::vector<int>& heights() const { return heights_; }

    int size() const { return std::accumulate(heights_.begin(), heights_.end(), 0); }

    /// Number of maximal elements = number of nonempty blocks.
    int maximal_count() const {
        return static_cast<int>(std::count_if(heights_.begin(), heights_.end(),
                                              [](int h) { return h >= 1; }));
    }

    bool contains(int label) const {
        return poset_.height_of(label) <= heights_[poset_.block_of(label)];
    }

    std::vector<int> labels() const {
        std::vector<int> out;
        for (int b = 0; b < poset_.m; ++b)
            for (int h = 1; h <= heights_[b]; ++h)
                out.push_back(poset_.label_at(b, h));
        return out;
    }

    bool operator==(const Ideal&) const = default;

private:
    RTPoset poset_;
    std::vector<int> heights_;
};

/// An up-set of [m x s]: the complement of an ideal. Each block contributes a
/// top segment; depths[i] in 0..s is that segment's length.
class AntiIdeal {
public:
    AntiIdeal(RTPoset poset, std::vector<int> depths)
        : poset_(poset), depths_(std::move(depths)) {
        if (static_cast<int>(depths_.size()) != poset_.m)
            throw std::invalid_argument("AntiIdeal: need one depth per block");
        for (int d : depths_)
            if (d < 0 || d > poset_.s)
                throw std::invalid_argument("AntiIdeal: depth out of range 0..s");
    }

    const RTPoset& poset() const { return poset_; }
    const std::vector<int>& depths() const { return depths_; }

    int size() const { return std::accumulate(depths_.begin(), depths_.end(), 0); }

    bool contains(int label) const {
        return poset_.height_of(label) > poset_.s - depths_[poset_.block_of(label)];
    }

    /// Member labels in ascending order.
    std::vector<int> labels() const {
        std::vector<int> out;
        for (int b = 0; b < poset_.m; ++b)
            for (int h = poset_.s - depths_[b] + 1; h <= poset_.s; ++h)
                out.push_back(poset_.label_at(b, h));
        return out;
    }

    /// The complementary ideal: bottom segments of length s - depth per block.
    Ideal complement() const {
        std::vector<int> hs(depths_.size());
        for (size_t i = 0; i < depths_.size(); ++i) hs[i] = poset_.s - depths_[i];
        return Ideal(poset_, std::move(hs));
    }

    bool operator==(const AntiIdeal&) const = default;

private:
    RTPoset poset_;
    std::vector<int> depths_;
};

inline AntiIdeal complement(const Ideal& ideal) {
    std::vector<int> ds(ideal.heights().size());
    for (size_t i = 0; i < ds.size(); ++i) ds[i] = ideal.poset().s - ideal.heights()[i];
    return AntiIdeal(ideal.poset(), std::move(ds));
}

/// Smallest ideal containing the given labels: per block, the bottom segment
/// up to the highest label present.
inline Ideal generated_ideal(const RTPoset& poset, const std::vector<int>& labels) {
    std::vector<int> heights(poset.m, 0);
    for (int label : labels) {
        poset.check_label(label);
        int b = poset.block_of(label);
        heights[b] = std::max(heights[b], poset.height_of(label));
    }
    return Ideal(poset, std::move(heights));
}

/// All anti-ideals of size exactly t, i.e. all depth vectors with entries in
/// 0..s summing to t, in ascending lexicographic order.
inline std::vector<AntiIdeal> enumerate_anti_ideals(const RTPoset& poset, int t) {
    if (t < 0 || t > poset.size())
        throw std::invalid_argument("enumerate_anti_ideals: t out of range 0..ms");
    std::vector<AntiIdeal> out;
    std::vector<int> depths(poset.m, 0);
    auto rec = [&](auto&& self, int block, int remaining) -> void {
        if (block == poset.m) {
            if (remaining == 0) out.emplace_back(poset, depths);
            return;
        }
        // keep enough capacity in the remaining blocks
        int tail_cap = (poset.m - block - 1) * poset.s;
        for (int d = std::max(0, remaining - tail_cap); d <= std::min(poset.s, remaining); ++d) {
            depths[block] = d;
            self(self, block + 1, remaining - d);
        }
        depths[block] = 0;
    };
    rec(rec, 0, t);
    return out;
}

/// Number of ideals of [m x s] of size i with exactly j maximal elements:
/// choose the j nonempty blocks, then split i into j chain segments of
/// length 1..s each. For i <= s the bounded-composition count collapses to
/// C(i-1, j-1).
inline Integer omega_count(int m, int s, long long i, long long j) {
    if (m < 1 || s < 1)
        throw std::invalid_argument("omega_count: m and s must be positive");
    if (i < 1 || i > static_cast<long long>(m) * s)
        throw std::invalid_argument("omega_count: need 1 <= i <= ms");
    if (j < 1 || j > std::min<long long>(m, i))
        throw std::invalid_argument("omega_count: need 1 <= j <= min(m, i)");
    return binomial(m, j) * bounded_compositions(i, j, s);
}

} // namespace rtcover

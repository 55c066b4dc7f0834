#include <catch2/catch_amalgamated.hpp>

#include "rtcover/search.hpp"

using namespace rtcover;

namespace {

// Independent oracle: can any k centers cover the whole space? Plain
// enumeration over center subsets, no shared machinery with the search.
bool k_centers_suffice(int q, int m, int s, int R, int k) {
    RTPoset poset(m, s);
    long long points = 1;
    for (int i = 0; i < poset.size(); ++i) points *= q;
    std::vector<std::vector<int>> all;
    for (long long r = 0; r < points; ++r) {
        std::vector<int> w(static_cast<size_t>(poset.size()));
        long long rest = r;
        for (int i = poset.size() - 1; i >= 0; --i) {
            w[static_cast<size_t>(i)] = static_cast<int>(rest % q);
            rest /= q;
        }
        all.push_back(std::move(w));
    }
    std::vector<int> idx(static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        bool covers = true;
        for (const auto& x : all) {
            bool hit = false;
            for (int i = 0; i < k && !hit; ++i)
                hit = rt_distance(poset, x, all[static_cast<size_t>(idx[static_cast<size_t>(i)])]) <= R;
            if (!hit) {
                covers = false;
                break;
            }
        }
        if (covers) return true;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == points - k + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

} // namespace

TEST_CASE("greedy covering", "[search]") {
    Code g = greedy_covering(2, 2, 2, 2);
    REQUIRE(g.size() <= 4);
    REQUIRE(verify_covering(g, 2).valid);
    REQUIRE(g.size() == 3); // deterministic tie-breaks pin the result

    Code single = greedy_covering(2, 1, 2, 2);
    REQUIRE(single.size() == 1);

    Code chain = greedy_covering(3, 1, 2, 1);
    REQUIRE(chain.size() == 3);
    REQUIRE(verify_covering(chain, 1).valid);

    SearchBudget tiny;
    tiny.max_points = 8;
    REQUIRE_THROWS_AS(greedy_covering(2, 2, 2, 1, tiny), BudgetError);
}

TEST_CASE("exact covering numbers", "[search]") {
    CodeSearchResult chain = exact_covering_number(2, 1, 2, 1);
    REQUIRE(chain.exact);
    REQUIRE(chain.upper == 2);
    REQUIRE(verify_covering(chain.best, 1).valid);

    CodeSearchResult whole = exact_covering_number(2, 2, 2, 4); // R = ms
    REQUIRE(whole.exact);
    REQUIRE(whole.upper == 1);

    CodeSearchResult radius_zero = exact_covering_number(2, 2, 1, 0);
    REQUIRE(radius_zero.exact);
    REQUIRE(radius_zero.upper == 4);

    CodeSearchResult two_two = exact_covering_number(2, 2, 2, 2);
    REQUIRE(two_two.exact);
    REQUIRE(two_two.upper == 3);
    REQUIRE(verify_covering(two_two.best, 2).valid);
    REQUIRE(two_two.best.size() == 3);
    // independent confirmation: no pair of centers covers, some triple does
    REQUIRE_FALSE(k_centers_suffice(2, 2, 2, 2, 2));
    REQUIRE(k_centers_suffice(2, 2, 2, 2, 3));
}

TEST_CASE("exact values match classical Hamming cases", "[search]") {
    REQUIRE(exact_covering_number(2, 3, 1, 1).upper == 2);
    REQUIRE(exact_covering_number(3, 2, 1, 1).upper == 3);
    REQUIRE(exact_covering_number(2, 4, 1, 1).upper == 4);
}

TEST_CASE("branch and bound agrees with subset enumeration", "[search]") {
    for (auto [q, m, s] : {std::tuple{2, 1, 3}, {2, 3, 1}, {2, 2, 2}, {2, 1, 4},
                           {2, 4, 1}, {3, 1, 2}, {3, 2, 1}}) {
        for (int R = 1; R < m * s; ++R) {
            CodeSearchResult found = exact_covering_number(q, m, s, R);
            REQUIRE(found.exact);
            long long k = static_cast<long long>(found.upper);
            REQUIRE(k_centers_suffice(q, m, s, R, static_cast<int>(k)));
            if (k > 1) REQUIRE_FALSE(k_centers_suffice(q, m, s, R, static_cast<int>(k - 1)));
        }
    }
}

TEST_CASE("search result stays within the outer bounds", "[search]") {
    for (auto [q, m, s, R] : {std::tuple{2, 2, 2, 1}, {2, 2, 2, 3}, {2, 3, 2, 3},
                              {3, 2, 2, 2}, {2, 2, 3, 4}}) {
        CodeSearchResult result = exact_covering_number(q, m, s, R);
        RTPoset poset(m, s);
        Integer space = int_pow(q, poset.size());
        REQUIRE(result.lower >= ceil_div(space, sphere_volume(q, m, s, R)));
        REQUIRE(result.upper <= int_pow(q, poset.size() - R));
        REQUIRE(result.lower <= result.upper);
        if (result.exact) REQUIRE(result.lower == result.upper);
    }
}

TEST_CASE("budget exhaustion yields an honest interval", "[search]") {
    SearchBudget strangled;
    strangled.max_nodes = 1;
    CodeSearchResult result = exact_covering_number(2, 3, 2, 2, strangled);
    REQUIRE_FALSE(result.exact);
    REQUIRE(result.lower == ceil_div(int_pow(2, 6), sphere_volume(2, 3, 2, 2)));
    REQUIRE(result.upper >= result.lower);
    REQUIRE(verify_covering(result.best, 2).valid);
}

TEST_CASE("search is deterministic", "[search]") {
    CodeSearchResult a = exact_covering_number(2, 2, 2, 2);
    CodeSearchResult b = exact_covering_number(2, 2, 2, 2);
    REQUIRE(a.upper == b.upper);
    REQUIRE(a.best.words == b.best.words);
    REQUIRE(a.nodes_used == b.nodes_used);

    OcaSearchResult c = exact_ocan(2, 3, 2, 2);
    OcaSearchResult d = exact_ocan(2, 3, 2, 2);
    REQUIRE(c.upper == d.upper);
    REQUIRE(c.witness->rows == d.witness->rows);
}

TEST_CASE("exact ordered covering array numbers", "[search]") {
    OcaSearchResult ca = exact_ocan(2, 3, 1, 2);
    REQUIRE(ca.exact);
    REQUIRE(*ca.upper == 4);
    REQUIRE(verify_oca(*ca.witness).valid);

    OcaSearchResult square = exact_ocan(2, 2, 2, 2);
    REQUIRE(square.exact);
    REQUIRE(*square.upper == 4);

    OcaSearchResult depth2 = exact_ocan(2, 3, 2, 2);
    REQUIRE(depth2.exact);
    REQUIRE(*depth2.upper == 4);

    OcaSearchResult wider = exact_ocan(2, 4, 2, 2);
    REQUIRE(wider.exact);
    REQUIRE(*wider.upper == 5);
    REQUIRE(verify_oca(*wider.witness).valid);

    // searching from N = 1 exhausts the impossible row counts first
    OcaSearchResult from_one = exact_ocan(2, 3, 1, 2, SearchBudget{}, 1);
    REQUIRE(from_one.exact);
    REQUIRE(*from_one.upper == 4);
}

TEST_CASE("ordered search budget and caps", "[search]") {
    SearchBudget strangled;
    strangled.max_nodes = 1;
    OcaSearchResult starved = exact_ocan(2, 3, 2, 2, strangled);
    REQUIRE_FALSE(starved.exact);
    REQUIRE(starved.lower == 4);
    REQUIRE_FALSE(starved.upper.has_value());

    OcaSearchResult capped = exact_ocan(2, 4, 2, 2, SearchBudget{}, -1, 4);
    REQUIRE_FALSE(capped.exact); // OCAN is 5, outside the cap
    REQUIRE(capped.lower == 5);

    SearchBudget small_points;
    small_points.max_points = 10;
    REQUIRE_THROWS_AS(exact_ocan(2, 3, 2, 2, small_points), BudgetError);
    REQUIRE_THROWS_AS(exact_ocan(1, 2, 1, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(exact_ocan(2, 2, 3, 2), std::invalid_argument); // s > t
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "rtcover/acceptance.hpp"
#include "rtcover/array.hpp"
#include "rtcover/constructions.hpp"

using namespace rtcover;

namespace {

// Independent plain-CA checker: every t-subset of columns (not just
// anti-ideals) must carry all tuples. For s = 1 the two notions coincide.
bool ca_check_strength2(const OrderedArray& a) {
    for (int c1 = 0; c1 < a.columns(); ++c1)
        for (int c2 = c1 + 1; c2 < a.columns(); ++c2) {
            std::vector<long long> seen(static_cast<size_t>(a.v) * a.v, 0);
            for (const auto& row : a.rows)
                ++seen[static_cast<size_t>(row[static_cast<size_t>(c1)]) * a.v +
                       row[static_cast<size_t>(c2)]];
            for (long long count : seen)
                if (count < a.lambda) return false;
        }
    return true;
}

OrderedArray example_array() { return rtcover::acceptance::detail::depth2_example_array(); }

} // namespace

TEST_CASE("reference depth-2 array verifies", "[array]") {
    OrderedArray a = example_array();
    CoverageReport report = verify_oca(a);
    REQUIRE(report.valid);
    REQUIRE(report.anti_ideals_checked == 10);
    REQUIRE(report.violations.empty());
}

TEST_CASE("a single flipped entry is caught", "[array]") {
    OrderedArray a = example_array();
    a.rows[4][6] = 0; // row 5, column 7
    CoverageReport report = verify_oca(a);
    REQUIRE_FALSE(report.valid);
    bool found = false;
    for (const auto& v : report.violations)
        if (v.depths == std::vector<int>{0, 0, 0, 2} && v.missing == std::vector<int>{1, 1} &&
            v.observed == 0)
            found = true;
    REQUIRE(found);
    // violations are ordered by depth vector, then tuple value
    auto sorted = report.violations;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        if (x.depths != y.depths) return x.depths < y.depths;
        return x.missing < y.missing;
    });
    for (size_t i = 0; i < sorted.size(); ++i) {
        REQUIRE(sorted[i].depths == report.violations[i].depths);
        REQUIRE(sorted[i].missing == report.violations[i].missing);
    }
}

TEST_CASE("plain covering array via s = 1", "[array]") {
    OrderedArray ca;
    ca.t = 2;
    ca.m = 3;
    ca.s = 1;
    ca.v = 2;
    ca.rows = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    REQUIRE(verify_oca(ca).valid);
    REQUIRE(ca_check_strength2(ca));
}

TEST_CASE("orthogonal array predicate", "[array]") {
    REQUIRE(is_ooa(rs_ooa(2, 2)));
    REQUIRE_FALSE(is_ooa(example_array())); // 5 rows, v^t = 4

    OrderedArray full; // all tuples once, one block of depth t
    full.t = 2;
    full.m = 1;
    full.s = 2;
    full.v = 2;
    full.rows = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    REQUIRE(is_ooa(full));
    full.rows.push_back({0, 0});
    REQUIRE_FALSE(is_ooa(full)); // right coverage, wrong row count
}

TEST_CASE("verdict is invariant under row shuffles and symbol relabeling", "[array]") {
    OrderedArray a = example_array();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        OrderedArray shuffled = a;
        std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), rng);
        REQUIRE(verify_oca(shuffled).valid);
        OrderedArray relabeled = a;
        int col = static_cast<int>(rng() % relabeled.columns());
        for (auto& row : relabeled.rows)
            row[static_cast<size_t>(col)] = 1 - row[static_cast<size_t>(col)];
        REQUIRE(verify_oca(relabeled).valid);
    }

    // larger alphabet: an arbitrary symbol permutation in one column
    OrderedArray ooa = rs_ooa(3, 2);
    for (int trial = 0; trial < 10; ++trial) {
        OrderedArray relabeled = ooa;
        int col = static_cast<int>(rng() % relabeled.columns());
        std::vector<int> perm = {0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto& row : relabeled.rows)
            row[static_cast<size_t>(col)] = perm[static_cast<size_t>(row[static_cast<size_t>(col)])];
        REQUIRE(verify_oca(relabeled).valid);
        REQUIRE(is_ooa(relabeled));
    }
}

TEST_CASE("coverage is monotone in the row set", "[array]") {
    OrderedArray a = example_array();
    std::mt19937 rng(11);
    OrderedArray extended = a;
    std::vector<int> extra(static_cast<size_t>(a.columns()));
    for (auto& x : extra) x = static_cast<int>(rng() % a.v);
    extended.rows.push_back(extra);
    REQUIRE(verify_oca(extended).valid);

    OrderedArray broken = a;
    broken.rows[4][6] = 0;
    REQUIRE_FALSE(verify_oca(broken).valid);
    OrderedArray smaller = broken; // removing rows cannot repair coverage
    smaller.rows.pop_back();
    REQUIRE_FALSE(verify_oca(smaller).valid);
}

TEST_CASE("agrees with an independent CA checker on random arrays", "[array]") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        OrderedArray a;
        a.t = 2;
        a.m = 2 + static_cast<int>(rng() % 3);
        a.s = 1;
        a.v = 2;
        int n = 3 + static_cast<int>(rng() % 6);
        for (int r = 0; r < n; ++r) {
            std::vector<int> row(static_cast<size_t>(a.m));
            for (auto& x : row) x = static_cast<int>(rng() % 2);
            a.rows.push_back(std::move(row));
        }
        REQUIRE(verify_oca(a).valid == ca_check_strength2(a));
    }
}

TEST_CASE("multiplicity above one", "[array]") {
    OrderedArray a = example_array();
    a.lambda = 2;
    REQUIRE_FALSE(verify_oca(a).valid); // single copies cover each pair once
    OrderedArray doubled = a;
    doubled.rows.insert(doubled.rows.end(), a.rows.begin(), a.rows.end());
    REQUIRE(verify_oca(doubled).valid);

    OrderedArray twice; // two copies of the full factorial on one block
    twice.t = 2;
    twice.m = 1;
    twice.s = 2;
    twice.v = 2;
    twice.lambda = 2;
    twice.rows = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    REQUIRE(is_ooa(twice));
    twice.rows[4] = {0, 1}; // row counts stay right, multiplicities do not
    REQUIRE_FALSE(is_ooa(twice));
}

TEST_CASE("violation report is capped", "[array]") {
    OrderedArray a;
    a.t = 2;
    a.m = 10;
    a.s = 1;
    a.v = 2;
    a.rows = {std::vector<int>(10, 0)};
    CoverageReport report = verify_oca(a);
    REQUIRE_FALSE(report.valid);
    REQUIRE(report.violations.size() == CoverageReport::kViolationCap);
    REQUIRE(report.truncated);
}

TEST_CASE("array files round-trip bit-exactly", "[array]") {
    OrderedArray a = example_array();
    std::ostringstream out;
    write_oca(out, a);
    REQUIRE(out.str().substr(0, 33) == "oca t=2 m=4 s=2 v=2 lambda=1 n=5\n");
    std::istringstream in(out.str());
    OrderedArray back = read_oca(in);
    REQUIRE(back.rows == a.rows);
    REQUIRE(back.t == a.t);
    REQUIRE(back.m == a.m);
    REQUIRE(back.s == a.s);
    REQUIRE(back.v == a.v);
    REQUIRE(back.lambda == a.lambda);
    std::ostringstream again;
    write_oca(again, back);
    REQUIRE(again.str() == out.str());
}

TEST_CASE("array file parse errors", "[array]") {
    std::istringstream bad_magic("code q=2 m=1 s=1 r=1\n0\n");
    REQUIRE_THROWS_AS(read_oca(bad_magic), ParseError);
    std::istringstream truncated("oca t=2 m=2 s=1 v=2 lambda=1 n=4\n0 0\n0 1\n");
    REQUIRE_THROWS_AS(read_oca(truncated), ParseError);
    std::istringstream bad_field("oca t=2 m=2 s=1 v=2 lam=1 n=0\n");
    REQUIRE_THROWS_AS(read_oca(bad_field), ParseError);
    std::istringstream bad_symbol("oca t=2 m=2 s=1 v=2 lambda=1 n=1\n0 7\n");
    REQUIRE_THROWS_AS(read_oca(bad_symbol), std::invalid_argument);
}

TEST_CASE("structural validation rejects malformed arrays", "[array]") {
    OrderedArray a = example_array();
    a.t = 1;
    REQUIRE_THROWS_AS(verify_oca(a), std::invalid_argument);
    a = example_array();
    a.t = 9;
    REQUIRE_THROWS_AS(verify_oca(a), std::invalid_argument);
    a = example_array();
    a.s = 3; // s > t and row length mismatch
    REQUIRE_THROWS_AS(verify_oca(a), std::invalid_argument);
    a = example_array();
    a.rows[0].pop_back();
    REQUIRE_THROWS_AS(verify_oca(a), std::invalid_argument);
}

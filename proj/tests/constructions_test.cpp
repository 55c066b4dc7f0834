#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rtcover/acceptance.hpp"
#include "rtcover/constructions.hpp"

using namespace rtcover;

namespace {

OrderedArray example_array() { return rtcover::acceptance::detail::depth2_example_array(); }

// The relabeling behind the depth extension: the new minimal element of a
// block maps to the maximal element of the next block, everything else to
// itself (one level lower). Images of size-t anti-ideals must again be
// size-t anti-ideals of the shallower poset.
bool extension_relabel_closed(int m, int t) {
    RTPoset deep(m, t);
    RTPoset shallow(m, t - 1);
    for (const AntiIdeal& ai : enumerate_anti_ideals(deep, t)) {
        std::set<int> image;
        for (int label : ai.labels()) {
            int b = deep.block_of(label);
            int h = deep.height_of(label);
            if (h == 1)
                image.insert(shallow.label_at((b + 1) % m, t - 1));
            else
                image.insert(shallow.label_at(b, h - 1));
        }
        if (static_cast<int>(image.size()) != t) return false;
        for (int label : image) {
            int b = shallow.block_of(label);
            for (int h = shallow.height_of(label); h <= shallow.s; ++h)
                if (!image.count(shallow.label_at(b, h))) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("binary strength-2 covering array numbers", "[constructions]") {
    REQUIRE(kleitman_spencer_number(2) == 4);
    REQUIRE(kleitman_spencer_number(3) == 4);
    REQUIRE(kleitman_spencer_number(4) == 5);
    REQUIRE(kleitman_spencer_number(10) == 6);
    REQUIRE(kleitman_spencer_number(15) == 7);
    REQUIRE_THROWS_AS(kleitman_spencer_number(1), std::invalid_argument);
}

TEST_CASE("covering array construction", "[constructions]") {
    OrderedArray ca3 = kleitman_spencer_ca(3);
    REQUIRE(ca3.row_count() == 4);
    std::vector<std::vector<int>> want = {{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    REQUIRE(ca3.rows == want);
    REQUIRE(verify_oca(ca3).valid);

    for (int m : {2, 5, 10, 15}) {
        OrderedArray ca = kleitman_spencer_ca(m);
        REQUIRE(ca.row_count() == kleitman_spencer_number(m));
        REQUIRE(ca.m == m);
        REQUIRE(verify_oca(ca).valid);
    }

    // tightness at the threshold: dropping the last row breaks some pair
    OrderedArray clipped = ca3;
    clipped.rows.pop_back();
    REQUIRE_FALSE(verify_oca(clipped).valid);
}

TEST_CASE("depth-2 array from a strength-2 covering array", "[constructions]") {
    OrderedArray oca = oca_depth2_from_ca(kleitman_spencer_ca(3));
    REQUIRE(oca.t == 2);
    REQUIRE(oca.m == 3);
    REQUIRE(oca.s == 2);
    REQUIRE(oca.row_count() == 4);
    REQUIRE(verify_oca(oca).valid);

    OrderedArray oca4 = oca_depth2_from_ca(kleitman_spencer_ca(4));
    REQUIRE(oca4.row_count() == 5);
    REQUIRE(verify_oca(oca4).valid);

    // round-trip: dropping the added bottom level restores the input
    OrderedArray back = restrict_array(oca, RestrictMode::DropBottomLevel);
    REQUIRE(back.rows == kleitman_spencer_ca(3).rows);

    OrderedArray strength3; // full factorial, strength 3, depth 1
    strength3.t = 3;
    strength3.m = 3;
    strength3.s = 1;
    strength3.v = 2;
    for (int r = 0; r < 8; ++r)
        strength3.rows.push_back({(r >> 2) & 1, (r >> 1) & 1, r & 1});
    REQUIRE(verify_oca(strength3).valid);
    REQUIRE_THROWS_AS(oca_depth2_from_ca(strength3), std::invalid_argument);
}

TEST_CASE("depth extension", "[constructions]") {
    OrderedArray from_ca = extend_depth(kleitman_spencer_ca(3));
    REQUIRE(from_ca.s == 2);
    REQUIRE(from_ca.row_count() == 4);
    REQUIRE(verify_oca(from_ca).valid);

    // a deeper case: strength 3 on two blocks
    OrderedArray base = rs_ooa(2, 3); // (8; 3, 3, 3, 2)
    OrderedArray two_blocks = restrict_array(base, RestrictMode::DropBlock, 2);
    OrderedArray shallow = restrict_array(two_blocks, RestrictMode::DropBottomLevel);
    REQUIRE(shallow.s == 2);
    REQUIRE(verify_oca(shallow).valid);
    OrderedArray deep = extend_depth(shallow);
    REQUIRE(deep.s == 3);
    REQUIRE(deep.row_count() == 8);
    REQUIRE(verify_oca(deep).valid);

    OrderedArray wrong_depth = example_array(); // s = t, not t-1
    REQUIRE_THROWS_AS(extend_depth(wrong_depth), std::invalid_argument);

    for (auto [m, t] : {std::pair{2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {2, 4}})
        REQUIRE(extension_relabel_closed(m, t));
}

TEST_CASE("column restrictions", "[constructions]") {
    OrderedArray a = example_array();

    OrderedArray no_block = restrict_array(a, RestrictMode::DropBlock, 3);
    REQUIRE(no_block.m == 3);
    REQUIRE(no_block.row_count() == 5);
    REQUIRE(verify_oca(no_block).valid);

    OrderedArray flat = restrict_array(a, RestrictMode::DropBottomLevel);
    REQUIRE(flat.s == 1);
    REQUIRE(flat.m == 4);
    REQUIRE(verify_oca(flat).valid); // a CA(5; 2, 4, 2)

    OrderedArray one_block; // full factorial on a single chain
    one_block.t = 2;
    one_block.m = 1;
    one_block.s = 2;
    one_block.v = 2;
    one_block.rows = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    REQUIRE_THROWS_AS(restrict_array(one_block, RestrictMode::DropBlock, 0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(restrict_array(flat, RestrictMode::DropBottomLevel),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(restrict_array(a, RestrictMode::DropBlock, 4), std::invalid_argument);
}

TEST_CASE("alphabet fusion", "[constructions]") {
    OrderedArray fused = fuse(rs_ooa(3, 2));
    REQUIRE(fused.row_count() == 7);
    REQUIRE(fused.v == 2);
    REQUIRE(fused.m == 4);
    REQUIRE(fused.s == 2);
    REQUIRE(verify_oca(fused).valid);

    OrderedArray once = fuse(rs_ooa(4, 2));
    REQUIRE(once.row_count() == 14);
    REQUIRE(once.v == 3);
    REQUIRE(verify_oca(once).valid);
    OrderedArray twice = fuse(once);
    REQUIRE(twice.row_count() == 12);
    REQUIRE(twice.v == 2);
    REQUIRE(verify_oca(twice).valid);

    REQUIRE_THROWS_AS(fuse(twice), std::invalid_argument); // v = 2 cannot shrink
}

TEST_CASE("polynomial-evaluation orthogonal arrays", "[constructions]") {
    for (auto [q, t] : {std::pair{2, 2}, {3, 2}, {2, 3}, {4, 2}, {5, 2}, {7, 2},
                        {8, 2}, {9, 2}, {11, 2}, {13, 2}, {16, 2}, {3, 3}}) {
        OrderedArray a = rs_ooa(q, t);
        REQUIRE(a.row_count() == static_cast<int>(int_pow(q, t)));
        REQUIRE(a.m == q + 1);
        REQUIRE(a.s == t);
        REQUIRE(is_ooa(a));
    }
    REQUIRE_THROWS_AS(rs_ooa(6, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(rs_ooa(2, 1), std::invalid_argument);
}

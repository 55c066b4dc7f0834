#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "rtcover/bounds.hpp"

using namespace rtcover;

namespace {

const RuleApplication* find_rule(const BoundRecord& record, const std::string& rule) {
    for (const auto& app : record.chain)
        if (app.rule == rule) return &app;
    return nullptr;
}

} // namespace

TEST_CASE("surjective rule drives the lifted bound", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = k_bounds(3, 3, 2, 4, {}, &witness);
    REQUIRE(record.lower == 3);
    REQUIRE(record.upper == 5);
    REQUIRE(record.upper_rule == "surjective-ca");
    REQUIRE(record.constructive);
    REQUIRE(witness.code.has_value());
    REQUIRE(witness.code->size() == 5);
    REQUIRE(verify_covering(*witness.code, 4).valid);
}

TEST_CASE("two-chain rule at m = 2", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = k_bounds(2, 2, 3, 3, {}, &witness);
    REQUIRE(record.upper == 6);
    REQUIRE(record.upper_rule == "two-chain");
    REQUIRE(witness.code.has_value());
    REQUIRE(verify_covering(*witness.code, 3).valid);
}

TEST_CASE("product rule beats the direct formula", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = k_bounds(4, 2, 2, 2, {}, &witness);
    REQUIRE(record.upper == 12);
    REQUIRE(record.upper_rule == "oca-product");
    REQUIRE(record.constructive);
    const RuleApplication* two_chain = find_rule(record, "two-chain");
    REQUIRE(two_chain != nullptr);
    REQUIRE(two_chain->value == 15);
    REQUIRE_FALSE(two_chain->winner);
    REQUIRE(witness.code.has_value());
    REQUIRE(witness.code->size() == 12);
    REQUIRE(verify_covering(*witness.code, 2).valid);
    // ingredient provenance shows the factor bounds
    bool saw_ocan_ingredient = false, saw_k_ingredient = false;
    for (const auto& app : record.chain) {
        if (app.side != "ingredient") continue;
        if (app.rule.rfind("OCAN:", 0) == 0 && app.value == 4) saw_ocan_ingredient = true;
        if (app.rule.rfind("K:", 0) == 0 && app.value == 3) saw_k_ingredient = true;
    }
    REQUIRE(saw_ocan_ingredient);
    REQUIRE(saw_k_ingredient);
}

TEST_CASE("constant-words equality case", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = k_bounds(2, 3, 2, 4, {}, &witness);
    REQUIRE(record.upper == 2);
    REQUIRE(record.upper_rule == "constant-words");
    REQUIRE(witness.code.has_value());
    REQUIRE(verify_covering(*witness.code, 4).valid);
}

TEST_CASE("rule guards are exact", "[bounds]") {
    // m = (t-1)q holds at (3,3,2,4); shifting any parameter away disables it
    REQUIRE(find_rule(k_bounds(3, 3, 2, 4), "surjective-ca") != nullptr);
    REQUIRE(find_rule(k_bounds(3, 4, 2, 6), "surjective-ca") == nullptr);
    REQUIRE(find_rule(k_bounds(3, 3, 2, 3), "surjective-ca") == nullptr);
    REQUIRE(find_rule(k_bounds(2, 2, 3, 3), "two-chain") != nullptr);
    REQUIRE(find_rule(k_bounds(2, 2, 3, 2), "two-chain") == nullptr);
    REQUIRE(find_rule(k_bounds(2, 3, 3, 5), "three-chain") != nullptr);
    REQUIRE(find_rule(k_bounds(2, 3, 3, 4), "three-chain") == nullptr);
}

TEST_CASE("ordered bounds: binary depth-2 equals the covering array number", "[bounds]") {
    for (int m = 2; m <= 8; ++m) {
        BoundRecord record = ocan_bounds(2, m, 2, 2);
        REQUIRE(record.lower == 4);
        REQUIRE(record.has_upper);
        REQUIRE(record.upper == kleitman_spencer_number(m));
        REQUIRE(record.upper_rules.front() == "kleitman-spencer");
    }
}

TEST_CASE("fusion shows up as a non-winning candidate", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = ocan_bounds(2, 4, 2, 2, {}, &witness);
    REQUIRE(record.upper == 5);
    REQUIRE(record.upper_rule == "kleitman-spencer");
    const RuleApplication* fusion = find_rule(record, "fusion");
    REQUIRE(fusion != nullptr);
    REQUIRE(fusion->value == 7);
    REQUIRE_FALSE(fusion->winner);
    REQUIRE(witness.array.has_value());
    REQUIRE(verify_oca(*witness.array).valid);
    REQUIRE(witness.array->row_count() == 5);
}

TEST_CASE("orthogonal-array equality case", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = ocan_bounds(3, 3, 3, 2, {}, &witness);
    REQUIRE(record.lower == 8);
    REQUIRE(record.upper == 8);
    REQUIRE(record.upper_rule == "rs-ooa");
    REQUIRE(witness.array.has_value());
    REQUIRE(is_ooa(*witness.array));
}

TEST_CASE("depth transfer carries witnesses across depths", "[bounds]") {
    BoundWitness witness;
    BoundRecord record = ocan_bounds(3, 2, 2, 2, {}, &witness);
    REQUIRE(record.upper == 8);
    REQUIRE(witness.array.has_value());
    REQUIRE(witness.array->s == 2);
    REQUIRE(verify_oca(*witness.array).valid);

    // transfer candidates are present in both directions
    REQUIRE(find_rule(ocan_bounds(3, 3, 3, 2), "depth-transfer(rs-ooa)") != nullptr);
    BoundRecord shallow = ocan_bounds(3, 3, 2, 2);
    bool has_transfer = false;
    for (const auto& app : shallow.chain)
        if (app.rule.rfind("depth-transfer(", 0) == 0) has_transfer = true;
    REQUIRE(has_transfer);
}

TEST_CASE("fused ooa bound from the exact search example", "[bounds]") {
    // OCAN(2,4,2,2): fusion gives 7 = 3^2-2, matching a fused 9-row array
    BoundsOptions options;
    options.use_exact_oca_search = true;
    BoundRecord record = ocan_bounds(2, 4, 2, 2, options);
    const RuleApplication* exact = find_rule(record, "exact-search");
    REQUIRE(exact != nullptr);
    REQUIRE(exact->value == 5);
    REQUIRE(exact->winner);
}

TEST_CASE("formula-only rules are flagged non-constructive", "[bounds]") {
    BoundRecord record = k_bounds(6, 3, 2, 4);
    const RuleApplication* reduced = find_rule(record, "reduced-two-chain-product");
    REQUIRE(reduced != nullptr);
    REQUIRE(reduced->value == 32);
    REQUIRE_FALSE(reduced->constructive);
    REQUIRE(record.upper == 18); // the constructive product rules win here
    REQUIRE(record.upper_rule == "oca-product");

    BoundRecord paired = k_bounds(4, 6, 2, 9);
    REQUIRE(paired.upper == 24);
    REQUIRE(paired.upper_rule == "paired-block-split");
    REQUIRE_FALSE(paired.constructive);
}

TEST_CASE("supplied covering arrays unlock strengths above 2", "[bounds]") {
    OrderedArray parity;
    parity.t = 3;
    parity.m = 4;
    parity.s = 1;
    parity.v = 2;
    for (int r = 0; r < 16; ++r) {
        std::vector<int> row = {(r >> 3) & 1, (r >> 2) & 1, (r >> 1) & 1, r & 1};
        if ((row[0] + row[1] + row[2] + row[3]) % 2 == 0) parity.rows.push_back(row);
    }
    // K(2, 4, 1, 1): t = 3, m = (t-1)q = 4; the rule needs a strength-3 CA
    REQUIRE(find_rule(k_bounds(2, 4, 1, 1), "surjective-ca") == nullptr);
    BoundsOptions options;
    options.ca_library.push_back(parity);
    const RuleApplication* rule = find_rule(k_bounds(2, 4, 1, 1, options), "surjective-ca");
    REQUIRE(rule != nullptr);
    REQUIRE(rule->value == 8); // 0 constants + the 8 supplied rows
}

TEST_CASE("upper bounds never undercut the lower bound", "[bounds]") {
    for (auto [q, m, s, R] : {std::tuple{2, 2, 2, 1}, {2, 2, 2, 2}, {2, 2, 2, 3},
                              {3, 2, 2, 2}, {4, 2, 2, 2}, {2, 3, 2, 3}, {6, 3, 2, 4},
                              {2, 4, 1, 2}, {5, 2, 2, 2}}) {
        BoundRecord record = k_bounds(q, m, s, R);
        REQUIRE(record.has_upper);
        REQUIRE(record.lower <= record.upper);
    }
}

TEST_CASE("ordered bounds bracket the exact search", "[bounds]") {
    SearchBudget budget;
    budget.max_nodes = 100'000;
    for (auto [t, m, s, v] : {std::tuple{2, 2, 1, 2}, {2, 3, 1, 2}, {2, 4, 1, 2},
                              {2, 5, 1, 2}, {2, 2, 2, 2}, {2, 3, 2, 2}, {2, 4, 2, 2},
                              {3, 2, 2, 2}, {3, 3, 2, 2}, {3, 3, 3, 2}, {3, 4, 2, 2},
                              {2, 2, 2, 3}, {2, 3, 2, 3}, {2, 4, 2, 3}}) {
        BoundRecord record = ocan_bounds(t, m, s, v);
        REQUIRE(record.has_upper);
        REQUIRE(record.lower <= record.upper);
        long long cap = static_cast<long long>(record.upper);
        OcaSearchResult found = exact_ocan(t, m, s, v, budget, -1, cap);
        if (found.exact) {
            REQUIRE(Integer(*found.upper) >= record.lower);
            REQUIRE(Integer(*found.upper) <= record.upper);
            REQUIRE(verify_oca(*found.witness).valid);
        } else {
            // everything below found.lower is refuted, so the record's upper
            // bound must sit at or above it
            REQUIRE(Integer(found.lower) <= record.upper);
        }
    }
}

TEST_CASE("composite-formula comparison favors the split bound", "[bounds]") {
    // q^t v^{t-2}(v^2-1) <= (qv)^{t-2}((qv)^2-1) wherever the reduction applies
    for (int q : {2, 3, 4, 5})
        for (int v = 2; v <= 3; ++v)
            for (int t = 2; t <= 4; ++t) {
                if (q + 1 > (t - 1) * v) continue;
                Integer split = int_pow(q, t) * int_pow(v, t - 2) * (Integer(v) * v - 1);
                Integer qv = Integer(q) * v;
                Integer direct = int_pow(static_cast<long long>(q) * v, t - 2) * (qv * qv - 1);
                REQUIRE(split <= direct);
            }
}

TEST_CASE("request tables render and round-trip", "[bounds]") {
    std::istringstream requests("K 2 2 3 3\nOCAN 2 4 2 2\n# comment\n\nbogus line\nK 2 2\n");
    auto entries = evaluate_requests(requests);
    REQUIRE(entries.size() == 4);
    REQUIRE(entries[0].ok);
    REQUIRE(entries[1].ok);
    REQUIRE_FALSE(entries[2].ok);
    REQUIRE_FALSE(entries[3].ok);

    std::ostringstream text;
    render_table(text, entries, TableFormat::Text);
    REQUIRE(text.str().find("K q=2 m=2 s=3 R=3: lower=4 [sphere-covering] upper=6 [two-chain]") !=
            std::string::npos);
    REQUIRE(text.str().find("error") != std::string::npos);

    std::ostringstream csv;
    render_table(csv, entries, TableFormat::Csv);
    REQUIRE(csv.str().find("request,ok,kind") == 0);

    // JSON round trip preserves every field of the record
    BoundRecord record = *entries[1].record;
    BoundRecord back = record_from_json(record_to_json(record));
    REQUIRE(back.kind == record.kind);
    REQUIRE(back.params == record.params);
    REQUIRE(back.lower == record.lower);
    REQUIRE(back.lower_rule == record.lower_rule);
    REQUIRE(back.upper == record.upper);
    REQUIRE(back.upper_rule == record.upper_rule);
    REQUIRE(back.upper_rules == record.upper_rules);
    REQUIRE(back.constructive == record.constructive);
    REQUIRE(back.chain.size() == record.chain.size());
    for (size_t i = 0; i < back.chain.size(); ++i) {
        REQUIRE(back.chain[i].rule == record.chain[i].rule);
        REQUIRE(back.chain[i].value == record.chain[i].value);
        REQUIRE(back.chain[i].winner == record.chain[i].winner);
    }
}

TEST_CASE("parameter validation", "[bounds]") {
    REQUIRE_THROWS_AS(k_bounds(1, 2, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(k_bounds(2, 2, 2, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(k_bounds(2, 2, 2, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(ocan_bounds(1, 2, 1, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(ocan_bounds(2, 2, 3, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(ocan_bounds(5, 2, 2, 2), std::invalid_argument);
}

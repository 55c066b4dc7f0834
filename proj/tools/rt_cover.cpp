// rt-cover: build, verify and tabulate covering codes in RT spaces and
// ordered covering arrays.
//
// Exit codes: 0 success / object valid, 1 failed verification,
//             2 usage or input error, 3 budget exhaustion.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtcover/acceptance.hpp"
#include "rtcover/rtcover.hpp"

namespace {

using namespace rtcover;

OrderedArray load_oca(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_oca(in);
}

Code load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_code(in);
}

void emit_oca(const OrderedArray& a, const std::string& out_path) {
    if (out_path.empty()) {
        write_oca(std::cout, a);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    write_oca(out, a);
    std::cout << out_path << "\n";
}

void emit_code(const Code& c, const std::string& out_path) {
    if (out_path.empty()) {
        write_code(std::cout, c);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    write_code(out, c);
    std::cout << out_path << "\n";
}

nlohmann::ordered_json coverage_report_json(const CoverageReport& report) {
    nlohmann::ordered_json j;
    j["valid"] = report.valid;
    j["anti_ideals_checked"] = report.anti_ideals_checked;
    j["truncated"] = report.truncated;
    auto viols = nlohmann::ordered_json::array();
    for (const auto& v : report.violations) {
        nlohmann::ordered_json e;
        e["depths"] = v.depths;
        e["missing"] = v.missing;
        e["observed"] = v.observed;
        viols.push_back(e);
    }
    j["violations"] = viols;
    return j;
}

void print_coverage_report(const CoverageReport& report, const std::string& format) {
    if (format == "json") {
        std::cout << coverage_report_json(report).dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::cout << "valid,anti_ideals_checked,violations,truncated\n"
                  << (report.valid ? 1 : 0) << ',' << report.anti_ideals_checked << ','
                  << report.violations.size() << ',' << (report.truncated ? 1 : 0) << "\n";
        return;
    }
    std::cout << "valid: " << (report.valid ? "yes" : "no") << "\n";
    std::cout << "anti-ideals checked: " << report.anti_ideals_checked << "\n";
    if (!report.violations.empty()) {
        std::cout << "violations (" << report.violations.size()
                  << (report.truncated ? ", truncated" : "") << "):\n";
        for (const auto& v : report.violations) {
            std::cout << "  depths=(";
            for (size_t i = 0; i < v.depths.size(); ++i)
                std::cout << (i ? "," : "") << v.depths[i];
            std::cout << ") tuple=(";
            for (size_t i = 0; i < v.missing.size(); ++i)
                std::cout << (i ? "," : "") << v.missing[i];
            std::cout << ") observed=" << v.observed << "\n";
        }
    }
}

struct BoundsCliOptions {
    bool greedy = true;
    bool exact_code = false;
    bool exact_oca = false;
    long long greedy_cap = 4096;
    long long max_points = 1'000'000;
    long long max_nodes = 10'000'000;
    double time_limit = 0.0;
    std::vector<std::string> ca_files;

    BoundsOptions build() const {
        BoundsOptions options;
        options.use_greedy = greedy;
        options.greedy_point_cap = greedy_cap;
        options.use_exact_code_search = exact_code;
        options.use_exact_oca_search = exact_oca;
        options.budget.max_points = max_points;
        options.budget.max_nodes = max_nodes;
        options.budget.time_limit_seconds = time_limit;
        for (const auto& path : ca_files) {
            OrderedArray ca = load_oca(path);
            if (!verify_oca(ca).valid)
                throw DependencyError("supplied CA failed verification: " + path);
            options.ca_library.push_back(std::move(ca));
        }
        return options;
    }
};

void add_bounds_flags(CLI::App* cmd, BoundsCliOptions& opts) {
    cmd->add_flag("--greedy,!--no-greedy", opts.greedy, "include the greedy upper bound");
    cmd->add_flag("--exact", opts.exact_code, "include exhaustive covering search");
    cmd->add_flag("--exact-oca", opts.exact_oca, "include exhaustive OCA search");
    cmd->add_option("--greedy-cap", opts.greedy_cap, "point cap for the greedy rule");
    cmd->add_option("--max-points", opts.max_points, "space size budget");
    cmd->add_option("--max-nodes", opts.max_nodes, "search node budget");
    cmd->add_option("--time-limit", opts.time_limit, "search time limit in seconds");
    cmd->add_option("--ca", opts.ca_files, "verified covering array file(s) for strengths above 2");
}

std::string witness_file_name(const BoundRecord& record) {
    std::string name = record.kind;
    for (const auto& [k, v] : record.params) name += "_" + k + std::to_string(v);
    return name;
}

int write_record_witness(const BoundRecord& record, const BoundWitness& witness,
                         const std::string& dir) {
    std::filesystem::create_directories(dir);
    if (witness.code) {
        const Code& code = *witness.code;
        if (!code.claimed_radius) return 1;
        if (!verify_covering(code, *code.claimed_radius).valid) return 1;
        std::string path = dir + "/" + witness_file_name(record) + ".code";
        std::ofstream out(path);
        write_code(out, code);
        std::cout << "witness: " << path << "\n";
    } else if (witness.array) {
        if (!verify_oca(*witness.array).valid) return 1;
        std::string path = dir + "/" + witness_file_name(record) + ".oca";
        std::ofstream out(path);
        write_oca(out, *witness.array);
        std::cout << "witness: " << path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering codes in RT spaces and ordered covering arrays"};
    app.require_subcommand(1);
    int exit_code = 0;

    // volume
    struct {
        int q = 2, m = 1, s = 1, R = 0;
        bool brute = false;
        long long budget = 10'000'000;
    } vol;
    auto* cmd_volume = app.add_subcommand("volume", "RT ball volume");
    cmd_volume->add_option("--q", vol.q)->required();
    cmd_volume->add_option("--m", vol.m)->required();
    cmd_volume->add_option("--s", vol.s)->required();
    cmd_volume->add_option("--R", vol.R)->required();
    cmd_volume->add_flag("--brute-force", vol.brute, "count by exhaustive enumeration");
    cmd_volume->add_option("--budget", vol.budget, "point budget for brute force");
    cmd_volume->callback([&]() {
        Integer value = vol.brute ? sphere_volume_bruteforce(vol.q, vol.m, vol.s, vol.R, vol.budget)
                                  : sphere_volume(vol.q, vol.m, vol.s, vol.R);
        std::cout << value.str() << "\n";
    });

    // verify-oca
    struct {
        std::string file, format = "text";
    } voca;
    auto* cmd_voca = app.add_subcommand("verify-oca", "verify an ordered covering array file");
    cmd_voca->add_option("file", voca.file)->required();
    cmd_voca->add_option("--format", voca.format)->check(CLI::IsMember({"text", "json", "csv"}));
    cmd_voca->callback([&]() {
        OrderedArray a = load_oca(voca.file);
        CoverageReport report = verify_oca(a);
        print_coverage_report(report, voca.format);
        exit_code = report.valid ? 0 : 1;
    });

    // verify-code
    struct {
        std::string file, format = "text";
        long long budget = 10'000'000;
    } vcode;
    auto* cmd_vcode = app.add_subcommand("verify-code", "verify a covering code file");
    cmd_vcode->add_option("file", vcode.file)->required();
    cmd_vcode->add_option("--format", vcode.format)->check(CLI::IsMember({"text", "json", "csv"}));
    cmd_vcode->add_option("--budget", vcode.budget, "point budget");
    cmd_vcode->callback([&]() {
        Code c = load_code(vcode.file);
        CoveringReport report = verify_covering(c, *c.claimed_radius, vcode.budget);
        if (vcode.format == "csv") {
            std::cout << "valid,points_checked,first_uncovered\n"
                      << (report.valid ? 1 : 0) << ',' << report.points_checked << ",\"";
            if (report.first_uncovered)
                for (size_t i = 0; i < report.first_uncovered->size(); ++i)
                    std::cout << (i ? " " : "") << (*report.first_uncovered)[i];
            std::cout << "\"\n";
        } else if (vcode.format == "json") {
            nlohmann::ordered_json j;
            j["valid"] = report.valid;
            j["points_checked"] = report.points_checked;
            if (report.first_uncovered) j["first_uncovered"] = *report.first_uncovered;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "valid: " << (report.valid ? "yes" : "no") << "\n";
            std::cout << "points checked: " << report.points_checked << "\n";
            if (report.first_uncovered) {
                std::cout << "first uncovered:";
                for (int x : *report.first_uncovered) std::cout << ' ' << x;
                std::cout << "\n";
            }
        }
        exit_code = report.valid ? 0 : 1;
    });

    // construct
    auto* cmd_construct = app.add_subcommand("construct", "build a verified array or code");
    cmd_construct->require_subcommand(1);
    long long construct_budget = 10'000'000;

    auto verify_and_emit_oca = [&](const OrderedArray& a, const std::string& out) {
        if (!verify_oca(a).valid) {
            std::cerr << "construction failed verification; nothing written\n";
            exit_code = 1;
            return;
        }
        emit_oca(a, out);
    };
    auto verify_and_emit_code = [&](const Code& c, const std::string& out) {
        if (!c.claimed_radius || !verify_covering(c, *c.claimed_radius, construct_budget).valid) {
            std::cerr << "construction failed verification; nothing written\n";
            exit_code = 1;
            return;
        }
        emit_code(c, out);
    };

    struct {
        int m = 2;
        std::string out;
    } ksopt;
    auto* cmd_ks = cmd_construct->add_subcommand("ks-ca", "binary strength-2 covering array");
    cmd_ks->add_option("--m", ksopt.m)->required();
    cmd_ks->add_option("-o,--output", ksopt.out);
    cmd_ks->callback([&]() { verify_and_emit_oca(kleitman_spencer_ca(ksopt.m), ksopt.out); });

    struct {
        int q = 2, t = 2;
        std::string out;
    } rsopt;
    auto* cmd_rs = cmd_construct->add_subcommand("rs-ooa", "polynomial-evaluation OOA");
    cmd_rs->add_option("--q", rsopt.q)->required();
    cmd_rs->add_option("--t", rsopt.t)->required();
    cmd_rs->add_option("-o,--output", rsopt.out);
    cmd_rs->callback([&]() {
        OrderedArray a = rs_ooa(rsopt.q, rsopt.t);
        if (!is_ooa(a)) {
            std::cerr << "construction failed verification; nothing written\n";
            exit_code = 1;
            return;
        }
        emit_oca(a, rsopt.out);
    });

    struct {
        std::string in, out;
    } extopt;
    auto* cmd_ext = cmd_construct->add_subcommand("extend-depth", "depth t-1 to depth t");
    cmd_ext->add_option("-i,--input", extopt.in)->required();
    cmd_ext->add_option("-o,--output", extopt.out);
    cmd_ext->callback([&]() { verify_and_emit_oca(extend_depth(load_oca(extopt.in)), extopt.out); });

    struct {
        std::string in, out, mode = "drop-bottom-level";
        int index = 0;
    } resopt;
    auto* cmd_res = cmd_construct->add_subcommand("restrict", "delete columns");
    cmd_res->add_option("-i,--input", resopt.in)->required();
    cmd_res->add_option("--mode", resopt.mode)
        ->check(CLI::IsMember({"drop-bottom-level", "drop-block"}));
    cmd_res->add_option("--index", resopt.index, "block to drop");
    cmd_res->add_option("-o,--output", resopt.out);
    cmd_res->callback([&]() {
        RestrictMode mode = resopt.mode == "drop-block" ? RestrictMode::DropBlock
                                                        : RestrictMode::DropBottomLevel;
        verify_and_emit_oca(restrict_array(load_oca(resopt.in), mode, resopt.index), resopt.out);
    });

    struct {
        std::string in, out;
    } d2opt;
    auto* cmd_d2 = cmd_construct->add_subcommand("oca-from-ca", "depth-2 OCA from a strength-2 CA");
    cmd_d2->add_option("-i,--input", d2opt.in)->required();
    cmd_d2->add_option("-o,--output", d2opt.out);
    cmd_d2->callback([&]() { verify_and_emit_oca(oca_depth2_from_ca(load_oca(d2opt.in)), d2opt.out); });

    struct {
        std::string in, out;
    } fuopt;
    auto* cmd_fu = cmd_construct->add_subcommand("fuse", "drop one symbol and two rows");
    cmd_fu->add_option("-i,--input", fuopt.in)->required();
    cmd_fu->add_option("-o,--output", fuopt.out);
    cmd_fu->callback([&]() { verify_and_emit_oca(fuse(load_oca(fuopt.in)), fuopt.out); });

    struct {
        int q = 2, m = 1, s = 1, R = 1;
        std::string out;
    } tropt;
    auto* cmd_tr = cmd_construct->add_subcommand("trivial", "fixed-ideal covering code");
    cmd_tr->add_option("--q", tropt.q)->required();
    cmd_tr->add_option("--m", tropt.m)->required();
    cmd_tr->add_option("--s", tropt.s)->required();
    cmd_tr->add_option("--R", tropt.R)->required();
    cmd_tr->add_option("-o,--output", tropt.out);
    cmd_tr->callback([&]() {
        verify_and_emit_code(trivial_covering(tropt.q, tropt.m, tropt.s, tropt.R), tropt.out);
    });

    struct {
        int q = 2, t = 2;
        std::string ca, out;
    } suopt;
    auto* cmd_su = cmd_construct->add_subcommand("surjective", "Hamming covering from a binary CA");
    cmd_su->add_option("--q", suopt.q)->required();
    cmd_su->add_option("--t", suopt.t)->required();
    cmd_su->add_option("--ca", suopt.ca, "covering array file (required for t > 2)");
    cmd_su->add_option("-o,--output", suopt.out);
    cmd_su->callback([&]() {
        std::optional<OrderedArray> ca;
        if (!suopt.ca.empty()) ca = load_oca(suopt.ca);
        Code c = surjective_hamming_code(suopt.q, suopt.t, ca ? &*ca : nullptr);
        verify_and_emit_code(c, suopt.out);
    });

    struct {
        std::string in, out;
        int s = 1;
    } liopt;
    auto* cmd_li = cmd_construct->add_subcommand("lift", "spread a Hamming code over depth-s blocks");
    cmd_li->add_option("-i,--input", liopt.in)->required();
    cmd_li->add_option("--s", liopt.s)->required();
    cmd_li->add_option("-o,--output", liopt.out);
    cmd_li->callback([&]() {
        verify_and_emit_code(lift_hamming_to_rt(load_code(liopt.in), liopt.s), liopt.out);
    });

    struct {
        std::string oca, code, out;
    } propt;
    auto* cmd_pr = cmd_construct->add_subcommand("product", "alphabet-product covering code");
    cmd_pr->add_option("--oca", propt.oca)->required();
    cmd_pr->add_option("--code", propt.code)->required();
    cmd_pr->add_option("-o,--output", propt.out);
    cmd_pr->callback([&]() {
        verify_and_emit_code(product_code(load_oca(propt.oca), load_code(propt.code)), propt.out);
    });

    struct {
        int v = 2, s = 2;
        std::string out;
    } tcopt, thopt;
    auto* cmd_tc = cmd_construct->add_subcommand("two-chain", "m=2 covering code of radius s");
    cmd_tc->add_option("--v", tcopt.v)->required();
    cmd_tc->add_option("--s", tcopt.s)->required();
    cmd_tc->add_option("-o,--output", tcopt.out);
    cmd_tc->callback([&]() { verify_and_emit_code(two_chain_code(tcopt.v, tcopt.s), tcopt.out); });

    auto* cmd_th = cmd_construct->add_subcommand("three-chain", "m=3 covering code of radius 2s-1");
    cmd_th->add_option("--v", thopt.v)->required();
    cmd_th->add_option("--s", thopt.s)->required();
    cmd_th->add_option("-o,--output", thopt.out);
    cmd_th->callback([&]() { verify_and_emit_code(three_chain_code(thopt.v, thopt.s), thopt.out); });

    // search-exact-code
    struct {
        int q = 2, m = 1, s = 1, R = 1;
        long long max_points = 1'000'000, max_nodes = 10'000'000;
        double time_limit = 0.0;
        std::string out;
    } sec;
    auto* cmd_sec = app.add_subcommand("search-exact-code", "exact covering number");
    cmd_sec->add_option("--q", sec.q)->required();
    cmd_sec->add_option("--m", sec.m)->required();
    cmd_sec->add_option("--s", sec.s)->required();
    cmd_sec->add_option("--R", sec.R)->required();
    cmd_sec->add_option("--max-points", sec.max_points);
    cmd_sec->add_option("--max-nodes", sec.max_nodes);
    cmd_sec->add_option("--time-limit", sec.time_limit);
    cmd_sec->add_option("-o,--output", sec.out, "witness file");
    cmd_sec->callback([&]() {
        SearchBudget budget{sec.max_points, sec.max_nodes, sec.time_limit};
        CodeSearchResult result = exact_covering_number(sec.q, sec.m, sec.s, sec.R, budget);
        if (result.exact)
            std::cout << "exact " << result.upper.str() << "\n";
        else
            std::cout << "interval [" << result.lower.str() << ", " << result.upper.str()
                      << "] (budget exhausted)\n";
        if (!sec.out.empty()) emit_code(result.best, sec.out);
        exit_code = result.exact ? 0 : 3;
    });

    // search-exact-oca
    struct {
        int t = 2, m = 1, s = 1, v = 2;
        long long max_points = 1'000'000, max_nodes = 10'000'000, start_n = -1, max_n = -1;
        double time_limit = 0.0;
        std::string out;
    } seo;
    auto* cmd_seo = app.add_subcommand("search-exact-oca", "exact ordered covering array number");
    cmd_seo->add_option("--t", seo.t)->required();
    cmd_seo->add_option("--m", seo.m)->required();
    cmd_seo->add_option("--s", seo.s)->required();
    cmd_seo->add_option("--v", seo.v)->required();
    cmd_seo->add_option("--max-points", seo.max_points);
    cmd_seo->add_option("--max-nodes", seo.max_nodes);
    cmd_seo->add_option("--time-limit", seo.time_limit);
    cmd_seo->add_option("--start-n", seo.start_n);
    cmd_seo->add_option("--max-n", seo.max_n);
    cmd_seo->add_option("-o,--output", seo.out, "witness file");
    cmd_seo->callback([&]() {
        SearchBudget budget{seo.max_points, seo.max_nodes, seo.time_limit};
        OcaSearchResult result =
            exact_ocan(seo.t, seo.m, seo.s, seo.v, budget, seo.start_n, seo.max_n);
        if (result.exact)
            std::cout << "exact " << *result.upper << "\n";
        else if (result.upper)
            std::cout << "interval [" << result.lower << ", " << *result.upper << "]\n";
        else
            std::cout << "lower bound " << result.lower << " (no witness found)\n";
        if (!seo.out.empty() && result.witness) emit_oca(*result.witness, seo.out);
        exit_code = result.exact ? 0 : 3;
    });

    // bounds
    struct {
        std::string kind;
        int q = 0, m = 0, s = 0, R = 0, t = 0, v = 0;
        std::string format = "text", witness_dir;
    } bnd;
    BoundsCliOptions bnd_opts;
    auto* cmd_bnd = app.add_subcommand("bounds", "best known bounds with provenance");
    cmd_bnd->add_option("--kind", bnd.kind)->required()->check(CLI::IsMember({"K", "OCAN"}));
    cmd_bnd->add_option("--q", bnd.q);
    cmd_bnd->add_option("--m", bnd.m);
    cmd_bnd->add_option("--s", bnd.s);
    cmd_bnd->add_option("--R", bnd.R);
    cmd_bnd->add_option("--t", bnd.t);
    cmd_bnd->add_option("--v", bnd.v);
    cmd_bnd->add_option("--format", bnd.format)->check(CLI::IsMember({"text", "csv", "json"}));
    cmd_bnd->add_option("--witness-dir", bnd.witness_dir);
    add_bounds_flags(cmd_bnd, bnd_opts);
    cmd_bnd->callback([&]() {
        BoundsOptions options = bnd_opts.build();
        BoundWitness witness;
        TableEntry entry;
        entry.ok = true;
        if (bnd.kind == "K") {
            entry.request = "K " + std::to_string(bnd.q) + " " + std::to_string(bnd.m) + " " +
                            std::to_string(bnd.s) + " " + std::to_string(bnd.R);
            entry.record = k_bounds(bnd.q, bnd.m, bnd.s, bnd.R, options, &witness);
        } else {
            entry.request = "OCAN " + std::to_string(bnd.t) + " " + std::to_string(bnd.m) +
                            " " + std::to_string(bnd.s) + " " + std::to_string(bnd.v);
            entry.record = ocan_bounds(bnd.t, bnd.m, bnd.s, bnd.v, options, &witness);
        }
        TableFormat format = bnd.format == "json"  ? TableFormat::Json
                             : bnd.format == "csv" ? TableFormat::Csv
                                                   : TableFormat::Text;
        render_table(std::cout, {entry}, format);
        if (!bnd.witness_dir.empty() && entry.record->constructive)
            exit_code = write_record_witness(*entry.record, witness, bnd.witness_dir);
    });

    // table
    struct {
        std::string file, format = "text", witness_dir;
    } tab;
    BoundsCliOptions tab_opts;
    auto* cmd_tab = app.add_subcommand("table", "bound table from a requests file");
    cmd_tab->add_option("file", tab.file)->required();
    cmd_tab->add_option("--format", tab.format)->check(CLI::IsMember({"text", "csv", "json"}));
    cmd_tab->add_option("--witness-dir", tab.witness_dir);
    add_bounds_flags(cmd_tab, tab_opts);
    cmd_tab->callback([&]() {
        BoundsOptions options = tab_opts.build();
        std::ifstream in(tab.file);
        if (!in) throw ParseError("cannot open " + tab.file);
        std::vector<TableEntry> entries = evaluate_requests(in, options);
        TableFormat format = tab.format == "json"  ? TableFormat::Json
                             : tab.format == "csv" ? TableFormat::Csv
                                                   : TableFormat::Text;
        render_table(std::cout, entries, format);
        for (const auto& entry : entries)
            if (!entry.ok) exit_code = 2;
        if (!tab.witness_dir.empty())
            for (const auto& entry : entries) {
                if (!entry.ok || !entry.record->constructive) continue;
                BoundWitness witness;
                const auto& params = entry.record->params;
                if (entry.record->kind == "K")
                    k_bounds(static_cast<int>(params[0].second), static_cast<int>(params[1].second),
                             static_cast<int>(params[2].second), static_cast<int>(params[3].second),
                             options, &witness);
                else
                    ocan_bounds(static_cast<int>(params[0].second),
                                static_cast<int>(params[1].second),
                                static_cast<int>(params[2].second),
                                static_cast<int>(params[3].second), options, &witness);
                int rc = write_record_witness(*entry.record, witness, tab.witness_dir);
                if (rc != 0) exit_code = rc;
            }
    });

    // accept
    auto* cmd_accept = app.add_subcommand("accept", "run the acceptance suite");
    cmd_accept->callback([&]() {
        auto results = rtcover::acceptance::run_all();
        int failed = rtcover::acceptance::print_report(std::cout, results, &std::cerr);
        exit_code = failed == 0 ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DependencyError& e) {
        std::cerr << "dependency error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

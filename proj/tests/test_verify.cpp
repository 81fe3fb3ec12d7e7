#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <sys/wait.h>

#include "qrg/qrg.hpp"

using namespace qrg;
namespace fs = std::filesystem;

namespace {

json claim_json(const std::string& id, json constructor, json expected, const char* sev = "PASS-required",
                const char* kind = "Order") {
    return {{"id", id},       {"description", id}, {"kind", kind},          {"constructor", constructor},
            {"expected", expected}, {"severity", sev}, {"citation", "test"}, {"provenance", "derived"}};
}

json small_registry() {
    return {{"claims",
             {claim_json("a.c1", {{"op", "order"}, {"args", {{"group", "C1"}}}}, 192),
              claim_json("a.magic", {{"op", "order"}, {"args", {{"group", "magic"}}}}, 48),
              claim_json("b.roots", {{"op", "root_count"}, {"args", {{"type", "E6"}}}}, 72, "PASS-required", "Count")}}};
}

fs::path write_temp(const std::string& name, const std::string& text) {
    auto dir = fs::temp_directory_path() / "qrg-test-verify";
    fs::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
}

int run_cli(const std::string& args, std::string* out = nullptr) {
    auto capture = fs::temp_directory_path() / "qrg-test-verify" / "cli.out";
    fs::create_directories(capture.parent_path());
    std::string cmd = std::string("\"") + QRG_CLI_PATH + "\" " + args + " > \"" + capture.string() + "\" 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(capture);
        *out = {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Registry, ParsesObjectAndBareList) {
    auto doc = small_registry();
    EXPECT_EQ(parse_registry(doc).size(), 3u);
    EXPECT_EQ(parse_registry(doc["claims"]).size(), 3u);
    EXPECT_EQ(parse_registry(json::array()).size(), 0u);
}

TEST(Registry, RejectsMalformedRecords) {
    auto bad = [](auto edit) {
        json doc = small_registry();
        edit(doc["claims"][0]);
        return doc;
    };
    EXPECT_THROW(parse_registry(bad([](json& c) { c["kind"] = "Vibes"; })), registry_parse_error);
    EXPECT_THROW(parse_registry(bad([](json& c) { c["severity"] = "maybe"; })), registry_parse_error);
    EXPECT_THROW(parse_registry(bad([](json& c) { c.erase("expected"); })), registry_parse_error);
    EXPECT_THROW(parse_registry(bad([](json& c) { c["constructor"] = {{"args", {}}}; })), registry_parse_error);
    EXPECT_THROW(parse_registry(bad([](json& c) { c["id"] = "a.magic"; })), registry_parse_error);
    EXPECT_THROW(parse_registry(json{{"nothing", 1}}), registry_parse_error);
    EXPECT_THROW(parse_registry(json(5)), registry_parse_error);
}

TEST(Registry, LoadErrors) {
    EXPECT_THROW(load_registry("/nonexistent/claims.json"), registry_parse_error);
    EXPECT_THROW(load_registry(write_temp("broken.json", "{\"claims\": [")), registry_parse_error);
}

TEST(Registry, ShippedRegistryIsWellFormed) {
    auto claims = load_registry(QRG_DEFAULT_REGISTRY);
    EXPECT_GE(claims.size(), 40u);
    std::size_t report = 0;
    for (const auto& c : claims) {
        report += c.level == severity::report_only;
        EXPECT_FALSE(c.citation.empty()) << c.id;
        EXPECT_TRUE(c.provenance == "stated" || c.provenance == "derived" || c.provenance == "trivial") << c.id;
    }
    EXPECT_GT(report, 0u);
}

TEST(Runner, OneRecordPerClaimInRegistryOrder) {
    auto claims = parse_registry(small_registry());
    auto results = run_claims(claims, {});
    ASSERT_EQ(results.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(results[i].id, claims[i].id);
        EXPECT_EQ(results[i].status, claim_status::pass);
    }
    EXPECT_EQ(results[0].evidence, "OrderMatch");
    auto report = machine_report(results);
    EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 3);
    EXPECT_EQ(report.find("wall"), std::string::npos);
    EXPECT_FALSE(any_required_failure(results));
}

TEST(Runner, FilterByPrefix) {
    auto claims = parse_registry(small_registry());
    run_options opt;
    opt.filter = "a.";
    EXPECT_EQ(run_claims(claims, opt).size(), 2u);
    opt.filter = "zzz";
    auto none = run_claims(claims, opt);
    EXPECT_TRUE(none.empty());
    EXPECT_FALSE(any_required_failure(none));
    EXPECT_EQ(machine_report(none), "");
}

TEST(Runner, ParallelRunMatchesSerialRun) {
    auto claims = parse_registry(small_registry());
    run_options serial, parallel;
    parallel.workers = 3;
    EXPECT_EQ(machine_report(run_claims(claims, serial)), machine_report(run_claims(claims, parallel)));
}

TEST(Runner, StatusRules) {
    verify_context cx;
    auto wrong = parse_registry(json::array({claim_json("w", {{"op", "order"}, {"args", {{"group", "C1"}}}}, 191)}));
    auto r = run_claim(cx, wrong[0]);
    EXPECT_EQ(r.status, claim_status::fail);
    EXPECT_EQ(r.computed, 192);

    auto note = parse_registry(
        json::array({claim_json("n", {{"op", "order"}, {"args", {{"group", "C1"}}}}, 191, "REPORT-only")}));
    r = run_claim(cx, note[0]);
    EXPECT_EQ(r.status, claim_status::report);
    EXPECT_NE(r.notes.find("differs"), std::string::npos);

    auto bad_op = parse_registry(json::array({claim_json("x", {{"op", "no_such_op"}}, 1)}));
    r = run_claim(cx, bad_op[0]);
    EXPECT_EQ(r.status, claim_status::fail);
    EXPECT_NE(r.notes.find("unknown op"), std::string::npos);

    auto bad_report = parse_registry(json::array({claim_json("y", {{"op", "no_such_op"}}, 1, "REPORT-only")}));
    EXPECT_EQ(run_claim(cx, bad_report[0]).status, claim_status::report);
}

TEST(Runner, HumanReportSummaries) {
    auto claims = parse_registry(small_registry());
    auto text = human_report(claims, run_claims(claims, {}));
    EXPECT_NE(text.find("OK: 3 claims"), std::string::npos);
    claims[0].expected = 7;
    text = human_report(claims, run_claims(claims, {}));
    EXPECT_NE(text.find("FAILED: 1 of 3"), std::string::npos);
}

TEST(Cache, WarmRunReproducesColdRun) {
    auto dir = fs::temp_directory_path() / "qrg-test-verify-cache";
    fs::remove_all(dir);
    auto claims = parse_registry(small_registry());
    run_options opt;
    opt.cache_dir = dir;
    auto cold = machine_report(run_claims(claims, opt));
    EXPECT_TRUE(fs::exists(dir / "C1.group"));
    auto warm = machine_report(run_claims(claims, opt));
    EXPECT_EQ(cold, warm);
    // a damaged cache file is recomputed, not trusted
    std::ofstream(dir / "C1.group", std::ios::trunc) << "qrg-group 0 full 5 2\n";
    EXPECT_EQ(machine_report(run_claims(claims, opt)), cold);
    fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
    auto reg = write_temp("small.json", small_registry().dump());
    std::string out;
    EXPECT_EQ(run_cli("verify --registry \"" + reg.string() + "\" --format machine", &out), 0);
    EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 3);
    EXPECT_EQ(run_cli("verify --registry \"" + reg.string() + "\" --filter nothing --format machine", &out), 0);
    EXPECT_TRUE(out.empty());

    json failing = small_registry();
    failing["claims"][1]["expected"] = 49;
    auto freg = write_temp("failing.json", failing.dump());
    EXPECT_EQ(run_cli("verify --registry \"" + freg.string() + "\""), 1);

    auto broken = write_temp("broken-cli.json", "[{\"id\": 3}]");
    EXPECT_EQ(run_cli("verify --registry \"" + broken.string() + "\""), 2);
    EXPECT_NE(run_cli("verify --format xml"), 0);
}

TEST(Cli, OtherSubcommands) {
    std::string out;
    EXPECT_EQ(run_cli("coxeter E6", &out), 0);
    EXPECT_NE(out.find("weyl order 51840"), std::string::npos);
    EXPECT_EQ(run_cli("impref 2 2 5", &out), 0);
    EXPECT_NE(out.find("1920"), std::string::npos);
    EXPECT_EQ(run_cli("geometry gq2 --format machine", &out), 0);
    auto j = json::parse(out);
    EXPECT_EQ(j["points"].size(), 15u);
    EXPECT_EQ(j["mermin"]["product"], -1);
    EXPECT_EQ(run_cli("group C1", &out), 0);
    EXPECT_NE(out.find("order 192"), std::string::npos);
    EXPECT_EQ(run_cli("impref 4 3 2"), 2);
}

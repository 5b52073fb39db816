#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "squish/report.hpp"
#include "squish/search.hpp"
#include "test_support.hpp"

using namespace squish;

namespace {

MiningReport sample_report() {
    auto db = SequenceDatabase::load_string(
        "a b n1 a b n2 n3 a b n4 a b n5 a b n6 a b n0 a b n1 a b n7 a b a b");
    SearchConfig cfg;
    cfg.mode = MiningMode::kInterleave;
    MiningResult res = squish_mine(db, cfg);
    return make_report(db, res, "interleave", 42, 0.25);
}

}  // namespace

TEST_CASE("json report round-trips through a schema check") {
    MiningReport report = sample_report();
    const std::string text = render_json(report);
    auto j = nlohmann::json::parse(text);

    REQUIRE(j.contains("stats"));
    REQUIRE(j.contains("patterns"));
    REQUIRE(j.contains("curve"));
    for (const char* field : {"pattern_count", "baseline_bits", "total_bits", "delta_l",
                              "elapsed_seconds"}) {
        REQUIRE(j["stats"].contains(field));
        CHECK(std::isfinite(j["stats"][field].get<double>()));
    }
    for (const auto& p : j["patterns"]) {
        CHECK(p.contains("pattern"));
        CHECK(std::isfinite(p["code_bits"].get<double>()));
    }
    for (const auto& c : j["curve"]) {
        REQUIRE(c.size() == 2);
        CHECK(std::isfinite(c[0].get<double>()));
        CHECK(std::isfinite(c[1].get<double>()));
    }
}

TEST_CASE("text and tsv reports carry the stats block") {
    MiningReport report = sample_report();
    const std::string text = render_text(report);
    CHECK(text.find("# patterns\n") != std::string::npos);
    CHECK(text.find("# stats\n") != std::string::npos);
    CHECK(text.find("# curve\n") != std::string::npos);
    CHECK(text.find("delta_l\t") != std::string::npos);
    CHECK(text.find("mode\tinterleave\n") != std::string::npos);

    const std::string tsv = render_tsv(report);
    CHECK(tsv.find("stat\tdelta_l\t") != std::string::npos);
}

TEST_CASE("reports are deterministic apart from elapsed time") {
    auto db = SequenceDatabase::load_string(
        "a b n1 a b n2 n3 a b n4 a b n5 a b n6 a b n0 a b n1 a b n7 a b a b");
    SearchConfig cfg;
    cfg.mode = MiningMode::kChoicisode;
    MiningResult r1 = squish_mine(db, cfg);
    MiningResult r2 = squish_mine(db, cfg);
    CHECK(r1.patterns == r2.patterns);
    CHECK(r1.total_bits == doctest::Approx(r2.total_bits).epsilon(1e-12));
    REQUIRE(r1.curve.size() == r2.curve.size());
    for (std::size_t i = 0; i < r1.curve.size(); ++i) {
        CHECK(r1.curve[i].total_bits == doctest::Approx(r2.curve[i].total_bits).epsilon(1e-12));
    }
}

TEST_CASE("pattern file parsing") {
    const std::string text =
        "# comment\n"
        "alpha beta\tusage=3 gaps=0\n"
        "[x|y] z\n"
        "\n"
        "solo\n";
    auto pats = parse_pattern_file(text);
    REQUIRE(pats.size() == 3);
    CHECK(pats[0] == std::vector<std::vector<std::string>>{{"alpha"}, {"beta"}});
    CHECK(pats[1] == std::vector<std::vector<std::string>>{{"x", "y"}, {"z"}});
    CHECK(pats[2] == std::vector<std::vector<std::string>>{{"solo"}});
}

TEST_CASE("mode and format names") {
    CHECK(parse_mining_mode("disjoint") == MiningMode::kDisjoint);
    CHECK(parse_mining_mode("interleave") == MiningMode::kInterleave);
    CHECK(parse_mining_mode("choicisode") == MiningMode::kChoicisode);
    CHECK_FALSE(parse_mining_mode("bogus").has_value());
    CHECK(parse_report_format("json") == ReportFormat::kJson);
    CHECK_FALSE(parse_report_format("yaml").has_value());
    CHECK(std::string(mining_mode_name(MiningMode::kDisjoint)) == "disjoint");
}

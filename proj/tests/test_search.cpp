#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "squish/metrics.hpp"
#include "squish/search.hpp"
#include "test_support.hpp"

using namespace squish;

namespace {

// background noise with `reps` planted copies of `block`
SequenceDatabase planted_db(const std::string& block, int reps, int background, std::uint64_t seed,
                            int noise_alphabet = 12) {
    Rng rng(seed);
    std::vector<std::string> chunks(reps, block);
    std::ostringstream text;
    int emitted_bg = 0;
    std::size_t next_block = 0;
    const int per_slot = background / (reps + 1);
    while (next_block < chunks.size() || emitted_bg < background) {
        for (int i = 0; i < per_slot && emitted_bg < background; ++i) {
            text << 'n' << rng.below(noise_alphabet) << ' ';
            ++emitted_bg;
        }
        if (next_block < chunks.size()) {
            text << chunks[next_block++] << ' ';
        } else if (emitted_bg >= background) {
            break;
        }
    }
    text << '\n';
    return SequenceDatabase::load_string(text.str());
}

Pattern tokens(const SequenceDatabase& db, const std::vector<std::string>& toks) {
    std::vector<EventId> ids;
    for (const auto& t : toks) {
        REQUIRE(db.event_id(t) >= 0);
        ids.push_back(static_cast<EventId>(db.event_id(t)));
    }
    return Pattern::serial(ids);
}

}  // namespace

TEST_CASE("window gain") {
    auto db = planted_db("a b", 30, 150, 9);
    SearchConfig cfg;
    cfg.mode = MiningMode::kInterleave;
    Miner miner(db, cfg);
    const Pattern ab = tokens(db, {"a", "b"});
    miner.set_patterns({ab});
    REQUIRE(miner.table().entries[0].usage() >= 30);

    const Window& w = miner.cover().per_seq[0][0];
    const double g = window_gain(w, miner.table(), db);

    SUBCASE("cheaper pattern code means positive gain") { CHECK(g > 0.0); }

    SUBCASE("probability-one pattern code leaves only singleton and fill terms") {
        // cover where the pattern carries every code: two ab windows, nothing else
        auto db2 = SequenceDatabase::load_string("a b a b");
        Miner m2(db2, cfg);
        m2.set_patterns({Pattern::serial({0, 1})});
        const Window& w2 = m2.cover().per_seq[0][0];
        const auto& inst = m2.table().entries[0].instantiations[0];
        REQUIRE(inst.usage == m2.table().total_usage());
        const double code_f = -std::log2((static_cast<double>(inst.fills) + 0.5) /
                                         (static_cast<double>(inst.fills + inst.gaps) + 1.0));
        const double expected =
            standard_code_length(db2, 0) + standard_code_length(db2, 1) - code_f;
        CHECK(window_gain(w2, m2.table(), db2) == doctest::Approx(expected).epsilon(1e-9));
    }

    SUBCASE("gain decreases as the gap count grows") {
        Window gappy = w;
        gappy.matched = {w.start(), w.start() + 4};  // same pattern, wider span
        const double g2 = window_gain(gappy, miner.table(), db);
        CHECK(g2 < g);
    }

    SUBCASE("zero-usage pattern code rejected") {
        Window alien = w;
        alien.chosen = {1, 0};  // instantiation not present in the table
        CHECK_THROWS_AS(window_gain(alien, miner.table(), db), std::invalid_argument);
    }
}

TEST_CASE("estimate on ababab") {
    auto db = SequenceDatabase::load_string("a b a b a b");
    SearchConfig cfg;
    cfg.mode = MiningMode::kInterleave;
    Miner miner(db, cfg);
    auto exts = miner.estimate_for(Pattern::serial({0}));
    REQUIRE(!exts.empty());
    CHECK(exts[0].joined == Pattern::serial({0, 1}));
    CHECK(exts[0].pair_count == 3);
}

TEST_CASE("estimate with no following windows") {
    auto db = SequenceDatabase::load_string("b a");
    SearchConfig cfg;
    Miner miner(db, cfg);
    auto exts = miner.estimate_for(Pattern::serial({1}));  // 'a' is the last event
    CHECK(exts.empty());
}

TEST_CASE("self-join marking prevents window reuse") {
    auto db = SequenceDatabase::load_string("a a a a");
    SearchConfig cfg;
    Miner miner(db, cfg);
    auto exts = miner.estimate_for(Pattern::serial({0}));
    REQUIRE(!exts.empty());
    CHECK(exts[0].joined == Pattern::serial({0, 0}));
    CHECK(exts[0].pair_count == 2);
}

TEST_CASE("estimate agrees in sign with exact scoring on micro instances") {
    Rng rng(777);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        auto db = testing::random_db(rng, 12, 4);
        SearchConfig cfg;
        cfg.mode = MiningMode::kInterleave;
        Miner miner(db, cfg);
        auto batch = miner.estimate_all();
        if (batch.empty()) continue;
        const auto top = batch.front();
        if (top.estimated_gain <= 2.0) continue;
        ++checked;
        const double before = miner.total_bits();
        CHECK(miner.try_accept(top.joined));
        CHECK(miner.total_bits() < before);
    }
    INFO("micro instances with >2 bit estimates: " << checked);
}

TEST_CASE("acceptance") {
    auto db = planted_db("p q r", 30, 300, 9);
    SearchConfig cfg;
    cfg.mode = MiningMode::kInterleave;
    Miner miner(db, cfg);
    const Pattern pqr = tokens(db, {"p", "q", "r"});

    SUBCASE("a planted pattern reduces the total length") {
        const double before = miner.total_bits();
        CHECK(miner.try_accept(pqr));
        CHECK(miner.total_bits() < before);
        CHECK(miner.baseline_bits() == doctest::Approx(before));
    }
    SUBCASE("re-offering an accepted pattern is rejected") {
        REQUIRE(miner.try_accept(pqr));
        const double bits = miner.total_bits();
        CHECK_FALSE(miner.try_accept(pqr));
        CHECK(miner.total_bits() == doctest::Approx(bits));
    }
    SUBCASE("a pattern with no candidate windows is rejected") {
        // q never precedes p at a viable distance in the planted block
        const Pattern absent = tokens(db, {"r", "q"});
        InvertedIndex idx(db);
        if (find_windows(db, idx, absent).empty()) {
            CHECK_FALSE(miner.try_accept(absent));
        }
    }
    SUBCASE("singletons are never accepted") {
        CHECK_FALSE(miner.try_accept(tokens(db, {"p"})));
    }
}

TEST_CASE("prune removes patterns subsumed by a longer one") {
    auto db = planted_db("w x y z", 25, 250, 31);
    SearchConfig cfg;
    cfg.mode = MiningMode::kInterleave;
    Miner miner(db, cfg);
    const Pattern wx = tokens(db, {"w", "x"});
    const Pattern wxyz = tokens(db, {"w", "x", "y", "z"});

    REQUIRE(miner.try_accept(wx));
    REQUIRE(miner.try_accept(wxyz));
    // wx occurred only inside wxyz embeddings, so pruning drops it
    auto pats = miner.patterns();
    bool has_wx = false;
    bool has_wxyz = false;
    for (const auto& p : pats) {
        has_wx |= p == wx;
        has_wxyz |= p == wxyz;
    }
    CHECK(has_wxyz);
    CHECK_FALSE(has_wx);
}

TEST_CASE("prune keeps patterns that carry their weight") {
    auto db = planted_db("u v", 40, 200, 13);
    SearchConfig cfg;
    cfg.mode = MiningMode::kInterleave;
    Miner miner(db, cfg);
    REQUIRE(miner.try_accept(tokens(db, {"u", "v"})));
    const double bits = miner.total_bits();
    miner.prune();
    CHECK(miner.patterns().size() == 1);
    CHECK(miner.total_bits() == doctest::Approx(bits));
}

TEST_CASE("choicisode merging") {
    // two serial patterns sharing all but the first slot
    Rng rng(5);
    std::ostringstream text;
    for (int i = 0; i < 25; ++i) {
        text << "a x c ";
        for (int k = 0; k < 8; ++k) text << 'n' << rng.below(10) << ' ';
        text << "b x c ";
        for (int k = 0; k < 8; ++k) text << 'n' << rng.below(10) << ' ';
    }
    auto db = SequenceDatabase::load_string(text.str());
    const Pattern axc = tokens(db, {"a", "x", "c"});
    const Pattern bxc = tokens(db, {"b", "x", "c"});

    SearchConfig merged_cfg;
    merged_cfg.mode = MiningMode::kChoicisode;
    Miner merged(db, merged_cfg);
    REQUIRE(merged.try_accept(axc));
    REQUIRE(merged.try_accept(bxc));

    SearchConfig plain_cfg;
    plain_cfg.mode = MiningMode::kInterleave;
    Miner plain(db, plain_cfg);
    REQUIRE(plain.try_accept(axc));
    REQUIRE(plain.try_accept(bxc));

    // merged model: one choicisode [a,b] x c
    auto pats = merged.patterns();
    REQUIRE(pats.size() == 1);
    CHECK(pats[0].slot_count() == 3);
    CHECK(pats[0].slots[0].size() == 2);
    CHECK(pats[0].event_count() == 4);

    CHECK(pats.size() == plain.patterns().size() - 1);
    CHECK(code_table_length(merged.table(), db) < code_table_length(plain.table(), db));
    CHECK(merged.total_bits() <= plain.total_bits() + 1e-9);

    SUBCASE("no one-position target means stand-alone") {
        Miner solo(db, merged_cfg);
        REQUIRE(solo.try_accept(axc));
        CHECK(solo.patterns().size() == 1);
        CHECK(solo.patterns()[0] == axc);
    }
}

TEST_CASE("full runs") {
    SUBCASE("monotone accepted scores") {
        auto db = planted_db("f g h", 25, 400, 77);
        SearchConfig cfg;
        cfg.mode = MiningMode::kInterleave;
        MiningResult res = squish_mine(db, cfg);
        REQUIRE(res.curve.size() >= 1);
        for (std::size_t i = 1; i < res.curve.size(); ++i) {
            CHECK(res.curve[i].total_bits < res.curve[i - 1].total_bits);
        }
        CHECK(res.total_bits <= res.baseline_bits);
        // the planted pattern is recovered
        bool found = false;
        for (const auto& p : res.patterns) found |= p == tokens(db, {"f", "g", "h"});
        CHECK(found);
    }
    SUBCASE("anytime budget returns the best model so far") {
        auto db = planted_db("f g h", 25, 400, 78);
        SearchConfig cfg;
        cfg.mode = MiningMode::kInterleave;
        cfg.budget_seconds = 1e-9;  // expires immediately
        MiningResult res = squish_mine(db, cfg);
        CHECK(res.patterns.empty());
        CHECK(res.total_bits == doctest::Approx(res.baseline_bits));
    }
    SUBCASE("max slot cap") {
        auto db = planted_db("f g h i", 30, 200, 79);
        SearchConfig cfg;
        cfg.mode = MiningMode::kInterleave;
        cfg.max_pattern_slots = 2;
        MiningResult res = squish_mine(db, cfg);
        for (const auto& p : res.patterns) CHECK(p.slot_count() <= 2);
    }
}

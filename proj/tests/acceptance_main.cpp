// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "squish/code_table.hpp"
#include "squish/cover.hpp"
#include "squish/generate.hpp"
#include "squish/metrics.hpp"
#include "squish/search.hpp"
#include "squish/streams.hpp"
#include "test_support.hpp"

using namespace squish;

namespace {

int failures = 0;
std::vector<std::vector<CurvePoint>> observed_curves;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int id, const char* name, bool ok, double seconds, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s criterion %2d (%s): %s [%.2fs]\n", ok ? "PASS" : "FAIL", id, name,
                detail.c_str(), seconds);
    std::fflush(stdout);
}

MiningResult mine(const SequenceDatabase& db, MiningMode mode, int max_slots = 0) {
    SearchConfig cfg;
    cfg.mode = mode;
    cfg.max_pattern_slots = max_slots;
    MiningResult res = squish_mine(db, cfg);
    observed_curves.push_back(res.curve);
    return res;
}

const GeneratedData& plant10() {
    static GeneratedData d = [] {
        GeneratorSpec s;
        s.kind = GeneratorSpec::Kind::kPlant;
        s.pattern_count = 10;
        s.seed = 101;
        return gen_plant(s);
    }();
    return d;
}

const GeneratedData& plant50() {
    static GeneratedData d = [] {
        GeneratorSpec s;
        s.kind = GeneratorSpec::Kind::kPlant;
        s.pattern_count = 50;
        s.seed = 102;
        return gen_plant(s);
    }();
    return d;
}

const GeneratedData& indep_data() {
    static GeneratedData d = [] {
        GeneratorSpec s;
        s.kind = GeneratorSpec::Kind::kIndep;
        s.seed = 103;
        return gen_indep(s);
    }();
    return d;
}

const GeneratedData& parallel_desk() {
    static GeneratedData d = [] {
        GeneratorSpec s;
        s.kind = GeneratorSpec::Kind::kParallel;
        s.seed = 104;
        return gen_parallel(s);
    }();
    return d;
}

std::vector<std::vector<EventId>> target_strings(const GeneratedData& data) {
    std::vector<std::vector<EventId>> out;
    for (const auto& t : data.targets) {
        for (auto& inst : expand_instantiations(t)) out.push_back(std::move(inst));
    }
    return out;
}

// ---- criterion 1: losslessness over randomized covers --------------------

void criterion_losslessness() {
    Timer timer;
    Rng rng(20240501);
    int done = 0;
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        auto db = testing::random_db(rng, 200, 8);
        auto rc = testing::random_cover(db, rng);
        CodeTable ct = cover_to_stats(rc.patterns, rc.cover, db);
        CodeStreams streams = encode_cover(db, ct, rc.cover, rc.patterns);
        std::vector<std::uint32_t> lengths;
        for (const auto& s : db.sequences()) {
            lengths.push_back(static_cast<std::uint32_t>(s.size()));
        }
        auto decoded = decode_streams(ct, streams, lengths, db.alphabet_size());
        ok = decoded.size() == db.size();
        for (std::size_t s = 0; ok && s < db.size(); ++s) ok = decoded[s] == db.sequence(s);
        ++done;
    }
    const double secs = timer.seconds();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/1000 round trips exact", done);
    report(1, "losslessness", ok && secs < 10.0, secs, detail);
}

// ---- criterion 2: non-minimal window benefit on abdccdc ------------------

void criterion_nested_cover_gap() {
    Timer timer;
    auto db = SequenceDatabase::load_string("a b d c c d c");
    std::vector<Pattern> pats{Pattern::serial({0, 1, 3}), Pattern::serial({2, 3})};

    Cover minimal(1);
    minimal.per_seq[0].push_back(Window{0, 0, {0, 1, 3}, {0, 1, 3}});
    minimal.per_seq[0].push_back(Window{0, 1, {5, 6}, {2, 3}});

    Cover nested(1);
    nested.per_seq[0].push_back(Window{0, 0, {0, 1, 4}, {0, 1, 3}});
    nested.per_seq[0].push_back(Window{0, 1, {2, 3}, {2, 3}});
    nested.per_seq[0].push_back(Window{0, 1, {5, 6}, {2, 3}});

    CodeTable ct_min = cover_to_stats(pats, minimal, db);
    CodeTable ct_nested = cover_to_stats(pats, nested, db);
    const double gap =
        total_length(db, ct_min, minimal, pats) - total_length(db, ct_nested, nested, pats);
    const double secs = timer.seconds();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "gap %.3f bits (want 2.9 +- 0.5)", gap);
    report(2, "nested cover beats minimal windows", gap > 2.4 && gap < 3.4 && secs < 1.0, secs,
           detail);
}

// ---- criterion 3: worked interleaving example ----------------------------

void criterion_worked_example() {
    Timer timer;
    auto db = SequenceDatabase::load_string("a b c d a c b d");
    InvertedIndex idx(db);
    Pattern ac = Pattern::serial({0, 2});
    Pattern bd = Pattern::serial({1, 3});

    Cover cover(1);
    cover = greedy_cover(std::move(cover), find_windows(db, idx, ac), 0, ac, db,
                         CoverMode::kInterleaved);
    cover = greedy_cover(std::move(cover), find_windows(db, idx, bd), 1, bd, db,
                         CoverMode::kInterleaved);

    std::set<std::vector<std::uint32_t>> got;
    for (const auto& w : cover.per_seq[0]) got.insert(w.matched);
    const std::set<std::vector<std::uint32_t>> expected{{0, 2}, {4, 5}, {1, 3}, {6, 7}};
    const double secs = timer.seconds();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%zu windows selected", got.size());
    report(3, "interleaved cover of abcdacbd", got == expected && secs < 1.0, secs, detail);
}

// ---- criterion 4: baseline scores ----------------------------------------

void criterion_baselines() {
    Timer timer;
    const double indep_bits = standard_table_length(indep_data().db);

    GeneratorSpec big;
    big.kind = GeneratorSpec::Kind::kParallel;
    big.seed = 105;
    big.sequence_count = 10000;
    big.sequence_length = 100;
    auto parallel = gen_parallel(big);
    const double parallel_bits = standard_table_length(parallel.db);

    const bool indep_ok = indep_bits > 103630.0 * 0.98 && indep_bits < 103630.0 * 1.02;
    const bool parallel_ok =
        parallel_bits > 4644290.0 * 0.98 && parallel_bits < 4644290.0 * 1.02;
    const double secs = timer.seconds();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "indep %.0f (want 103630 +-2%%), parallel %.0f (want 4644290 +-2%%)", indep_bits,
                  parallel_bits);
    report(4, "standard-table baselines", indep_ok && parallel_ok && secs < 30.0, secs, detail);
}

// ---- criterion 5: planted recovery ----------------------------------------

int exact_matches(const MiningResult& res, const std::vector<Pattern>& targets) {
    int exact = 0;
    for (const auto& t : targets) {
        for (const auto& p : res.patterns) exact += p == t ? 1 : 0;
    }
    return exact;
}

void criterion_planted_recovery() {
    Timer timer;
    MiningResult r10 = mine(plant10().db, MiningMode::kInterleave);
    const int exact10 = exact_matches(r10, plant10().targets);
    const double recall10 = pattern_recall(realized_instantiations(r10), target_strings(plant10()));

    MiningResult r50 = mine(plant50().db, MiningMode::kInterleave);
    const int exact50 = exact_matches(r50, plant50().targets);
    const double recall50 = pattern_recall(realized_instantiations(r50), target_strings(plant50()));

    MiningResult rind = mine(indep_data().db, MiningMode::kInterleave);

    const bool ok10 = exact10 == 10 && recall10 == 1.0;
    const bool ok50 = exact50 >= 45 && recall50 >= 0.9;
    const bool okind = rind.patterns.size() <= 1;
    const double secs = timer.seconds();
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "plant-10 %d/10 exact recall %.3f; plant-50 %d/50 exact recall %.3f; indep |P|=%zu",
                  exact10, recall10, exact50, recall50, rind.patterns.size());
    report(5, "planted recovery", ok10 && ok50 && okind && secs < 600.0, secs, detail);
}

// ---- criterion 6: interleaving recall on Parallel -------------------------

bool is_process_fragment(const std::vector<EventId>& inst, const SequenceDatabase& db,
                         std::size_t process) {
    if (inst.size() < 3) return false;
    std::uint64_t prev = 0;
    for (std::size_t k = 0; k < inst.size(); ++k) {
        const std::uint64_t raw = std::stoul(db.token(inst[k]));
        if (raw / 5 != process) return false;
        if (k > 0 && raw % 5 != (prev + 1) % 5) return false;
        prev = raw % 5;
    }
    return true;
}

void criterion_parallel_recall() {
    Timer timer;
    const auto& data = parallel_desk();
    MiningResult full = mine(data.db, MiningMode::kInterleave);
    MiningResult pairs = mine(data.db, MiningMode::kInterleave, 2);

    const auto targets = target_strings(data);
    const double recall_full = pattern_recall(realized_instantiations(full), targets);
    const double recall_pairs = pattern_recall(realized_instantiations(pairs), targets);

    bool all_processes = true;
    for (std::size_t p = 0; p < 5; ++p) {
        bool found = false;
        for (const auto& inst : realized_instantiations(full)) {
            found |= is_process_fragment(inst, data.db, p);
        }
        all_processes &= found;
    }
    const double secs = timer.seconds();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "recall %.3f vs length-2 baseline %.3f; >=3-fragments for all processes: %s",
                  recall_full, recall_pairs, all_processes ? "yes" : "no");
    report(6, "interleaving recall", recall_full > recall_pairs && all_processes && secs < 900.0,
           secs, detail);
}

// ---- criterion 7: mode ordering -------------------------------------------

void criterion_mode_ordering() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (const auto* name : {"plant-50", "parallel"}) {
        const SequenceDatabase& db =
            std::string(name) == "plant-50" ? plant50().db : parallel_desk().db;
        const double dl_d = delta_l(mine(db, MiningMode::kDisjoint));
        const double dl_i = delta_l(mine(db, MiningMode::kInterleave));
        const double dl_c = delta_l(mine(db, MiningMode::kChoicisode));
        const bool step1 = dl_c >= dl_i - 0.01 * std::abs(dl_i);
        const bool step2 = dl_i >= dl_d - 0.01 * std::abs(dl_d);
        ok = ok && step1 && step2;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s c=%.0f i=%.0f d=%.0f; ", name, dl_c, dl_i, dl_d);
        detail += buf;
    }
    report(7, "mode ordering", ok, timer.seconds(), detail);
}

// ---- criterion 8: choicisode recovery --------------------------------------

void criterion_choicisode_recovery() {
    Timer timer;
    Rng rng(106);
    const std::size_t alphabet = 1000;
    std::vector<std::uint64_t> axc{996, 998, 999};
    std::vector<std::uint64_t> bxc{997, 998, 999};
    std::vector<std::uint64_t> seq;
    const std::uint64_t background = 10000 - 2 * 20 * 3;
    std::vector<std::uint64_t> anchors(40);
    for (auto& a : anchors) a = rng.below(background + 1);
    std::sort(anchors.begin(), anchors.end());
    std::uint64_t emitted = 0;
    std::size_t bi = 0;
    while (emitted < background || bi < anchors.size()) {
        while (bi < anchors.size() && anchors[bi] == emitted) {
            const auto& block = bi % 2 == 0 ? axc : bxc;
            for (auto e : block) seq.push_back(e);
            ++bi;
        }
        if (emitted < background) {
            seq.push_back(rng.below(alphabet - 4));  // keep planted events clean
            ++emitted;
        }
    }
    std::ostringstream text;
    for (std::size_t i = 0; i < seq.size(); ++i) text << (i ? " " : "") << seq[i];
    auto db = SequenceDatabase::load_string(text.str());

    MiningResult merged = mine(db, MiningMode::kChoicisode);
    MiningResult plain = mine(db, MiningMode::kInterleave);

    bool has_choicisode = false;
    for (const auto& p : merged.patterns) {
        if (p.slot_count() == 3 && p.event_count() == 4) has_choicisode = true;
    }
    const bool fewer = merged.patterns.size() + 1 == plain.patterns.size() ||
                       merged.patterns.size() < plain.patterns.size();
    const bool model_smaller =
        code_table_length(merged.table, db) < code_table_length(plain.table, db);
    const bool total_ok = merged.total_bits <= plain.total_bits + 1e-9;
    const double secs = timer.seconds();
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "choicisode found: %s; |P| %zu vs %zu; model %.1f vs %.1f bits",
                  has_choicisode ? "yes" : "no", merged.patterns.size(), plain.patterns.size(),
                  code_table_length(merged.table, db), code_table_length(plain.table, db));
    report(8, "choicisode recovery",
           has_choicisode && fewer && model_smaller && total_ok && secs < 60.0, secs, detail);
}

// ---- criterion 9: estimate sanity ------------------------------------------

void criterion_estimate_sanity() {
    Timer timer;
    Rng rng(107);
    bool ok = true;
    int triggered = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t len = 1 + rng.below(10);
        std::ostringstream text;
        for (std::size_t k = 0; k < len; ++k) {
            text << (k ? " " : "") << static_cast<char>('a' + rng.below(3));
        }
        auto db = SequenceDatabase::load_string(text.str());
        SearchConfig cfg;
        cfg.mode = MiningMode::kInterleave;
        Miner miner(db, cfg);
        auto batch = miner.estimate_all();
        if (batch.empty() || batch.front().estimated_gain <= 2.0) continue;
        ++triggered;
        const double before = miner.total_bits();
        const bool accepted = miner.try_accept(batch.front().joined);
        ok = ok && accepted && miner.total_bits() < before;
    }
    const double secs = timer.seconds();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d databases exceeded the +2 bit threshold", triggered);
    report(9, "estimate sanity", ok && secs < 120.0, secs, detail);
}

// ---- criterion 10: monotone anytime curves ---------------------------------

void criterion_monotone_curves() {
    Timer timer;
    bool ok = !observed_curves.empty();
    for (const auto& curve : observed_curves) {
        for (std::size_t i = 1; i < curve.size(); ++i) {
            ok = ok && curve[i].total_bits <= curve[i - 1].total_bits + 1e-9;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%zu mining curves checked", observed_curves.size());
    report(10, "monotone anytime curves", ok, timer.seconds(), detail);
}

}  // namespace

int main() {
    criterion_losslessness();
    criterion_nested_cover_gap();
    criterion_worked_example();
    criterion_baselines();
    criterion_planted_recovery();
    criterion_parallel_recall();
    criterion_mode_ordering();
    criterion_choicisode_recovery();
    criterion_estimate_sanity();
    criterion_monotone_curves();

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}

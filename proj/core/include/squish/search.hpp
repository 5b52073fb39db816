#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "squish/code_table.hpp"
#include "squish/cover.hpp"
#include "squish/pattern.hpp"
#include "squish/seqdb.hpp"

namespace squish {

enum class MiningMode { kDisjoint, kInterleave, kChoicisode };

const char* mining_mode_name(MiningMode mode);
std::optional<MiningMode> parse_mining_mode(const std::string& name);

struct SearchConfig {
    MiningMode mode = MiningMode::kChoicisode;
    double budget_seconds = 0.0;  // 0 = unlimited
    int max_pattern_slots = 0;    // 0 = unlimited
    int threads = 0;              // estimation concurrency, 0 = auto
    double min_gain = 1e-9;       // strict-improvement threshold in bits
};

struct CurvePoint {
    double elapsed_seconds = 0.0;
    double total_bits = 0.0;
};

struct AcceptedStep {
    Pattern pattern;
    double total_bits = 0.0;
    double elapsed_seconds = 0.0;
};

struct MiningResult {
    std::vector<Pattern> patterns;  // candidate order
    CodeTable table;
    Cover cover;
    double baseline_bits = 0.0;  // L(D, ST)
    double total_bits = 0.0;     // L(CT, D)
    std::vector<CurvePoint> curve;
    std::vector<AcceptedStep> steps;
};

struct CandidateExtension {
    Pattern joined;
    double estimated_gain = 0.0;     // predicted decrease of L(CT, D) in bits
    std::uint64_t pair_count = 0;    // joined windows behind the best estimate
};

// Upper bound on the bits gained by keeping window w in the cover instead of
// singleton-coding its events. The pattern, gap and fill code lengths come
// from the current cover statistics; the singleton side is priced from the
// standard table so it stays defined even when the cover left a singleton
// unused. Throws when the window's pattern code has zero usage.
double window_gain(const Window& w, const CodeTable& ct, const SequenceDatabase& db);

// Incremental greedy model search. Exposes the individual moves so they can
// be driven and inspected separately; `run` executes the full loop.
class Miner {
public:
    Miner(const SequenceDatabase& db, SearchConfig config);

    const SequenceDatabase& db() const { return db_; }
    const CodeTable& table() const { return table_; }
    const Cover& cover() const { return cover_; }
    double total_bits() const { return bits_; }
    double baseline_bits() const { return baseline_; }
    std::vector<Pattern> patterns() const;

    // Ranked extensions for one seed pattern against the current cover. Pass
    // a singleton pattern to extend from a single event.
    std::vector<CandidateExtension> estimate_for(const Pattern& x) const;
    // One batch over every code-table row with usage, deduplicated and sorted
    // best-first.
    std::vector<CandidateExtension> estimate_all() const;

    // Inserts z at its candidate-order position, re-covers, and accepts only
    // on strict improvement. On acceptance runs choicisode merging (in
    // choicisode mode) and pruning.
    bool try_accept(const Pattern& z);

    // Replaces the model by the given pattern set unconditionally (candidate
    // order applied, cover rebuilt). Used to score externally supplied sets.
    void set_patterns(const std::vector<Pattern>& patterns);

    // Gap-bridging variants of the most recent acceptance.
    std::vector<Pattern> pending_variants() const { return variants_; }

    void prune();

    MiningResult run();

private:
    struct PatternState {
        Pattern pattern;
        std::vector<Window> cand;
        CandidateKey key;
    };
    struct Rebuilt {
        std::vector<std::shared_ptr<const PatternState>> order;
        Cover cover;
        CodeTable table;
        double bits = 0.0;
    };

    const SequenceDatabase& db_;
    InvertedIndex idx_;
    SearchConfig config_;
    CoverMode cover_mode_;

    std::vector<std::shared_ptr<const PatternState>> pats_;
    Cover cover_;
    CodeTable table_;
    double bits_ = 0.0;
    double baseline_ = 0.0;
    std::vector<Pattern> variants_;
    mutable std::unordered_map<Pattern, std::shared_ptr<const PatternState>, PatternHash> cache_;

    std::shared_ptr<const PatternState> make_state(const Pattern& p) const;
    std::size_t insertion_index(const PatternState& st) const;
    Rebuilt rebuild(std::vector<std::shared_ptr<const PatternState>> order) const;
    void commit(Rebuilt rebuilt);
    bool try_merge_choicisode(std::size_t z_index);
    void collect_variants(const Pattern& z);
    int thread_count() const;
};

// Convenience wrapper: full SQUISH run.
MiningResult squish_mine(const SequenceDatabase& db, const SearchConfig& config);

}  // namespace squish

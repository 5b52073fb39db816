#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "squish/pattern.hpp"
#include "squish/seqdb.hpp"

namespace squish {

// One occurrence of a pattern in one sequence. `matched` holds one offset per
// slot (strictly increasing); `chosen` the event matched at each slot.
struct Window {
    std::uint32_t seq = 0;
    std::int32_t pattern_id = -1;
    std::vector<std::uint32_t> matched;
    std::vector<EventId> chosen;

    std::uint32_t start() const { return matched.front(); }
    std::uint32_t end() const { return matched.back(); }
    std::uint32_t span() const { return end() - start() + 1; }
    std::uint32_t gap_count() const { return span() - static_cast<std::uint32_t>(matched.size()); }

    bool operator==(const Window&) const = default;
};

// The non-singleton part of a cover: per-sequence window lists sorted by
// start offset. Offsets not matched by any window are implicitly
// singleton-coded.
struct Cover {
    std::vector<std::vector<Window>> per_seq;

    Cover() = default;
    explicit Cover(std::size_t sequence_count) : per_seq(sequence_count) {}

    std::size_t window_count() const {
        std::size_t n = 0;
        for (const auto& v : per_seq) n += v.size();
        return n;
    }
};

// Running allowance of extra gaps during window search. A window of span l
// for a pattern with |X| slots is admissible only if b + 2|X| - l - 1 >= 0 at
// admission time; admitted windows credit the same quantity back.
struct BudgetState {
    std::int64_t b = 0;
};

// Shortest-completion window search. For every occurrence of the first choice
// set there is at most one window: the shortest completion from that start,
// discovered by a length-ordered best-first expansion over the whole
// database. Result is sorted by (seq, start).
std::vector<Window> find_windows(const SequenceDatabase& db, const InvertedIndex& idx,
                                 const Pattern& x, BudgetState& budget);
std::vector<Window> find_windows(const SequenceDatabase& db, const InvertedIndex& idx,
                                 const Pattern& x);

enum class CoverMode {
    kDisjoint,     // minimal windows only, spans may not intersect
    kInterleaved,  // windows may interleave and nest
};

// Four-key candidate order: decreasing slot count, decreasing support
// (candidate-window count), decreasing standard-table encoding length,
// increasing slot-wise lexicographic.
struct CandidateKey {
    std::size_t length = 0;
    std::uint64_t support = 0;
    double st_bits = 0.0;
};
bool candidate_precedes(const CandidateKey& xk, const Pattern& x, const CandidateKey& yk,
                        const Pattern& y);

// Extends `sel` with candidate windows of one pattern (strictly below every
// pattern already in `sel` in candidate order). Between consecutive window
// extends candidates are admitted in order of decreasing span; inside each
// extend an on-the-fly search looks for windows interleaved with the
// selection. Admitted windows are stamped with `pattern_id`.
Cover greedy_cover(Cover sel, std::span<const Window> cand, std::int32_t pattern_id,
                   const Pattern& x, const SequenceDatabase& db, CoverMode mode);

// Debug dump: one line `W <seq> <pattern-id> <offsets comma-separated>` per window.
void dump_cover(const Cover& cover, std::ostream& out);

}  // namespace squish

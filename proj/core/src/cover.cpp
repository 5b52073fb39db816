#include "squish/cover.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <queue>

#include "squish/codelen.hpp"

namespace squish {

namespace {

struct Partial {
    std::uint32_t seq = 0;
    std::uint32_t start = 0;
    std::uint32_t cur_end = 0;
    std::uint32_t eff_len = 0;  // positions charged against the budget
    std::vector<std::uint32_t> matched;
    std::vector<EventId> chosen;
};

struct PartialOrder {
    // min-heap on (effective length, seq, start)
    bool operator()(const Partial& a, const Partial& b) const {
        if (a.eff_len != b.eff_len) return a.eff_len > b.eff_len;
        if (a.seq != b.seq) return a.seq > b.seq;
        return a.start > b.start;
    }
};

// Length-ordered expansion of partial matches from the given start offsets.
// Offsets marked in `blocked` cannot be matched; they extend the window span
// without counting against the budget, since the events there are already
// explained by selected windows. One shared budget across all starts; shorter
// windows complete first and credit it.
std::vector<Window> expand_windows(const SequenceDatabase& db, const Pattern& x,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& starts,
                                   const std::vector<std::vector<char>>* blocked,
                                   std::int64_t& budget) {
    const std::int64_t two_len = 2 * static_cast<std::int64_t>(x.slot_count());
    std::vector<Window> out;
    std::priority_queue<Partial, std::vector<Partial>, PartialOrder> queue;

    auto usable = [&](std::uint32_t seq, std::uint32_t off) {
        return blocked == nullptr || !(*blocked)[seq][off];
    };

    for (auto [seq, off] : starts) {
        const Sequence& s = db.sequence(seq);
        EventId e = s[off];
        if (!x.slot_matches(0, e) || !usable(seq, off)) continue;
        Partial p;
        p.seq = seq;
        p.start = off;
        p.cur_end = off;
        p.eff_len = 1;
        p.matched.push_back(off);
        p.chosen.push_back(e);
        if (x.slot_count() == 1) {
            if (budget + two_len - 1 - 1 >= 0) {
                budget += two_len - 1 - 1;
                out.push_back(Window{seq, -1, std::move(p.matched), std::move(p.chosen)});
            }
            continue;
        }
        queue.push(std::move(p));
    }

    while (!queue.empty()) {
        Partial p = queue.top();
        queue.pop();
        const Sequence& s = db.sequence(p.seq);
        const std::uint32_t next = p.cur_end + 1;
        if (next >= s.size()) continue;  // ran off the sequence
        p.cur_end = next;

        if (!usable(p.seq, next)) {
            queue.push(std::move(p));
            continue;
        }
        p.eff_len += 1;
        const std::int64_t len = p.eff_len;

        const std::size_t slot = p.matched.size();
        if (x.slot_matches(slot, s[next])) {
            p.matched.push_back(next);
            p.chosen.push_back(s[next]);
            if (p.matched.size() == x.slot_count()) {
                // completed; admission check, then credit
                if (budget + two_len - len - 1 >= 0) {
                    budget += two_len - len - 1;
                    out.push_back(Window{p.seq, -1, std::move(p.matched), std::move(p.chosen)});
                }
                continue;
            }
        } else {
            // one extra gap
            if (budget + two_len - len - 1 < 0) continue;
        }
        queue.push(std::move(p));
    }

    std::sort(out.begin(), out.end(), [](const Window& a, const Window& b) {
        if (a.seq != b.seq) return a.seq < b.seq;
        return a.start() < b.start();
    });
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> first_slot_starts(const InvertedIndex& idx,
                                                                       const Pattern& x) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> starts;
    for (EventId e : x.slots[0]) {
        for (const Position& p : idx.positions(e)) starts.emplace_back(p.seq, p.offset);
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    return starts;
}

// Keeps only windows not properly containing another candidate window.
std::vector<Window> minimal_only(std::vector<Window> ws) {
    // ws sorted by (seq, start); scan each sequence from the right keeping the
    // least end seen among later starts.
    std::vector<Window> out;
    std::size_t i = 0;
    while (i < ws.size()) {
        std::size_t j = i;
        while (j < ws.size() && ws[j].seq == ws[i].seq) ++j;
        std::uint32_t min_end = UINT32_MAX;
        std::vector<std::size_t> keep;
        for (std::size_t k = j; k-- > i;) {
            if (ws[k].end() < min_end) {
                keep.push_back(k);
                min_end = ws[k].end();
            }
        }
        for (auto it = keep.rbegin(); it != keep.rend(); ++it) out.push_back(std::move(ws[*it]));
        i = j;
    }
    return out;
}

struct Extend {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
};

std::vector<Extend> build_extends(const std::vector<Window>& sel) {
    std::vector<Extend> out;
    for (const Window& w : sel) {
        if (!out.empty() && w.start() <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, w.end());
        } else {
            out.push_back(Extend{w.start(), w.end()});
        }
    }
    return out;
}

}  // namespace

std::vector<Window> find_windows(const SequenceDatabase& db, const InvertedIndex& idx,
                                 const Pattern& x, BudgetState& budget) {
    if (x.slot_count() == 0) return {};
    const auto starts = first_slot_starts(idx, x);
    // One budget across the whole database: credits earned by tight windows
    // fund extra gaps anywhere, so strong patterns reach their spread-out
    // occurrences.
    return expand_windows(db, x, starts, nullptr, budget.b);
}

std::vector<Window> find_windows(const SequenceDatabase& db, const InvertedIndex& idx,
                                 const Pattern& x) {
    BudgetState budget;
    return find_windows(db, idx, x, budget);
}

bool candidate_precedes(const CandidateKey& xk, const Pattern& x, const CandidateKey& yk,
                        const Pattern& y) {
    if (xk.length != yk.length) return xk.length > yk.length;
    if (xk.support != yk.support) return xk.support > yk.support;
    if (xk.st_bits != yk.st_bits) return xk.st_bits > yk.st_bits;
    return x < y;
}

Cover greedy_cover(Cover sel, std::span<const Window> cand, std::int32_t pattern_id,
                   const Pattern& x, const SequenceDatabase& db, CoverMode mode) {
    Cover out = std::move(sel);
    if (out.per_seq.size() < db.size()) out.per_seq.resize(db.size());

    // group candidates per sequence (input sorted by (seq, start))
    std::size_t ci = 0;
    for (std::uint32_t seq = 0; seq < db.size(); ++seq) {
        std::size_t cj = ci;
        while (cj < cand.size() && cand[cj].seq == seq) ++cj;
        std::span<const Window> scand = cand.subspan(ci, cj - ci);
        ci = cj;

        const std::vector<Window>& ssel = out.per_seq[seq];
        if (scand.empty() && ssel.empty()) continue;
        const Sequence& s = db.sequence(seq);

        std::vector<char> covered(s.size(), 0);
        for (const Window& w : ssel) {
            for (std::uint32_t o : w.matched) covered[o] = 1;
        }
        // span occupancy, used only for disjoint admission
        std::vector<char> span_taken;
        if (mode == CoverMode::kDisjoint) {
            span_taken.assign(s.size(), 0);
            for (const Window& w : ssel) {
                for (std::uint32_t o = w.start(); o <= w.end(); ++o) span_taken[o] = 1;
            }
        }

        // windows properly containing another candidate cannot appear in an
        // optimal cover; nesting enters through the on-the-fly search instead
        std::vector<Window> pool_cand = minimal_only({scand.begin(), scand.end()});

        const std::vector<Extend> extends = build_extends(ssel);
        std::vector<Window> admitted;
        std::vector<Window> carry;

        auto try_admit = [&](Window w) {
            if (mode == CoverMode::kDisjoint) {
                for (std::uint32_t o = w.start(); o <= w.end(); ++o) {
                    if (span_taken[o]) return;
                }
                for (std::uint32_t o = w.start(); o <= w.end(); ++o) span_taken[o] = 1;
            } else {
                for (std::uint32_t o : w.matched) {
                    if (covered[o]) return;
                }
            }
            for (std::uint32_t o : w.matched) covered[o] = 1;
            w.pattern_id = pattern_id;
            admitted.push_back(std::move(w));
        };

        std::size_t next_cand = 0;
        for (std::size_t r = 0; r <= extends.size(); ++r) {
            const std::int64_t lo = r == 0 ? 0 : static_cast<std::int64_t>(extends[r - 1].hi) + 1;
            const std::int64_t hi = r == extends.size() ? static_cast<std::int64_t>(s.size()) - 1
                                                        : static_cast<std::int64_t>(extends[r].lo) - 1;

            std::vector<Window> pool = std::move(carry);
            carry.clear();
            while (next_cand < pool_cand.size() &&
                   static_cast<std::int64_t>(pool_cand[next_cand].start()) <= hi) {
                const Window& w = pool_cand[next_cand];
                if (static_cast<std::int64_t>(w.start()) >= lo &&
                    static_cast<std::int64_t>(w.end()) <= hi) {
                    pool.push_back(w);
                }
                ++next_cand;
            }
            std::sort(pool.begin(), pool.end(), [](const Window& a, const Window& b) {
                if (a.span() != b.span()) return a.span() > b.span();
                return a.start() < b.start();
            });
            for (Window& w : pool) try_admit(std::move(w));

            // on-the-fly search for windows interleaved inside the next extend
            if (r < extends.size() && mode == CoverMode::kInterleaved) {
                std::vector<std::pair<std::uint32_t, std::uint32_t>> starts;
                for (std::uint32_t o = extends[r].lo; o <= extends[r].hi; ++o) {
                    if (!covered[o] && x.slot_matches(0, s[o])) starts.emplace_back(seq, o);
                }
                if (!starts.empty()) {
                    std::vector<std::vector<char>> blocked(db.size());
                    blocked[seq] = covered;  // matched offsets must be uncovered
                    std::int64_t local_budget = 0;
                    carry = expand_windows(db, x, starts, &blocked, local_budget);
                }
            }
        }

        auto& dst = out.per_seq[seq];
        dst.insert(dst.end(), std::make_move_iterator(admitted.begin()),
                   std::make_move_iterator(admitted.end()));
        std::sort(dst.begin(), dst.end(),
                  [](const Window& a, const Window& b) { return a.start() < b.start(); });
    }
    return out;
}

void dump_cover(const Cover& cover, std::ostream& out) {
    for (std::size_t seq = 0; seq < cover.per_seq.size(); ++seq) {
        for (const Window& w : cover.per_seq[seq]) {
            out << "W " << seq << ' ' << w.pattern_id << ' ';
            for (std::size_t i = 0; i < w.matched.size(); ++i) {
                if (i) out << ',';
                out << w.matched[i];
            }
            out << '\n';
        }
    }
}

}  // namespace squish

#include "squish/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "squish/codelen.hpp"

namespace squish {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlg(std::uint64_t n) {
    return n == 0 ? 0.0 : static_cast<double>(n) * std::log2(static_cast<double>(n));
}

// Identity of a code-table row inside one estimation pass: pattern index, or
// pattern_count + event id for a singleton.
using RowKey = std::uint64_t;

struct RowStats {
    bool is_pattern = false;
    std::size_t slots = 1;
    std::uint64_t usage = 0;
    std::uint64_t fills = 0;
    std::uint64_t gaps = 0;
    double st_bits = 0.0;
};

struct GlobalStats {
    std::uint64_t total_usage = 0;
    std::uint64_t pattern_usage = 0;
    std::size_t pattern_count = 0;
};

// Change of L(CT, D) if N cover windows of X and Y are replaced by their
// joined windows, computed from running counts only.
double join_delta(const GlobalStats& g, const RowStats& x, const RowStats& y, bool self,
                  std::uint64_t n, std::uint64_t gaps_v, std::uint64_t gaps_w,
                  std::uint64_t gaps_u, std::size_t joined_slots, double joined_st_bits) {
    const std::uint64_t burn_x = self ? 2 * n : n;
    if (x.usage < burn_x) return kInf;
    if (!self && y.usage < n) return kInf;
    const std::uint64_t ux = x.usage - burn_x;
    const std::uint64_t uy = self ? ux : y.usage - n;

    // pattern stream
    const std::uint64_t t0 = g.total_usage;
    const std::uint64_t t1 = t0 - n;
    double d_sum = xlg(ux) - xlg(x.usage) + xlg(n);
    if (!self) d_sum += xlg(uy) - xlg(y.usage);
    double delta = (xlg(t1) - xlg(t0)) - d_sum;

    // meta stream
    if (x.is_pattern) {
        const std::uint64_t rem_f = burn_x * (x.slots - 1);
        const std::uint64_t rem_g = gaps_v + (self ? gaps_w : 0);
        if (x.fills < rem_f || x.gaps < rem_g) return kInf;
        delta += codelen::prequential(x.fills - rem_f, x.gaps - rem_g) -
                 codelen::prequential(x.fills, x.gaps);
    }
    if (!self && y.is_pattern) {
        const std::uint64_t rem_f = n * (y.slots - 1);
        if (y.fills < rem_f || y.gaps < gaps_w) return kInf;
        delta += codelen::prequential(y.fills - rem_f, y.gaps - gaps_w) -
                 codelen::prequential(y.fills, y.gaps);
    }
    delta += codelen::prequential(n * (joined_slots - 1), gaps_u);

    // model bookkeeping
    std::size_t p1 = g.pattern_count + 1;
    std::uint64_t up1 = g.pattern_usage + n;
    double d_model = joined_st_bits;
    if (x.is_pattern) {
        up1 -= burn_x;
        if (ux == 0) {
            p1 -= 1;
            d_model -= x.st_bits;
        }
    }
    if (!self && y.is_pattern) {
        up1 -= n;
        if (uy == 0) {
            p1 -= 1;
            d_model -= y.st_bits;
        }
    }
    d_model += codelen::universal_int(p1 + 1) - codelen::universal_int(g.pattern_count + 1);
    d_model += codelen::universal_int(up1 + 1) - codelen::universal_int(g.pattern_usage + 1);
    d_model += codelen::log2_compositions(up1, p1) -
               codelen::log2_compositions(g.pattern_usage, g.pattern_count);
    return delta + d_model;
}

struct CoverItem {
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    std::int32_t pattern_id = -1;  // -1: singleton occurrence
    std::uint32_t gaps = 0;
    EventId event = 0;
    const Window* window = nullptr;
};

}  // namespace

const char* mining_mode_name(MiningMode mode) {
    switch (mode) {
        case MiningMode::kDisjoint: return "disjoint";
        case MiningMode::kInterleave: return "interleave";
        case MiningMode::kChoicisode: return "choicisode";
    }
    return "unknown";
}

std::optional<MiningMode> parse_mining_mode(const std::string& name) {
    if (name == "disjoint") return MiningMode::kDisjoint;
    if (name == "interleave") return MiningMode::kInterleave;
    if (name == "choicisode") return MiningMode::kChoicisode;
    return std::nullopt;
}

double window_gain(const Window& w, const CodeTable& ct, const SequenceDatabase& db) {
    if (w.pattern_id < 0 || static_cast<std::size_t>(w.pattern_id) >= ct.entries.size()) {
        throw std::invalid_argument("window references unknown pattern");
    }
    const CodeTableEntry& entry = ct.entries[w.pattern_id];
    const InstantiationStats* inst = nullptr;
    for (const auto& cand : entry.instantiations) {
        if (cand.events == w.chosen) {
            inst = &cand;
            break;
        }
    }
    if (inst == nullptr || inst->usage == 0) {
        throw std::invalid_argument("window gain undefined: pattern code has zero usage");
    }
    const double total = static_cast<double>(ct.total_usage());
    const double f = static_cast<double>(inst->fills);
    const double g = static_cast<double>(inst->gaps);
    const double code_p = std::log2(total / static_cast<double>(inst->usage));
    const double code_g = -std::log2((g + 0.5) / (f + g + 1.0));
    const double code_f = -std::log2((f + 0.5) / (f + g + 1.0));

    double gain = -code_p;
    gain -= static_cast<double>(w.gap_count()) * code_g;
    gain -= static_cast<double>(w.matched.size() - 1) * code_f;
    for (EventId e : w.chosen) gain += standard_code_length(db, e);
    return gain;
}

Miner::Miner(const SequenceDatabase& db, SearchConfig config)
    : db_(db),
      idx_(db),
      config_(config),
      cover_mode_(config.mode == MiningMode::kDisjoint ? CoverMode::kDisjoint
                                                       : CoverMode::kInterleaved) {
    Rebuilt empty = rebuild({});
    baseline_ = empty.bits;
    commit(std::move(empty));
}

std::vector<Pattern> Miner::patterns() const {
    std::vector<Pattern> out;
    out.reserve(pats_.size());
    for (const auto& p : pats_) out.push_back(p->pattern);
    return out;
}

std::shared_ptr<const Miner::PatternState> Miner::make_state(const Pattern& p) const {
    if (auto it = cache_.find(p); it != cache_.end()) return it->second;
    auto st = std::make_shared<PatternState>();
    st->pattern = p;
    st->cand = find_windows(db_, idx_, p);
    st->key = CandidateKey{p.slot_count(), st->cand.size(), pattern_model_length(p, db_)};
    cache_.emplace(p, st);
    return st;
}

std::size_t Miner::insertion_index(const PatternState& st) const {
    std::size_t i = 0;
    while (i < pats_.size() &&
           candidate_precedes(pats_[i]->key, pats_[i]->pattern, st.key, st.pattern)) {
        ++i;
    }
    return i;
}

Miner::Rebuilt Miner::rebuild(std::vector<std::shared_ptr<const PatternState>> order) const {
    Rebuilt out;
    out.order = std::move(order);
    out.cover = Cover(db_.size());
    for (std::size_t i = 0; i < out.order.size(); ++i) {
        out.cover = greedy_cover(std::move(out.cover), out.order[i]->cand,
                                 static_cast<std::int32_t>(i), out.order[i]->pattern, db_,
                                 cover_mode_);
    }
    std::vector<Pattern> patterns;
    patterns.reserve(out.order.size());
    for (const auto& p : out.order) patterns.push_back(p->pattern);
    out.table = cover_to_stats(patterns, out.cover, db_);

    // patterns whose windows were all claimed by higher-ranked ones carry no
    // codes; they are dropped from the scored model
    std::vector<std::int32_t> remap(out.order.size(), -1);
    std::vector<std::shared_ptr<const PatternState>> kept;
    for (std::size_t i = 0; i < out.order.size(); ++i) {
        if (out.table.entries[i].usage() > 0) {
            remap[i] = static_cast<std::int32_t>(kept.size());
            kept.push_back(out.order[i]);
        }
    }
    if (kept.size() != out.order.size()) {
        for (auto& per_seq : out.cover.per_seq) {
            for (auto& w : per_seq) w.pattern_id = remap[w.pattern_id];
        }
        out.order = std::move(kept);
        patterns.clear();
        for (const auto& p : out.order) patterns.push_back(p->pattern);
        out.table = cover_to_stats(patterns, out.cover, db_);
    }
    out.bits = total_length(db_, out.table);
    return out;
}

void Miner::commit(Rebuilt rebuilt) {
    pats_ = std::move(rebuilt.order);
    cover_ = std::move(rebuilt.cover);
    table_ = std::move(rebuilt.table);
    bits_ = rebuilt.bits;
}

bool Miner::try_accept(const Pattern& z) {
    if (z.slot_count() < 2) return false;
    if (config_.max_pattern_slots > 0 &&
        z.slot_count() > static_cast<std::size_t>(config_.max_pattern_slots)) {
        return false;
    }
    for (const auto& p : pats_) {
        if (p->pattern == z) return false;
    }
    auto st = make_state(z);
    if (st->cand.empty()) return false;

    auto order = pats_;
    order.insert(order.begin() + insertion_index(*st), st);
    Rebuilt rb = rebuild(std::move(order));
    if (!(rb.bits < bits_ - config_.min_gain)) return false;

    commit(std::move(rb));
    variants_.clear();
    collect_variants(z);
    if (config_.mode == MiningMode::kChoicisode) {
        for (std::size_t i = 0; i < pats_.size(); ++i) {
            if (pats_[i]->pattern == z) {
                try_merge_choicisode(i);
                break;
            }
        }
    }
    prune();
    return true;
}

void Miner::set_patterns(const std::vector<Pattern>& patterns) {
    std::vector<std::shared_ptr<const PatternState>> order;
    for (const Pattern& p : patterns) {
        bool dup = false;
        for (const auto& q : order) dup |= q->pattern == p;
        if (!dup) order.push_back(make_state(p));
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        return candidate_precedes(a->key, a->pattern, b->key, b->pattern);
    });
    Rebuilt rb = rebuild(std::move(order));
    commit(std::move(rb));
}

bool Miner::try_merge_choicisode(std::size_t z_index) {
    if (z_index >= pats_.size()) return false;
    const Pattern z = pats_[z_index]->pattern;
    const double z_bits = pats_[z_index]->key.st_bits;
    const std::size_t p_count = table_.entries.size();
    const std::uint64_t p_usage = table_.pattern_usage();

    double best_delta = 0.0;  // stand-alone option
    std::size_t best_target = pats_.size();
    Pattern best_merged;

    for (std::size_t j = 0; j < pats_.size(); ++j) {
        if (j == z_index) continue;
        const Pattern& c = pats_[j]->pattern;
        if (c.slot_count() != z.slot_count()) continue;
        std::size_t diff = 0;
        std::size_t diff_slot = 0;
        for (std::size_t k = 0; k < c.slot_count(); ++k) {
            if (c.slots[k] != z.slots[k]) {
                ++diff;
                diff_slot = k;
            }
        }
        if (diff != 1) continue;

        Pattern merged = c;
        merged.slots[diff_slot].insert(merged.slots[diff_slot].end(), z.slots[diff_slot].begin(),
                                       z.slots[diff_slot].end());
        merged.normalize();
        bool exists = false;
        for (const auto& p : pats_) exists |= p->pattern == merged;
        if (exists) continue;

        double delta = pattern_model_length(merged, db_) - pats_[j]->key.st_bits - z_bits;
        if (p_count >= 2) {
            delta += codelen::universal_int(p_count) - codelen::universal_int(p_count + 1);
            delta += codelen::log2_compositions(p_usage, p_count - 1) -
                     codelen::log2_compositions(p_usage, p_count);
        }
        if (delta < best_delta - 1e-9) {
            best_delta = delta;
            best_target = j;
            best_merged = merged;
        }
    }
    if (best_target == pats_.size()) return false;

    auto merged_state = make_state(best_merged);
    std::vector<std::shared_ptr<const PatternState>> order;
    for (std::size_t j = 0; j < pats_.size(); ++j) {
        if (j != z_index && j != best_target) order.push_back(pats_[j]);
    }
    std::size_t i = 0;
    while (i < order.size() &&
           candidate_precedes(order[i]->key, order[i]->pattern, merged_state->key,
                              merged_state->pattern)) {
        ++i;
    }
    order.insert(order.begin() + i, merged_state);
    Rebuilt rb = rebuild(std::move(order));
    if (rb.bits <= bits_ + 1e-9) {
        commit(std::move(rb));
        return true;
    }
    return false;
}

void Miner::collect_variants(const Pattern& z) {
    if (const char* env = std::getenv("SQUISH_NO_VARIANTS"); env && *env == '1') return;
    std::size_t idx = pats_.size();
    for (std::size_t i = 0; i < pats_.size(); ++i) {
        if (pats_[i]->pattern == z) {
            idx = i;
            break;
        }
    }
    if (idx == pats_.size()) return;
    if (config_.max_pattern_slots > 0 &&
        z.slot_count() + 1 > static_cast<std::size_t>(config_.max_pattern_slots)) {
        return;
    }

    // (event, insertion slot) counts over gap positions; an event qualifies
    // only when it shows up in the gaps of most of the pattern's windows,
    // which separates structural bridges from passing noise
    std::map<std::pair<EventId, std::size_t>, std::uint64_t> counts;
    std::map<EventId, std::uint64_t> window_hits;
    std::uint64_t window_count = 0;
    for (std::size_t seq = 0; seq < cover_.per_seq.size(); ++seq) {
        const Sequence& s = db_.sequence(seq);
        for (const Window& w : cover_.per_seq[seq]) {
            if (w.pattern_id != static_cast<std::int32_t>(idx)) continue;
            ++window_count;
            std::set<EventId> seen;
            std::size_t slot = 0;
            for (std::uint32_t o = w.start() + 1; o < w.end(); ++o) {
                if (o == w.matched[slot + 1]) {
                    ++slot;
                    continue;
                }
                counts[{s[o], slot + 1}] += 1;
                seen.insert(s[o]);
            }
            for (EventId e : seen) window_hits[e] += 1;
        }
    }
    std::map<EventId, std::pair<std::uint64_t, std::size_t>> best;  // event -> (count, slot)
    for (const auto& [key, n] : counts) {
        auto it = best.find(key.first);
        if (it == best.end() || n > it->second.first) best[key.first] = {n, key.second};
    }
    for (const auto& [e, hits] : window_hits) {
        if (hits < 2 || 2 * hits <= window_count) continue;
        Pattern v = z;
        v.slots.insert(v.slots.begin() + best[e].second, std::vector<EventId>{e});
        variants_.push_back(std::move(v));
    }
}

void Miner::prune() {
    std::size_t i = 0;
    while (i < pats_.size()) {
        const CodeTableEntry& entry = table_.entries[i];
        const std::uint64_t usage = entry.usage();

        auto without = pats_;
        without.erase(without.begin() + i);

        if (usage == 0) {
            Rebuilt rb = rebuild(std::move(without));
            commit(std::move(rb));
            continue;
        }

        double g = 0.0;
        for (const auto& per_seq : cover_.per_seq) {
            for (const Window& w : per_seq) {
                if (w.pattern_id == static_cast<std::int32_t>(i)) {
                    g += window_gain(w, table_, db_);
                }
            }
        }
        const std::size_t p_count = table_.entries.size();
        const std::uint64_t p_usage = table_.pattern_usage();
        double ct_saving = pats_[i]->key.st_bits;
        ct_saving += codelen::universal_int(p_count + 1) - codelen::universal_int(p_count);
        ct_saving += codelen::universal_int(p_usage + 1) - codelen::universal_int(p_usage - usage + 1);
        ct_saving += codelen::log2_compositions(p_usage, p_count) -
                     codelen::log2_compositions(p_usage - usage, p_count - 1);

        if (g < ct_saving) {
            Rebuilt rb = rebuild(std::move(without));
            if (rb.bits < bits_ - config_.min_gain) {
                commit(std::move(rb));
                continue;
            }
        }
        ++i;
    }
}

namespace {

struct EstimateContext {
    const SequenceDatabase* db = nullptr;
    const CodeTable* ct = nullptr;
    std::size_t pattern_count = 0;
    GlobalStats global;
    std::vector<std::vector<CoverItem>> items;                       // per sequence
    std::unordered_map<RowKey, std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows;
};

EstimateContext build_context(const SequenceDatabase& db, const CodeTable& ct,
                              const Cover& cover) {
    EstimateContext ctx;
    ctx.db = &db;
    ctx.ct = &ct;
    ctx.pattern_count = ct.entries.size();
    ctx.global = GlobalStats{ct.total_usage(), ct.pattern_usage(), ct.entries.size()};
    ctx.items.resize(db.size());
    for (std::uint32_t seq = 0; seq < db.size(); ++seq) {
        const Sequence& s = db.sequence(seq);
        std::vector<char> covered(s.size(), 0);
        if (seq < cover.per_seq.size()) {
            for (const Window& w : cover.per_seq[seq]) {
                for (std::uint32_t o : w.matched) covered[o] = 1;
            }
        }
        auto& items = ctx.items[seq];
        std::size_t wi = 0;
        const auto* ws = seq < cover.per_seq.size() ? &cover.per_seq[seq] : nullptr;
        for (std::uint32_t o = 0; o < s.size(); ++o) {
            while (ws && wi < ws->size() && (*ws)[wi].start() == o) {
                const Window& w = (*ws)[wi];
                items.push_back(CoverItem{w.start(), w.end(), w.pattern_id, w.gap_count(),
                                          w.chosen[0], &w});
                ++wi;
            }
            if (!covered[o]) {
                items.push_back(CoverItem{o, o, -1, 0, s[o], nullptr});
            }
        }
        for (std::uint32_t i = 0; i < items.size(); ++i) {
            const CoverItem& it = items[i];
            const RowKey key = it.pattern_id >= 0
                                   ? static_cast<RowKey>(it.pattern_id)
                                   : static_cast<RowKey>(ctx.pattern_count) + it.event;
            ctx.rows[key].emplace_back(seq, i);
        }
    }
    return ctx;
}

struct QueueEntry {
    std::uint32_t len = 0;
    std::uint32_t seq = 0;
    std::uint32_t anchor = 0;   // start offset of v
    std::uint32_t vi = 0;       // item index of v
    std::uint32_t pi = 0;       // item index of the current partner
    double penalty = 0.0;       // accumulated gain of skipped non-singleton windows
};
struct QueueOrder {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.len != b.len) return a.len > b.len;
        if (a.seq != b.seq) return a.seq > b.seq;
        return a.anchor > b.anchor;
    }
};

struct JoinAccum {
    RowStats y;
    Pattern y_pattern;
    Pattern joined;
    double joined_st_bits = 0.0;
    bool joined_valid = false;
    std::uint64_t n = 0;
    std::uint64_t gaps_v = 0;
    std::uint64_t gaps_w = 0;
    std::uint64_t gaps_u = 0;
    double penalty = 0.0;
    double best_delta = kInf;
};

std::vector<CandidateExtension> estimate_one(const EstimateContext& ctx, RowKey x_key,
                                             const std::vector<Pattern>& pattern_list,
                                             const std::vector<double>& pattern_st_bits,
                                             int max_slots) {
    const bool x_is_pattern = x_key < ctx.pattern_count;
    const Pattern x = x_is_pattern
                          ? pattern_list[x_key]
                          : Pattern::serial({static_cast<EventId>(x_key - ctx.pattern_count)});
    RowStats xs;
    xs.is_pattern = x_is_pattern;
    xs.slots = x.slot_count();
    if (x_is_pattern) {
        const CodeTableEntry& e = ctx.ct->entries[x_key];
        xs.usage = e.usage();
        xs.fills = e.fills();
        xs.gaps = e.gaps();
        xs.st_bits = pattern_st_bits[x_key];
    } else {
        xs.usage = ctx.ct->singleton_usage[x_key - ctx.pattern_count];
    }
    auto rows_it = ctx.rows.find(x_key);
    if (rows_it == ctx.rows.end() || xs.usage == 0) return {};

    const std::uint32_t span_cap =
        std::max<std::uint32_t>(24, 6 * static_cast<std::uint32_t>(x.slot_count()) + 18);

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
    for (auto [seq, vi] : rows_it->second) {
        const auto& items = ctx.items[seq];
        if (vi + 1 >= items.size()) continue;
        const std::uint32_t len = items[vi + 1].end - items[vi].start;
        if (len > span_cap) continue;
        queue.push(QueueEntry{len, seq, items[vi].start, vi, vi + 1, 0.0});
    }

    std::unordered_set<std::uint64_t> marked;
    auto mark = [&](std::uint32_t seq, std::uint32_t off) {
        marked.insert((static_cast<std::uint64_t>(seq) << 32) | off);
    };
    auto is_marked = [&](std::uint32_t seq, std::uint32_t off) {
        return marked.count((static_cast<std::uint64_t>(seq) << 32) | off) > 0;
    };

    std::unordered_map<RowKey, JoinAccum> accs;

    while (!queue.empty()) {
        QueueEntry t = queue.top();
        queue.pop();
        const auto& items = ctx.items[t.seq];
        const CoverItem& v = items[t.vi];
        const CoverItem& w = items[t.pi];
        const RowKey w_key = w.pattern_id >= 0
                                 ? static_cast<RowKey>(w.pattern_id)
                                 : static_cast<RowKey>(ctx.pattern_count) + w.event;
        const bool self = w_key == x_key;
        const Sequence& s = ctx.db->sequence(t.seq);

        if (self && (is_marked(t.seq, v.start) || is_marked(t.seq, w.end))) continue;

        bool terminated = false;
        if (w.start > v.end) {
            const RowKey y_key = w_key;
            JoinAccum* acc = nullptr;
            auto found = accs.find(y_key);
            if (found != accs.end()) {
                acc = &found->second;
            } else {
                JoinAccum fresh;
                fresh.y.is_pattern = w.pattern_id >= 0;
                if (fresh.y.is_pattern) {
                    const CodeTableEntry& e = ctx.ct->entries[w.pattern_id];
                    fresh.y_pattern = pattern_list[w.pattern_id];
                    fresh.y.slots = fresh.y_pattern.slot_count();
                    fresh.y.usage = e.usage();
                    fresh.y.fills = e.fills();
                    fresh.y.gaps = e.gaps();
                    fresh.y.st_bits = pattern_st_bits[w.pattern_id];
                } else {
                    fresh.y_pattern = Pattern::serial({w.event});
                    fresh.y.usage = ctx.ct->singleton_usage[w.event];
                }
                fresh.joined = x;
                fresh.joined.slots.insert(fresh.joined.slots.end(), fresh.y_pattern.slots.begin(),
                                          fresh.y_pattern.slots.end());
                fresh.joined_valid =
                    max_slots <= 0 ||
                    fresh.joined.slot_count() <= static_cast<std::size_t>(max_slots);
                if (fresh.joined_valid) {
                    fresh.joined_st_bits = pattern_model_length(fresh.joined, *ctx.db);
                }
                acc = &accs.emplace(y_key, std::move(fresh)).first->second;
            }

            if (acc->joined_valid &&
                is_minimal_window(s, v.start, w.end, acc->joined)) {
                acc->n += 1;
                acc->gaps_v += v.gaps;
                acc->gaps_w += w.gaps;
                acc->gaps_u += (w.end - v.start + 1) -
                               static_cast<std::uint32_t>(acc->joined.slot_count());
                acc->penalty += t.penalty;
                const double delta =
                    join_delta(ctx.global, xs, acc->y, self, acc->n, acc->gaps_v, acc->gaps_w,
                               acc->gaps_u, acc->joined.slot_count(), acc->joined_st_bits) +
                    acc->penalty;
                acc->best_delta = std::min(acc->best_delta, delta);

                if (w.pattern_id >= 0 && !self) {
                    t.penalty += window_gain(*w.window, *ctx.ct, *ctx.db);
                }
                if (self) {
                    mark(t.seq, v.start);
                    mark(t.seq, w.end);
                    terminated = true;
                }
            }
        }
        if (terminated) continue;

        if (t.pi + 1 >= items.size()) continue;
        t.pi += 1;
        const std::uint32_t len = items[t.pi].end - v.start;
        if (len > span_cap) continue;
        t.len = len;
        queue.push(std::move(t));
    }

    std::vector<CandidateExtension> out;
    for (auto& [key, acc] : accs) {
        if (acc.n > 0 && acc.best_delta < kInf) {
            out.push_back(CandidateExtension{std::move(acc.joined), -acc.best_delta, acc.n});
        }
    }
    std::sort(out.begin(), out.end(), [](const CandidateExtension& a, const CandidateExtension& b) {
        if (a.estimated_gain != b.estimated_gain) return a.estimated_gain > b.estimated_gain;
        return a.joined < b.joined;
    });
    return out;
}

}  // namespace

std::vector<CandidateExtension> Miner::estimate_for(const Pattern& x) const {
    EstimateContext ctx = build_context(db_, table_, cover_);
    std::vector<Pattern> pattern_list;
    std::vector<double> st_bits;
    for (const auto& p : pats_) {
        pattern_list.push_back(p->pattern);
        st_bits.push_back(p->key.st_bits);
    }
    RowKey key = 0;
    if (x.slot_count() == 1 && x.slots[0].size() == 1) {
        key = static_cast<RowKey>(ctx.pattern_count) + x.slots[0][0];
    } else {
        bool found = false;
        for (std::size_t i = 0; i < pats_.size(); ++i) {
            if (pats_[i]->pattern == x) {
                key = i;
                found = true;
                break;
            }
        }
        if (!found) return {};
    }
    return estimate_one(ctx, key, pattern_list, st_bits, config_.max_pattern_slots);
}

std::vector<CandidateExtension> Miner::estimate_all() const {
    EstimateContext ctx = build_context(db_, table_, cover_);
    std::vector<Pattern> pattern_list;
    std::vector<double> st_bits;
    for (const auto& p : pats_) {
        pattern_list.push_back(p->pattern);
        st_bits.push_back(p->key.st_bits);
    }

    std::vector<RowKey> keys;
    for (std::size_t i = 0; i < table_.entries.size(); ++i) {
        if (table_.entries[i].usage() > 0) keys.push_back(i);
    }
    for (EventId e = 0; e < table_.singleton_usage.size(); ++e) {
        if (table_.singleton_usage[e] > 0) keys.push_back(ctx.pattern_count + e);
    }

    std::vector<std::vector<CandidateExtension>> results(keys.size());
    const int threads = std::min<int>(thread_count(), static_cast<int>(keys.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            results[i] =
                estimate_one(ctx, keys[i], pattern_list, st_bits, config_.max_pattern_slots);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= keys.size()) break;
                    results[i] = estimate_one(ctx, keys[i], pattern_list, st_bits,
                                              config_.max_pattern_slots);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // one candidate per seed row: the best-estimated extension of each X
    std::unordered_map<Pattern, std::pair<double, std::uint64_t>, PatternHash> best;
    for (const auto& vec : results) {
        if (vec.empty()) continue;
        const auto& ext = vec.front();
        auto it = best.find(ext.joined);
        if (it == best.end() || ext.estimated_gain > it->second.first) {
            best[ext.joined] = {ext.estimated_gain, ext.pair_count};
        }
    }
    std::vector<CandidateExtension> out;
    out.reserve(best.size());
    for (auto& [pattern, info] : best) {
        bool exists = false;
        for (const auto& p : pats_) exists |= p->pattern == pattern;
        if (!exists) out.push_back(CandidateExtension{pattern, info.first, info.second});
    }
    std::sort(out.begin(), out.end(), [](const CandidateExtension& a, const CandidateExtension& b) {
        if (a.estimated_gain != b.estimated_gain) return a.estimated_gain > b.estimated_gain;
        return a.joined < b.joined;
    });
    return out;
}

int Miner::thread_count() const {
    if (config_.threads > 0) return config_.threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
}

MiningResult Miner::run() {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    auto expired = [&]() {
        return config_.budget_seconds > 0.0 && elapsed() >= config_.budget_seconds;
    };

    MiningResult res;
    res.baseline_bits = baseline_;
    res.curve.push_back(CurvePoint{0.0, bits_});

    bool progress = true;
    while (progress && !expired()) {
        progress = false;
        auto batch = estimate_all();
        for (const auto& ext : batch) {
            if (expired()) break;
            if (ext.estimated_gain <= config_.min_gain) break;
            if (!try_accept(ext.joined)) continue;
            progress = true;
            res.steps.push_back(AcceptedStep{ext.joined, bits_, elapsed()});
            res.curve.push_back(CurvePoint{elapsed(), bits_});

            // offer the gap-bridging variants of this acceptance
            const std::vector<Pattern> pending = pending_variants();
            for (const Pattern& v : pending) {
                if (expired()) break;
                if (try_accept(v)) {
                    res.steps.push_back(AcceptedStep{v, bits_, elapsed()});
                    res.curve.push_back(CurvePoint{elapsed(), bits_});
                }
            }
        }
    }

    res.patterns = patterns();
    res.table = table_;
    res.cover = cover_;
    res.total_bits = bits_;
    return res;
}

MiningResult squish_mine(const SequenceDatabase& db, const SearchConfig& config) {
    Miner miner(db, config);
    return miner.run();
}

}  // namespace squish

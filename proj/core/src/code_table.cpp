#include "squish/code_table.hpp"

#include <cmath>
#include <stdexcept>

#include "squish/codelen.hpp"

namespace squish {

double standard_code_length(const SequenceDatabase& db, EventId e) {
    const std::uint64_t supp = db.support(e);
    if (supp == 0) throw std::invalid_argument("cannot encode event with zero support");
    return -std::log2(static_cast<double>(supp) / static_cast<double>(db.total_events()));
}

double pattern_model_length(const Pattern& x, const SequenceDatabase& db) {
    if (x.slot_count() < 2) {
        throw std::invalid_argument("pattern_model_length requires a non-singleton pattern");
    }
    const std::size_t len = x.slot_count();
    const std::size_t events = x.event_count();
    double bits = codelen::universal_int(len);
    if (events != len) {
        bits += codelen::universal_int(events - len + 1);
        bits += codelen::log2_binomial(events - 1, len - 1);
    }
    for (const auto& slot : x.slots) {
        for (EventId e : slot) bits += standard_code_length(db, e);
    }
    return bits;
}

double pattern_stream_length(const CodeTable& ct) {
    const std::uint64_t total = ct.total_usage();
    if (total == 0) return 0.0;
    const double lt = std::log2(static_cast<double>(total));
    double bits = 0.0;
    for (std::uint64_t u : ct.singleton_usage) {
        if (u > 0) bits += static_cast<double>(u) * (lt - std::log2(static_cast<double>(u)));
    }
    for (const auto& e : ct.entries) {
        for (const auto& inst : e.instantiations) {
            if (inst.usage > 0) {
                bits += static_cast<double>(inst.usage) *
                        (lt - std::log2(static_cast<double>(inst.usage)));
            }
        }
    }
    return bits;
}

double meta_stream_length(const CodeTable& ct) {
    double bits = 0.0;
    for (const auto& e : ct.entries) {
        for (const auto& inst : e.instantiations) {
            if (inst.fills > 0 || inst.gaps > 0) bits += codelen::prequential(inst.fills, inst.gaps);
        }
    }
    return bits;
}

double code_table_length(const CodeTable& ct, const SequenceDatabase& db) {
    double bits = codelen::universal_int(db.alphabet_size()) +
                  codelen::log2_binomial(db.total_events(), db.alphabet_size());
    const std::size_t p = ct.entries.size();
    const std::uint64_t up = ct.pattern_usage();
    bits += codelen::universal_int(p + 1);
    bits += codelen::universal_int(up + 1);
    bits += codelen::log2_compositions(up, p);
    for (const auto& e : ct.entries) bits += pattern_model_length(e.pattern, db);
    return bits;
}

double data_length(const SequenceDatabase& db, const CodeTable& ct) {
    return codelen::universal_int(db.size()) + pattern_stream_length(ct) + meta_stream_length(ct);
}

double total_length(const SequenceDatabase& db, const CodeTable& ct) {
    return code_table_length(ct, db) + data_length(db, ct);
}

void validate_cover(const std::vector<Pattern>& patterns, const Cover& cover,
                    const SequenceDatabase& db) {
    if (cover.per_seq.size() > db.size()) throw std::invalid_argument("cover has extra sequences");
    for (std::size_t seq = 0; seq < cover.per_seq.size(); ++seq) {
        const Sequence& s = db.sequence(seq);
        std::vector<char> taken(s.size(), 0);
        for (const Window& w : cover.per_seq[seq]) {
            if (w.pattern_id < 0 || static_cast<std::size_t>(w.pattern_id) >= patterns.size()) {
                throw std::invalid_argument("window references unknown pattern");
            }
            const Pattern& x = patterns[w.pattern_id];
            if (w.matched.size() != x.slot_count() || w.chosen.size() != x.slot_count()) {
                throw std::invalid_argument("window arity does not match pattern");
            }
            for (std::size_t i = 0; i < w.matched.size(); ++i) {
                const std::uint32_t o = w.matched[i];
                if (o >= s.size()) throw std::invalid_argument("window offset out of range");
                if (i > 0 && o <= w.matched[i - 1]) {
                    throw std::invalid_argument("window offsets not increasing");
                }
                if (s[o] != w.chosen[i]) throw std::invalid_argument("chosen event mismatch");
                if (!x.slot_matches(i, w.chosen[i])) {
                    throw std::invalid_argument("chosen event not in choice set");
                }
                if (taken[o]) throw std::invalid_argument("overlapping windows in cover");
                taken[o] = 1;
            }
        }
    }
}

CodeTable cover_to_stats(const std::vector<Pattern>& patterns, const Cover& cover,
                         const SequenceDatabase& db) {
    CodeTable ct(db.alphabet_size());
    ct.entries.resize(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) ct.entries[i].pattern = patterns[i];

    for (std::size_t seq = 0; seq < db.size(); ++seq) {
        const Sequence& s = db.sequence(seq);
        std::vector<char> covered(s.size(), 0);
        if (seq < cover.per_seq.size()) {
            for (const Window& w : cover.per_seq[seq]) {
                auto& entry = ct.entries[w.pattern_id];
                InstantiationStats* inst = nullptr;
                for (auto& cand : entry.instantiations) {
                    if (cand.events == w.chosen) {
                        inst = &cand;
                        break;
                    }
                }
                if (inst == nullptr) {
                    entry.instantiations.push_back(InstantiationStats{w.chosen, 0, 0, 0});
                    inst = &entry.instantiations.back();
                }
                inst->usage += 1;
                inst->gaps += w.gap_count();
                inst->fills += w.matched.size() - 1;
                for (std::uint32_t o : w.matched) covered[o] = 1;
            }
        }
        for (std::size_t o = 0; o < s.size(); ++o) {
            if (!covered[o]) ++ct.singleton_usage[s[o]];
        }
    }
    return ct;
}

double data_length(const SequenceDatabase& db, const CodeTable& ct, const Cover& cover,
                   const std::vector<Pattern>& patterns) {
    validate_cover(patterns, cover, db);
    return data_length(db, ct);
}

double total_length(const SequenceDatabase& db, const CodeTable& ct, const Cover& cover,
                    const std::vector<Pattern>& patterns) {
    validate_cover(patterns, cover, db);
    return total_length(db, ct);
}

double standard_table_length(const SequenceDatabase& db) {
    CodeTable st(db.alphabet_size());
    for (EventId e = 0; e < db.alphabet_size(); ++e) {
        st.singleton_usage[e] = db.support(e);
    }
    return total_length(db, st);
}

}  // namespace squish

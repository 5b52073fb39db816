#include "squish/generate.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace squish {

namespace {

// Serializes raw symbol streams to token text and reloads, so the alphabet
// holds exactly the symbols that appear, in first-appearance order.
SequenceDatabase db_from_raw(const std::vector<std::vector<std::uint64_t>>& seqs) {
    std::ostringstream text;
    for (const auto& s : seqs) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) text << ' ';
            text << s[i];
        }
        text << '\n';
    }
    return SequenceDatabase::load_string(text.str());
}

EventId remap(const SequenceDatabase& db, std::uint64_t raw) {
    const std::int64_t id = db.event_id(std::to_string(raw));
    if (id < 0) throw std::logic_error("generated symbol missing from database");
    return static_cast<EventId>(id);
}

}  // namespace

GeneratedData gen_indep(const GeneratorSpec& spec) {
    Rng rng(spec.seed);
    std::vector<std::uint64_t> seq(spec.total_events);
    for (auto& e : seq) e = rng.below(spec.alphabet);
    GeneratedData out;
    out.db = db_from_raw({seq});
    return out;
}

GeneratedData gen_plant(const GeneratorSpec& spec) {
    const std::size_t planted_mass = spec.pattern_count * spec.pattern_length * spec.occurrences;
    if (planted_mass > spec.total_events) {
        throw std::invalid_argument("insufficient room: planted events exceed total events");
    }
    if (spec.pattern_count * spec.pattern_length > spec.alphabet) {
        throw std::invalid_argument("insufficient alphabet for disjoint pattern tuples");
    }
    Rng rng(spec.seed);

    // disjoint event tuples via a partial shuffle
    std::vector<std::uint64_t> symbols(spec.alphabet);
    for (std::size_t i = 0; i < symbols.size(); ++i) symbols[i] = i;
    const std::size_t need = spec.pattern_count * spec.pattern_length;
    for (std::size_t i = 0; i < need; ++i) {
        const std::size_t j = i + rng.below(symbols.size() - i);
        std::swap(symbols[i], symbols[j]);
    }
    std::vector<std::vector<std::uint64_t>> raw_patterns(spec.pattern_count);
    for (std::size_t p = 0; p < spec.pattern_count; ++p) {
        for (std::size_t k = 0; k < spec.pattern_length; ++k) {
            raw_patterns[p].push_back(symbols[p * spec.pattern_length + k]);
        }
    }

    // embedding blocks: pattern events with at most one background event per
    // inter-slot gap, present with the given probability
    struct Block {
        std::vector<std::uint64_t> events;
        std::vector<char> is_pattern_event;
        std::size_t pattern = 0;
    };
    std::vector<Block> blocks;
    std::uint64_t block_mass = 0;
    for (std::size_t p = 0; p < spec.pattern_count; ++p) {
        for (std::size_t r = 0; r < spec.occurrences; ++r) {
            Block b;
            b.pattern = p;
            for (std::size_t k = 0; k < spec.pattern_length; ++k) {
                if (k > 0 && rng.unit() < spec.gap_probability) {
                    b.events.push_back(rng.below(spec.alphabet));
                    b.is_pattern_event.push_back(0);
                }
                b.events.push_back(raw_patterns[p][k]);
                b.is_pattern_event.push_back(1);
            }
            block_mass += b.events.size();
            blocks.push_back(std::move(b));
        }
    }
    if (block_mass > spec.total_events) {
        throw std::invalid_argument("insufficient room: gaps overflow total events");
    }

    const std::uint64_t background = spec.total_events - block_mass;
    std::vector<std::uint64_t> anchors(blocks.size());
    for (auto& a : anchors) a = rng.below(background + 1);
    std::sort(anchors.begin(), anchors.end());

    std::vector<std::uint64_t> seq;
    seq.reserve(spec.total_events);
    std::vector<std::pair<std::size_t, std::uint32_t>> placed;  // (block, start offset)
    std::uint64_t bg_emitted = 0;
    std::size_t bi = 0;
    while (bg_emitted < background || bi < blocks.size()) {
        while (bi < blocks.size() && anchors[bi] == bg_emitted) {
            placed.emplace_back(bi, static_cast<std::uint32_t>(seq.size()));
            for (std::uint64_t e : blocks[bi].events) seq.push_back(e);
            ++bi;
        }
        if (bg_emitted < background) {
            seq.push_back(rng.below(spec.alphabet));
            ++bg_emitted;
        }
    }

    GeneratedData out;
    out.db = db_from_raw({seq});
    for (const auto& rp : raw_patterns) {
        std::vector<EventId> ids;
        for (std::uint64_t s : rp) ids.push_back(remap(out.db, s));
        out.targets.push_back(Pattern::serial(ids));
    }
    for (const auto& [block_idx, start] : placed) {
        const Block& b = blocks[block_idx];
        std::vector<std::uint32_t> offsets;
        for (std::size_t k = 0; k < b.events.size(); ++k) {
            if (b.is_pattern_event[k]) offsets.push_back(start + static_cast<std::uint32_t>(k));
        }
        out.embeddings.push_back(std::move(offsets));
    }
    return out;
}

GeneratedData gen_parallel(const GeneratorSpec& spec) {
    Rng rng(spec.seed);
    std::vector<std::vector<std::uint64_t>> seqs(spec.sequence_count);
    for (auto& seq : seqs) {
        std::vector<std::size_t> state(spec.processes, 0);
        seq.reserve(spec.sequence_length);
        for (std::size_t t = 0; t < spec.sequence_length; ++t) {
            const std::size_t p = rng.below(spec.processes);
            seq.push_back(5 * p + state[p]);
            state[p] = (state[p] + 1) % 5;
        }
    }
    GeneratedData out;
    out.db = db_from_raw(seqs);
    for (std::size_t p = 0; p < spec.processes; ++p) {
        std::vector<EventId> ids;
        for (std::size_t k = 0; k < 5; ++k) ids.push_back(remap(out.db, 5 * p + k));
        out.targets.push_back(Pattern::serial(ids));
    }
    return out;
}

GeneratedData generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::kIndep: return gen_indep(spec);
        case GeneratorSpec::Kind::kPlant: return gen_plant(spec);
        case GeneratorSpec::Kind::kParallel: return gen_parallel(spec);
    }
    throw std::invalid_argument("unknown generator kind");
}

void save_targets(const std::vector<Pattern>& targets, const SequenceDatabase& db,
                  std::ostream& out) {
    for (const Pattern& t : targets) out << pattern_to_string(t, db) << '\n';
}

}  // namespace squish

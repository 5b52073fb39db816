#pragma once

#include <cstdint>
#include <vector>

#include "squish/cover.hpp"
#include "squish/pattern.hpp"
#include "squish/seqdb.hpp"

namespace squish {

// Usage of one concrete serial realization of a pattern. Each realization
// owns its own pattern code and gap/fill bookkeeping; a choicisode groups
// realizations only on the model side.
struct InstantiationStats {
    std::vector<EventId> events;
    std::uint64_t usage = 0;
    std::uint64_t gaps = 0;
    std::uint64_t fills = 0;
};

struct CodeTableEntry {
    Pattern pattern;
    std::vector<InstantiationStats> instantiations;

    std::uint64_t usage() const {
        std::uint64_t u = 0;
        for (const auto& i : instantiations) u += i.usage;
        return u;
    }
    std::uint64_t gaps() const {
        std::uint64_t g = 0;
        for (const auto& i : instantiations) g += i.gaps;
        return g;
    }
    std::uint64_t fills() const {
        std::uint64_t f = 0;
        for (const auto& i : instantiations) f += i.fills;
        return f;
    }
};

// The model: singletons for the full alphabet plus a set of non-singleton
// patterns with usage statistics. Entries with zero usage are ignored by all
// length computations.
struct CodeTable {
    std::vector<std::uint64_t> singleton_usage;
    std::vector<CodeTableEntry> entries;

    CodeTable() = default;
    explicit CodeTable(std::size_t alphabet_size) : singleton_usage(alphabet_size, 0) {}

    std::uint64_t singleton_total() const {
        std::uint64_t t = 0;
        for (auto u : singleton_usage) t += u;
        return t;
    }
    std::uint64_t pattern_usage() const {  // usage(P)
        std::uint64_t t = 0;
        for (const auto& e : entries) t += e.usage();
        return t;
    }
    std::uint64_t total_usage() const { return singleton_total() + pattern_usage(); }
    // Entries that actually appear in the cover; entries with zero usage still
    // cost model bits until pruned.
    std::size_t active_pattern_count() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.usage() > 0 ? 1 : 0;
        return n;
    }
};

// Standard-table code length of a singleton: -log2(supp(e)/||D||).
double standard_code_length(const SequenceDatabase& db, EventId e);

// L(X | ST) for a non-singleton pattern. Serial episodes transmit only the
// slot count and the events; choicisodes additionally pay for the number of
// choice events and their distribution over slots.
double pattern_model_length(const Pattern& x, const SequenceDatabase& db);

// Shannon-optimal pattern stream length from final usage counts, summed over
// singletons and pattern instantiations.
double pattern_stream_length(const CodeTable& ct);

// Prequential meta stream length, summed per code-bearing row.
double meta_stream_length(const CodeTable& ct);

// L(CT | D, C): alphabet support enumeration, pattern bookkeeping, and the
// per-pattern model codes.
double code_table_length(const CodeTable& ct, const SequenceDatabase& db);

// L(D | CT): sequence count plus the two code streams. Sequence lengths are
// treated as shared side information and are not charged.
double data_length(const SequenceDatabase& db, const CodeTable& ct);

// L(CT, D) = L(CT | D, C) + L(D | CT).
double total_length(const SequenceDatabase& db, const CodeTable& ct);

// Checks structural validity: offsets increasing and in range, chosen events
// matching both slot and sequence, no two windows sharing a matched offset,
// pattern ids resolving. Throws std::invalid_argument on violation.
void validate_cover(const std::vector<Pattern>& patterns, const Cover& cover,
                    const SequenceDatabase& db);

// Derives usage/gap/fill statistics and singleton usages from a cover.
CodeTable cover_to_stats(const std::vector<Pattern>& patterns, const Cover& cover,
                         const SequenceDatabase& db);

// Validating overloads of the length functions.
double data_length(const SequenceDatabase& db, const CodeTable& ct, const Cover& cover,
                   const std::vector<Pattern>& patterns);
double total_length(const SequenceDatabase& db, const CodeTable& ct, const Cover& cover,
                    const std::vector<Pattern>& patterns);

// The singleton-only baseline L(D, ST).
double standard_table_length(const SequenceDatabase& db);

}  // namespace squish

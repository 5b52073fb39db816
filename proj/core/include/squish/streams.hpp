#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "squish/code_table.hpp"

namespace squish {

// Symbolic code streams. Code ids 0..|alphabet|-1 are singletons; higher ids
// index pattern instantiations in code-table order.
struct CodeStreams {
    struct Meta {
        std::uint32_t code = 0;
        bool fill = false;
        bool operator==(const Meta&) const = default;
    };
    std::vector<std::uint32_t> pattern_stream;  // C_p
    std::vector<Meta> meta_stream;              // C_m

    bool operator==(const CodeStreams&) const = default;
};

// Maps between (entry, instantiation) pairs and flat code ids.
class CodeIdMap {
public:
    CodeIdMap(const CodeTable& ct, std::size_t alphabet_size);

    std::size_t alphabet_size() const { return alphabet_; }
    std::uint32_t instantiation_code(std::size_t entry, const std::vector<EventId>& chosen) const;
    bool is_singleton(std::uint32_t code) const { return code < alphabet_; }
    // Events of a non-singleton code.
    const std::vector<EventId>& events(std::uint32_t code) const;
    // (entry, instantiation) pair owning a non-singleton code.
    std::pair<std::size_t, std::size_t> owner(std::uint32_t code) const;

private:
    std::size_t alphabet_ = 0;
    std::vector<std::vector<EventId>> inst_events_;           // by code - alphabet
    std::vector<std::pair<std::size_t, std::size_t>> index_;  // (entry, instantiation)
    const CodeTable* ct_ = nullptr;
};

// Walks the database position by position, emitting pattern codes in order of
// appearance and, for every position while contexts are open, one meta record
// per open context in list order. Throws on an invalid cover.
CodeStreams encode_cover(const SequenceDatabase& db, const CodeTable& ct, const Cover& cover,
                         const std::vector<Pattern>& patterns);

// Reconstructs the event sequences from the streams. Throws "truncated
// stream" when a stream ends mid-context.
std::vector<Sequence> decode_streams(const CodeTable& ct, const CodeStreams& streams,
                                     std::span<const std::uint32_t> sequence_lengths,
                                     std::size_t alphabet_size);

// Line-oriented debug dump: `P <id>` per pattern code, `M <id> G|F` per meta
// record.
void dump_streams(const CodeStreams& streams, std::ostream& out);

}  // namespace squish

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace squish {

using EventId = std::uint32_t;

struct Sequence {
    std::vector<EventId> events;

    std::size_t size() const { return events.size(); }
    EventId operator[](std::size_t i) const { return events[i]; }
    bool operator==(const Sequence&) const = default;
};

enum class InputFormat {
    kTokenText,   // whitespace-separated tokens, one sequence per line
    kIntegerText, // base-10 event ids, must be dense 0..|alphabet|-1
};

// Immutable after construction; safe to share across concurrent readers.
class SequenceDatabase {
public:
    SequenceDatabase() = default;

    // Parses one sequence per line, tokens separated by spaces. Empty lines
    // are skipped; an input with no events at all is rejected.
    static SequenceDatabase load(std::istream& in, InputFormat format = InputFormat::kTokenText);
    static SequenceDatabase load_string(const std::string& text,
                                        InputFormat format = InputFormat::kTokenText);
    static SequenceDatabase load_file(const std::string& path,
                                      InputFormat format = InputFormat::kTokenText);

    // Builds a database from raw event sequences. `tokens[e]` names event e.
    static SequenceDatabase from_events(std::vector<Sequence> sequences,
                                        std::vector<std::string> tokens);

    // Token text: single spaces, LF line endings. Reloading the output yields
    // an identical database.
    void save(std::ostream& out) const;

    std::size_t size() const { return sequences_.size(); }            // |D|
    std::uint64_t total_events() const { return total_events_; }      // ||D||
    std::size_t alphabet_size() const { return tokens_.size(); }      // |Omega|

    const Sequence& sequence(std::size_t i) const { return sequences_[i]; }
    std::span<const Sequence> sequences() const { return sequences_; }

    const std::string& token(EventId e) const;
    // Returns the id for `token`, or -1 if unknown.
    std::int64_t event_id(const std::string& token) const;

    // Number of occurrences of e across all sequences.
    std::uint64_t support(EventId e) const;

private:
    std::vector<Sequence> sequences_;
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, EventId> ids_;
    std::vector<std::uint64_t> supports_;
    std::uint64_t total_events_ = 0;

    void finalize();
};

struct Position {
    std::uint32_t seq = 0;
    std::uint32_t offset = 0;
    bool operator==(const Position&) const = default;
    auto operator<=>(const Position&) const = default;
};

// Per-event sorted position lists, used by the window search. Immutable
// after construction.
class InvertedIndex {
public:
    explicit InvertedIndex(const SequenceDatabase& db);

    const std::vector<Position>& positions(EventId e) const;
    std::size_t event_count() const { return positions_.size(); }

private:
    std::vector<std::vector<Position>> positions_;
};

}  // namespace squish

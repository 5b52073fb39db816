#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include "squish/seqdb.hpp"

namespace squish {

// An ordered list of non-empty choice sets. A serial episode is the special
// case where every slot holds exactly one event.
struct Pattern {
    std::vector<std::vector<EventId>> slots;  // each sorted ascending, duplicate-free

    Pattern() = default;
    explicit Pattern(std::vector<std::vector<EventId>> s) : slots(std::move(s)) { normalize(); }

    static Pattern serial(std::initializer_list<EventId> events) {
        Pattern p;
        for (EventId e : events) p.slots.push_back({e});
        return p;
    }
    static Pattern serial(const std::vector<EventId>& events) {
        Pattern p;
        for (EventId e : events) p.slots.push_back({e});
        return p;
    }

    std::size_t slot_count() const { return slots.size(); }  // |X|
    std::size_t event_count() const {                        // ||X||
        std::size_t n = 0;
        for (const auto& s : slots) n += s.size();
        return n;
    }
    bool is_serial() const { return event_count() == slot_count(); }

    bool slot_matches(std::size_t i, EventId e) const {
        return std::binary_search(slots[i].begin(), slots[i].end(), e);
    }

    void normalize() {
        for (auto& s : slots) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
    }

    // Slot-wise lexicographic comparison on sorted event ids.
    bool operator==(const Pattern&) const = default;
    auto operator<=>(const Pattern&) const = default;
};

struct PatternHash {
    std::size_t operator()(const Pattern& p) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& slot : p.slots) {
            h ^= 0xff51afd7ed558ccdull + (h << 6) + (h >> 2);
            for (EventId e : slot) h ^= std::hash<EventId>{}(e) + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Greedy subsequence test: does s[lo..hi] (inclusive) contain the pattern?
bool window_contains(const Sequence& s, std::size_t lo, std::size_t hi, const Pattern& x);

// A window is minimal if no proper sub-window also contains the pattern.
bool is_minimal_window(const Sequence& s, std::size_t lo, std::size_t hi, const Pattern& x);

// Renders e.g. "a [b|c] d" using the database alphabet.
std::string pattern_to_string(const Pattern& p, const SequenceDatabase& db);

// Every concrete serial realization (cartesian product over slots).
std::vector<std::vector<EventId>> expand_instantiations(const Pattern& p);

}  // namespace squish

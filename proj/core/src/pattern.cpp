#include "squish/pattern.hpp"

#include <sstream>

namespace squish {

bool window_contains(const Sequence& s, std::size_t lo, std::size_t hi, const Pattern& x) {
    if (hi >= s.size() || lo > hi) return false;
    std::size_t slot = 0;
    for (std::size_t j = lo; j <= hi && slot < x.slot_count(); ++j) {
        if (x.slot_matches(slot, s[j])) ++slot;
    }
    return slot == x.slot_count();
}

bool is_minimal_window(const Sequence& s, std::size_t lo, std::size_t hi, const Pattern& x) {
    if (!window_contains(s, lo, hi, x)) return false;
    if (lo + 1 <= hi && window_contains(s, lo + 1, hi, x)) return false;
    if (hi >= 1 && lo <= hi - 1 && window_contains(s, lo, hi - 1, x)) return false;
    return true;
}

std::string pattern_to_string(const Pattern& p, const SequenceDatabase& db) {
    std::ostringstream out;
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
        if (i) out << ' ';
        if (p.slots[i].size() == 1) {
            out << db.token(p.slots[i][0]);
        } else {
            out << '[';
            for (std::size_t j = 0; j < p.slots[i].size(); ++j) {
                if (j) out << '|';
                out << db.token(p.slots[i][j]);
            }
            out << ']';
        }
    }
    return out.str();
}

std::vector<std::vector<EventId>> expand_instantiations(const Pattern& p) {
    std::vector<std::vector<EventId>> out{{}};
    for (const auto& slot : p.slots) {
        std::vector<std::vector<EventId>> next;
        next.reserve(out.size() * slot.size());
        for (const auto& prefix : out) {
            for (EventId e : slot) {
                auto ext = prefix;
                ext.push_back(e);
                next.push_back(std::move(ext));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace squish

#include "squish/streams.hpp"

#include <algorithm>
#include <list>
#include <ostream>
#include <stdexcept>

namespace squish {

CodeIdMap::CodeIdMap(const CodeTable& ct, std::size_t alphabet_size)
    : alphabet_(alphabet_size), ct_(&ct) {
    for (std::size_t e = 0; e < ct.entries.size(); ++e) {
        for (std::size_t i = 0; i < ct.entries[e].instantiations.size(); ++i) {
            inst_events_.push_back(ct.entries[e].instantiations[i].events);
            index_.emplace_back(e, i);
        }
    }
}

std::uint32_t CodeIdMap::instantiation_code(std::size_t entry,
                                            const std::vector<EventId>& chosen) const {
    for (std::size_t k = 0; k < index_.size(); ++k) {
        if (index_[k].first == entry && inst_events_[k] == chosen) {
            return static_cast<std::uint32_t>(alphabet_ + k);
        }
    }
    throw std::invalid_argument("window instantiation not present in code table");
}

const std::vector<EventId>& CodeIdMap::events(std::uint32_t code) const {
    if (code < alphabet_ || code - alphabet_ >= inst_events_.size()) {
        throw std::out_of_range("unknown pattern code");
    }
    return inst_events_[code - alphabet_];
}

std::pair<std::size_t, std::size_t> CodeIdMap::owner(std::uint32_t code) const {
    if (code < alphabet_ || code - alphabet_ >= index_.size()) {
        throw std::out_of_range("unknown pattern code");
    }
    return index_[code - alphabet_];
}

CodeStreams encode_cover(const SequenceDatabase& db, const CodeTable& ct, const Cover& cover,
                         const std::vector<Pattern>& patterns) {
    validate_cover(patterns, cover, db);
    CodeIdMap ids(ct, db.alphabet_size());
    CodeStreams out;

    struct Context {
        std::uint32_t code = 0;
        const Window* window = nullptr;
        std::size_t next = 1;  // next slot to fill
    };

    for (std::size_t seq = 0; seq < db.size(); ++seq) {
        const Sequence& s = db.sequence(seq);
        // window starting at each offset, if any
        std::vector<const Window*> starts(s.size(), nullptr);
        if (seq < cover.per_seq.size()) {
            for (const Window& w : cover.per_seq[seq]) starts[w.start()] = &w;
        }

        std::list<Context> open;
        for (std::size_t pos = 0; pos < s.size(); ++pos) {
            bool filled = false;
            for (auto it = open.begin(); it != open.end();) {
                Context& c = *it;
                if (c.window->matched[c.next] == pos) {
                    out.meta_stream.push_back(CodeStreams::Meta{c.code, true});
                    filled = true;
                    ++c.next;
                    if (c.next == c.window->matched.size()) {
                        it = open.erase(it);
                        continue;
                    }
                } else {
                    out.meta_stream.push_back(CodeStreams::Meta{c.code, false});
                }
                ++it;
            }
            if (!filled) {
                if (const Window* w = starts[pos]) {
                    const std::uint32_t code = ids.instantiation_code(w->pattern_id, w->chosen);
                    out.pattern_stream.push_back(code);
                    if (w->matched.size() > 1) open.push_back(Context{code, w, 1});
                } else {
                    out.pattern_stream.push_back(s[pos]);
                }
            }
        }
        if (!open.empty()) throw std::invalid_argument("window extends past sequence end");
    }
    return out;
}

std::vector<Sequence> decode_streams(const CodeTable& ct, const CodeStreams& streams,
                                     std::span<const std::uint32_t> sequence_lengths,
                                     std::size_t alphabet_size) {
    CodeIdMap ids(ct, alphabet_size);
    std::vector<Sequence> out;
    out.reserve(sequence_lengths.size());

    std::size_t ip = 0;
    std::size_t im = 0;

    struct Context {
        std::uint32_t code = 0;
        std::size_t next = 1;
    };

    for (std::uint32_t len : sequence_lengths) {
        Sequence s;
        s.events.reserve(len);
        std::list<Context> open;

        auto read_pattern_code = [&]() {
            if (ip >= streams.pattern_stream.size()) {
                throw std::runtime_error("truncated stream: pattern stream exhausted");
            }
            const std::uint32_t code = streams.pattern_stream[ip++];
            if (ids.is_singleton(code)) {
                s.events.push_back(code);
            } else {
                const auto& events = ids.events(code);
                s.events.push_back(events[0]);
                if (events.size() > 1) open.push_back(Context{code, 1});
            }
        };

        while (s.events.size() < len) {
            if (open.empty()) {
                read_pattern_code();
                continue;
            }
            // one meta record per open context, in list order
            auto fill_it = open.end();
            for (auto it = open.begin(); it != open.end(); ++it) {
                if (im >= streams.meta_stream.size()) {
                    throw std::runtime_error("truncated stream: meta stream exhausted");
                }
                const auto& rec = streams.meta_stream[im++];
                if (rec.code != it->code) {
                    throw std::runtime_error("corrupt stream: meta record for wrong context");
                }
                if (rec.fill) {
                    if (fill_it != open.end()) {
                        throw std::runtime_error("corrupt stream: two fills in one round");
                    }
                    fill_it = it;
                }
            }
            if (fill_it != open.end()) {
                const auto& events = ids.events(fill_it->code);
                s.events.push_back(events[fill_it->next]);
                ++fill_it->next;
                if (fill_it->next == events.size()) open.erase(fill_it);
            } else {
                read_pattern_code();
            }
        }
        if (!open.empty()) throw std::runtime_error("truncated stream: open context at sequence end");
        out.push_back(std::move(s));
    }
    return out;
}

void dump_streams(const CodeStreams& streams, std::ostream& out) {
    for (std::uint32_t code : streams.pattern_stream) out << "P " << code << '\n';
    for (const auto& m : streams.meta_stream) {
        out << "M " << m.code << ' ' << (m.fill ? 'F' : 'G') << '\n';
    }
}

}  // namespace squish

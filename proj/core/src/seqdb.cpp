#include "squish/seqdb.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace squish {

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
    std::ostringstream msg;
    msg << "parse error at line " << line << ", column " << column << ": " << what;
    throw std::runtime_error(msg.str());
}

}  // namespace

SequenceDatabase SequenceDatabase::load(std::istream& in, InputFormat format) {
    SequenceDatabase db;
    std::string line;
    std::size_t line_no = 0;
    EventId max_id = 0;
    bool saw_id = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        Sequence seq;
        std::size_t pos = 0;
        while (pos < line.size()) {
            if (line[pos] == ' ') {
                ++pos;
                continue;
            }
            std::size_t end = line.find(' ', pos);
            if (end == std::string::npos) end = line.size();
            const std::size_t column = pos + 1;
            std::string tok = line.substr(pos, end - pos);
            pos = end;

            if (format == InputFormat::kTokenText) {
                auto it = db.ids_.find(tok);
                EventId id;
                if (it == db.ids_.end()) {
                    id = static_cast<EventId>(db.tokens_.size());
                    db.ids_.emplace(tok, id);
                    db.tokens_.push_back(tok);
                } else {
                    id = it->second;
                }
                seq.events.push_back(id);
            } else {
                std::uint32_t value = 0;
                auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
                if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                    parse_fail(line_no, column, "invalid integer '" + tok + "'");
                }
                seq.events.push_back(value);
                max_id = std::max(max_id, value);
                saw_id = true;
            }
        }
        if (!seq.events.empty()) db.sequences_.push_back(std::move(seq));
    }

    if (db.sequences_.empty()) throw std::runtime_error("empty database");

    if (format == InputFormat::kIntegerText) {
        std::vector<bool> seen(static_cast<std::size_t>(max_id) + 1, false);
        std::size_t distinct = 0;
        for (const auto& s : db.sequences_) {
            for (EventId e : s.events) {
                if (!seen[e]) {
                    seen[e] = true;
                    ++distinct;
                }
            }
        }
        if (saw_id && distinct != static_cast<std::size_t>(max_id) + 1) {
            std::ostringstream msg;
            msg << "integer ids not dense: max id " << max_id << " but only " << distinct
                << " distinct ids present";
            throw std::runtime_error(msg.str());
        }
        db.tokens_.resize(static_cast<std::size_t>(max_id) + 1);
        for (EventId e = 0; e <= max_id; ++e) {
            db.tokens_[e] = std::to_string(e);
            db.ids_.emplace(db.tokens_[e], e);
        }
    }

    db.finalize();
    return db;
}

SequenceDatabase SequenceDatabase::load_string(const std::string& text, InputFormat format) {
    std::istringstream in(text);
    return load(in, format);
}

SequenceDatabase SequenceDatabase::load_file(const std::string& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return load(in, format);
}

SequenceDatabase SequenceDatabase::from_events(std::vector<Sequence> sequences,
                                               std::vector<std::string> tokens) {
    SequenceDatabase db;
    db.sequences_ = std::move(sequences);
    db.tokens_ = std::move(tokens);
    std::erase_if(db.sequences_, [](const Sequence& s) { return s.events.empty(); });
    for (EventId e = 0; e < db.tokens_.size(); ++e) db.ids_.emplace(db.tokens_[e], e);
    for (const auto& s : db.sequences_) {
        for (EventId e : s.events) {
            if (e >= db.tokens_.size()) throw std::out_of_range("event id outside alphabet");
        }
    }
    db.finalize();
    return db;
}

void SequenceDatabase::finalize() {
    total_events_ = 0;
    supports_.assign(tokens_.size(), 0);
    for (const auto& s : sequences_) {
        total_events_ += s.events.size();
        for (EventId e : s.events) ++supports_[e];
    }
}

void SequenceDatabase::save(std::ostream& out) const {
    for (const auto& s : sequences_) {
        for (std::size_t i = 0; i < s.events.size(); ++i) {
            if (i) out << ' ';
            out << tokens_[s.events[i]];
        }
        out << '\n';
    }
}

const std::string& SequenceDatabase::token(EventId e) const {
    if (e >= tokens_.size()) throw std::out_of_range("unknown event id");
    return tokens_[e];
}

std::int64_t SequenceDatabase::event_id(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::uint64_t SequenceDatabase::support(EventId e) const {
    if (e >= supports_.size()) throw std::out_of_range("unknown event id");
    return supports_[e];
}

InvertedIndex::InvertedIndex(const SequenceDatabase& db) {
    positions_.resize(db.alphabet_size());
    for (std::uint32_t i = 0; i < db.size(); ++i) {
        const Sequence& s = db.sequence(i);
        for (std::uint32_t j = 0; j < s.events.size(); ++j) {
            positions_[s.events[j]].push_back(Position{i, j});
        }
    }
}

const std::vector<Position>& InvertedIndex::positions(EventId e) const {
    if (e >= positions_.size()) throw std::out_of_range("unknown event id");
    return positions_[e];
}

}  // namespace squish

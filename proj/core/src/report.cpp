#include "squish/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace squish {

std::optional<ReportFormat> parse_report_format(const std::string& name) {
    if (name == "text") return ReportFormat::kText;
    if (name == "json") return ReportFormat::kJson;
    if (name == "tsv") return ReportFormat::kTsv;
    return std::nullopt;
}

MiningReport make_report(const SequenceDatabase& db, const MiningResult& result,
                         const std::string& mode, std::uint64_t seed, double elapsed_seconds) {
    MiningReport r;
    r.mode = mode;
    r.seed = seed;
    r.baseline_bits = result.baseline_bits;
    r.total_bits = result.total_bits;
    r.delta_l = result.baseline_bits - result.total_bits;
    r.elapsed_seconds = elapsed_seconds;
    r.curve = result.curve;

    const double total_usage = static_cast<double>(result.table.total_usage());
    for (std::size_t i = 0; i < result.table.entries.size(); ++i) {
        const auto& entry = result.table.entries[i];
        const std::uint64_t usage = entry.usage();
        if (usage == 0) continue;
        PatternReportLine line;
        line.text = pattern_to_string(entry.pattern, db);
        line.usage = usage;
        line.gaps = entry.gaps();
        line.fills = entry.fills();
        line.code_bits = std::log2(total_usage / static_cast<double>(usage));
        r.patterns.push_back(std::move(line));
    }
    r.pattern_count = r.patterns.size();
    return r;
}

std::string render_text(const MiningReport& r) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << "# patterns\n";
    for (const auto& p : r.patterns) {
        out << p.text << '\t' << "usage=" << p.usage << " gaps=" << p.gaps << " fills=" << p.fills
            << " code=" << p.code_bits << '\n';
    }
    out << "# stats\n";
    out << "mode\t" << r.mode << '\n';
    out << "seed\t" << r.seed << '\n';
    out << "patterns\t" << r.pattern_count << '\n';
    out << "baseline_bits\t" << r.baseline_bits << '\n';
    out << "total_bits\t" << r.total_bits << '\n';
    out << "delta_l\t" << r.delta_l << '\n';
    if (r.recall) out << "recall\t" << *r.recall << '\n';
    out << "elapsed_seconds\t" << r.elapsed_seconds << '\n';
    out << "# curve\n";
    for (const auto& c : r.curve) out << c.elapsed_seconds << '\t' << c.total_bits << '\n';
    return out.str();
}

std::string render_json(const MiningReport& r) {
    nlohmann::json j;
    j["mode"] = r.mode;
    j["seed"] = r.seed;
    j["patterns"] = nlohmann::json::array();
    for (const auto& p : r.patterns) {
        j["patterns"].push_back({{"pattern", p.text},
                                 {"usage", p.usage},
                                 {"gaps", p.gaps},
                                 {"fills", p.fills},
                                 {"code_bits", p.code_bits}});
    }
    j["stats"] = {{"pattern_count", r.pattern_count}, {"baseline_bits", r.baseline_bits},
                  {"total_bits", r.total_bits},       {"delta_l", r.delta_l},
                  {"elapsed_seconds", r.elapsed_seconds}};
    if (r.recall) j["stats"]["recall"] = *r.recall;
    j["curve"] = nlohmann::json::array();
    for (const auto& c : r.curve) j["curve"].push_back({c.elapsed_seconds, c.total_bits});
    return j.dump(2) + "\n";
}

std::string render_tsv(const MiningReport& r) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    for (const auto& p : r.patterns) {
        out << "pattern\t" << p.text << '\t' << p.usage << '\t' << p.gaps << '\t' << p.fills << '\t'
            << p.code_bits << '\n';
    }
    out << "stat\tmode\t" << r.mode << '\n';
    out << "stat\tseed\t" << r.seed << '\n';
    out << "stat\tpatterns\t" << r.pattern_count << '\n';
    out << "stat\tbaseline_bits\t" << r.baseline_bits << '\n';
    out << "stat\ttotal_bits\t" << r.total_bits << '\n';
    out << "stat\tdelta_l\t" << r.delta_l << '\n';
    if (r.recall) out << "stat\trecall\t" << *r.recall << '\n';
    out << "stat\telapsed_seconds\t" << r.elapsed_seconds << '\n';
    for (const auto& c : r.curve) {
        out << "curve\t" << c.elapsed_seconds << '\t' << c.total_bits << '\n';
    }
    return out.str();
}

std::string render(const MiningReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::kText: return render_text(r);
        case ReportFormat::kJson: return render_json(r);
        case ReportFormat::kTsv: return render_tsv(r);
    }
    return {};
}

std::vector<std::vector<std::vector<std::string>>> parse_pattern_file(const std::string& text) {
    std::vector<std::vector<std::vector<std::string>>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (const auto tab = line.find('\t'); tab != std::string::npos) line.resize(tab);
        if (line.empty() || line[0] == '#') continue;

        std::vector<std::vector<std::string>> slots;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            std::vector<std::string> slot;
            if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') {
                std::string inner = tok.substr(1, tok.size() - 2);
                std::size_t pos = 0;
                while (pos <= inner.size()) {
                    std::size_t bar = inner.find('|', pos);
                    if (bar == std::string::npos) bar = inner.size();
                    if (bar > pos) slot.push_back(inner.substr(pos, bar - pos));
                    pos = bar + 1;
                }
            } else {
                slot.push_back(tok);
            }
            if (!slot.empty()) slots.push_back(std::move(slot));
        }
        if (!slots.empty()) out.push_back(std::move(slots));
    }
    return out;
}

}  // namespace squish

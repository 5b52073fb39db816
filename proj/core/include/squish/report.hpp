#pragma once

#include <optional>
#include <string>
#include <vector>

#include "squish/search.hpp"

namespace squish {

enum class ReportFormat { kText, kJson, kTsv };

std::optional<ReportFormat> parse_report_format(const std::string& name);

struct PatternReportLine {
    std::string text;
    std::uint64_t usage = 0;
    std::uint64_t gaps = 0;
    std::uint64_t fills = 0;
    double code_bits = 0.0;  // Shannon length of the pattern's aggregate usage
};

struct MiningReport {
    std::string mode;
    std::uint64_t seed = 0;
    std::size_t pattern_count = 0;
    double baseline_bits = 0.0;  // L(D, ST)
    double total_bits = 0.0;     // L(CT, D)
    double delta_l = 0.0;
    double elapsed_seconds = 0.0;
    std::optional<double> recall;
    std::vector<PatternReportLine> patterns;
    std::vector<CurvePoint> curve;
};

MiningReport make_report(const SequenceDatabase& db, const MiningResult& result,
                         const std::string& mode, std::uint64_t seed, double elapsed_seconds);

std::string render_text(const MiningReport& report);
std::string render_json(const MiningReport& report);
std::string render_tsv(const MiningReport& report);
std::string render(const MiningReport& report, ReportFormat format);

// Pattern list files: one pattern per line, slots space-separated, choice
// slots as [a|b]; anything after a tab is ignored. Returns token slots.
std::vector<std::vector<std::vector<std::string>>> parse_pattern_file(const std::string& text);

}  // namespace squish

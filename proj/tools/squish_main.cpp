#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>

#include "squish/code_table.hpp"
#include "squish/generate.hpp"
#include "squish/metrics.hpp"
#include "squish/report.hpp"
#include "squish/search.hpp"
#include "squish/seqdb.hpp"

namespace {

using namespace squish;

InputFormat parse_input_format(const std::string& name) {
    if (name == "token") return InputFormat::kTokenText;
    if (name == "integer") return InputFormat::kIntegerText;
    throw CLI::ValidationError("--input-format", "expected 'token' or 'integer'");
}

int env_threads() {
    const char* v = std::getenv("SQUISH_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    return std::max(0, std::atoi(v));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

// Expands token patterns into serial id strings over a shared local alphabet.
std::vector<std::vector<EventId>> expand_token_patterns(
    const std::vector<std::vector<std::vector<std::string>>>& pats,
    std::unordered_map<std::string, EventId>& ids) {
    std::vector<std::vector<EventId>> out;
    for (const auto& slots : pats) {
        Pattern p;
        for (const auto& slot : slots) {
            std::vector<EventId> s;
            for (const auto& tok : slot) {
                auto [it, _] = ids.emplace(tok, static_cast<EventId>(ids.size()));
                s.push_back(it->second);
            }
            p.slots.push_back(std::move(s));
        }
        p.normalize();
        for (auto& inst : expand_instantiations(p)) out.push_back(std::move(inst));
    }
    return out;
}

Pattern tokens_to_pattern(const std::vector<std::vector<std::string>>& slots,
                          const SequenceDatabase& db, std::size_t line_no) {
    Pattern p;
    for (const auto& slot : slots) {
        std::vector<EventId> s;
        for (const auto& tok : slot) {
            const std::int64_t id = db.event_id(tok);
            if (id < 0) {
                std::ostringstream msg;
                msg << "pattern file line " << line_no << ": token '" << tok
                    << "' not present in database";
                throw std::runtime_error(msg.str());
            }
            s.push_back(static_cast<EventId>(id));
        }
        p.slots.push_back(std::move(s));
    }
    p.normalize();
    return p;
}

int cmd_mine(const std::string& input, const std::string& input_format, const std::string& mode,
             double budget_seconds, std::uint64_t seed, const std::string& format,
             const std::string& targets_path, const std::string& out_prefix, int max_slots) {
    const auto t0 = std::chrono::steady_clock::now();
    SequenceDatabase db = SequenceDatabase::load_file(input, parse_input_format(input_format));

    SearchConfig config;
    const auto parsed_mode = parse_mining_mode(mode);
    if (!parsed_mode) throw std::runtime_error("unknown mode: " + mode);
    config.mode = *parsed_mode;
    config.budget_seconds = budget_seconds;
    config.max_pattern_slots = max_slots;
    config.threads = env_threads();

    MiningResult result = squish_mine(db, config);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MiningReport report = make_report(db, result, mode, seed, elapsed);

    if (!targets_path.empty()) {
        auto target_tokens = parse_pattern_file(read_file(targets_path));
        std::vector<std::vector<EventId>> targets;
        for (std::size_t i = 0; i < target_tokens.size(); ++i) {
            for (auto& inst : expand_instantiations(tokens_to_pattern(target_tokens[i], db, i + 1))) {
                targets.push_back(std::move(inst));
            }
        }
        report.recall = pattern_recall(realized_instantiations(result), targets);
    }

    const auto fmt = parse_report_format(format);
    if (!fmt) throw std::runtime_error("unknown report format: " + format);
    const std::string rendered = render(report, *fmt);

    if (out_prefix.empty()) {
        std::cout << rendered;
    } else {
        const char* ext = *fmt == ReportFormat::kJson  ? "json"
                          : *fmt == ReportFormat::kTsv ? "tsv"
                                                       : "txt";
        write_file(out_prefix + ".report." + ext, rendered);

        std::ostringstream plist;
        plist.precision(6);
        plist << std::fixed;
        for (const auto& p : report.patterns) {
            plist << p.text << '\t' << p.usage << '\t' << p.gaps << '\t' << p.fills << '\t'
                  << p.code_bits << '\n';
        }
        write_file(out_prefix + ".patterns", plist.str());

        std::ostringstream curve;
        curve.precision(6);
        curve << std::fixed;
        for (const auto& c : report.curve) {
            curve << c.elapsed_seconds << '\t' << c.total_bits << '\n';
        }
        write_file(out_prefix + ".curve.tsv", curve.str());
        std::cout << "patterns " << report.pattern_count << ", delta_l " << std::fixed
                  << std::setprecision(2) << report.delta_l << " bits, wrote " << out_prefix
                  << ".{report." << ext << ",patterns,curve.tsv}\n";
    }
    return 0;
}

int cmd_gen(const std::string& kind, const std::string& out_prefix, GeneratorSpec spec) {
    if (kind == "indep") {
        spec.kind = GeneratorSpec::Kind::kIndep;
    } else if (kind == "plant") {
        spec.kind = GeneratorSpec::Kind::kPlant;
    } else if (kind == "parallel") {
        spec.kind = GeneratorSpec::Kind::kParallel;
    } else {
        throw std::runtime_error("unknown generator kind: " + kind);
    }
    GeneratedData data = generate(spec);

    std::ofstream dbout(out_prefix + ".db");
    if (!dbout) throw std::runtime_error("cannot write " + out_prefix + ".db");
    data.db.save(dbout);

    std::ofstream tout(out_prefix + ".targets");
    if (!tout) throw std::runtime_error("cannot write " + out_prefix + ".targets");
    save_targets(data.targets, data.db, tout);

    std::cout << "wrote " << out_prefix << ".db (" << data.db.size() << " sequences, "
              << data.db.total_events() << " events, alphabet " << data.db.alphabet_size()
              << ") and " << out_prefix << ".targets (" << data.targets.size() << " patterns)\n";
    return 0;
}

int cmd_eval(const std::string& mined_path, const std::string& targets_path,
             const std::string& db_path, const std::string& input_format,
             const std::string& mode) {
    auto mined_tokens = parse_pattern_file(read_file(mined_path));
    auto target_tokens = parse_pattern_file(read_file(targets_path));

    std::unordered_map<std::string, EventId> ids;
    const auto mined = expand_token_patterns(mined_tokens, ids);
    const auto targets = expand_token_patterns(target_tokens, ids);
    const double recall = pattern_recall(mined, targets);
    std::cout << "recall " << std::fixed << std::setprecision(3) << recall << '\n';

    if (!db_path.empty()) {
        SequenceDatabase db = SequenceDatabase::load_file(db_path, parse_input_format(input_format));
        SearchConfig config;
        const auto parsed_mode = parse_mining_mode(mode);
        if (!parsed_mode) throw std::runtime_error("unknown mode: " + mode);
        config.mode = *parsed_mode;
        Miner miner(db, config);
        std::vector<Pattern> patterns;
        for (std::size_t i = 0; i < mined_tokens.size(); ++i) {
            patterns.push_back(tokens_to_pattern(mined_tokens[i], db, i + 1));
        }
        miner.set_patterns(patterns);
        std::cout << "delta_l " << std::fixed << std::setprecision(3)
                  << miner.baseline_bits() - miner.total_bits() << '\n';
    }
    return 0;
}

int cmd_stats(const std::string& input, const std::string& input_format) {
    SequenceDatabase db = SequenceDatabase::load_file(input, parse_input_format(input_format));
    std::cout << "alphabet\t" << db.alphabet_size() << '\n';
    std::cout << "sequences\t" << db.size() << '\n';
    std::cout << "events\t" << db.total_events() << '\n';
    std::cout << "standard_table_bits\t" << std::fixed << std::setprecision(2)
              << standard_table_length(db) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"squish: MDL pattern-set mining for event sequences"};
    app.require_subcommand(1);

    std::string input;
    std::string input_format = "token";
    std::string mode = "choicisode";
    std::string format = "text";
    std::string targets_path;
    std::string out_prefix;
    std::string mined_path;
    std::string db_path;
    double budget_seconds = 0.0;
    std::uint64_t seed = 0;
    int max_slots = 0;
    GeneratorSpec spec;
    std::string gen_kind;

    auto* mine = app.add_subcommand("mine", "Mine a pattern set from a sequence database");
    mine->add_option("input", input, "input database file")->required();
    mine->add_option("--input-format", input_format, "token|integer");
    mine->add_option("--mode", mode, "disjoint|interleave|choicisode");
    mine->add_option("--budget-seconds", budget_seconds, "wall-clock budget, 0 = unlimited");
    mine->add_option("--seed", seed, "seed recorded in the report");
    mine->add_option("--format", format, "text|json|tsv");
    mine->add_option("--targets", targets_path, "targets file for recall scoring");
    mine->add_option("--out", out_prefix, "output file prefix");
    mine->add_option("--max-slots", max_slots, "cap on pattern slot count, 0 = unlimited");

    auto* gen = app.add_subcommand("gen", "Generate a synthetic database");
    gen->add_option("kind", gen_kind, "indep|plant|parallel")->required();
    gen->add_option("--out", out_prefix, "output file prefix")->required();
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--alphabet", spec.alphabet, "alphabet size (indep, plant)");
    gen->add_option("--events", spec.total_events, "total events (indep, plant)");
    gen->add_option("--patterns", spec.pattern_count, "planted pattern count");
    gen->add_option("--pattern-length", spec.pattern_length, "planted pattern length");
    gen->add_option("--occurrences", spec.occurrences, "embeddings per pattern");
    gen->add_option("--gap-prob", spec.gap_probability, "per-gap background probability");
    gen->add_option("--processes", spec.processes, "parallel process count");
    gen->add_option("--sequences", spec.sequence_count, "parallel sequence count");
    gen->add_option("--seq-length", spec.sequence_length, "parallel sequence length");

    auto* eval = app.add_subcommand("eval", "Score a mined pattern set against targets");
    eval->add_option("--mined", mined_path, "mined pattern file")->required();
    eval->add_option("--targets", targets_path, "target pattern file")->required();
    eval->add_option("--db", db_path, "database for compression-gain scoring");
    eval->add_option("--input-format", input_format, "token|integer");
    eval->add_option("--mode", mode, "cover mode for scoring");

    auto* stats = app.add_subcommand("stats", "Print database statistics and the baseline score");
    stats->add_option("input", input, "input database file")->required();
    stats->add_option("--input-format", input_format, "token|integer");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mine->parsed()) {
            return cmd_mine(input, input_format, mode, budget_seconds, seed, format, targets_path,
                            out_prefix, max_slots);
        }
        if (gen->parsed()) return cmd_gen(gen_kind, out_prefix, spec);
        if (eval->parsed()) return cmd_eval(mined_path, targets_path, db_path, input_format, mode);
        if (stats->parsed()) return cmd_stats(input, input_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "squish/pattern.hpp"
#include "squish/seqdb.hpp"

namespace squish {

// Seeded generator with platform-independent draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, n), rejection-sampled
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

struct GeneratorSpec {
    enum class Kind { kIndep, kPlant, kParallel };

    Kind kind = Kind::kIndep;
    std::uint64_t seed = 0;

    // indep / plant
    std::size_t alphabet = 1000;
    std::uint64_t total_events = 10000;

    // plant
    std::size_t pattern_count = 10;
    std::size_t pattern_length = 5;
    std::size_t occurrences = 10;
    double gap_probability = 0.1;

    // parallel
    std::size_t processes = 5;
    std::size_t sequence_count = 500;
    std::size_t sequence_length = 100;
};

struct GeneratedData {
    SequenceDatabase db;
    std::vector<Pattern> targets;
    // plant only: matched offsets of every embedding, in the single sequence
    std::vector<std::vector<std::uint32_t>> embeddings;
};

GeneratedData gen_indep(const GeneratorSpec& spec);
GeneratedData gen_plant(const GeneratorSpec& spec);
GeneratedData gen_parallel(const GeneratorSpec& spec);
GeneratedData generate(const GeneratorSpec& spec);

// One pattern per line in token text, choice slots as [a|b].
void save_targets(const std::vector<Pattern>& targets, const SequenceDatabase& db,
                  std::ostream& out);

}  // namespace squish

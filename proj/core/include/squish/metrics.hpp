#pragma once

#include <vector>

#include "squish/pattern.hpp"
#include "squish/search.hpp"

namespace squish {

// Gapless greedy cover of the target pattern strings by the mined ones,
// longest-first. Returns covered(T) / max(||T||, ||P||); both sets are given
// as serial event strings (choicisodes expanded beforehand).
double pattern_recall(const std::vector<std::vector<EventId>>& mined,
                      const std::vector<std::vector<EventId>>& targets);

// Realized instantiations (usage > 0) of every pattern in the result.
std::vector<std::vector<EventId>> realized_instantiations(const MiningResult& result);

// Compression gain L(D, ST) - L(D, CT).
double delta_l(const MiningResult& result);

}  // namespace squish

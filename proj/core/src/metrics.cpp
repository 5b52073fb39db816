#include "squish/metrics.hpp"

#include <algorithm>

namespace squish {

double pattern_recall(const std::vector<std::vector<EventId>>& mined,
                      const std::vector<std::vector<EventId>>& targets) {
    std::uint64_t target_mass = 0;
    for (const auto& t : targets) target_mass += t.size();
    std::uint64_t mined_mass = 0;
    for (const auto& p : mined) mined_mass += p.size();
    if (target_mass == 0 || mined_mass == 0) return 0.0;

    std::vector<std::vector<EventId>> order = mined;
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });

    std::uint64_t covered = 0;
    for (const auto& t : targets) {
        std::vector<char> taken(t.size(), 0);
        for (const auto& p : order) {
            if (p.empty() || p.size() > t.size()) continue;
            for (std::size_t i = 0; i + p.size() <= t.size(); ++i) {
                bool ok = true;
                for (std::size_t k = 0; k < p.size() && ok; ++k) {
                    ok = !taken[i + k] && t[i + k] == p[k];
                }
                if (ok) {
                    for (std::size_t k = 0; k < p.size(); ++k) taken[i + k] = 1;
                    i += p.size() - 1;
                }
            }
        }
        for (char c : taken) covered += c ? 1 : 0;
    }
    return static_cast<double>(covered) / static_cast<double>(std::max(target_mass, mined_mass));
}

std::vector<std::vector<EventId>> realized_instantiations(const MiningResult& result) {
    std::vector<std::vector<EventId>> out;
    for (const auto& entry : result.table.entries) {
        for (const auto& inst : entry.instantiations) {
            if (inst.usage > 0) out.push_back(inst.events);
        }
    }
    return out;
}

double delta_l(const MiningResult& result) {
    return result.baseline_bits - result.total_bits;
}

}  // namespace squish

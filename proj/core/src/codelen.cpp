#include "squish/codelen.hpp"

#include <cmath>
#include <stdexcept>

namespace squish::codelen {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double universal_int(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("universal_int requires n >= 1");
    double bits = std::log2(kUniversalC0);
    double x = std::log2(static_cast<double>(n));
    while (x > 0.0) {
        bits += x;
        x = std::log2(x);
    }
    return bits;
}

double log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("log2_binomial requires k <= n");
    if (k == 0 || k == n) return 0.0;
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    return (std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0)) / kLn2;
}

double log2_compositions(std::uint64_t total, std::uint64_t bins) {
    if (bins == 0) return 0.0;
    return log2_binomial(total + bins - 1, bins - 1);
}

double prequential(std::uint64_t fills, std::uint64_t gaps) {
    const double f = static_cast<double>(fills);
    const double g = static_cast<double>(gaps);
    static const double lg15 = std::lgamma(1.5);
    return (std::lgamma(f + g + 2.0) - std::lgamma(f + 1.5) - std::lgamma(g + 1.5) + 2.0 * lg15) /
           kLn2;
}

}  // namespace squish::codelen

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "squish/codelen.hpp"

using namespace squish;

TEST_CASE("universal integer code") {
    CHECK(codelen::universal_int(1) == doctest::Approx(1.5185673663648482).epsilon(1e-12));
    CHECK(codelen::universal_int(2) == doctest::Approx(2.5185673663648482).epsilon(1e-12));
    CHECK_THROWS_AS(codelen::universal_int(0), std::invalid_argument);

    double prev = codelen::universal_int(1);
    for (std::uint64_t n = 2; n <= 1000000; ++n) {
        const double cur = codelen::universal_int(n);
        REQUIRE(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("log binomial") {
    CHECK(codelen::log2_binomial(17, 0) == 0.0);
    CHECK(codelen::log2_binomial(4, 2) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    CHECK_THROWS_AS(codelen::log2_binomial(3, 4), std::invalid_argument);

    // independent high-precision route: sum of log2((n-k+i)/i) in long double
    long double acc = 0.0L;
    for (int i = 1; i <= 1000; ++i) {
        acc += std::log2(static_cast<long double>(9000 + i) / i);
    }
    const double oracle = static_cast<double>(acc);
    CHECK(codelen::log2_binomial(10000, 1000) ==
          doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("compositions") {
    CHECK(codelen::log2_compositions(5, 0) == 0.0);
    CHECK(codelen::log2_compositions(7, 1) == 0.0);
    CHECK(codelen::log2_compositions(2, 2) == doctest::Approx(std::log2(3.0)));
}

namespace {
// direct evaluation of the prequential sums as printed
double prequential_direct(std::uint64_t fills, std::uint64_t gaps) {
    const double eps = 0.5;
    double bits = 0.0;
    for (std::uint64_t i = 1; i <= fills; ++i) {
        bits -= std::log2((eps + i) / (2 * eps + i));
    }
    for (std::uint64_t i = 1; i <= gaps; ++i) {
        bits -= std::log2((eps + i) / (2 * eps + fills + i));
    }
    return bits;
}
}  // namespace

TEST_CASE("prequential code length") {
    CHECK(codelen::prequential(0, 0) == doctest::Approx(0.0));
    CHECK(codelen::prequential(1, 0) == doctest::Approx(0.4150374992788438).epsilon(1e-12));
    CHECK(codelen::prequential(2, 1) == doctest::Approx(2.0931094043914813).epsilon(1e-12));

    for (std::uint64_t f = 0; f <= 40; ++f) {
        for (std::uint64_t g = 0; g <= 40; ++g) {
            REQUIRE(codelen::prequential(f, g) ==
                    doctest::Approx(prequential_direct(f, g)).epsilon(1e-9));
        }
    }
    // larger spot checks
    CHECK(codelen::prequential(5000, 1234) ==
          doctest::Approx(prequential_direct(5000, 1234)).epsilon(1e-9));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swdual/series.hpp"

#include <random>

using swdual::GaloisRingElement;
using swdual::TruncatedSeries;

namespace {

TruncatedSeries random_series(std::mt19937_64& rng, int n, int m) {
    TruncatedSeries f(n, m);
    for (int k = 0; k < m; ++k)
        f.coeff(k) = GaloisRingElement(static_cast<std::uint32_t>(rng()),
                                       static_cast<std::uint32_t>(rng()), n);
    return f;
}

}  // namespace

TEST_CASE("ring axioms hold on random truncated series") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 4, m = 8;
        auto f = random_series(rng, n, m);
        auto g = random_series(rng, n, m);
        auto h = random_series(rng, n, m);
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f + g) - g == f);
    }
}

TEST_CASE("unit test and inversion") {
    std::mt19937_64 rng(29);
    int n = 4, m = 16;
    auto one = TruncatedSeries::one(n, m);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_series(rng, n, m);
        if (!f.is_unit()) {
            CHECK_THROWS_AS(f.inverse(), std::domain_error);
            continue;
        }
        CHECK(f * f.inverse() == one);
        CHECK(f.inverse() * f == one);
    }
}

TEST_CASE("geometric series: 1/(1-j) = 1 + j + j^2 + ...") {
    int n = 4, m = 12;
    auto f = TruncatedSeries::one(n, m) - TruncatedSeries::power_of_j(1, n, m);
    auto inv = f.inverse();
    for (int k = 0; k < m; ++k) CHECK(inv.coeff(k) == GaloisRingElement::one(n));
}

TEST_CASE("shift, valuation and truncation interplay") {
    int n = 4, m = 8;
    auto f = TruncatedSeries::one(n, m);
    CHECK(f.valuation() == 0);
    auto jf = f.shifted(3);
    CHECK(jf.valuation() == 3);
    CHECK(jf == TruncatedSeries::power_of_j(3, n, m));
    CHECK(jf.shifted(-3) == f);
    CHECK(jf.shifted(m).is_zero());
    CHECK(TruncatedSeries(n, m).valuation() == m);
}

TEST_CASE("multiplication by j^k agrees with shift") {
    std::mt19937_64 rng(31);
    int n = 4, m = 10;
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_series(rng, n, m);
        for (int k = 0; k < 4; ++k)
            CHECK(f * TruncatedSeries::power_of_j(k, n, m) == f.shifted(k));
    }
}

TEST_CASE("reduced_mod_pow2 kills exactly the high bits") {
    int n = 4, m = 4;
    TruncatedSeries f(n, m);
    f.coeff(0) = GaloisRingElement(6, 12, n);
    f.coeff(2) = GaloisRingElement(1, 0, n);
    auto r = f.reduced_mod_pow2(2);
    CHECK(r.coeff(0) == GaloisRingElement(2, 0, n));
    CHECK(r.coeff(2) == GaloisRingElement(1, 0, n));
    CHECK(f.reduced_mod_pow2(1).coeff(0).is_zero());
    CHECK(f.reduced_mod_pow2(4) == f);
}

TEST_CASE("precision mismatch is rejected") {
    auto f = TruncatedSeries::one(4, 8);
    auto g = TruncatedSeries::one(4, 9);
    auto h = TruncatedSeries::one(5, 8);
    CHECK_THROWS_AS(f + g, std::invalid_argument);
    CHECK_THROWS_AS(f * h, std::invalid_argument);
}

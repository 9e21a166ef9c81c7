#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "sumfree/bounds.hpp"

using namespace sumfree;

namespace {

// inclusion-exclusion over subfamilies, independent of the 2^u enumeration
long double avoidance_by_inclusion_exclusion(const SetFamily& F, double p)
{
    const auto& ms = F.members();
    const std::size_t k = ms.size();
    long double total = 0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<char> in(static_cast<std::size_t>(F.universe_size()), 0);
        std::size_t size = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1)
                for (auto e : ms[i])
                    if (!in[static_cast<std::size_t>(e)]++) ++size;
        const long double term = std::pow(static_cast<long double>(p), static_cast<long double>(size));
        total += (__builtin_popcount(mask) % 2 ? -term : term);
    }
    return total;
}

SetFamily random_family(std::mt19937_64& rng, std::int64_t max_universe, int max_members)
{
    const auto u = std::uniform_int_distribution<std::int64_t>(1, max_universe)(rng);
    const int count = std::uniform_int_distribution<int>(1, max_members)(rng);
    std::vector<std::vector<std::int64_t>> members;
    std::uniform_int_distribution<std::int64_t> pick(0, u - 1);
    for (int j = 0; j < count; ++j) {
        const int size = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<std::int64_t> m;
        for (int t = 0; t < size; ++t) m.push_back(pick(rng));
        members.push_back(m);
    }
    return SetFamily(u, members);
}

} // namespace

TEST_CASE("FKG lower bound examples")
{
    CHECK(static_cast<double>(fkg_lower(SetFamily(4, {}), 0.5)) == doctest::Approx(1.0));
    SetFamily two(4, {{0, 1}, {2, 3}});
    CHECK(static_cast<double>(fkg_lower(two, 0.5)) == doctest::Approx(0.5625));
    CHECK(static_cast<double>(fkg_lower(two, 0.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(fkg_lower(two, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(fkg_lower(two, -0.1), std::invalid_argument);
}

TEST_CASE("Janson statistics examples")
{
    SetFamily two(4, {{0, 1}, {2, 3}});
    auto s = janson_stats(two, 0.5);
    CHECK(static_cast<double>(s.mu) == doctest::Approx(0.5));
    CHECK(static_cast<double>(s.delta) == doctest::Approx(0.0));
    CHECK(static_cast<double>(s.bound_mu_delta) == doctest::Approx(std::exp(-0.5)));
    CHECK(static_cast<double>(s.bound_main) == doctest::Approx(0.5625));
    CHECK_FALSE(s.bound_ratio);

    auto one = janson_stats(SetFamily(2, {{0, 1}}), 0.5);
    CHECK(static_cast<double>(one.bound_main) == doctest::Approx(0.75));

    auto path = janson_stats(SetFamily(3, {{0, 1}, {1, 2}}), 0.5);
    CHECK(static_cast<double>(path.delta) == doctest::Approx(0.25));
    CHECK(static_cast<double>(path.mu) == doctest::Approx(0.5));
    CHECK_THROWS_AS(janson_stats(SetFamily(2, {{0, 1}}), 1.0), std::invalid_argument);
}

TEST_CASE("Chernoff tails")
{
    auto c = chernoff_bounds(100, 0.5, 10);
    CHECK(c.lower_tail == doctest::Approx(std::exp(-1.0)));
    auto big = chernoff_bounds(100, 0.5, 50);
    CHECK(big.upper_tail == doctest::Approx(1.0));
    auto tiny = chernoff_bounds(100, 0.5, 1e-9);
    CHECK(tiny.lower_tail == doctest::Approx(1.0));
    CHECK(tiny.upper_tail == doctest::Approx(1.0));
    CHECK_THROWS_AS(chernoff_bounds(100, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_bounds(0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("exact avoidance probability examples")
{
    CHECK(static_cast<double>(exact_avoidance_probability(SetFamily(2, {{0, 1}}), 0.5)) == doctest::Approx(0.75));
    CHECK(static_cast<double>(exact_avoidance_probability(SetFamily(4, {{0, 1}, {2, 3}}), 0.5)) ==
          doctest::Approx(9.0 / 16));
    CHECK(static_cast<double>(exact_avoidance_probability(SetFamily(3, {{0, 1}, {1, 2}}), 0.5)) ==
          doctest::Approx(5.0 / 8));
    CHECK(static_cast<double>(exact_avoidance_probability(SetFamily(3, {{0}}), 1.0)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(exact_avoidance_probability(SetFamily(21, {{0}}), 0.5), std::invalid_argument);
}

TEST_CASE("set family validation")
{
    CHECK_THROWS_AS(SetFamily(3, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(SetFamily(3, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(SetFamily(-1, {}), std::invalid_argument);
    SetFamily F(5, {{3, 1, 3}});
    CHECK(F.members().front() == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("exact probability agrees with inclusion-exclusion")
{
    std::mt19937_64 rng(59);
    for (int it = 0; it < 150; ++it) {
        auto F = random_family(rng, 12, 8);
        const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        CHECK(static_cast<double>(exact_avoidance_probability(F, p)) ==
              doctest::Approx(static_cast<double>(avoidance_by_inclusion_exclusion(F, p))).epsilon(1e-9));
    }
}

TEST_CASE("FKG <= exact <= Janson on random families")
{
    std::mt19937_64 rng(61);
    for (int it = 0; it < 300; ++it) {
        auto F = random_family(rng, 16, 12);
        const double p = std::uniform_real_distribution<double>(0.01, 0.95)(rng);
        const auto exact = exact_avoidance_probability(F, p);
        const auto s = janson_stats(F, p);
        const long double slack = 1 + 1e-12L;
        CHECK(fkg_lower(F, p) <= exact * slack);
        CHECK(exact <= s.bound_main * slack);
        CHECK(exact <= s.bound_mu_delta * slack);
        if (s.bound_ratio) CHECK(exact <= *s.bound_ratio * slack);
        CHECK(static_cast<double>(s.M) == doctest::Approx(static_cast<double>(fkg_lower(F, p))));
    }
}

TEST_CASE("tiny probabilities stay finite")
{
    // 2000 disjoint 8-sets at p = 0.01: the product is 1 - tiny per factor
    std::vector<std::vector<std::int64_t>> members;
    for (std::int64_t i = 0; i < 2000; ++i) {
        std::vector<std::int64_t> m;
        for (std::int64_t j = 0; j < 8; ++j) m.push_back(8 * i + j);
        members.push_back(m);
    }
    SetFamily F(16000, members);
    auto s = janson_stats(F, 0.01);
    CHECK(std::isfinite(static_cast<double>(s.M)));
    CHECK(s.M < 1);
    CHECK(s.M > 0.99);
    CHECK(s.delta == 0);
}

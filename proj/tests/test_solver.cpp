#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/sampling.hpp"
#include "sumfree/solver.hpp"
#include "sumfree/sumfree.hpp"

using namespace sumfree;

namespace {

// SF(sample) == {sample & O_2n} by full enumeration
bool sharp_event_oracle(const Subset& sample)
{
    auto O = oracle::from(sample.group());
    auto r = oracle::max_sum_free(O, oracle::elements(sample));
    auto odd = oracle::elements(sample & odd_elements(sample.group_ptr()));
    return r.optima.size() == 1 && r.optima.front() == odd;
}

} // namespace

TEST_CASE("max_sum_free examples")
{
    auto Z10 = cyclic_group(10);
    auto e = max_sum_free(Subset(Z10), true);
    CHECK(e.max_size == 0);
    CHECK(e.witness.empty());

    auto r = max_sum_free(Subset(Z10, {1, 2, 3}), true);
    CHECK(r.max_size == 2);
    REQUIRE(r.optima);
    CHECK(oracle::elements(*r.optima) == std::vector<std::vector<int>>{{1, 3}, {2, 3}});

    auto o = max_sum_free(odd_elements(Z10), true);
    CHECK(o.max_size == 5);
    REQUIRE(o.optima);
    CHECK(o.optima->size() == 1);
    CHECK(o.optima->front() == odd_elements(Z10));
}

TEST_CASE("max_sum_free agrees with exhaustive search")
{
    std::mt19937_64 rng(29);
    for (int it = 0; it < 300; ++it) {
        auto G = make_group(oracle::random_orders(rng, 90));
        const double density = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
        auto B = oracle::random_subset(rng, G, density);
        if (B.size() > 18) continue;
        auto O = oracle::from(*G);
        auto want = oracle::max_sum_free(O, oracle::elements(B));
        auto got = max_sum_free(B, true);
        INFO(G->literal(), " ", B.str());
        CHECK(got.enumeration_complete);
        CHECK(got.max_size == want.size);
        CHECK(is_sum_free(got.witness));
        CHECK(got.witness.is_subset_of(B));
        CHECK(got.witness.size() == got.max_size);
        REQUIRE(got.optima);
        CHECK(oracle::elements(*got.optima) == want.optima);
        auto plain = max_sum_free(B, false);
        CHECK(plain.max_size == want.size);
        CHECK_FALSE(plain.optima);
    }
}

TEST_CASE("enumerate_sum_free_at_least")
{
    std::mt19937_64 rng(31);
    for (int it = 0; it < 60; ++it) {
        auto G = make_group(oracle::random_orders(rng, 40));
        auto B = oracle::random_subset(rng, G, 0.35);
        if (B.size() > 14) continue;
        auto O = oracle::from(*G);
        auto all = oracle::max_sum_free(O, oracle::elements(B));
        const auto k = std::max<std::int64_t>(0, all.size - 1);
        auto got = enumerate_sum_free_at_least(B, k);
        // oracle count of sum-free subsets of size >= k
        std::int64_t count = 0;
        auto eb = oracle::elements(B);
        for (std::uint32_t S = 0; S < (1u << eb.size()); ++S) {
            if (__builtin_popcount(S) < k) continue;
            std::vector<int> v;
            for (std::size_t i = 0; i < eb.size(); ++i)
                if (S >> i & 1) v.push_back(eb[i]);
            count += oracle::sum_free(O, v);
        }
        CHECK(static_cast<std::int64_t>(got.size()) == count);
        for (const auto& s : got) {
            CHECK(is_sum_free(s));
            CHECK(s.size() >= k);
        }
    }
}

TEST_CASE("node cap exhaustion is reported")
{
    auto G = cyclic_group(60);
    auto r = max_sum_free(Subset::full(G), false, 5);
    CHECK_FALSE(r.enumeration_complete);
    CHECK(is_sum_free(r.witness));
    CHECK_THROWS_AS(decide_sharp_event(sample_subset(cyclic_group(400), 0.5, 1, 0), 3), indeterminate_error);
}

TEST_CASE("sum-free good examples")
{
    auto Z10 = cyclic_group(10);
    std::vector<Subset> cat{odd_elements(Z10)};
    CHECK(is_sum_free_good(Subset(Z10, {1, 3}), cat).good);
    auto v = is_sum_free_good(Subset(Z10, {1, 3, 6}), cat);
    CHECK_FALSE(v.good);
    REQUIRE(v.counterexample);
    CHECK(*v.counterexample == Subset(Z10, {1, 6}));
    CHECK(v.max_size == 2);
    CHECK(is_sum_free_good(odd_elements(Z10), cat).good);
    CHECK_THROWS_AS(is_sum_free_good(Subset(Z10), {}), std::invalid_argument);
}

TEST_CASE("sum-free good agrees with the definition")
{
    // good iff every maximum sum-free subset of B lies in a catalog member
    std::mt19937_64 rng(37);
    for (const char* lit : {"Z10", "Z2xZ4", "Z14", "Z5", "Z2^4", "Z20"}) {
        auto G = parse_group(lit);
        auto cat = sf_catalog(G);
        auto O = oracle::from(*G);
        for (int it = 0; it < 40; ++it) {
            const double density = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
            auto B = oracle::random_subset(rng, G, density);
            if (B.size() > 18) continue;
            auto all = oracle::max_sum_free(O, oracle::elements(B));
            bool good = true;
            for (const auto& opt : all.optima) {
                Subset M(G);
                for (int e : opt) M.insert(e);
                bool inside = false;
                for (const auto& A : cat.sets) inside = inside || M.is_subset_of(A);
                good = good && inside;
            }
            auto v = is_sum_free_good(B, cat.sets);
            INFO(lit, " ", B.str());
            CHECK(v.good == good);
            if (v.max_exact) CHECK(v.max_size == all.size);
            if (!v.good) {
                REQUIRE(v.counterexample);
                REQUIRE(v.max_exact);
                CHECK(is_sum_free(*v.counterexample));
                CHECK(v.counterexample->is_subset_of(B));
                CHECK(v.counterexample->size() == all.size);
                for (const auto& A : cat.sets) CHECK_FALSE(v.counterexample->is_subset_of(A));
            }
        }
    }
}

TEST_CASE("sharp event examples")
{
    auto Z10 = cyclic_group(10);
    CHECK(decide_sharp_event(Subset(Z10, {1, 3})));
    CHECK_FALSE(decide_sharp_event(Subset(Z10, {1, 3, 6})));
    CHECK(decide_sharp_event(Subset(Z10)));
    CHECK(decide_sharp_event(Subset::full(Z10)));
    auto out = analyze_sharp_event(Subset(Z10, {1, 3, 6}));
    CHECK(out.s0 == 2);
    CHECK(out.solver_max == 2);
    CHECK_THROWS_AS(decide_sharp_event(Subset(cyclic_group(9))), std::invalid_argument);
    CHECK_THROWS_AS(decide_sharp_event(Subset(make_group({2, 5}))), std::invalid_argument);
}

TEST_CASE("sharp event agrees with exhaustive search")
{
    std::mt19937_64 rng(41);
    int decided_true = 0, decided_false = 0;
    for (int it = 0; it < 400; ++it) {
        const auto n = std::uniform_int_distribution<std::int64_t>(2, 11)(rng);
        auto G = cyclic_group(2 * n);
        const double density = std::uniform_real_distribution<double>(0.2, 0.95)(rng);
        auto sample = oracle::random_subset(rng, G, density);
        const bool want = sharp_event_oracle(sample);
        auto out = analyze_sharp_event(sample);
        INFO(sample.str());
        CHECK(out.event == want);
        CHECK(out.s0 == sample.intersection_size(odd_elements(G)));
        auto all = oracle::max_sum_free(oracle::from(*G), oracle::elements(sample));
        CHECK(out.solver_max_exact);
        CHECK(out.solver_max == all.size);
        (want ? decided_true : decided_false)++;
    }
    CHECK(decided_true > 20);
    CHECK(decided_false > 20);
}

TEST_CASE("sharp event on medium samples agrees with the plain solver")
{
    // Z_60 .. Z_80 samples are past brute force but easy for max_sum_free
    std::mt19937_64 rng(43);
    for (int it = 0; it < 40; ++it) {
        const auto n = std::uniform_int_distribution<std::int64_t>(30, 40)(rng);
        auto G = cyclic_group(2 * n);
        auto sample = oracle::random_subset(rng, G, 0.35);
        auto r = max_sum_free(sample, true, 50'000'000);
        REQUIRE(r.enumeration_complete);
        const bool want = r.optima->size() == 1 && r.optima->front() == (sample & odd_elements(G));
        CHECK(decide_sharp_event(sample, 50'000'000) == want);
    }
}

TEST_CASE("anchored search")
{
    auto Z10 = cyclic_group(10);
    auto O = odd_elements(Z10);
    Subset B(Z10, {1, 3, 6});
    auto r = anchored_search(B, O, {O}, 2, false);
    REQUIRE(r.best);
    CHECK(*r.best == Subset(Z10, {1, 6}));
    CHECK_FALSE(anchored_search(Subset(Z10, {1, 3}), O, {O}, 2, false).best);
    CHECK_THROWS_AS(anchored_search(Subset(Z10, {1, 2}), Subset(Z10, {1, 2}), {}, 1, false), std::invalid_argument);
}

TEST_CASE("augment with safe elements")
{
    auto Z10 = cyclic_group(10);
    auto O = odd_elements(Z10);
    CHECK(augment_with_safe(Subset(Z10, {1, 9}), Subset(Z10), O) == Subset(Z10, {1, 9}));
    CHECK(augment_with_safe(Subset(Z10, {1, 9}), Subset(Z10, {4}), O) == Subset(Z10, {1, 4, 9}));
    CHECK_THROWS_AS(augment_with_safe(Subset(Z10, {2}), Subset(Z10), O), std::invalid_argument);
    CHECK_THROWS_AS(augment_with_safe(Subset(Z10, {1}), Subset(Z10, {3}), O), std::invalid_argument);
    CHECK(augment_with_safe(Subset(Z10, {1, 3}), Subset(Z10, {2, 6}), O) == Subset(Z10, {1, 3})); // both unsafe
    CHECK_THROWS_AS(augment_with_safe(Subset(Z10), Subset(Z10, {2, 4}), O), std::invalid_argument);  // 2 + 2 = 4

    // interval setting in Z_100: a safe part of A' joins A without triples
    auto Z100 = cyclic_group(100);
    Subset A(Z100), A1(Z100, {36, 37, 38});
    for (element x = 39; x <= 68; ++x) A.insert(x);
    std::mt19937_64 rng(47);
    for (int it = 0; it < 30; ++it) {
        auto W = oracle::random_subset(rng, Z100, 0.3) & A;
        Subset safe(Z100);
        A1.for_each([&](element x) {
            if (is_safe(x, W, A)) safe.insert(x);
        });
        auto M = augment_with_safe(W, safe, A);
        CHECK(count_schur_pairs(M) == 0);
    }
}

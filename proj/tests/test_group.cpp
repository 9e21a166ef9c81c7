#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "sumfree/group.hpp"
#include "sumfree/subset.hpp"

using namespace sumfree;

namespace {

// classification straight from prime factors
GroupType classify_oracle(std::int64_t n, std::int64_t exponent)
{
    std::vector<std::int64_t> primes;
    for (std::int64_t d = 2, m = n; m > 1; ++d)
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    for (auto p : primes)
        if (p % 3 == 2) return {GroupType::Tag::I, p, 0};
    if (n % 3 == 0) return {GroupType::Tag::II, 0, 0};
    return {GroupType::Tag::III, 0, exponent};
}

} // namespace

TEST_CASE("element arithmetic examples")
{
    auto Z10 = cyclic_group(10);
    CHECK(Z10->add(7, 8) == 5);
    CHECK(Z10->neg(3) == 7);
    CHECK(element_add(*Z10, 7, 8) == 5);
    CHECK(element_neg(*Z10, 3) == 7);

    auto V = make_group({2, 2});
    CHECK(V->add(1, 1) == 0);
    auto C = parse_group("Z2^5");
    for (element a = 0; a < C->order(); ++a) CHECK(C->neg(a) == a);

    auto G = make_group({4, 3});
    CHECK(G->decode(G->add(G->encode({3, 2}), G->encode({2, 2}))) == std::vector<std::int64_t>{1, 1});
    CHECK(G->decode(G->neg(G->encode({1, 2}))) == std::vector<std::int64_t>{3, 1});

    CHECK_THROWS_AS(Z10->add(10, 1), std::out_of_range);
    CHECK_THROWS_AS(Z10->neg(-1), std::out_of_range);
    CHECK_THROWS_AS(G->encode({4, 0}), std::out_of_range);
}

TEST_CASE("literal parsing")
{
    CHECK(parse_group("Z10")->orders() == std::vector<std::int64_t>{10});
    CHECK(parse_group("Z4xZ3")->orders() == std::vector<std::int64_t>{4, 3});
    CHECK(parse_group("z2xz2^3")->orders() == std::vector<std::int64_t>{2, 2, 2, 2});
    CHECK(parse_group("Z2^3")->literal() == "Z2^3");
    CHECK(parse_group("Z4xZ3")->literal() == "Z4xZ3");
    for (const char* bad : {"", "Z", "Z0", "Zx3", "Z4xx3", "Q5", "Z2^0", "Z-3"})
        CHECK_THROWS_AS(parse_group(bad), std::invalid_argument);
}

TEST_CASE("index encoding round trips and the group axioms hold")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        auto G = make_group(oracle::random_orders(rng, 200));
        auto O = oracle::from(*G);
        REQUIRE(G->order() == O.n);
        std::uniform_int_distribution<element> pick(0, G->order() - 1);
        for (element e = 0; e < G->order(); ++e) CHECK(G->encode(G->decode(e)) == e);
        for (int k = 0; k < 50; ++k) {
            auto a = pick(rng), b = pick(rng), c = pick(rng);
            CHECK(G->add(a, b) == O.add(static_cast<int>(a), static_cast<int>(b)));
            CHECK(G->add(a, b) == G->add(b, a));
            CHECK(G->add(G->add(a, b), c) == G->add(a, G->add(b, c)));
            CHECK(G->add(a, G->neg(a)) == 0);
            CHECK(G->add(a, 0) == a);
        }
    }
}

TEST_CASE("isomorphism through the primary decomposition")
{
    CHECK(parse_group("Z6")->isomorphic_to(*parse_group("Z2xZ3")));
    CHECK(parse_group("Z12")->isomorphic_to(*parse_group("Z4xZ3")));
    CHECK_FALSE(parse_group("Z4")->isomorphic_to(*parse_group("Z2xZ2")));
    CHECK(parse_group("Z6xZ10")->canonical_orders() == std::vector<std::int64_t>{2, 2, 3, 5});
}

TEST_CASE("classify examples")
{
    CHECK(classify(*cyclic_group(10)).str() == "I(2)");
    CHECK(classify(*cyclic_group(9)).str() == "II");
    auto t7 = classify(*cyclic_group(7));
    CHECK(t7.tag == GroupType::Tag::III);
    CHECK(t7.exponent == 7);
    CHECK(classify(*parse_group("Z6xZ5")).str() == "I(2)");
    CHECK(classify(*cyclic_group(35)).str() == "I(5)");
    CHECK(classify(*cyclic_group(77)).str() == "I(11)");
    CHECK_THROWS_AS(classify(GroupSpec()), std::invalid_argument);
}

TEST_CASE("classify agrees with the prime-factor oracle")
{
    for (std::int64_t n = 2; n <= 120; ++n)
        for (const auto& G : enumerate_abelian_groups(n)) {
            INFO(G->literal());
            CHECK(classify(*G) == classify_oracle(n, group_exponent(*G)));
        }
}

TEST_CASE("mu values")
{
    CHECK(mu(*cyclic_group(10)) == Rational(1, 2));
    CHECK(mu(*cyclic_group(9)) == Rational(1, 3));
    CHECK(mu(*cyclic_group(7)) == Rational(2, 7));
    CHECK(mu(*cyclic_group(5)) == Rational(2, 5));
    CHECK(extremal_size(*cyclic_group(10)) == 5);
    CHECK(extremal_size(*cyclic_group(7)) == 2);
    // mu(G) n is an integer and 2/7 <= mu(G) <= 1/2
    for (std::int64_t n = 2; n <= 150; ++n)
        for (const auto& G : enumerate_abelian_groups(n)) {
            auto v = mu(*G) * Rational(n);
            CHECK(v.is_integer());
            CHECK(mu(*G) >= Rational(2, 7));
            CHECK(mu(*G) <= Rational(1, 2));
        }
}

TEST_CASE("mu matches brute force on small groups")
{
    for (std::int64_t n = 2; n <= 14; ++n)
        for (const auto& G : enumerate_abelian_groups(n)) {
            auto O = oracle::from(*G);
            std::vector<int> all;
            for (int e = 0; e < O.n; ++e) all.push_back(e);
            INFO(G->literal());
            CHECK(oracle::max_sum_free(O, all).size == extremal_size(*G));
        }
}

TEST_CASE("homomorphisms to Z_q")
{
    CHECK(enumerate_homs_to_Zq(*make_group({4, 3}), 2).size() == 2);
    CHECK(enumerate_homs_to_Zq(*cyclic_group(5), 5).size() == 5);
    CHECK(enumerate_homs_to_Zq(*parse_group("Z2^3"), 2).size() == 8);
    CHECK(enumerate_homs_to_Zq(*cyclic_group(7), 2).size() == 1);
    CHECK_THROWS_AS(enumerate_homs_to_Zq(*cyclic_group(8), 4), std::invalid_argument);

    // brute-force oracle: image tuples respecting addition
    std::mt19937_64 rng(5);
    for (int it = 0; it < 25; ++it) {
        auto G = make_group(oracle::random_orders(rng, 150));
        for (std::int64_t q : {2, 3, 5}) {
            std::size_t expected = 1;
            for (auto m : G->orders())
                if (m % q == 0) expected *= static_cast<std::size_t>(q);
            auto homs = enumerate_homs_to_Zq(*G, q);
            CHECK(homs.size() == expected);
            CHECK(homs.size() <= static_cast<std::size_t>(G->order()));
            std::uniform_int_distribution<element> pick(0, G->order() - 1);
            for (const auto& phi : homs) {
                auto table = hom_table(*G, phi);
                for (int k = 0; k < 20; ++k) {
                    auto a = pick(rng), b = pick(rng);
                    CHECK(table[static_cast<std::size_t>(G->add(a, b))] ==
                          (table[static_cast<std::size_t>(a)] + table[static_cast<std::size_t>(b)]) % q);
                    CHECK(phi(*G, a) == table[static_cast<std::size_t>(a)]);
                }
            }
        }
    }
}

TEST_CASE("kernels")
{
    auto Z10 = cyclic_group(10);
    CHECK(kernel_subgroup(Z10, HomToZq{2, {1}}) == Subset(Z10, {0, 2, 4, 6, 8}));
    auto Z5 = cyclic_group(5);
    CHECK(kernel_subgroup(Z5, HomToZq{5, {1}}) == Subset(Z5, {0}));
    auto V = make_group({2, 2});
    CHECK(kernel_subgroup(V, HomToZq{2, {1, 0}}) == Subset(V, {V->encode({0, 0}), V->encode({0, 1})}));
    CHECK_THROWS_AS(kernel_subgroup(Z10, HomToZq{2, {0}}), std::invalid_argument);
}

TEST_CASE("abelian groups of a given order")
{
    auto lits = [](std::int64_t n) {
        std::set<std::vector<std::int64_t>> s;
        for (const auto& G : enumerate_abelian_groups(n)) s.insert(G->canonical_orders());
        return s;
    };
    CHECK(lits(8) == std::set<std::vector<std::int64_t>>{{8}, {4, 2}, {2, 2, 2}});
    CHECK(lits(12) == std::set<std::vector<std::int64_t>>{{4, 3}, {2, 2, 3}});
    CHECK(lits(7) == std::set<std::vector<std::int64_t>>{{7}});
    // partition-number products, frozen
    CHECK(enumerate_abelian_groups(16).size() == 5);
    CHECK(enumerate_abelian_groups(32).size() == 7);
    CHECK(enumerate_abelian_groups(72).size() == 6);
    CHECK(enumerate_abelian_groups(720).size() == 10);
    CHECK_THROWS_AS(enumerate_abelian_groups(1), std::invalid_argument);
    // distinct classes, each of the right order
    for (std::int64_t n = 2; n <= 64; ++n) {
        auto gs = enumerate_abelian_groups(n);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            CHECK(gs[i]->order() == n);
            for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(gs[i]->isomorphic_to(*gs[j]));
        }
    }
}

TEST_CASE("rationals")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -3) == Rational(-1, 3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::parse("3/9") == Rational(1, 3));
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(2, 7).str() == "2/7");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
}

TEST_CASE("number theory helpers")
{
    CHECK(is_prime(2));
    CHECK(is_prime(103));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(prime_factors(360) == std::vector<std::int64_t>{2, 3, 5});
    CHECK(group_exponent(*parse_group("Z4xZ6")) == 12);
}

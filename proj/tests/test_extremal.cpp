#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/sumfree.hpp"

using namespace sumfree;

namespace {

// every maximum sum-free subset of G by enumerating all 2^n subsets
std::vector<std::vector<int>> sf_oracle(const GroupSpec& G)
{
    auto O = oracle::from(G);
    std::vector<int> all;
    for (int e = 0; e < O.n; ++e) all.push_back(e);
    return oracle::max_sum_free(O, all).optima;
}

} // namespace

TEST_CASE("type I catalog examples")
{
    auto Z10 = cyclic_group(10);
    auto c10 = enumerate_sf_type1(Z10);
    REQUIRE(c10.size() == 1);
    CHECK(c10.sets.front() == odd_elements(Z10));
    CHECK(c10.multiplicity(0) == 1);

    auto c5 = enumerate_sf_type1(cyclic_group(5));
    CHECK(oracle::elements(c5.sets) == std::vector<std::vector<int>>{{1, 4}, {2, 3}});
    CHECK(c5.multiplicity(0) == 2);
    CHECK(c5.multiplicity(1) == 2);

    auto G8 = parse_group("Z2^3");
    auto c8 = enumerate_sf_type1(G8);
    CHECK(c8.size() == 7);
    for (std::size_t i = 0; i < c8.size(); ++i) {
        const auto& phi = c8.provenance[i].front();
        CHECK(c8.sets[i] == kernel_subgroup(G8, phi).complement());
    }
    CHECK_THROWS_AS(enumerate_sf_type1(cyclic_group(9)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sf_type1(cyclic_group(7)), std::invalid_argument);
}

TEST_CASE("type I catalogs match exhaustive enumeration")
{
    for (std::int64_t n = 2; n <= 20; ++n)
        for (const auto& G : enumerate_abelian_groups(n)) {
            if (classify(*G).tag != GroupType::Tag::I) continue;
            INFO(G->literal());
            auto cat = enumerate_sf_type1(G);
            CHECK(oracle::elements(cat.sets) == sf_oracle(*G));
            CHECK(static_cast<std::int64_t>(cat.size()) <= n);
            for (std::size_t i = 0; i < cat.size(); ++i) {
                const auto& A = cat.sets[i];
                CHECK(A.size() == extremal_size(*G));
                CHECK(covers_group(A));
                for (const auto& phi : cat.provenance[i]) CHECK(is_union_of_kernel_cosets(A, phi));
            }
        }
}

TEST_CASE("large type I catalogs use the quotient check")
{
    auto G = parse_group("Z2xZ500");
    auto cat = enumerate_sf_type1(G);
    CHECK(cat.size() == 3);
    for (const auto& A : cat.sets) {
        CHECK(A.size() == 500);
        CHECK(is_sum_free(A));
    }
    CHECK(enumerate_sf_type1(parse_group("Z2^11")).size() == 2047);
}

TEST_CASE("brute-force catalogs")
{
    auto c7 = enumerate_sf_bruteforce(cyclic_group(7));
    CHECK(c7.method == "brute-force");
    for (const auto& A : c7.sets) CHECK(A.size() == 2);
    CHECK(std::find(c7.sets.begin(), c7.sets.end(), Subset(cyclic_group(7), {2, 3})) != c7.sets.end());
    CHECK(oracle::elements(c7.sets) == sf_oracle(*cyclic_group(7)));

    for (const auto& A : enumerate_sf_bruteforce(cyclic_group(9)).sets) CHECK(A.size() == 3);
    CHECK_THROWS_AS(enumerate_sf_bruteforce(cyclic_group(31)), std::invalid_argument);

    for (std::int64_t n = 2; n <= 16; ++n)
        for (const auto& G : enumerate_abelian_groups(n)) {
            INFO(G->literal());
            CHECK(oracle::elements(enumerate_sf_bruteforce(G).sets) == sf_oracle(*G));
        }
}

TEST_CASE("Z21 catalog size is a frozen regression value")
{
    auto cat = enumerate_sf_bruteforce(cyclic_group(21));
    CHECK(cat.size() == 14);
    CHECK(oracle::elements(cat.sets) == sf_oracle(*cyclic_group(21)));
}

TEST_CASE("Z_2n has the odd residues as its only maximum sum-free set")
{
    for (std::int64_t n = 2; n <= 10; ++n) {
        auto G = cyclic_group(2 * n);
        auto all = sf_oracle(*G);
        REQUIRE(all.size() == 1);
        CHECK(all.front() == oracle::elements(odd_elements(G)));
    }
}

TEST_CASE("dilation family for Z_3q")
{
    auto G = cyclic_group(21);
    auto cat = dilation_family_z3q(G);
    CHECK(cat.size() <= 14);
    for (const auto& A : cat.sets) {
        CHECK(is_sum_free(A));
        CHECK(A.size() == 7);
    }
    // every member is maximum, so it is in the brute-force catalog
    auto brute = enumerate_sf_bruteforce(G);
    for (const auto& A : cat.sets) CHECK(std::find(brute.sets.begin(), brute.sets.end(), A) != brute.sets.end());
    CHECK(dilation_family_z3q(cyclic_group(309)).size() <= 206);
    CHECK_THROWS_AS(dilation_family_z3q(cyclic_group(20)), std::invalid_argument);
    CHECK_THROWS_AS(dilation_family_z3q(parse_group("Z3xZ7")), std::invalid_argument);
}

TEST_CASE("sumsets and coverage")
{
    auto Z10 = cyclic_group(10);
    CHECK(sumset(Subset(Z10, {1, 3})) == Subset(Z10, {2, 4, 6}));
    CHECK(covers_group(odd_elements(Z10)));
    CHECK_FALSE(covers_group(Subset(Z10, {1, 9})));
    CHECK(is_union_of_kernel_cosets(odd_elements(Z10), HomToZq{2, {1}}));
    CHECK_FALSE(is_union_of_kernel_cosets(Subset(Z10, {1}), HomToZq{2, {1}}));
}

TEST_CASE("saturation check")
{
    auto Z10 = cyclic_group(10);
    auto v = saturation_check(odd_elements(Z10), Rational(1, 10));
    REQUIRE(v.close());
    CHECK(std::get<CloseToExtremal>(v.branch).distance == 0);

    // the largest sum-free subset of Z12 has 6 elements, so the distance is 6 > 1
    auto Z12 = cyclic_group(12);
    auto f = saturation_check(Subset::full(Z12), Rational(1, 12));
    REQUIRE_FALSE(f.close());
    CHECK(std::get<ManyTriples>(f.branch).count == 144);

    Subset A = odd_elements(Z10);
    A.insert(2);
    auto c = saturation_check(A, Rational(1, 10));
    REQUIRE(c.close());
    const auto& ce = std::get<CloseToExtremal>(c.branch);
    CHECK(ce.distance == 1);
    CHECK(ce.a_prime == odd_elements(Z10));

    CHECK_THROWS_AS(saturation_check(Subset(Z10, {1}), Rational(1, 10)), std::invalid_argument);
    CHECK_THROWS_AS(saturation_check(A, Rational(0)), std::invalid_argument);
}

TEST_CASE("stability check")
{
    auto Z10 = cyclic_group(10);
    auto v = stability_check(odd_elements(Z10), Rational(1, 60));
    REQUIRE(v.close());
    CHECK(std::get<CloseToExtremal>(v.branch).distance == 0);

    // perturbations of O_122: swap one odd element for an even one
    auto G = cyclic_group(122);
    auto O = odd_elements(G);
    const Rational eps(1, 60);
    std::mt19937_64 rng(53);
    for (int it = 0; it < 20; ++it) {
        Subset A = O;
        A.erase(2 * std::uniform_int_distribution<element>(0, 60)(rng) + 1);
        A.insert(2 * std::uniform_int_distribution<element>(0, 60)(rng));
        auto r = stability_check(A, eps);
        REQUIRE(r.close());
        const auto& ce = std::get<CloseToExtremal>(r.branch);
        CHECK(ce.a_prime == O);
        CHECK(ce.distance == 1);
    }
    // a set far from O_122 of full size has many triples
    Subset far(G);
    for (element x = 1; x <= 61; ++x) far.insert(x);
    auto r = stability_check(far, eps);
    REQUIRE_FALSE(r.close());
    CHECK(std::get<ManyTriples>(r.branch).count == count_schur_pairs(far));

    CHECK_THROWS_AS(stability_check(odd_elements(Z10), Rational(1, 54)), std::invalid_argument);
    CHECK_THROWS_AS(stability_check(Subset(cyclic_group(9), {1, 4, 7}), Rational(1, 100)), std::invalid_argument);
    CHECK_THROWS_AS(stability_check(Subset(Z10, {1, 3}), Rational(1, 60)), std::invalid_argument);
}

TEST_CASE("catalog JSON")
{
    auto j = enumerate_sf_type1(cyclic_group(5)).to_json();
    CHECK(j["group"] == "Z5");
    CHECK(j["method"] == "hom-based");
    CHECK(j["sets"].size() == 2);
    CHECK(j["multiplicity"] == nlohmann::json::array({2, 2}));
}

TEST_CASE("link-set size bound for type I groups")
{
    for (std::int64_t n = 2; n <= 60; ++n)
        for (const auto& G : enumerate_abelian_groups(n)) {
            auto t = classify(*G);
            if (t.tag != GroupType::Tag::I) continue;
            for (const auto& A : enumerate_sf_type1(G).sets)
                for (element x = 0; x < n; ++x) {
                    if (A.contains(x)) continue;
                    auto ls = link_sets(x, A);
                    auto big = std::max<std::int64_t>(ls.c1.size(), static_cast<std::int64_t>(ls.c2.size()));
                    CHECK(3 * t.q * big >= n);
                }
        }
}

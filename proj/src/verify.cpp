#include "sumfree/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "sumfree/bounds.hpp"
#include "sumfree/experiments.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/group.hpp"
#include "sumfree/solver.hpp"
#include "sumfree/sumfree.hpp"

namespace sumfree {

namespace {

constexpr std::int64_t oracle_cap = 500'000'000;

// Runs body with a fresh result; exceptions count as a failure.
CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& body)
{
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        ++r.failures;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = r.failures == 0;
    if (r.passed && r.detail.empty()) r.detail = std::to_string(r.cases) + " cases";
    return r;
}

void fail(CheckResult& r, const std::string& what)
{
    if (r.failures++ == 0) r.detail = what;
}

// Kuhn augmenting paths; adjacency from left index to right element.
std::int64_t bipartite_matching(const std::vector<std::vector<element>>& adj)
{
    std::vector<std::int64_t> owner_of; // parallel to right
    std::vector<element> right;
    for (const auto& a : adj)
        for (auto v : a)
            if (std::find(right.begin(), right.end(), v) == right.end()) right.push_back(v);
    owner_of.assign(right.size(), -1);
    auto idx = [&](element v) { return static_cast<std::size_t>(std::find(right.begin(), right.end(), v) - right.begin()); };
    std::int64_t size = 0;
    for (std::size_t l = 0; l < adj.size(); ++l) {
        std::vector<char> seen(right.size(), 0);
        std::function<bool(std::size_t)> augment = [&](std::size_t u) {
            for (auto v : adj[u]) {
                auto j = idx(v);
                if (seen[j]) continue;
                seen[j] = 1;
                if (owner_of[j] < 0 || augment(static_cast<std::size_t>(owner_of[j]))) {
                    owner_of[j] = static_cast<std::int64_t>(u);
                    return true;
                }
            }
            return false;
        };
        if (augment(l)) ++size;
    }
    return size;
}

} // namespace

bool VerifyReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const
{
    nlohmann::json j;
    j["scope"] = scope;
    j["ok"] = ok();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"cases", c.cases},
                               {"failures", c.failures},
                               {"detail", c.detail},
                               {"seconds", c.seconds}});
    return j;
}

CheckResult check_mu_formula(std::int64_t max_order)
{
    return timed("mu-formula", [&](CheckResult& r) {
        for (std::int64_t order = 2; order <= max_order; ++order)
            for (const auto& G : enumerate_abelian_groups(order)) {
                ++r.cases;
                auto s = max_sum_free(Subset::full(G), false, oracle_cap);
                auto want = mu(*G) * Rational(order);
                if (!want.is_integer()) fail(r, G->literal() + ": mu(G) n is not an integer");
                else if (!s.enumeration_complete) fail(r, G->literal() + ": solver cap exhausted");
                else if (s.max_size != want.num())
                    fail(r, G->literal() + ": solver " + std::to_string(s.max_size) + " vs " + want.str());
            }
    });
}

CheckResult check_type1_catalogs(std::int64_t max_order)
{
    return timed("type-I-catalogs", [&](CheckResult& r) {
        for (std::int64_t order = 2; order <= max_order; ++order)
            for (const auto& G : enumerate_abelian_groups(order)) {
                if (classify(*G).tag != GroupType::Tag::I) continue;
                ++r.cases;
                auto hom = enumerate_sf_type1(G);
                auto brute = enumerate_sf_bruteforce(G, max_order);
                if (hom.sets != brute.sets) {
                    fail(r, G->literal() + ": hom catalog has " + std::to_string(hom.size()) + " sets, brute force " +
                                std::to_string(brute.size()));
                    continue;
                }
                if (static_cast<std::int64_t>(hom.size()) > order) fail(r, G->literal() + ": |SF(G)| > n");
                for (const auto& A : hom.sets)
                    if (!is_sum_free(A) || !covers_group(A)) fail(r, G->literal() + ": " + A.str() + " fails A u (A+A) = G");
            }
    });
}

CheckResult check_z2n_uniqueness(std::int64_t max_n)
{
    return timed("Z2n-uniqueness", [&](CheckResult& r) {
        for (std::int64_t n = 2; n <= max_n; ++n) {
            ++r.cases;
            auto G = cyclic_group(2 * n);
            auto cat = enumerate_sf_bruteforce(G, 2 * max_n);
            if (cat.size() != 1 || !(cat.sets.front() == odd_elements(G)))
                fail(r, G->literal() + ": SF has " + std::to_string(cat.size()) + " members");
        }
    });
}

CheckResult check_z21_catalog(std::int64_t& count)
{
    return timed("Z21-catalog", [&](CheckResult& r) {
        r.cases = 1;
        auto cat = enumerate_sf_bruteforce(cyclic_group(21), 21);
        count = static_cast<std::int64_t>(cat.size());
        if (count > 14) fail(r, "|SF(Z21)| = " + std::to_string(count));
        else r.detail = "|SF(Z21)| = " + std::to_string(count);
    });
}

CheckResult check_link_graph_bounds(std::int64_t samples, std::uint64_t seed)
{
    return timed("link-graph-bounds", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        const std::int64_t ns[] = {20, 50, 100};
        for (std::int64_t i = 0; i < samples; ++i) {
            const auto n = ns[i % 3];
            auto G = cyclic_group(2 * n);
            std::vector<element> evens;
            for (element x = 2; x < 2 * n; x += 2) evens.push_back(x);
            std::shuffle(evens.begin(), evens.end(), rng);
            const auto k = std::uniform_int_distribution<std::int64_t>(1, 10)(rng);
            Subset S(G, std::vector<element>(evens.begin(), evens.begin() + k));
            std::int64_t m = 0;
            S.for_each([&](element x) {
                auto y = G->neg(x);
                if (x < y && S.contains(y)) ++m;
            });
            const std::int64_t has_n = S.contains(n) ? 1 : 0;
            auto Gr = build_link_graph_z2n(S);
            ++r.cases;
            // 2e >= (3k - 2m - [n in S]) n - 6k^2
            if (Gr.max_degree() > 3 * k) fail(r, "degree above 3k for S = " + S.str());
            if (2 * Gr.num_edges() < (3 * k - 2 * m - has_n) * n - 6 * k * k) fail(r, "edge count too small for S = " + S.str());
            for (const auto& e : Gr.edges()) {
                auto x = e.provenance;
                if (G->add(e.a, e.b) != x && G->sub(e.a, e.b) != x && G->sub(e.b, e.a) != x)
                    fail(r, "bad provenance in S = " + S.str());
            }
        }
    });
}

CheckResult check_link_set_sizes(std::int64_t max_order)
{
    return timed("link-set-sizes", [&](CheckResult& r) {
        for (std::int64_t order = 2; order <= max_order; ++order)
            for (const auto& G : enumerate_abelian_groups(order)) {
                auto type = classify(*G);
                if (type.tag != GroupType::Tag::I) continue;
                for (const auto& A : enumerate_sf_type1(G).sets)
                    for (element x = 0; x < order; ++x) {
                        if (A.contains(x)) continue;
                        ++r.cases;
                        auto ls = link_sets(x, A);
                        const auto big = std::max<std::int64_t>(ls.c1.size(), static_cast<std::int64_t>(ls.c2.size()));
                        if (3 * type.q * big < order)
                            fail(r, G->literal() + ", A = " + A.str() + ", x = " + std::to_string(x));
                    }
            }
    });
}

CheckResult check_witness_U(std::int64_t samples, std::uint64_t seed)
{
    return timed("witness-U", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(0.5);
        for (std::int64_t i = 0; i < samples; ++i) {
            const auto n = std::uniform_int_distribution<std::int64_t>(5, 40)(rng);
            auto G = cyclic_group(2 * n);
            Subset S(G);
            const auto k = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
            while (S.size() < k) S.insert(2 * std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng));
            auto Gr = build_link_graph_z2n(S);
            Subset sample(G);
            for (element a = 1; a < 2 * n; a += 2)
                if (coin(rng)) sample.insert(a);

            // minimal cover T of Gr[sample], pruned from T = sample
            Subset T = sample;
            auto order = sample.elements();
            std::shuffle(order.begin(), order.end(), rng);
            for (auto v : order) {
                bool needed = false;
                for (auto w : Gr.neighbors(v)) needed = needed || (sample.contains(w) && !T.contains(w));
                if (!needed) T.erase(v);
            }
            ++r.cases;
            auto U = find_witness_U(Gr, T, sample);
            if (!U.is_subset_of(sample - T) || U.size() > T.size()) {
                fail(r, "U not inside sample - T or too large, S = " + S.str());
                continue;
            }
            std::vector<std::vector<element>> adj;
            bool covered = true;
            T.for_each([&](element t) {
                bool hit = false;
                for (auto w : Gr.neighbors(t)) hit = hit || U.contains(w);
                covered = covered && hit;
            });
            U.for_each([&](element u) {
                std::vector<element> nb;
                for (auto w : Gr.neighbors(u))
                    if (T.contains(w)) nb.push_back(w);
                adj.push_back(std::move(nb));
            });
            if (!covered) fail(r, "T not inside N(U), S = " + S.str());
            if (bipartite_matching(adj) != U.size()) fail(r, "no matching of size |U|, S = " + S.str());
        }
    });
}

CheckResult check_interval_structure(std::int64_t max_n)
{
    return timed("interval-structure", [&](CheckResult& r) {
        std::int64_t skipped = 0;
        for (std::int64_t n = 30; n <= max_n; ++n)
            for (double m : {1.0, 2.0, static_cast<double>(n) / 200.0}) {
                IntervalFamily F;
                try {
                    F = interval_family(n, m);
                } catch (const std::invalid_argument&) {
                    ++skipped; // degenerate interval
                    continue;
                }
                ++r.cases;
                if (!is_sum_free(F.A) || !interval_structure_holds(F)) {
                    std::ostringstream os;
                    os << "n = " << n << ", m = " << m;
                    fail(r, os.str());
                }
            }
        if (r.failures == 0) r.detail = std::to_string(r.cases) + " cases, " + std::to_string(skipped) + " degenerate";
    });
}

CheckResult check_bound_sandwich(std::int64_t families, std::uint64_t seed, double relative_slack)
{
    return timed("bound-sandwich", [&](CheckResult& r) {
        std::mt19937_64 rng(seed);
        const long double up = 1 + static_cast<long double>(relative_slack);
        for (std::int64_t i = 0; i < families; ++i) {
            const auto u = std::uniform_int_distribution<std::int64_t>(1, 16)(rng);
            const auto count = std::uniform_int_distribution<int>(1, 12)(rng);
            std::vector<std::int64_t> pool(static_cast<std::size_t>(u));
            for (std::int64_t j = 0; j < u; ++j) pool[static_cast<std::size_t>(j)] = j;
            std::vector<std::vector<std::int64_t>> members;
            for (int j = 0; j < count; ++j) {
                std::shuffle(pool.begin(), pool.end(), rng);
                const auto size = std::uniform_int_distribution<std::int64_t>(1, std::min<std::int64_t>(u, 4))(rng);
                members.emplace_back(pool.begin(), pool.begin() + size);
            }
            const double p = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
            SetFamily F(u, members);
            const auto exact = exact_avoidance_probability(F, p);
            const auto js = janson_stats(F, p);
            ++r.cases;
            std::ostringstream os;
            os << "family " << i << " (universe " << u << ", p = " << p << ")";
            if (fkg_lower(F, p) > exact * up) fail(r, os.str() + ": FKG above exact");
            if (exact > js.bound_main * up) fail(r, os.str() + ": exact above Janson");
            if (js.bound_ratio && exact > *js.bound_ratio * up) fail(r, os.str() + ": exact above the ratio bound");
        }
    });
}

VerifyReport verify_small_groups(const VerifyOptions& opt)
{
    VerifyReport rep{"small-groups", {}};
    std::int64_t z21 = 0;
    rep.checks.push_back(check_mu_formula(opt.mu_max_order));
    rep.checks.push_back(check_type1_catalogs(opt.catalog_max_order));
    rep.checks.push_back(check_z2n_uniqueness(opt.z2n_max_n));
    rep.checks.push_back(check_z21_catalog(z21));
    return rep;
}

VerifyReport verify_claims(const VerifyOptions& opt)
{
    VerifyReport rep{"claims", {}};
    rep.checks.push_back(check_link_graph_bounds(opt.claim_samples, opt.seed));
    rep.checks.push_back(check_link_set_sizes(opt.link_max_order));
    rep.checks.push_back(check_witness_U(opt.witness_samples, opt.seed + 1));
    rep.checks.push_back(check_interval_structure(opt.interval_max_n));
    return rep;
}

VerifyReport verify_bounds(const VerifyOptions& opt)
{
    VerifyReport rep{"bounds", {}};
    rep.checks.push_back(check_bound_sandwich(opt.bound_families, opt.seed, opt.relative_slack));
    return rep;
}

VerifyReport run_verify(const std::string& scope, const VerifyOptions& opt)
{
    if (scope == "small-groups") return verify_small_groups(opt);
    if (scope == "claims") return verify_claims(opt);
    if (scope == "bounds") return verify_bounds(opt);
    if (scope != "all") throw std::invalid_argument("unknown verify scope '" + scope + "'");
    VerifyReport rep{"all", {}};
    for (auto* f : {&verify_small_groups, &verify_claims, &verify_bounds}) {
        auto part = f(opt);
        rep.checks.insert(rep.checks.end(), part.checks.begin(), part.checks.end());
    }
    return rep;
}

} // namespace sumfree

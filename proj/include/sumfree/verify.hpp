#pragma once
/** @file verify.hpp
 *  @brief Invariant suites behind `sumfree_cli verify`: small-group oracles,
 *  link-graph and interval properties, and the probability-bound sandwich.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace sumfree {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    std::string detail; // first failure, or a short summary
    double seconds = 0;
};

struct VerifyReport {
    std::string scope;
    std::vector<CheckResult> checks;

    bool ok() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    std::int64_t mu_max_order = 24;       // max_sum_free(G) = mu(G) n
    std::int64_t catalog_max_order = 30;  // hom catalog = brute force, type I
    std::int64_t z2n_max_n = 12;          // SF(Z_2n) = {O_2n}
    std::int64_t claim_samples = 1000;    // random S for the link-graph bounds
    std::int64_t link_max_order = 60;     // max(|c1|, |c2|) >= n/(3q)
    std::int64_t witness_samples = 300;   // find_witness_U instances
    std::int64_t interval_max_n = 500;    // interval structure, n in [30, max]
    std::int64_t bound_families = 200;    // FKG/Janson sandwich corpus
    double relative_slack = 1e-12;
};

/// Per-check results for one group of invariants. Nothing throws on failure.
VerifyReport verify_small_groups(const VerifyOptions& opt = {});
VerifyReport verify_claims(const VerifyOptions& opt = {});
VerifyReport verify_bounds(const VerifyOptions& opt = {});
/// scope is "small-groups", "claims", "bounds" or "all".
VerifyReport run_verify(const std::string& scope, const VerifyOptions& opt = {});

// Individual checks, also used by the acceptance runner.
CheckResult check_mu_formula(std::int64_t max_order);
CheckResult check_type1_catalogs(std::int64_t max_order);
CheckResult check_z2n_uniqueness(std::int64_t max_n);
CheckResult check_z21_catalog(std::int64_t& count);
CheckResult check_link_graph_bounds(std::int64_t samples, std::uint64_t seed);
CheckResult check_link_set_sizes(std::int64_t max_order);
CheckResult check_witness_U(std::int64_t samples, std::uint64_t seed);
CheckResult check_interval_structure(std::int64_t max_n);
CheckResult check_bound_sandwich(std::int64_t families, std::uint64_t seed, double relative_slack);

} // namespace sumfree

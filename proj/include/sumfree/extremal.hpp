#pragma once
/** @file extremal.hpp
 *  @brief SF(G) catalogs (hom preimages, brute force, Z_3q dilations) and the
 *  saturation / stability verdicts.
 */

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sumfree/group.hpp"
#include "sumfree/rational.hpp"
#include "sumfree/subset.hpp"

namespace sumfree {

struct SFCatalog {
    GroupPtr group;
    std::vector<Subset> sets;                     // sorted, distinct
    std::vector<std::vector<HomToZq>> provenance; // homs giving each set; empty unless hom-based
    std::string method;                           // "hom-based", "brute-force", "dilation-family"

    std::size_t size() const { return sets.size(); }
    /// Number of homs inducing sets[i] (0 when there is no provenance).
    std::size_t multiplicity(std::size_t i) const { return provenance.empty() ? 0 : provenance.at(i).size(); }
    nlohmann::json to_json() const;
};

/// Preimages of {k+1, ..., 2k+1} under every nonzero G -> Z_q, q = 3k+2.
/// Each member is checked; throws std::invalid_argument unless G is type I.
SFCatalog enumerate_sf_type1(const GroupPtr& G);

/// All maximum sum-free subsets of G by exact enumeration; refuses |G| > size_cap.
SFCatalog enumerate_sf_bruteforce(const GroupPtr& G, std::int64_t size_cap = 30);

/// {1 mod 3} and {2 mod 3} together with the dilates d*[q, 2q-1] of the middle
/// third of Z_3q by units d.
SFCatalog dilation_family_z3q(const GroupPtr& G);

/// The hom-based catalog for type I, brute force otherwise (cap 30).
SFCatalog sf_catalog(const GroupPtr& G);

/// A + A, with a = b allowed.
Subset sumset(const Subset& A);
/// A u (A + A) = G.
bool covers_group(const Subset& A);
/// A is a union of fibres of phi.
bool is_union_of_kernel_cosets(const Subset& A, const HomToZq& phi);

struct CloseToExtremal {
    Subset a_prime;
    std::int64_t distance = 0; // |A \ A'|
};
struct ManyTriples {
    std::int64_t count = 0; // ordered Schur pairs in A
};

struct StabilityVerdict {
    std::variant<CloseToExtremal, ManyTriples> branch;
    Rational epsilon;

    bool close() const { return std::holds_alternative<CloseToExtremal>(branch); }
};

/// Needs |A| >= (1/3 + eps) n. Branch (a) uses the largest sum-free subset of A.
StabilityVerdict saturation_check(const Subset& A, Rational epsilon);

/// Needs G type I(q), 0 < eps < 1/(9q^2 + 9q), |A| >= (mu(G) - eps) n.
/// Branch (a) measures the distance to the nearest member of SF(G).
StabilityVerdict stability_check(const Subset& A, Rational epsilon);

} // namespace sumfree

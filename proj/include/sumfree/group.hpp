#pragma once
/** @file group.hpp
 *  @brief Finite Abelian groups Z_{m1} x ... x Z_{mk} with dense element indices.
 *
 *  Element e is the mixed-radix number with digit r_i in position i and
 *  stride radix_offsets()[i]; the last factor varies fastest.
 */

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sumfree/rational.hpp"

namespace sumfree {

using element = std::int64_t;

class GroupSpec {
public:
    /// Trivial group.
    GroupSpec() = default;
    explicit GroupSpec(std::vector<std::int64_t> orders);

    const std::vector<std::int64_t>& orders() const { return orders_; }
    const std::vector<std::int64_t>& radix_offsets() const { return strides_; }
    std::int64_t order() const { return n_; }
    std::size_t rank() const { return orders_.size(); }
    bool is_cyclic_literal() const { return orders_.size() == 1; }

    std::vector<std::int64_t> decode(element e) const;
    element encode(const std::vector<std::int64_t>& residues) const;

    element add(element a, element b) const;
    element neg(element a) const;
    element sub(element a, element b) const { return add(a, neg(b)); }

    /// Primary decomposition, sorted by prime then descending power.
    std::vector<std::int64_t> canonical_orders() const;
    bool isomorphic_to(const GroupSpec& other) const;

    /// "Z4xZ3" style literal; "Z1" for the trivial group.
    std::string literal() const;

    bool operator==(const GroupSpec& o) const { return orders_ == o.orders_; }

private:
    void check(element e) const;

    std::vector<std::int64_t> orders_;
    std::vector<std::int64_t> strides_;
    std::int64_t n_ = 1;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

GroupPtr make_group(std::vector<std::int64_t> orders);
GroupPtr cyclic_group(std::int64_t n);

/// Accepts "Z10", "Z4xZ3", "Z2^5", "z2xz2^3"; throws std::invalid_argument.
GroupPtr parse_group(const std::string& literal);

element element_add(const GroupSpec& G, element a, element b);
element element_neg(const GroupSpec& G, element a);

struct GroupType {
    enum class Tag { I, II, III };
    Tag tag = Tag::III;
    std::int64_t q = 0;        // type I only
    std::int64_t exponent = 0; // type III only

    std::string str() const;
    bool operator==(const GroupType&) const = default;
};

GroupType classify(const GroupSpec& G);
Rational mu(const GroupSpec& G);
/// mu(G) * |G|; always an integer.
std::int64_t extremal_size(const GroupSpec& G);
std::int64_t group_exponent(const GroupSpec& G);

struct HomToZq {
    std::int64_t q = 2;
    std::vector<std::int64_t> images;

    std::int64_t operator()(const GroupSpec& G, element e) const;
    bool is_zero() const;
    bool operator==(const HomToZq&) const = default;
};

/// phi(e) for every element e, in index order.
std::vector<std::int64_t> hom_table(const GroupSpec& G, const HomToZq& phi);

std::vector<HomToZq> enumerate_homs_to_Zq(const GroupSpec& G, std::int64_t q);

/// One representative per isomorphism class, in primary form.
std::vector<GroupPtr> enumerate_abelian_groups(std::int64_t order);

// number theory helpers
bool is_prime(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n); // distinct, ascending

} // namespace sumfree

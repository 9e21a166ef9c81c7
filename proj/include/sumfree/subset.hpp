#pragma once
/** @file subset.hpp
 *  @brief Fixed-width bit-array subsets of a finite Abelian group.
 */

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "sumfree/group.hpp"

namespace sumfree {

class Subset {
public:
    Subset() = default;
    explicit Subset(GroupPtr G);
    Subset(GroupPtr G, const std::vector<element>& elems);
    Subset(GroupPtr G, std::initializer_list<element> elems);

    static Subset full(GroupPtr G);

    const GroupSpec& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    std::int64_t universe() const { return group_ ? group_->order() : 0; }

    bool contains(element e) const
    {
        return e >= 0 && e < universe() && ((words_[e >> 6] >> (e & 63)) & 1u);
    }
    void insert(element e);
    void erase(element e);
    std::int64_t size() const;
    bool empty() const { return size() == 0; }

    std::vector<element> elements() const;
    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                int b = std::countr_zero(x);
                f(static_cast<element>(w * 64 + b));
                x &= x - 1;
            }
        }
    }

    Subset operator|(const Subset& o) const;
    Subset operator&(const Subset& o) const;
    Subset operator-(const Subset& o) const;
    Subset complement() const;
    bool is_subset_of(const Subset& o) const;
    bool intersects(const Subset& o) const;
    std::int64_t intersection_size(const Subset& o) const;

    bool operator==(const Subset& o) const { return words_ == o.words_ && universe() == o.universe(); }
    /// Lexicographic order on sorted element lists; used for canonical sorting.
    bool operator<(const Subset& o) const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::string str() const; // "{1,3,5}"

private:
    void check_same(const Subset& o) const;

    GroupPtr group_;
    std::vector<std::uint64_t> words_;
};

/// Kernel of a nonzero homomorphism; throws on the zero map.
Subset kernel_subgroup(const GroupPtr& G, const HomToZq& phi);

/// Parses "1,3,5" or "{1,3,5}" into a subset of G.
Subset parse_subset(const GroupPtr& G, const std::string& text);

// Subsets of Z_{2n}.
Subset odd_elements(const GroupPtr& G);
Subset even_elements(const GroupPtr& G);

} // namespace sumfree

#pragma once
/** @file sumfree.hpp
 *  @brief Schur-triple predicates, link sets C1/C2/C3, safe elements and link graphs.
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "sumfree/subset.hpp"

namespace sumfree {

/// True iff no x, y, z in B with x + y = z (x = y and x = z included).
bool is_sum_free(const Subset& B);

/// #{(x, y) in B^2 ordered : x + y in B}.
std::int64_t count_schur_pairs(const Subset& B);
/// #{ {x, y} unordered (x = y allowed) : x + y in B}.
std::int64_t count_schur_pairs_unordered(const Subset& B);

using Pair = std::pair<element, element>; // first < second

struct LinkSets {
    element x = 0;
    Subset c1;              // y in A with x = y + y
    std::vector<Pair> c2;   // {y, z}, y != z, x = y + z
    std::vector<Pair> c3;   // {y, z}, x = y - z or x = z - y
};

LinkSets link_sets(element x, const Subset& A);

/// No member of C(x) against A lies inside W. Requires W inside A.
bool is_safe(element x, const Subset& W, const Subset& A);

struct Edge {
    element a = 0;
    element b = 0;
    element provenance = 0; // the x in S producing the edge
};

class LinkGraph {
public:
    LinkGraph() = default;
    explicit LinkGraph(Subset vertices);

    const Subset& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<element>& neighbors(element v) const { return adj_.at(static_cast<std::size_t>(v)); }
    std::int64_t degree(element v) const { return static_cast<std::int64_t>(neighbors(v).size()); }
    std::int64_t max_degree() const;
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
    bool has_edge(element a, element b) const;

    /// Adds {a, b} unless it is a loop or already present. Both must be vertices.
    void add_edge(element a, element b, element provenance);

private:
    Subset vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<element>> adj_;
};

/// Vertices O_2n; edge {a, b} iff a + b or a - b (either sign) lies in S.
LinkGraph build_link_graph_z2n(const Subset& S);
/// Vertices A; edges are the union of C2(x) over x in S.
LinkGraph build_link_graph_general(const Subset& S, const Subset& A);
LinkGraph restrict_graph(const LinkGraph& Gr, const Subset& removed);

/// U inside sample - T with |U| <= |T|, T inside N(U), via a maximal matching from T.
Subset find_witness_U(const LinkGraph& Gr, const Subset& T, const Subset& sample);

} // namespace sumfree

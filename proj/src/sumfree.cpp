#include "sumfree/sumfree.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumfree {

bool is_sum_free(const Subset& B)
{
    if (B.empty()) return true;
    const auto& G = B.group();
    auto elems = B.elements();
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i; j < elems.size(); ++j)
            if (B.contains(G.add(elems[i], elems[j]))) return false;
    return true;
}

std::int64_t count_schur_pairs(const Subset& B)
{
    if (B.empty()) return 0;
    const auto& G = B.group();
    auto elems = B.elements();
    std::int64_t c = 0;
    for (auto x : elems)
        for (auto y : elems)
            if (B.contains(G.add(x, y))) ++c;
    return c;
}

std::int64_t count_schur_pairs_unordered(const Subset& B)
{
    if (B.empty()) return 0;
    const auto& G = B.group();
    auto elems = B.elements();
    std::int64_t c = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i; j < elems.size(); ++j)
            if (B.contains(G.add(elems[i], elems[j]))) ++c;
    return c;
}

LinkSets link_sets(element x, const Subset& A)
{
    const auto& G = A.group();
    LinkSets L{x, Subset(A.group_ptr()), {}, {}};
    A.for_each([&](element y) {
        if (G.add(y, y) == x) L.c1.insert(y);
        element z = G.sub(x, y);
        if (z != y && A.contains(z) && y < z) L.c2.emplace_back(y, z);
        element w = G.sub(y, x); // y - w = x
        if (w != y && A.contains(w)) L.c3.emplace_back(std::min(y, w), std::max(y, w));
    });
    std::sort(L.c3.begin(), L.c3.end());
    L.c3.erase(std::unique(L.c3.begin(), L.c3.end()), L.c3.end());
    return L;
}

bool is_safe(element x, const Subset& W, const Subset& A)
{
    if (!W.is_subset_of(A)) throw std::invalid_argument("is_safe: W must lie inside A");
    const auto& G = W.group();
    bool safe = true;
    W.for_each([&](element y) {
        if (!safe) return;
        element s = G.add(y, y);
        element z = G.sub(x, y);
        if (s == x || (z != y && W.contains(z))) safe = false;
        else if (x != 0 && (W.contains(G.sub(y, x)) || W.contains(G.add(y, x)))) safe = false;
    });
    return safe;
}

LinkGraph::LinkGraph(Subset vertices)
    : vertices_(std::move(vertices)), adj_(static_cast<std::size_t>(vertices_.universe()))
{
}

std::int64_t LinkGraph::max_degree() const
{
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return static_cast<std::int64_t>(d);
}

bool LinkGraph::has_edge(element a, element b) const
{
    const auto& na = neighbors(a);
    return std::find(na.begin(), na.end(), b) != na.end();
}

void LinkGraph::add_edge(element a, element b, element provenance)
{
    if (a == b) return;
    if (!vertices_.contains(a) || !vertices_.contains(b))
        throw std::invalid_argument("LinkGraph::add_edge: endpoint is not a vertex");
    if (has_edge(a, b)) return;
    if (a > b) std::swap(a, b);
    edges_.push_back({a, b, provenance});
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
}

LinkGraph build_link_graph_z2n(const Subset& S)
{
    const auto& G = S.group();
    if (!G.is_cyclic_literal() || G.order() % 2)
        throw std::invalid_argument("build_link_graph_z2n: group must be Z_2n");
    S.for_each([](element x) {
        if (x % 2) throw std::invalid_argument("build_link_graph_z2n: S contains an odd element");
    });
    LinkGraph Gr(odd_elements(S.group_ptr()));
    S.for_each([&](element x) {
        Gr.vertices().for_each([&](element a) {
            Gr.add_edge(a, G.sub(x, a), x);
            Gr.add_edge(a, G.sub(a, x), x);
            Gr.add_edge(a, G.add(a, x), x);
        });
    });
    return Gr;
}

LinkGraph build_link_graph_general(const Subset& S, const Subset& A)
{
    if (S.intersects(A)) throw std::invalid_argument("build_link_graph_general: S meets A");
    LinkGraph Gr(A);
    S.for_each([&](element x) {
        for (auto [y, z] : link_sets(x, A).c2) Gr.add_edge(y, z, x);
    });
    return Gr;
}

LinkGraph restrict_graph(const LinkGraph& Gr, const Subset& removed)
{
    LinkGraph out(Gr.vertices() - removed);
    for (const auto& e : Gr.edges())
        if (!removed.contains(e.a) && !removed.contains(e.b)) out.add_edge(e.a, e.b, e.provenance);
    return out;
}

Subset find_witness_U(const LinkGraph& Gr, const Subset& T, const Subset& sample)
{
    if (!T.is_subset_of(sample)) throw std::invalid_argument("find_witness_U: T not inside sample");
    Subset rest = sample - T;
    for (const auto& e : Gr.edges())
        if (rest.contains(e.a) && rest.contains(e.b))
            throw std::invalid_argument("find_witness_U: sample - T is not independent");

    Subset U(sample.group_ptr());
    T.for_each([&](element t) {
        if (!Gr.vertices().contains(t)) throw std::invalid_argument("find_witness_U: T not inside the vertex set");
        auto nb = Gr.neighbors(t);
        std::sort(nb.begin(), nb.end());
        bool has_rest_neighbor = false;
        for (auto v : nb) {
            if (!rest.contains(v)) continue;
            has_rest_neighbor = true;
            if (!U.contains(v)) {
                U.insert(v);
                break;
            }
        }
        if (!has_rest_neighbor) throw std::invalid_argument("find_witness_U: T is not minimal");
    });

    // T inside N(U); holds by maximality of the matching, checked anyway
    T.for_each([&](element t) {
        bool ok = false;
        for (auto v : Gr.neighbors(t)) ok = ok || U.contains(v);
        if (!ok) throw std::logic_error("find_witness_U: matching is not maximal");
    });
    return U;
}

} // namespace sumfree

#include "sumfree/extremal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "sumfree/solver.hpp"
#include "sumfree/sumfree.hpp"

namespace sumfree {

namespace {

constexpr std::int64_t catalog_node_cap = 200'000'000;
constexpr std::int64_t direct_check_limit = 512;

void sort_unique(std::vector<Subset>& sets)
{
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

} // namespace

nlohmann::json SFCatalog::to_json() const
{
    nlohmann::json j;
    j["group"] = group ? group->literal() : "";
    j["method"] = method;
    j["sets"] = nlohmann::json::array();
    for (const auto& s : sets) j["sets"].push_back(s.elements());
    if (!provenance.empty()) {
        j["multiplicity"] = nlohmann::json::array();
        for (std::size_t i = 0; i < sets.size(); ++i) j["multiplicity"].push_back(multiplicity(i));
    }
    return j;
}

Subset sumset(const Subset& A)
{
    const auto& G = A.group();
    Subset out(A.group_ptr());
    auto el = A.elements();
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = i; j < el.size(); ++j) out.insert(G.add(el[i], el[j]));
    return out;
}

bool covers_group(const Subset& A)
{
    return (A | sumset(A)).size() == A.group().order();
}

bool is_union_of_kernel_cosets(const Subset& A, const HomToZq& phi)
{
    auto table = hom_table(A.group(), phi);
    std::vector<int> fibre(static_cast<std::size_t>(phi.q), -1); // -1 unseen, 0 out, 1 in
    for (element g = 0; g < A.universe(); ++g) {
        auto& f = fibre[static_cast<std::size_t>(table[static_cast<std::size_t>(g)])];
        int in = A.contains(g) ? 1 : 0;
        if (f == -1) f = in;
        else if (f != in) return false;
    }
    return true;
}

SFCatalog enumerate_sf_type1(const GroupPtr& G)
{
    auto type = classify(*G);
    if (type.tag != GroupType::Tag::I) throw std::invalid_argument("enumerate_sf_type1: " + G->literal() + " is not type I");
    const std::int64_t q = type.q, k = (q - 2) / 3;
    const std::int64_t want = extremal_size(*G);

    // For large G the sum-free and covering checks run in Z_q: A is a union of
    // fibres of a surjective phi, so A + A is the preimage of I + I.
    Subset I(cyclic_group(q));
    for (auto r = k + 1; r <= 2 * k + 1; ++r) I.insert(r);
    const bool quotient_ok = is_sum_free(I) && covers_group(I);
    const bool direct = G->order() <= direct_check_limit;

    std::map<Subset, std::vector<HomToZq>> found;
    for (const auto& phi : enumerate_homs_to_Zq(*G, q)) {
        if (phi.is_zero()) continue;
        auto table = hom_table(*G, phi);
        Subset A(G);
        for (element g = 0; g < G->order(); ++g) {
            auto r = table[static_cast<std::size_t>(g)];
            if (r >= k + 1 && r <= 2 * k + 1) A.insert(g);
        }
        bool ok = A.size() == want && is_union_of_kernel_cosets(A, phi);
        ok = ok && (direct ? is_sum_free(A) && covers_group(A) : quotient_ok);
        if (!ok) throw std::logic_error("enumerate_sf_type1: preimage failed verification");
        found[A].push_back(phi);
    }
    SFCatalog cat{G, {}, {}, "hom-based"};
    for (auto& [A, homs] : found) {
        cat.sets.push_back(A);
        cat.provenance.push_back(std::move(homs));
    }
    return cat;
}

SFCatalog enumerate_sf_bruteforce(const GroupPtr& G, std::int64_t size_cap)
{
    if (G->order() > size_cap)
        throw std::invalid_argument("enumerate_sf_bruteforce: |G| = " + std::to_string(G->order()) +
                                    " exceeds the cap " + std::to_string(size_cap));
    auto r = max_sum_free(Subset::full(G), true, catalog_node_cap);
    if (!r.enumeration_complete) throw indeterminate_error("enumerate_sf_bruteforce: node cap exhausted");
    SFCatalog cat{G, std::move(*r.optima), {}, "brute-force"};
    sort_unique(cat.sets);
    return cat;
}

SFCatalog dilation_family_z3q(const GroupPtr& G)
{
    const auto n = G->order();
    if (!G->is_cyclic_literal() || n % 3 || n < 6)
        throw std::invalid_argument("dilation_family_z3q: group must be Z_3q with q >= 2");
    const auto q = n / 3;
    SFCatalog cat{G, {}, {}, "dilation-family"};
    for (std::int64_t r : {1, 2}) {
        Subset A(G);
        for (element g = r; g < n; g += 3) A.insert(g);
        cat.sets.push_back(A);
    }
    for (std::int64_t d = 1; d < n; ++d) {
        if (std::gcd(d, n) != 1) continue;
        Subset A(G);
        for (std::int64_t x = q; x < 2 * q; ++x) A.insert(d * x % n);
        cat.sets.push_back(A);
    }
    sort_unique(cat.sets);
    for (const auto& A : cat.sets)
        if (!is_sum_free(A)) throw std::logic_error("dilation_family_z3q: member is not sum-free");
    return cat;
}

SFCatalog sf_catalog(const GroupPtr& G)
{
    if (classify(*G).tag == GroupType::Tag::I) return enumerate_sf_type1(G);
    return enumerate_sf_bruteforce(G);
}

StabilityVerdict saturation_check(const Subset& A, Rational epsilon)
{
    const Rational n(A.universe());
    if (epsilon <= Rational(0)) throw std::invalid_argument("saturation_check: epsilon must be positive");
    if (Rational(A.size()) < (Rational(1, 3) + epsilon) * n)
        throw std::invalid_argument("saturation_check: |A| < (1/3 + eps) n");
    auto r = max_sum_free(A, false, catalog_node_cap);
    if (!r.enumeration_complete) throw indeterminate_error("saturation_check: node cap exhausted");
    const auto distance = A.size() - r.max_size;
    if (Rational(distance) <= epsilon * n) return {CloseToExtremal{r.witness, distance}, epsilon};
    return {ManyTriples{count_schur_pairs(A)}, epsilon};
}

StabilityVerdict stability_check(const Subset& A, Rational epsilon)
{
    const auto& G = A.group_ptr();
    auto type = classify(*G);
    if (type.tag != GroupType::Tag::I) throw std::invalid_argument("stability_check: group is not type I");
    const auto q = type.q;
    if (epsilon <= Rational(0) || epsilon >= Rational(1, 9 * q * q + 9 * q))
        throw std::invalid_argument("stability_check: need 0 < eps < 1/(9q^2 + 9q)");
    const Rational n(A.universe());
    if (Rational(A.size()) < (mu(*G) - epsilon) * n)
        throw std::invalid_argument("stability_check: |A| < (mu - eps) n");

    auto cat = enumerate_sf_type1(G);
    const Subset* nearest = nullptr;
    std::int64_t best = 0;
    for (const auto& S : cat.sets) {
        auto d = A.size() - A.intersection_size(S);
        if (!nearest || d < best) {
            nearest = &S;
            best = d;
        }
    }
    if (Rational(best) <= epsilon * n) return {CloseToExtremal{*nearest, best}, epsilon};
    return {ManyTriples{count_schur_pairs(A)}, epsilon};
}

} // namespace sumfree

#include "sumfree/subset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sumfree {

Subset::Subset(GroupPtr G) : group_(std::move(G))
{
    if (!group_) throw std::invalid_argument("Subset: null group");
    words_.assign(static_cast<std::size_t>((group_->order() + 63) / 64), 0);
}

Subset::Subset(GroupPtr G, const std::vector<element>& elems) : Subset(std::move(G))
{
    for (auto e : elems) insert(e);
}

Subset::Subset(GroupPtr G, std::initializer_list<element> elems) : Subset(std::move(G))
{
    for (auto e : elems) insert(e);
}

Subset Subset::full(GroupPtr G)
{
    Subset s(std::move(G));
    for (element e = 0; e < s.universe(); ++e) s.insert(e);
    return s;
}

void Subset::insert(element e)
{
    if (e < 0 || e >= universe()) throw std::out_of_range("Subset::insert: element out of range");
    words_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

void Subset::erase(element e)
{
    if (e < 0 || e >= universe()) throw std::out_of_range("Subset::erase: element out of range");
    words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

std::int64_t Subset::size() const
{
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

std::vector<element> Subset::elements() const
{
    std::vector<element> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](element e) { out.push_back(e); });
    return out;
}

void Subset::check_same(const Subset& o) const
{
    if (universe() != o.universe()) throw std::invalid_argument("Subset: mismatched groups");
}

Subset Subset::operator|(const Subset& o) const
{
    check_same(o);
    Subset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
    return r;
}

Subset Subset::operator&(const Subset& o) const
{
    check_same(o);
    Subset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
}

Subset Subset::operator-(const Subset& o) const
{
    check_same(o);
    Subset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
}

Subset Subset::complement() const
{
    Subset r = *this;
    for (auto& w : r.words_) w = ~w;
    if (auto tail = universe() & 63; tail && !r.words_.empty())
        r.words_.back() &= (std::uint64_t{1} << tail) - 1;
    return r;
}

bool Subset::is_subset_of(const Subset& o) const
{
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool Subset::intersects(const Subset& o) const
{
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

std::int64_t Subset::intersection_size(const Subset& o) const
{
    check_same(o);
    std::int64_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
}

bool Subset::operator<(const Subset& o) const
{
    auto a = elements(), b = o.elements();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string Subset::str() const
{
    std::string s = "{";
    bool first = true;
    for_each([&](element e) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    });
    return s + "}";
}

Subset kernel_subgroup(const GroupPtr& G, const HomToZq& phi)
{
    if (phi.is_zero()) throw std::invalid_argument("kernel_subgroup: zero homomorphism");
    Subset H(G);
    for (element e = 0; e < G->order(); ++e)
        if (phi(*G, e) == 0) H.insert(e);
    return H;
}

Subset parse_subset(const GroupPtr& G, const std::string& text)
{
    std::string t;
    for (char c : text)
        if (c != '{' && c != '}' && c != ' ') t += c;
    Subset s(G);
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad element '" + tok + "'");
        }
        if (pos != tok.size()) throw std::invalid_argument("bad element '" + tok + "'");
        s.insert(v);
    }
    return s;
}

Subset odd_elements(const GroupPtr& G)
{
    if (!G->is_cyclic_literal() || G->order() % 2) throw std::invalid_argument("odd_elements: need Z_2n");
    Subset s(G);
    for (element e = 1; e < G->order(); e += 2) s.insert(e);
    return s;
}

Subset even_elements(const GroupPtr& G)
{
    if (!G->is_cyclic_literal() || G->order() % 2) throw std::invalid_argument("even_elements: need Z_2n");
    Subset s(G);
    for (element e = 0; e < G->order(); e += 2) s.insert(e);
    return s;
}

} // namespace sumfree

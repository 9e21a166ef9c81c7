#include "sumfree/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace sumfree {

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

GroupSpec::GroupSpec(std::vector<std::int64_t> orders) : orders_(std::move(orders))
{
    strides_.assign(orders_.size(), 1);
    for (std::size_t i = orders_.size(); i-- > 0;) {
        if (orders_[i] < 2) throw std::invalid_argument("GroupSpec: factor orders must be >= 2");
        strides_[i] = n_;
        if (n_ > (std::int64_t{1} << 40) / orders_[i])
            throw std::invalid_argument("GroupSpec: group too large");
        n_ *= orders_[i];
    }
}

void GroupSpec::check(element e) const
{
    if (e < 0 || e >= n_) throw std::out_of_range("element index out of range");
}

std::vector<std::int64_t> GroupSpec::decode(element e) const
{
    check(e);
    std::vector<std::int64_t> r(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) r[i] = (e / strides_[i]) % orders_[i];
    return r;
}

element GroupSpec::encode(const std::vector<std::int64_t>& residues) const
{
    if (residues.size() != orders_.size()) throw std::invalid_argument("encode: wrong arity");
    element e = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (residues[i] < 0 || residues[i] >= orders_[i])
            throw std::out_of_range("encode: residue out of range");
        e += residues[i] * strides_[i];
    }
    return e;
}

element GroupSpec::add(element a, element b) const
{
    check(a);
    check(b);
    if (orders_.size() == 1) {
        element s = a + b;
        return s >= n_ ? s - n_ : s;
    }
    element out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::int64_t m = orders_[i], st = strides_[i];
        std::int64_t r = (a / st) % m + (b / st) % m;
        if (r >= m) r -= m;
        out += r * st;
    }
    return out;
}

element GroupSpec::neg(element a) const
{
    check(a);
    if (orders_.size() == 1) return a == 0 ? 0 : n_ - a;
    element out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::int64_t m = orders_[i], st = strides_[i];
        std::int64_t r = (a / st) % m;
        out += (r == 0 ? 0 : m - r) * st;
    }
    return out;
}

std::vector<std::int64_t> GroupSpec::canonical_orders() const
{
    std::vector<std::pair<std::int64_t, std::int64_t>> parts; // (prime, power)
    for (auto m : orders_) {
        for (auto p : prime_factors(m)) {
            std::int64_t pk = 1;
            while (m % p == 0) {
                m /= p;
                pk *= p;
            }
            parts.emplace_back(p, pk);
        }
    }
    std::sort(parts.begin(), parts.end(), [](auto& x, auto& y) {
        return x.first != y.first ? x.first < y.first : x.second > y.second;
    });
    std::vector<std::int64_t> out;
    for (auto& [p, pk] : parts) out.push_back(pk);
    return out;
}

bool GroupSpec::isomorphic_to(const GroupSpec& other) const
{
    return canonical_orders() == other.canonical_orders();
}

std::string GroupSpec::literal() const
{
    if (orders_.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < orders_.size() && orders_[j + 1] == orders_[i]) ++j;
        if (!s.empty()) s += "x";
        s += "Z" + std::to_string(orders_[i]);
        if (j > i) s += "^" + std::to_string(j - i + 1);
        i = j;
    }
    return s;
}

GroupPtr make_group(std::vector<std::int64_t> orders)
{
    return std::make_shared<const GroupSpec>(std::move(orders));
}

GroupPtr cyclic_group(std::int64_t n) { return make_group({n}); }

GroupPtr parse_group(const std::string& literal)
{
    std::string s;
    for (char c : literal)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s.empty()) throw std::invalid_argument("empty group literal");

    auto number = [&](std::size_t& i) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || i - start > 12)
            throw std::invalid_argument("bad group literal '" + literal + "'");
        return std::stoll(s.substr(start, i - start));
    };

    std::vector<std::int64_t> orders;
    std::size_t i = 0;
    while (true) {
        if (i >= s.size() || s[i] != 'z') throw std::invalid_argument("bad group literal '" + literal + "'");
        ++i;
        std::int64_t m = number(i);
        std::int64_t rep = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            rep = number(i);
            if (rep < 1 || rep > 40) throw std::invalid_argument("bad repetition in '" + literal + "'");
        }
        if (m != 1)
            for (std::int64_t r = 0; r < rep; ++r) orders.push_back(m);
        if (i == s.size()) break;
        if (s[i] != 'x') throw std::invalid_argument("bad group literal '" + literal + "'");
        ++i;
    }
    return make_group(std::move(orders));
}

element element_add(const GroupSpec& G, element a, element b) { return G.add(a, b); }
element element_neg(const GroupSpec& G, element a) { return G.neg(a); }

std::string GroupType::str() const
{
    switch (tag) {
    case Tag::I: return "I(" + std::to_string(q) + ")";
    case Tag::II: return "II";
    default: return "III";
    }
}

std::int64_t group_exponent(const GroupSpec& G)
{
    std::int64_t e = 1;
    for (auto m : G.orders()) e = std::lcm(e, m);
    return e;
}

GroupType classify(const GroupSpec& G)
{
    if (G.order() < 2) throw std::invalid_argument("classify: trivial group");
    GroupType t;
    auto ps = prime_factors(G.order());
    for (auto p : ps) {
        if (p % 3 == 2) {
            t.tag = GroupType::Tag::I;
            t.q = p;
            return t;
        }
    }
    if (G.order() % 3 == 0) {
        t.tag = GroupType::Tag::II;
        return t;
    }
    t.tag = GroupType::Tag::III;
    t.exponent = group_exponent(G);
    return t;
}

Rational mu(const GroupSpec& G)
{
    auto t = classify(G);
    switch (t.tag) {
    case GroupType::Tag::I: return Rational(1, 3) + Rational(1, 3 * t.q);
    case GroupType::Tag::II: return Rational(1, 3);
    default: return Rational(1, 3) - Rational(1, 3 * t.exponent);
    }
}

std::int64_t extremal_size(const GroupSpec& G)
{
    Rational s = mu(G) * Rational(G.order());
    if (!s.is_integer()) throw std::logic_error("mu(G)*n not integral");
    return s.num();
}

std::int64_t HomToZq::operator()(const GroupSpec& G, element e) const
{
    auto r = G.decode(e);
    std::int64_t v = 0;
    for (std::size_t i = 0; i < r.size(); ++i) v = (v + (r[i] % q) * images[i]) % q;
    return v;
}

std::vector<std::int64_t> hom_table(const GroupSpec& G, const HomToZq& phi)
{
    const auto& ord = G.orders();
    std::vector<std::int64_t> digit(ord.size(), 0), out(static_cast<std::size_t>(G.order()));
    std::int64_t v = 0;
    for (auto& slot : out) {
        slot = v;
        // odometer step, last factor fastest
        for (std::size_t i = ord.size(); i-- > 0;) {
            v = (v + phi.images[i]) % phi.q;
            if (++digit[i] < ord[i]) break;
            v = ((v - ord[i] % phi.q * phi.images[i]) % phi.q + phi.q) % phi.q;
            digit[i] = 0;
        }
    }
    return out;
}

bool HomToZq::is_zero() const
{
    return std::all_of(images.begin(), images.end(), [](auto c) { return c == 0; });
}

std::vector<HomToZq> enumerate_homs_to_Zq(const GroupSpec& G, std::int64_t q)
{
    if (!is_prime(q)) throw std::invalid_argument("enumerate_homs_to_Zq: q not prime");
    const auto& ord = G.orders();
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < ord.size(); ++i)
        if (ord[i] % q == 0) free.push_back(i);

    std::vector<HomToZq> out;
    HomToZq h{q, std::vector<std::int64_t>(ord.size(), 0)};
    // odometer over the free coordinates, first free coordinate slowest
    while (true) {
        out.push_back(h);
        std::size_t j = free.size();
        while (j > 0) {
            auto& c = h.images[free[j - 1]];
            if (++c < q) break;
            c = 0;
            --j;
        }
        if (j == 0) break;
    }
    return out;
}

namespace {

void partitions(std::int64_t n, std::int64_t max_part, std::vector<std::int64_t>& cur,
                std::vector<std::vector<std::int64_t>>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (std::int64_t k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<GroupPtr> enumerate_abelian_groups(std::int64_t order)
{
    if (order < 2) throw std::invalid_argument("enumerate_abelian_groups: order < 2");
    // per prime: list of partitions of its exponent, turned into prime powers
    std::vector<std::vector<std::vector<std::int64_t>>> per_prime;
    std::int64_t n = order;
    for (auto p : prime_factors(order)) {
        std::int64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        std::vector<std::vector<std::int64_t>> parts;
        std::vector<std::int64_t> cur;
        partitions(e, e, cur, parts);
        std::vector<std::vector<std::int64_t>> powers;
        for (auto& part : parts) {
            std::vector<std::int64_t> pw;
            for (auto k : part) {
                std::int64_t v = 1;
                for (std::int64_t i = 0; i < k; ++i) v *= p;
                pw.push_back(v);
            }
            powers.push_back(std::move(pw));
        }
        per_prime.push_back(std::move(powers));
    }

    std::vector<GroupPtr> out;
    std::vector<std::size_t> idx(per_prime.size(), 0);
    while (true) {
        std::vector<std::int64_t> orders;
        for (std::size_t i = 0; i < per_prime.size(); ++i)
            orders.insert(orders.end(), per_prime[i][idx[i]].begin(), per_prime[i][idx[i]].end());
        out.push_back(make_group(std::move(orders)));
        std::size_t j = per_prime.size();
        while (j > 0) {
            if (++idx[j - 1] < per_prime[j - 1].size()) break;
            idx[j - 1] = 0;
            --j;
        }
        if (j == 0) break;
    }
    return out;
}

} // namespace sumfree

#include "sumfree/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace sumfree {

namespace {

void check_p(double p, bool allow_one)
{
    if (!(p >= 0.0) || p > 1.0 || (!allow_one && p == 1.0))
        throw std::invalid_argument(allow_one ? "probability must lie in [0, 1]" : "probability must lie in [0, 1)");
}

long double pow_p(double p, std::size_t k)
{
    return std::pow(static_cast<long double>(p), static_cast<long double>(k));
}

std::size_t union_size(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, bool& meet)
{
    std::size_t i = 0, j = 0, common = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    meet = common > 0;
    return a.size() + b.size() - common;
}

} // namespace

SetFamily::SetFamily(std::int64_t universe_size, std::vector<std::vector<std::int64_t>> members)
    : universe_(universe_size), members_(std::move(members))
{
    if (universe_ < 0) throw std::invalid_argument("SetFamily: negative universe size");
    for (auto& m : members_) {
        if (m.empty()) throw std::invalid_argument("SetFamily: empty member");
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        if (m.front() < 0 || m.back() >= universe_) throw std::invalid_argument("SetFamily: index out of range");
    }
}

long double fkg_lower(const SetFamily& F, double p)
{
    check_p(p, true);
    long double log_m = 0;
    for (const auto& B : F.members()) log_m += std::log1p(-pow_p(p, B.size()));
    return std::exp(log_m);
}

JansonStats janson_stats(const SetFamily& F, double p)
{
    check_p(p, false);
    JansonStats s;
    s.p = p;
    s.M = fkg_lower(F, p);
    const auto& ms = F.members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        s.mu += pow_p(p, ms[i].size());
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            bool meet = false;
            auto u = union_size(ms[i], ms[j], meet);
            if (meet) s.delta += 2 * pow_p(p, u);
        }
    }
    s.bound_mu_delta = std::exp(-s.mu + s.delta / 2);
    s.bound_main = std::min(s.M * std::exp(s.delta / (2 - 2 * static_cast<long double>(p))), s.bound_mu_delta);
    if (s.delta >= s.mu && s.delta > 0) s.bound_ratio = std::exp(-s.mu * s.mu / (2 * s.delta));
    return s;
}

ChernoffBounds chernoff_bounds(std::int64_t n, double p, double a)
{
    if (!(a > 0)) throw std::invalid_argument("chernoff_bounds: a must be positive");
    const double pn = p * static_cast<double>(n);
    if (!(pn > 0)) throw std::invalid_argument("chernoff_bounds: pn must be positive");
    ChernoffBounds b;
    b.lower_tail = std::exp(-a * a / (2 * pn));
    b.upper_tail = std::exp(-a * a / (2 * pn) + a * a * a / (2 * pn * pn));
    return b;
}

long double exact_avoidance_probability(const SetFamily& F, double p)
{
    check_p(p, true);
    const auto u = F.universe_size();
    if (u > 20) throw std::invalid_argument("exact_avoidance_probability: universe larger than 20");
    const std::size_t full = std::size_t{1} << u;
    // bad[X] = some member lies inside X; superset closure of the member masks
    std::vector<char> bad(full, 0);
    for (const auto& B : F.members()) {
        std::size_t m = 0;
        for (auto e : B) m |= std::size_t{1} << e;
        bad[m] = 1;
    }
    for (std::int64_t b = 0; b < u; ++b)
        for (std::size_t X = 0; X < full; ++X)
            if (X >> b & 1) bad[X] = bad[X] || bad[X ^ (std::size_t{1} << b)];

    std::vector<long double> good_by_size(static_cast<std::size_t>(u) + 1, 0);
    for (std::size_t X = 0; X < full; ++X)
        if (!bad[X]) good_by_size[static_cast<std::size_t>(std::popcount(X))] += 1;
    long double total = 0;
    for (std::int64_t k = 0; k <= u; ++k) {
        if (good_by_size[static_cast<std::size_t>(k)] == 0) continue;
        total += good_by_size[static_cast<std::size_t>(k)] * pow_p(p, static_cast<std::size_t>(k)) *
                 pow_p(1 - p, static_cast<std::size_t>(u - k));
    }
    return total;
}

} // namespace sumfree

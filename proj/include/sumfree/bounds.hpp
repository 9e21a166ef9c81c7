#pragma once
/** @file bounds.hpp
 *  @brief FKG, Janson and Chernoff evaluators, and an exact avoidance
 *  probability for small universes.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sumfree {

/// Members are index sets over {0, ..., universe_size - 1}.
class SetFamily {
public:
    SetFamily() = default;
    /// Throws std::invalid_argument on an empty member or an index out of range.
    SetFamily(std::int64_t universe_size, std::vector<std::vector<std::int64_t>> members);

    std::int64_t universe_size() const { return universe_; }
    const std::vector<std::vector<std::int64_t>>& members() const { return members_; } // each sorted, distinct

private:
    std::int64_t universe_ = 0;
    std::vector<std::vector<std::int64_t>> members_;
};

/// prod (1 - p^|B_i|), accumulated in the log domain.
long double fkg_lower(const SetFamily& F, double p);

struct JansonStats {
    double p = 0;
    long double M = 1;     // prod (1 - p^|B_i|)
    long double mu = 0;    // sum p^|B_i|
    long double delta = 0; // ordered pairs i != j with B_i, B_j intersecting
    long double bound_mu_delta = 1; // exp(-mu + delta/2)
    long double bound_main = 1;     // min(M exp(delta/(2-2p)), bound_mu_delta)
    std::optional<long double> bound_ratio; // exp(-mu^2/(2 delta)), only when delta >= mu
};

/// Requires 0 <= p < 1.
JansonStats janson_stats(const SetFamily& F, double p);

struct ChernoffBounds {
    double upper_tail = 1; // exp(-a^2/(2pn) + a^3/(2(pn)^2))
    double lower_tail = 1; // exp(-a^2/(2pn))
};

/// Requires a > 0 and pn > 0.
ChernoffBounds chernoff_bounds(std::int64_t n, double p, double a);

/// P(no member lies inside X_p), summing over all 2^universe subsets; universe <= 20.
long double exact_avoidance_probability(const SetFamily& F, double p);

} // namespace sumfree

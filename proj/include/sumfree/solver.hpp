#pragma once
/** @file solver.hpp
 *  @brief Exact maximum sum-free subsets, SF(B) enumeration and the decision
 *  procedures for "sum-free good" and SF(G_p) = {G_p & O_2n}.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sumfree/subset.hpp"

namespace sumfree {

inline constexpr std::int64_t default_node_cap = 1'000'000;

/// Raised when a node cap runs out before a yes/no answer is known.
class indeterminate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveResult {
    std::int64_t max_size = 0;
    Subset witness;
    std::optional<std::vector<Subset>> optima;
    bool enumeration_complete = true; // false when the cap cut the search short
    std::int64_t nodes_explored = 0;
};

/// Branch and bound over the Schur-constraint hypergraph of B.
SolveResult max_sum_free(const Subset& B, bool enumerate = false, std::int64_t cap = default_node_cap);

/// Every sum-free subset of B with at least min_size elements (for small B).
std::vector<Subset> enumerate_sum_free_at_least(const Subset& B, std::int64_t min_size,
                                                std::int64_t cap = default_node_cap);

struct GoodnessVerdict {
    bool good = true;
    std::optional<Subset> counterexample;
    std::int64_t max_size = 0;
    bool max_exact = true; // false: max_size is only the best size found within the cap
    std::int64_t nodes_explored = 0;
};

/// Throws indeterminate_error when the cap is exhausted.
GoodnessVerdict is_sum_free_good(const Subset& B, const std::vector<Subset>& catalog,
                                 std::int64_t cap = default_node_cap);

struct SharpOutcome {
    bool event = true;           // SF(sample) == {sample & O_2n}
    std::int64_t s0 = 0;         // |sample & O_2n|
    std::int64_t solver_max = 0; // size of a maximum sum-free subset of sample
    bool solver_max_exact = true;
    std::int64_t nodes_explored = 0;
};

/// The event is decided exactly or indeterminate_error is thrown. solver_max is
/// exact unless solver_max_exact is false.
SharpOutcome analyze_sharp_event(const Subset& sample, std::int64_t cap = default_node_cap);
bool decide_sharp_event(const Subset& sample, std::int64_t cap = default_node_cap);

/// A_sample plus every safe candidate; throws if the union is not sum-free.
Subset augment_with_safe(const Subset& A_sample, const Subset& candidates, const Subset& A);

/// Search for a sum-free M inside B, not inside anchor, |M| >= target, contained in
/// no member of `escape`. With maximize, returns a largest such M.
struct AnchoredResult {
    std::optional<Subset> best;
    std::int64_t nodes_explored = 0;
    bool complete = true; // false if the cap stopped a maximize run after a find
};
AnchoredResult anchored_search(const Subset& B, const Subset& anchor, const std::vector<Subset>& escape,
                               std::int64_t target, bool maximize, std::int64_t cap = default_node_cap);

} // namespace sumfree

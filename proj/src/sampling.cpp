#include "sumfree/sampling.hpp"

#include <stdexcept>

namespace sumfree {

Subset sample_subset(const GroupPtr& G, double p, std::uint64_t master_seed, std::uint64_t trial_index)
{
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_subset: p outside [0,1]");
    Subset s(G);
    for (element e = 0; e < G->order(); ++e)
        if (sample_uniform(master_seed, trial_index, static_cast<std::uint64_t>(e)) < p) s.insert(e);
    return s;
}

} // namespace sumfree

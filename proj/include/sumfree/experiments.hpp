#pragma once
/** @file experiments.hpp
 *  @brief Monte Carlo sweeps: the sharp event in Z_2n, sum-free goodness,
 *  counterexample witnesses and the safe-element census.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/group.hpp"
#include "sumfree/solver.hpp"
#include "sumfree/subset.hpp"

namespace sumfree {

enum class ExperimentKind { SharpEvent, SumFreeGood, CounterexampleWitness, SafeCensus };

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& s);

/// One group of a family together with the n used in p = sqrt(C ln n / n).
struct FamilyMember {
    GroupPtr group;
    std::int64_t n = 0;
};

/// Families: "Z2n" (order 2n), "Zn", "Z2xZn" (n = |G|), "Z2^k" (n = 2^(k-1)),
/// or a fixed literal such as "Z4xZ3" (n = |G|, parameter ignored).
FamilyMember family_member(const std::string& family, std::int64_t param);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::SharpEvent;
    std::string group_family = "Z2n";
    std::vector<std::int64_t> params;  // family parameters, e.g. n for Z2n, k for Z2^k
    std::vector<double> c_grid;        // p = sqrt(C ln n / n)
    std::vector<double> p_grid;        // explicit p values instead of c_grid
    std::int64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::int64_t cap = default_node_cap;
    unsigned threads = 1;
    bool timing = false; // record elapsed_ms; off keeps the CSV reproducible

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

double p_from_c(double C, std::int64_t n);

enum class Decision { True, False, Indeterminate, NotApplicable };
std::string to_string(Decision d);

struct TrialRecord {
    std::int64_t n = 0;
    std::optional<double> C; // absent for explicit-p sweeps
    double p = 0;
    std::int64_t trial = 0;
    Decision decision = Decision::NotApplicable;
    std::int64_t sample_size = 0;
    std::int64_t s0 = 0;         // |sample & reference extremal set|
    std::int64_t solver_max = 0; // largest sum-free subset of the sample known
    bool witness_found = false;
    std::int64_t safe_count = 0;
    std::int64_t safe_in_sample = 0;
    std::int64_t elapsed_ms = 0;
};

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// 95% Wilson score interval; successes <= trials.
Interval wilson_interval(std::int64_t successes, std::int64_t trials);

struct PointSummary {
    std::string group;
    std::int64_t n = 0;
    std::optional<double> C;
    double p = 0;
    std::int64_t trials = 0;
    std::int64_t decided = 0;
    std::int64_t successes = 0; // decision == True
    std::int64_t indeterminate = 0;
    double estimate = 0;
    Interval ci;
    double indeterminate_rate = 0;
    double mean_safe = 0;
    double safe_half_width = 0; // 95% normal half-width of mean_safe
    double mean_safe_in_sample = 0;
};

struct SweepSummary {
    ExperimentKind kind = ExperimentKind::SharpEvent;
    std::vector<TrialRecord> records; // point-major, then trial index
    std::vector<PointSummary> points;

    /// More than 1% indeterminate trials at some point.
    bool indeterminate_exceeded() const;
    std::string csv() const;
    nlohmann::json summary_json() const;
};

SweepSummary run_sharp_sweep(const ExperimentConfig& cfg);
/// Catalog per group from sf_catalog.
SweepSummary run_goodness_sweep(const ExperimentConfig& cfg);
/// Same, with a fixed catalog; every group of the sweep must equal catalog.group.
SweepSummary run_goodness_sweep(const ExperimentConfig& cfg, const SFCatalog& catalog);
SweepSummary run_counterexample_witness(const ExperimentConfig& cfg);
SweepSummary run_safe_census(const ExperimentConfig& cfg);
/// Dispatch on cfg.kind.
SweepSummary run_sweep(const ExperimentConfig& cfg);

struct IntervalFamily {
    std::int64_t l = 0, r = 0, l1 = 0, r2 = 0; // l, r, l', r'
    Subset A, A1, A2;                          // A, A', A''
};

/// A = [l, r], A' = [l', l-1], A'' = [r', r] in Z_n. Throws when an interval is empty.
IntervalFamily interval_family(std::int64_t n, double m);
/// Every x + y = z inside A u A' has x, y in A'' and z in A'.
bool interval_structure_holds(const IntervalFamily& F);

/// Even x in [1, n-1] that are safe for W = sample & O_2n against O_2n.
Subset safe_evens(const Subset& sample);

} // namespace sumfree

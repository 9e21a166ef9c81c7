#include "sumfree/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sumfree/sampling.hpp"
#include "sumfree/sumfree.hpp"

namespace sumfree {

std::string to_string(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::SharpEvent: return "SharpEvent";
    case ExperimentKind::SumFreeGood: return "SumFreeGood";
    case ExperimentKind::CounterexampleWitness: return "CounterexampleWitness";
    case ExperimentKind::SafeCensus: return "SafeCensus";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string& s)
{
    for (auto k : {ExperimentKind::SharpEvent, ExperimentKind::SumFreeGood, ExperimentKind::CounterexampleWitness,
                   ExperimentKind::SafeCensus})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

std::string to_string(Decision d)
{
    switch (d) {
    case Decision::True: return "true";
    case Decision::False: return "false";
    case Decision::Indeterminate: return "indeterminate";
    case Decision::NotApplicable: return "na";
    }
    return "?";
}

FamilyMember family_member(const std::string& family, std::int64_t param)
{
    if (family == "Z2n") {
        if (param < 1) throw std::invalid_argument("Z2n needs n >= 1");
        return {cyclic_group(2 * param), param};
    }
    if (family == "Zn") {
        if (param < 1) throw std::invalid_argument("Zn needs n >= 1");
        return {cyclic_group(param), param};
    }
    if (family == "Z2xZn") {
        if (param < 1) throw std::invalid_argument("Z2xZn needs n >= 1");
        return {make_group({2, param}), 2 * param};
    }
    if (family == "Z2^k") {
        if (param < 1 || param > 24) throw std::invalid_argument("Z2^k needs 1 <= k <= 24");
        return {make_group(std::vector<std::int64_t>(static_cast<std::size_t>(param), 2)),
                std::int64_t{1} << (param - 1)};
    }
    auto G = parse_group(family);
    return {G, G->order()};
}

double p_from_c(double C, std::int64_t n)
{
    if (!(C > 0)) throw std::invalid_argument("C must be positive");
    if (n < 2) throw std::invalid_argument("p = sqrt(C ln n / n) needs n >= 2");
    const double nd = static_cast<double>(n);
    return std::min(1.0, std::sqrt(C * std::log(nd) / nd));
}

void ExperimentConfig::validate() const
{
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (c_grid.empty() == p_grid.empty()) throw std::invalid_argument("give exactly one of c_grid and p_grid");
    for (double C : c_grid)
        if (!(C > 0)) throw std::invalid_argument("every C must be positive");
    for (double p : p_grid)
        if (!(p >= 0 && p <= 1)) throw std::invalid_argument("every p must lie in [0, 1]");
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    if (params.empty()) throw std::invalid_argument("params must list at least one family parameter");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j)
{
    static const char* known[] = {"kind", "experiment_kind", "group_family", "params", "n", "c_grid", "p_grid",
                                  "trials", "master_seed", "cap", "threads", "timing"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) ==
            std::end(known))
            throw std::invalid_argument("unknown config key: " + it.key());

    ExperimentConfig c;
    if (j.contains("kind") == j.contains("experiment_kind"))
        throw std::invalid_argument("config needs exactly one of kind, experiment_kind");
    c.kind = parse_experiment_kind(j.at(j.contains("kind") ? "kind" : "experiment_kind").get<std::string>());
    c.group_family = j.value("group_family", c.group_family);
    if (j.contains("params")) c.params = j.at("params").get<std::vector<std::int64_t>>();
    else if (j.contains("n")) c.params = j.at("n").get<std::vector<std::int64_t>>();
    if (j.contains("c_grid")) c.c_grid = j.at("c_grid").get<std::vector<double>>();
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    c.trials = j.value("trials", c.trials);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.cap = j.value("cap", c.cap);
    c.threads = j.value("threads", c.threads);
    c.timing = j.value("timing", c.timing);
    c.validate();
    return c;
}

nlohmann::json ExperimentConfig::to_json() const
{
    nlohmann::json j;
    j["kind"] = to_string(kind);
    j["group_family"] = group_family;
    j["params"] = params;
    if (!c_grid.empty()) j["c_grid"] = c_grid;
    if (!p_grid.empty()) j["p_grid"] = p_grid;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    j["cap"] = cap;
    return j;
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials)
{
    if (trials <= 0) return {0.0, 1.0};
    if (successes < 0 || successes > trials) throw std::invalid_argument("wilson_interval: bad counts");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double denom = 1 + z * z / n;
    const double center = (ph + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
    // the bounds are exactly 0 and 1 at the extremes; rounding leaves ~1e-18
    return {successes == 0 ? 0.0 : std::max(0.0, center - half), successes == trials ? 1.0 : std::min(1.0, center + half)};
}

IntervalFamily interval_family(std::int64_t n, double m)
{
    if (n < 3) throw std::invalid_argument("interval_family: n must be >= 3");
    if (!(m > 0)) throw std::invalid_argument("interval_family: m must be positive");
    constexpr double tol = 1e-9; // keeps exact integers like 4m = 12 from rounding up
    auto up = [&](double x) { return static_cast<std::int64_t>(std::ceil(x - tol)); };
    auto down = [&](double x) { return static_cast<std::int64_t>(std::floor(x + tol)); };
    const std::int64_t third_up = (n + 2) / 3, two_thirds = 2 * n / 3;

    IntervalFamily F;
    F.l = third_up + up(4 * m) + 1;
    F.r = two_thirds + down(2 * m);
    F.l1 = third_up + up(m) + 1;
    F.r2 = two_thirds - up(m);
    if (F.r >= n || F.l > F.r) throw std::invalid_argument("interval_family: A is empty or wraps around");
    if (F.l1 > F.l - 1) throw std::invalid_argument("interval_family: A' is empty");
    if (F.r2 > F.r || F.r2 < 1) throw std::invalid_argument("interval_family: A'' is empty");

    auto G = cyclic_group(n);
    F.A = Subset(G);
    F.A1 = Subset(G);
    F.A2 = Subset(G);
    for (auto x = F.l; x <= F.r; ++x) F.A.insert(x);
    for (auto x = F.l1; x < F.l; ++x) F.A1.insert(x);
    for (auto x = F.r2; x <= F.r; ++x) F.A2.insert(x);
    if (!is_sum_free(F.A)) throw std::logic_error("interval_family: A is not sum-free");
    if (n <= 500 && !interval_structure_holds(F)) throw std::logic_error("interval_family: structure check failed");
    return F;
}

bool interval_structure_holds(const IntervalFamily& F)
{
    const auto& G = F.A.group();
    Subset U = F.A | F.A1;
    auto el = U.elements();
    for (auto x : el)
        for (auto y : el) {
            auto z = G.add(x, y);
            if (!U.contains(z)) continue;
            if (!F.A2.contains(x) || !F.A2.contains(y) || !F.A1.contains(z)) return false;
        }
    return true;
}

Subset safe_evens(const Subset& sample)
{
    const auto& G = sample.group();
    if (!G.is_cyclic_literal() || G.order() % 2) throw std::invalid_argument("safe_evens: group must be Z_2n");
    const auto n = G.order() / 2;
    Subset O = odd_elements(sample.group_ptr());
    Subset W = sample & O;
    Subset out(sample.group_ptr());
    for (element x = 2; x <= n - 1; x += 2)
        if (is_safe(x, W, O)) out.insert(x);
    return out;
}

namespace {

struct Point {
    FamilyMember fm;
    std::optional<double> C;
    double p = 0;
    std::shared_ptr<const SFCatalog> catalog;
    std::shared_ptr<const IntervalFamily> intervals;
};

using TrialFn = std::function<void(const Point&, const Subset& sample, TrialRecord&)>;

std::vector<Point> make_points(const ExperimentConfig& cfg)
{
    std::vector<Point> pts;
    for (auto param : cfg.params) {
        auto fm = family_member(cfg.group_family, param);
        if (!cfg.c_grid.empty())
            for (double C : cfg.c_grid) pts.push_back({fm, C, p_from_c(C, fm.n), nullptr, nullptr});
        else
            for (double p : cfg.p_grid) pts.push_back({fm, std::nullopt, p, nullptr, nullptr});
    }
    return pts;
}

SweepSummary execute(const ExperimentConfig& cfg, std::vector<Point> pts, const TrialFn& fn)
{
    cfg.validate();
    SweepSummary S;
    S.kind = cfg.kind;
    const auto T = static_cast<std::size_t>(cfg.trials);
    S.records.resize(pts.size() * T);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= S.records.size()) return;
            const Point& pt = pts[i / T];
            TrialRecord& rec = S.records[i];
            rec.n = pt.fm.n;
            rec.C = pt.C;
            rec.p = pt.p;
            rec.trial = static_cast<std::int64_t>(i % T);
            try {
                auto t0 = std::chrono::steady_clock::now();
                Subset sample = sample_subset(pt.fm.group, pt.p, cfg.master_seed, static_cast<std::uint64_t>(rec.trial));
                rec.sample_size = sample.size();
                fn(pt, sample, rec);
                if (cfg.timing)
                    rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - t0)
                                         .count();
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = S.records.size();
                return;
            }
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(S.records.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t k = 0; k < pts.size(); ++k) {
        PointSummary ps;
        ps.group = pts[k].fm.group->literal();
        ps.n = pts[k].fm.n;
        ps.C = pts[k].C;
        ps.p = pts[k].p;
        ps.trials = cfg.trials;
        double sum_safe = 0, sum_sq = 0, sum_in = 0;
        for (std::size_t t = 0; t < T; ++t) {
            const auto& r = S.records[k * T + t];
            if (r.decision == Decision::Indeterminate) ++ps.indeterminate;
            else if (r.decision != Decision::NotApplicable) ++ps.decided;
            if (r.decision == Decision::True) ++ps.successes;
            sum_safe += static_cast<double>(r.safe_count);
            sum_sq += static_cast<double>(r.safe_count) * static_cast<double>(r.safe_count);
            sum_in += static_cast<double>(r.safe_in_sample);
        }
        const double nt = static_cast<double>(T);
        ps.estimate = ps.decided ? static_cast<double>(ps.successes) / static_cast<double>(ps.decided) : 0.0;
        ps.ci = wilson_interval(ps.successes, ps.decided);
        ps.indeterminate_rate = static_cast<double>(ps.indeterminate) / nt;
        ps.mean_safe = sum_safe / nt;
        ps.mean_safe_in_sample = sum_in / nt;
        if (T > 1) {
            double var = std::max(0.0, (sum_sq - nt * ps.mean_safe * ps.mean_safe) / (nt - 1));
            ps.safe_half_width = 1.959963984540054 * std::sqrt(var / nt);
        }
        S.points.push_back(ps);
    }
    return S;
}

void require_z2n(const Point& pt)
{
    const auto& G = *pt.fm.group;
    if (!G.is_cyclic_literal() || G.order() % 2) throw std::invalid_argument("sweep needs Z_2n groups");
}

std::int64_t best_catalog_intersection(const SFCatalog& cat, const Subset& sample, std::size_t* argmax = nullptr)
{
    std::int64_t best = -1;
    for (std::size_t i = 0; i < cat.sets.size(); ++i) {
        auto s = sample.intersection_size(cat.sets[i]);
        if (s > best) {
            best = s;
            if (argmax) *argmax = i;
        }
    }
    return best;
}

} // namespace

SweepSummary run_sharp_sweep(const ExperimentConfig& cfg)
{
    auto pts = make_points(cfg);
    for (const auto& pt : pts) require_z2n(pt);
    return execute(cfg, std::move(pts), [&](const Point&, const Subset& sample, TrialRecord& rec) {
        rec.s0 = sample.intersection_size(odd_elements(sample.group_ptr()));
        rec.solver_max = rec.s0;
        try {
            auto out = analyze_sharp_event(sample, cfg.cap);
            rec.decision = out.event ? Decision::True : Decision::False;
            rec.solver_max = out.solver_max;
        } catch (const indeterminate_error&) {
            rec.decision = Decision::Indeterminate;
        }
    });
}

namespace {

SweepSummary goodness_impl(const ExperimentConfig& cfg, std::vector<Point> pts)
{
    return execute(cfg, std::move(pts), [&](const Point& pt, const Subset& sample, TrialRecord& rec) {
        rec.s0 = best_catalog_intersection(*pt.catalog, sample);
        rec.solver_max = rec.s0;
        try {
            auto v = is_sum_free_good(sample, pt.catalog->sets, cfg.cap);
            rec.decision = v.good ? Decision::True : Decision::False;
            rec.solver_max = v.max_size;
        } catch (const indeterminate_error&) {
            rec.decision = Decision::Indeterminate;
        }
    });
}

} // namespace

SweepSummary run_goodness_sweep(const ExperimentConfig& cfg)
{
    auto pts = make_points(cfg);
    std::shared_ptr<const SFCatalog> cat;
    for (auto& pt : pts) {
        if (classify(*pt.fm.group).tag != GroupType::Tag::I) throw std::invalid_argument("goodness sweep needs type I groups");
        if (!cat || !(*cat->group == *pt.fm.group)) cat = std::make_shared<SFCatalog>(enumerate_sf_type1(pt.fm.group));
        pt.catalog = cat;
    }
    return goodness_impl(cfg, std::move(pts));
}

SweepSummary run_goodness_sweep(const ExperimentConfig& cfg, const SFCatalog& catalog)
{
    auto pts = make_points(cfg);
    auto cat = std::make_shared<SFCatalog>(catalog);
    for (auto& pt : pts) {
        if (!(*pt.fm.group == *catalog.group)) throw std::invalid_argument("catalog group differs from the sweep group");
        pt.catalog = cat;
    }
    return goodness_impl(cfg, std::move(pts));
}

namespace {

// Z_n: interval construction of the p-dependent width m = min(n, p^-2)/100.
void witness_cyclic(const Point& pt, const Subset& sample, TrialRecord& rec)
{
    const auto& F = *pt.intervals;
    Subset B = augment_with_safe(F.A & sample, F.A1 & sample, F.A);
    rec.s0 = best_catalog_intersection(*pt.catalog, sample);
    rec.witness_found = B.size() > rec.s0;
    rec.solver_max = std::max(rec.s0, B.size());
    rec.decision = rec.witness_found ? Decision::True : Decision::False;
}

// Z_2^k: anchor O(a) maximizing |O(a) & sample|, candidates E(a) & O(b).
void witness_cube(const Point& pt, const Subset& sample, TrialRecord& rec)
{
    const auto& cat = *pt.catalog;
    const auto& G = *pt.fm.group;
    std::size_t ia = 0;
    rec.s0 = best_catalog_intersection(cat, sample, &ia);
    const HomToZq& a = cat.provenance[ia].front();
    HomToZq b{2, std::vector<std::int64_t>(G.rank(), 0)};
    b.images[G.rank() > 1 ? 1 : 0] = 1;
    if (b == a) {
        b.images.assign(G.rank(), 0);
        b.images[0] = 1;
    }
    Subset Eprime(pt.fm.group);
    for (element x = 0; x < G.order(); ++x)
        if (a(G, x) == 0 && b(G, x) == 1) Eprime.insert(x);
    const Subset& Oa = cat.sets[ia];
    Subset B = augment_with_safe(Oa & sample, Eprime & sample, Oa);
    rec.witness_found = B.size() > rec.s0;
    rec.solver_max = std::max(rec.s0, B.size());
    rec.decision = rec.witness_found ? Decision::True : Decision::False;
}

bool is_elementary_2group(const GroupSpec& G)
{
    return G.rank() >= 1 && std::all_of(G.orders().begin(), G.orders().end(), [](auto m) { return m == 2; });
}

} // namespace

SweepSummary run_counterexample_witness(const ExperimentConfig& cfg)
{
    auto pts = make_points(cfg);
    for (auto& pt : pts) {
        const auto& G = pt.fm.group;
        if (is_elementary_2group(*G)) {
            if (G->rank() < 2) throw std::invalid_argument("witness sweep needs Z_2^k with k >= 2");
            pt.catalog = std::make_shared<SFCatalog>(enumerate_sf_type1(G));
        } else if (G->is_cyclic_literal()) {
            const auto n = G->order();
            if (classify(*G).tag == GroupType::Tag::I) pt.catalog = std::make_shared<SFCatalog>(enumerate_sf_type1(G));
            else if (n % 3 == 0) pt.catalog = std::make_shared<SFCatalog>(dilation_family_z3q(G));
            else throw std::invalid_argument("witness sweep: no catalog for " + G->literal());
            const double pinv2 = pt.p > 0 ? 1.0 / (pt.p * pt.p) : static_cast<double>(n);
            const double m = std::min(static_cast<double>(n), pinv2) / 100.0;
            pt.intervals = std::make_shared<IntervalFamily>(interval_family(n, m));
        } else {
            throw std::invalid_argument("witness sweep needs Z_n or Z_2^k, got " + G->literal());
        }
    }
    return execute(cfg, std::move(pts), [](const Point& pt, const Subset& sample, TrialRecord& rec) {
        if (pt.intervals) witness_cyclic(pt, sample, rec);
        else witness_cube(pt, sample, rec);
    });
}

SweepSummary run_safe_census(const ExperimentConfig& cfg)
{
    auto pts = make_points(cfg);
    for (const auto& pt : pts) require_z2n(pt);
    return execute(cfg, std::move(pts), [](const Point&, const Subset& sample, TrialRecord& rec) {
        Subset safe = safe_evens(sample);
        rec.s0 = sample.intersection_size(odd_elements(sample.group_ptr()));
        rec.solver_max = rec.s0;
        rec.safe_count = safe.size();
        rec.safe_in_sample = safe.intersection_size(sample);
        rec.decision = Decision::NotApplicable;
    });
}

SweepSummary run_sweep(const ExperimentConfig& cfg)
{
    switch (cfg.kind) {
    case ExperimentKind::SharpEvent: return run_sharp_sweep(cfg);
    case ExperimentKind::SumFreeGood: return run_goodness_sweep(cfg);
    case ExperimentKind::CounterexampleWitness: return run_counterexample_witness(cfg);
    case ExperimentKind::SafeCensus: return run_safe_census(cfg);
    }
    throw std::logic_error("run_sweep: unknown kind");
}

bool SweepSummary::indeterminate_exceeded() const
{
    return std::any_of(points.begin(), points.end(), [](const auto& p) { return p.indeterminate_rate > 0.01; });
}

namespace {

std::string fmt_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

} // namespace

std::string SweepSummary::csv() const
{
    std::string out = "n,C,p,trial,decision,sample_size,s0,solver_max,witness_found,safe_count,elapsed_ms,safe_in_sample\n";
    for (const auto& r : records) {
        out += std::to_string(r.n) + ',' + (r.C ? fmt_double(*r.C) : "") + ',' + fmt_double(r.p) + ',' +
               std::to_string(r.trial) + ',' + to_string(r.decision) + ',' + std::to_string(r.sample_size) + ',' +
               std::to_string(r.s0) + ',' + std::to_string(r.solver_max) + ',' + (r.witness_found ? "true" : "false") +
               ',' + std::to_string(r.safe_count) + ',' + std::to_string(r.elapsed_ms) + ',' +
               std::to_string(r.safe_in_sample) + '\n';
    }
    return out;
}

nlohmann::json SweepSummary::summary_json() const
{
    nlohmann::json j;
    j["kind"] = to_string(kind);
    j["points"] = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json q;
        q["group"] = p.group;
        q["n"] = p.n;
        q["C"] = p.C ? nlohmann::json(*p.C) : nlohmann::json(nullptr);
        q["p"] = p.p;
        q["trials"] = p.trials;
        q["decided"] = p.decided;
        q["successes"] = p.successes;
        q["indeterminate"] = p.indeterminate;
        q["estimate"] = p.estimate;
        q["ci95"] = {p.ci.lo, p.ci.hi};
        q["indeterminate_rate"] = p.indeterminate_rate;
        q["mean_safe"] = p.mean_safe;
        q["safe_half_width"] = p.safe_half_width;
        q["mean_safe_in_sample"] = p.mean_safe_in_sample;
        j["points"].push_back(q);
    }
    j["indeterminate_exceeded"] = indeterminate_exceeded();
    return j;
}

} // namespace sumfree

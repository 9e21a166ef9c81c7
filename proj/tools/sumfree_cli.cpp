// sumfree_cli: group queries, catalogs, solving, sweeps, bounds, verification and plots.
// Data goes to stdout or to the files named by flags; diagnostics go to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumfree/bounds.hpp"
#include "sumfree/experiments.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/group.hpp"
#include "sumfree/solver.hpp"
#include "sumfree/sumfree.hpp"
#include "sumfree/svg.hpp"
#include "sumfree/verify.hpp"

using nlohmann::json;
using namespace sumfree;

namespace {

constexpr int exit_failure = 1;
constexpr int exit_indeterminate = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Writes to path, or stdout when path is empty.
void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) std::cout << text;
    else write_file(path, text);
}

json classify_json(const GroupSpec& G)
{
    auto m = mu(G);
    return {{"group", G.literal()},
            {"order", G.order()},
            {"type", classify(G).str()},
            {"mu", m.str()},
            {"extremal_size", extremal_size(G)}};
}

json solve_json(const Subset& B, const SolveResult& r)
{
    json j{{"group", B.group().literal()},
           {"set", B.elements()},
           {"max_size", r.max_size},
           {"witness", r.witness.elements()},
           {"complete", r.enumeration_complete},
           {"nodes", r.nodes_explored}};
    if (r.optima) {
        j["optima"] = json::array();
        for (const auto& s : *r.optima) j["optima"].push_back(s.elements());
    }
    return j;
}

SFCatalog catalog_by_method(const GroupPtr& G, const std::string& method, std::int64_t brute_cap)
{
    if (method == "auto") return classify(*G).tag == GroupType::Tag::I ? enumerate_sf_type1(G) : enumerate_sf_bruteforce(G, brute_cap);
    if (method == "hom") return enumerate_sf_type1(G);
    if (method == "brute") return enumerate_sf_bruteforce(G, brute_cap);
    if (method == "dilation") return dilation_family_z3q(G);
    throw std::invalid_argument("unknown catalog method " + method);
}

SetFamily family_from_json(const json& j)
{
    return SetFamily(j.at("universe").get<std::int64_t>(), j.at("members").get<std::vector<std::vector<std::int64_t>>>());
}

// "0,1;1,2;3" -> {{0,1},{1,2},{3}}
std::vector<std::vector<std::int64_t>> parse_members(const std::string& text)
{
    std::vector<std::vector<std::int64_t>> out;
    std::stringstream all(text);
    std::string part;
    while (std::getline(all, part, ';')) {
        std::vector<std::int64_t> m;
        std::stringstream ps(part);
        std::string tok;
        while (std::getline(ps, tok, ','))
            if (tok.find_first_not_of(" \t") != std::string::npos) m.push_back(std::stoll(tok));
        out.push_back(std::move(m));
    }
    return out;
}

json janson_json(const JansonStats& s)
{
    json j{{"p", s.p},
           {"M", static_cast<double>(s.M)},
           {"mu", static_cast<double>(s.mu)},
           {"delta", static_cast<double>(s.delta)},
           {"bound_mu_delta", static_cast<double>(s.bound_mu_delta)},
           {"bound_main", static_cast<double>(s.bound_main)}};
    j["bound_ratio"] = s.bound_ratio ? json(static_cast<double>(*s.bound_ratio)) : json(nullptr);
    return j;
}

std::vector<ChartSeries> series_from_summary(const json& j)
{
    std::map<std::pair<std::string, std::int64_t>, ChartSeries> by_n;
    for (const auto& p : j.at("points")) {
        const auto n = p.at("n").get<std::int64_t>();
        auto& s = by_n[{p.at("group").get<std::string>(), n}];
        if (s.label.empty()) s.label = "n = " + std::to_string(n);
        const double x = p.at("C").is_null() ? p.at("p").get<double>() : p.at("C").get<double>();
        const auto ci = p.at("ci95");
        s.points.push_back({x, p.at("estimate").get<double>(), ci.at(0).get<double>(), ci.at(1).get<double>()});
    }
    std::vector<ChartSeries> out;
    for (auto& [k, s] : by_n) out.push_back(std::move(s));
    return out;
}

ChartLabels chart_labels(const std::string& kind, bool explicit_p)
{
    return {kind + ": estimate with 95% Wilson interval", explicit_p ? "p" : "C  (p = sqrt(C ln n / n))", "estimate"};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sum-free subsets of finite Abelian groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sumfree_cli 1.0");

    std::string group_lit, set_text, out_path, svg_path, config_path, method = "auto", scope = "all";
    std::string members_text, family_path, input_path;
    std::int64_t cap = default_node_cap, trials = 0, brute_cap = 30, universe = 0, cn = 0;
    std::uint64_t seed = 0;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    double p = 0, ca = 0;
    bool enumerate = false, timing = false;

    auto* classify_cmd = app.add_subcommand("classify", "Type, mu(G) and mu(G) n");
    classify_cmd->add_option("--group,-g,group", group_lit, "Group literal, e.g. Z10 or Z4xZ3")->required();

    auto* mu_cmd = app.add_subcommand("mu", "mu(G) as an exact fraction");
    mu_cmd->add_option("--group,-g,group", group_lit, "Group literal")->required();

    auto* sf_cmd = app.add_subcommand("sf-enum", "Catalog SF(G) of maximum sum-free sets as JSON");
    sf_cmd->add_option("--group,-g,group", group_lit, "Group literal")->required();
    sf_cmd->add_option("--method", method, "auto, hom, brute or dilation")
        ->check(CLI::IsMember({"auto", "hom", "brute", "dilation"}));
    sf_cmd->add_option("--brute-cap", brute_cap, "Largest order accepted by brute force");
    sf_cmd->add_option("--out,-o", out_path, "Output file (default stdout)");

    auto* solve_cmd = app.add_subcommand("solve", "Largest sum-free subset of a set B");
    solve_cmd->add_option("--group,-g", group_lit, "Group literal")->required();
    auto* solve_set = solve_cmd->add_option("--set,-s", set_text, "Elements of B, e.g. 1,2,3");
    auto* solve_full = solve_cmd->add_flag("--full", "Use B = G");
    solve_set->excludes(solve_full);
    solve_cmd->add_flag("--enumerate", enumerate, "List every optimum");
    solve_cmd->add_option("--cap", cap, "Node cap");

    auto* good_cmd = app.add_subcommand("good", "Is B sum-free good against SF(G)");
    good_cmd->add_option("--group,-g", group_lit, "Group literal")->required();
    good_cmd->add_option("--set,-s", set_text, "Elements of B")->required();
    good_cmd->add_option("--method", method, "Catalog method: auto, hom, brute or dilation")
        ->check(CLI::IsMember({"auto", "hom", "brute", "dilation"}));
    good_cmd->add_option("--cap", cap, "Node cap");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a JSON config");
    sweep_cmd->add_option("--config,-c", config_path, "Config file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out,-o", out_path, "CSV of trial records (default stdout)");
    sweep_cmd->add_option("--summary", input_path, "JSON summary file (default stderr when --out is absent)");
    sweep_cmd->add_option("--svg", svg_path, "SVG chart of the estimates");
    auto* sweep_trials = sweep_cmd->add_option("--trials", trials, "Override trials per point");
    auto* sweep_seed = sweep_cmd->add_option("--seed", seed, "Override the master seed");
    auto* sweep_threads = sweep_cmd->add_option("--threads", threads, "Worker threads");
    auto* sweep_cap = sweep_cmd->add_option("--cap", cap, "Override the node cap");
    sweep_cmd->add_flag("--timing", timing, "Record elapsed_ms (CSV is then not reproducible)");

    auto* bounds_cmd = app.add_subcommand("bounds", "FKG, Janson, exact avoidance and Chernoff evaluators");
    auto* b_family = bounds_cmd->add_option("--family,-f", family_path, "JSON {universe, members}");
    auto* b_members = bounds_cmd->add_option("--members", members_text, "Members like 0,1;1,2 (with --universe)");
    auto* b_universe = bounds_cmd->add_option("--universe", universe, "Universe size for --members");
    auto* b_p = bounds_cmd->add_option("--p", p, "Element probability");
    auto* b_n = bounds_cmd->add_option("--chernoff-n", cn, "n for the Chernoff tails");
    auto* b_a = bounds_cmd->add_option("--chernoff-a", ca, "Deviation a for the Chernoff tails");
    b_family->excludes(b_members);
    b_members->needs(b_universe);
    b_family->needs(b_p);
    b_members->needs(b_p);
    b_n->needs(b_a, b_p);
    b_a->needs(b_n);

    auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
    verify_cmd->add_option("scope", scope, "small-groups, claims, bounds or all")
        ->check(CLI::IsMember({"small-groups", "claims", "bounds", "all"}));
    auto* verify_seed = verify_cmd->add_option("--seed", seed, "Seed for the random corpora");
    verify_cmd->add_option("--out,-o", out_path, "JSON report file (default stdout)");

    auto* plot_cmd = app.add_subcommand("plot", "SVG chart from a sweep summary JSON");
    plot_cmd->add_option("--input,-i", input_path, "Summary JSON written by sweep")->required()->check(CLI::ExistingFile);
    plot_cmd->add_option("--svg", svg_path, "Output SVG (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify_cmd) {
            std::cout << classify_json(*parse_group(group_lit)).dump(2) << '\n';
        } else if (*mu_cmd) {
            std::cout << mu(*parse_group(group_lit)).str() << '\n';
        } else if (*sf_cmd) {
            auto cat = catalog_by_method(parse_group(group_lit), method, brute_cap);
            emit(out_path, cat.to_json().dump(2) + "\n");
        } else if (*solve_cmd) {
            auto G = parse_group(group_lit);
            if (set_text.empty() && !*solve_full) throw std::invalid_argument("give --set or --full");
            Subset B = *solve_full ? Subset::full(G) : parse_subset(G, set_text);
            auto r = max_sum_free(B, enumerate, cap);
            std::cout << solve_json(B, r).dump(2) << '\n';
            if (!r.enumeration_complete) {
                std::cerr << "solve: node cap exhausted; max_size is a lower bound\n";
                return exit_indeterminate;
            }
        } else if (*good_cmd) {
            auto G = parse_group(group_lit);
            Subset B = parse_subset(G, set_text);
            auto cat = catalog_by_method(G, method, 30);
            GoodnessVerdict v;
            try {
                v = is_sum_free_good(B, cat.sets, cap);
            } catch (const indeterminate_error& e) {
                std::cerr << "good: " << e.what() << '\n';
                std::cout << json{{"group", G->literal()}, {"decision", "indeterminate"}}.dump(2) << '\n';
                return exit_indeterminate;
            }
            json j{{"group", G->literal()}, {"set", B.elements()}, {"good", v.good}, {"max_size", v.max_size},
                   {"max_exact", v.max_exact}, {"catalog_size", cat.size()}, {"nodes", v.nodes_explored}};
            j["counterexample"] = v.counterexample ? json(v.counterexample->elements()) : json(nullptr);
            std::cout << j.dump(2) << '\n';
        } else if (*sweep_cmd) {
            const auto raw = json::parse(read_file(config_path));
            auto cfg = ExperimentConfig::from_json(raw);
            if (const char* env = std::getenv("SUMFREE_SEED")) {
                try {
                    cfg.master_seed = std::stoull(env);
                } catch (const std::logic_error&) {
                    throw std::invalid_argument(std::string("SUMFREE_SEED is not an unsigned integer: ") + env);
                }
            }
            if (*sweep_seed) cfg.master_seed = seed;
            if (*sweep_trials) cfg.trials = trials;
            if (*sweep_cap) cfg.cap = cap;
            if (*sweep_threads || !raw.contains("threads")) cfg.threads = threads;
            cfg.timing = cfg.timing || timing;
            cfg.validate();
            auto s = run_sweep(cfg);
            emit(out_path, s.csv());
            auto summary = s.summary_json();
            summary["config"] = cfg.to_json();
            if (!input_path.empty()) write_file(input_path, summary.dump(2) + "\n");
            else if (!out_path.empty()) std::cout << summary.dump(2) << '\n';
            else std::cerr << summary.dump(2) << '\n';
            if (!svg_path.empty())
                write_file(svg_path, render_line_chart(estimate_series(s), chart_labels(to_string(s.kind), cfg.c_grid.empty())));
            if (s.indeterminate_exceeded()) {
                std::cerr << "sweep: more than 1% of the trials at some point are indeterminate; raise --cap\n";
                return exit_indeterminate;
            }
        } else if (*bounds_cmd) {
            json j;
            if (*b_family || *b_members) {
                SetFamily F = *b_family ? family_from_json(json::parse(read_file(family_path)))
                                        : SetFamily(universe, parse_members(members_text));
                j["fkg_lower"] = static_cast<double>(fkg_lower(F, p));
                if (p < 1) j["janson"] = janson_json(janson_stats(F, p));
                if (F.universe_size() <= 20) j["exact"] = static_cast<double>(exact_avoidance_probability(F, p));
            }
            if (*b_n) {
                auto c = chernoff_bounds(cn, p, ca);
                j["chernoff"] = {{"n", cn}, {"p", p}, {"a", ca}, {"upper_tail", c.upper_tail}, {"lower_tail", c.lower_tail}};
            }
            if (j.is_null()) throw std::invalid_argument("bounds: give --family, --members or --chernoff-n");
            std::cout << j.dump(2) << '\n';
        } else if (*verify_cmd) {
            VerifyOptions opt;
            if (*verify_seed) opt.seed = seed;
            auto rep = run_verify(scope, opt);
            emit(out_path, rep.to_json().dump(2) + "\n");
            for (const auto& c : rep.checks)
                if (!c.passed) std::cerr << "verify: " << c.name << " failed: " << c.detail << '\n';
            return rep.ok() ? 0 : exit_failure;
        } else if (*plot_cmd) {
            auto j = json::parse(read_file(input_path));
            auto series = series_from_summary(j);
            bool explicit_p = !j.at("points").empty() && j.at("points").front().at("C").is_null();
            emit(svg_path, render_line_chart(series, chart_labels(j.value("kind", std::string("sweep")), explicit_p)));
        }
    } catch (const std::exception& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
        return exit_failure;
    }
    return 0;
}

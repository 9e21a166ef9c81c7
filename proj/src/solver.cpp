#include "sumfree/solver.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <tuple>
#include <numeric>

#include "sumfree/sumfree.hpp"

namespace sumfree {

namespace {

// Constraint: the listed variables may not all be selected.
struct Con {
    std::array<int, 3> v{};
    int k = 0;
};

std::vector<Con> dedupe(std::vector<Con> cons)
{
    for (auto& c : cons) std::sort(c.v.begin(), c.v.begin() + c.k);
    auto key = [](const Con& c) { return std::tuple(c.k, c.v[0], c.v[1], c.v[2]); };
    std::sort(cons.begin(), cons.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    cons.erase(std::unique(cons.begin(), cons.end(), [&](auto& a, auto& b) { return key(a) == key(b); }),
               cons.end());
    return cons;
}

struct NodeBudget {
    std::int64_t used = 0;
    std::int64_t cap = default_node_cap;
    bool exhausted = false;

    bool tick()
    {
        if (++used > cap) exhausted = true;
        return !exhausted;
    }
};

// Branch and bound over 0/1 variables with "not all selected" constraints of
// size 1..3. Leaves with at least `need` selected variables go to on_leaf,
// which may raise `need` or return true to stop.
class HyperCore {
public:
    HyperCore(int m, const std::vector<Con>& cons, NodeBudget& budget)
        : m_(m), cons_(dedupe(cons)), inc_(static_cast<std::size_t>(m)), st_(static_cast<std::size_t>(m), 0),
          mark_(static_cast<std::size_t>(m), 0), budget_(budget)
    {
        n_free_ = m;
        for (std::size_t c = 0; c < cons_.size(); ++c) {
            if (cons_[c].k == 1) {
                int v = cons_[c].v[0];
                if (st_[v] == 0) {
                    st_[v] = 2;
                    --n_free_;
                }
                continue;
            }
            for (int i = 0; i < cons_[c].k; ++i) inc_[cons_[c].v[i]].push_back(static_cast<int>(c));
        }
        order_.resize(static_cast<std::size_t>(m));
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return inc_[a].size() > inc_[b].size(); });
    }

    std::int64_t need = 0;
    std::function<bool(const std::vector<int>&)> on_leaf;

    /// False when stopped by on_leaf or by the budget.
    bool run()
    {
        stopped_ = false;
        dfs(0);
        return !stopped_;
    }

private:
    int bound_slack()
    {
        // greedy disjoint free parts of live constraints; pairs first
        ++stamp_;
        int matched = 0;
        for (int want = 2; want <= 3; ++want) {
            for (const auto& c : cons_) {
                if (c.k == 1) continue;
                int nfree = 0;
                bool live = true;
                for (int i = 0; i < c.k; ++i) {
                    auto s = st_[c.v[i]];
                    if (s == 2) {
                        live = false;
                        break;
                    }
                    if (s == 0) {
                        if (mark_[c.v[i]] == stamp_) {
                            live = false;
                            break;
                        }
                        ++nfree;
                    }
                }
                if (!live || nfree != want) continue;
                for (int i = 0; i < c.k; ++i)
                    if (st_[c.v[i]] == 0) mark_[c.v[i]] = stamp_;
                ++matched;
            }
        }
        return matched;
    }

    void dfs(std::size_t pos)
    {
        if (stopped_) return;
        if (!budget_.tick()) {
            stopped_ = true;
            return;
        }
        while (pos < order_.size() && st_[order_[pos]] != 0) ++pos;
        if (pos == order_.size()) {
            if (n_in_ >= need) {
                std::vector<int> chosen;
                for (int v = 0; v < m_; ++v)
                    if (st_[v] == 1) chosen.push_back(v);
                if (on_leaf(chosen)) stopped_ = true;
            }
            return;
        }
        if (n_in_ + n_free_ < need) return;
        if (n_in_ + n_free_ - bound_slack() < need) return;

        int v = order_[pos];
        // include v, forcing out the last free member of any constraint it completes
        std::size_t mark = trail_.size();
        st_[v] = 1;
        ++n_in_;
        --n_free_;
        for (int c : inc_[v]) {
            const auto& con = cons_[c];
            int free_v = -1, nfree = 0;
            bool dead = false;
            for (int i = 0; i < con.k; ++i) {
                int u = con.v[i];
                if (st_[u] == 2) dead = true;
                else if (st_[u] == 0) {
                    ++nfree;
                    free_v = u;
                }
            }
            if (!dead && nfree == 1) {
                st_[free_v] = 2;
                --n_free_;
                trail_.push_back(free_v);
            }
        }
        dfs(pos + 1);
        while (trail_.size() > mark) {
            st_[trail_.back()] = 0;
            ++n_free_;
            trail_.pop_back();
        }
        st_[v] = 2;
        --n_in_;
        if (!stopped_) dfs(pos + 1);
        st_[v] = 0;
        ++n_free_;
    }

    int m_;
    std::vector<Con> cons_;
    std::vector<std::vector<int>> inc_;
    std::vector<int> order_;
    std::vector<signed char> st_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<int> trail_;
    std::int64_t n_in_ = 0;
    std::int64_t n_free_ = 0;
    bool stopped_ = false;
    NodeBudget& budget_;
};

// Schur constraints among the nonzero elements of B.
struct Instance {
    std::vector<element> elems;
    std::vector<int> local; // element -> variable, -1 if absent
    std::vector<Con> cons;
};

Instance build_instance(const Subset& B)
{
    const auto& G = B.group();
    Instance I;
    I.local.assign(static_cast<std::size_t>(G.order()), -1);
    B.for_each([&](element e) {
        if (e == 0) return;
        I.local[static_cast<std::size_t>(e)] = static_cast<int>(I.elems.size());
        I.elems.push_back(e);
    });
    auto idx = [&](element e) { return I.local[static_cast<std::size_t>(e)]; };
    for (std::size_t i = 0; i < I.elems.size(); ++i) {
        element x = I.elems[i];
        if (int d = idx(G.add(x, x)); d >= 0) I.cons.push_back({{static_cast<int>(i), d, 0}, 2});
        for (std::size_t j = i + 1; j < I.elems.size(); ++j)
            if (int s = idx(G.add(x, I.elems[j])); s >= 0)
                I.cons.push_back({{static_cast<int>(i), static_cast<int>(j), s}, 3});
    }
    return I;
}

Subset to_subset(const Subset& like, const std::vector<element>& elems, const std::vector<int>& chosen)
{
    Subset s(like.group_ptr());
    for (int v : chosen) s.insert(elems[static_cast<std::size_t>(v)]);
    return s;
}

} // namespace

SolveResult max_sum_free(const Subset& B, bool enumerate, std::int64_t cap)
{
    auto inst = build_instance(B);
    NodeBudget budget{0, cap, false};
    HyperCore core(static_cast<int>(inst.elems.size()), inst.cons, budget);

    SolveResult res;
    res.witness = Subset(B.group_ptr());
    std::vector<Subset> optima;
    bool have = false;
    core.need = enumerate ? 0 : 1;
    core.on_leaf = [&](const std::vector<int>& chosen) {
        auto sz = static_cast<std::int64_t>(chosen.size());
        if (!have || sz > res.max_size) {
            have = true;
            res.max_size = sz;
            res.witness = to_subset(B, inst.elems, chosen);
            optima.clear();
        }
        if (enumerate) {
            optima.push_back(to_subset(B, inst.elems, chosen));
            core.need = res.max_size;
        } else {
            core.need = res.max_size + 1;
        }
        return false;
    };
    core.run();
    res.nodes_explored = budget.used;
    res.enumeration_complete = !budget.exhausted;
    if (enumerate) {
        if (!have) optima.push_back(res.witness);
        std::sort(optima.begin(), optima.end());
        res.optima = std::move(optima);
    }
    return res;
}

std::vector<Subset> enumerate_sum_free_at_least(const Subset& B, std::int64_t min_size, std::int64_t cap)
{
    auto inst = build_instance(B);
    NodeBudget budget{0, cap, false};
    HyperCore core(static_cast<int>(inst.elems.size()), inst.cons, budget);
    std::vector<Subset> out;
    core.need = min_size;
    core.on_leaf = [&](const std::vector<int>& chosen) {
        out.push_back(to_subset(B, inst.elems, chosen));
        return false;
    };
    if (!core.run()) throw indeterminate_error("enumerate_sum_free_at_least: node cap exhausted");
    return out;
}

namespace {

class AnchoredSearch {
public:
    AnchoredSearch(const Subset& B, const Subset& anchor, const std::vector<Subset>& escape,
                   std::int64_t target, bool maximize, std::int64_t cap)
        : G_(B.group()), B_(B), anchor_(anchor), escape_(escape), target_(target), maximize_(maximize),
          budget_{0, cap, false}
    {
        const auto n = static_cast<std::size_t>(G_.order());
        vidx_.assign(n, -1);
        in_elem_.assign(n, 0);
        B.for_each([&](element e) {
            if (anchor.contains(e)) {
                vidx_[static_cast<std::size_t>(e)] = static_cast<int>(vs_.size());
                vs_.push_back(e);
            } else if (e != 0) {
                xs_.push_back(e);
            }
        });
        const std::size_t a = vs_.size();
        loops_.resize(xs_.size());
        edges_.resize(xs_.size());
        incid_.resize(a);
        auto vid = [&](element e) { return vidx_[static_cast<std::size_t>(e)]; };
        for (std::size_t xi = 0; xi < xs_.size(); ++xi) {
            element x = xs_[xi];
            if (int d = vid(G_.add(x, x)); d >= 0) loops_[xi].push_back(d);
            std::vector<std::pair<int, int>> ed;
            for (std::size_t ui = 0; ui < a; ++ui) {
                element u = vs_[ui];
                if (G_.add(u, u) == x) loops_[xi].push_back(static_cast<int>(ui));
                if (int w = vid(G_.sub(x, u)); w > static_cast<int>(ui)) ed.emplace_back(static_cast<int>(ui), w);
                if (int w = vid(G_.sub(u, x)); w >= 0 && w != static_cast<int>(ui))
                    ed.emplace_back(std::min<int>(static_cast<int>(ui), w), std::max<int>(static_cast<int>(ui), w));
            }
            std::sort(ed.begin(), ed.end());
            ed.erase(std::unique(ed.begin(), ed.end()), ed.end());
            std::sort(loops_[xi].begin(), loops_[xi].end());
            loops_[xi].erase(std::unique(loops_[xi].begin(), loops_[xi].end()), loops_[xi].end());
            for (int u : loops_[xi]) incid_[u].emplace_back(static_cast<int>(xi), u);
            for (auto [u, w] : ed) {
                incid_[u].emplace_back(static_cast<int>(xi), w);
                incid_[w].emplace_back(static_cast<int>(xi), u);
            }
            edges_[xi] = std::move(ed);
        }
        order_.resize(a);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int p, int q) { return incid_[p].size() > incid_[q].size(); });
        st_.assign(a, 0);
        kill_.assign(xs_.size(), 0);
        forced_.resize(xs_.size());
        {
            std::vector<int> xid(n, -1);
            for (std::size_t i = 0; i < xs_.size(); ++i) xid[static_cast<std::size_t>(xs_[i])] = static_cast<int>(i);
            for (std::size_t i = 0; i < xs_.size(); ++i) {
                if (int d = xid[static_cast<std::size_t>(G_.add(xs_[i], xs_[i]))]; d >= 0)
                    xcons_.push_back({{static_cast<int>(i), d, 0}, 2});
                for (std::size_t j = i + 1; j < xs_.size(); ++j)
                    if (int k = xid[static_cast<std::size_t>(G_.add(xs_[i], xs_[j]))]; k >= 0)
                        xcons_.push_back({{static_cast<int>(i), static_cast<int>(j), k}, 3});
            }
            xcons_ = dedupe(std::move(xcons_));
        }
        mark_.assign(a, 0);
        n_undec_ = static_cast<std::int64_t>(a);
        n_alive_ = static_cast<std::int64_t>(xs_.size());
    }

    AnchoredResult run()
    {
        dfs(0);
        bool complete = !budget_.exhausted || (best_ && !maximize_);
        if (!complete && !best_) throw indeterminate_error("anchored search: node cap exhausted");
        return {best_, budget_.used, complete};
    }

private:
    std::int64_t beta()
    {
        lbs_.clear();
        for (std::size_t xi = 0; xi < xs_.size(); ++xi) {
            if (kill_[xi]) continue;
            ++stamp_;
            std::int64_t f = 0;
            auto force = [&](int u) {
                if (st_[u] == 0 && mark_[u] != stamp_) {
                    mark_[u] = stamp_;
                    ++f;
                }
            };
            for (int u : loops_[xi]) force(u);
            for (auto [u, w] : edges_[xi]) {
                if (st_[u] == 1) force(w);
                else if (st_[w] == 1) force(u);
            }
            for (auto [u, w] : edges_[xi]) {
                if (st_[u] || st_[w] || mark_[u] == stamp_ || mark_[w] == stamp_) continue;
                mark_[u] = mark_[w] = stamp_;
                ++f;
            }
            lbs_.push_back(f);
        }
        std::sort(lbs_.begin(), lbs_.end());
        std::int64_t b = std::numeric_limits<std::int64_t>::min();
        for (std::size_t k = 0; k < lbs_.size(); ++k) b = std::max(b, static_cast<std::int64_t>(k + 1) - lbs_[k]);
        return b;
    }

    // Disjoint groups {u, x} (u forced out by x) and {u, w, x} (edge of H_x)
    // each lose an element; returns |alive| minus the number of groups.
    std::int64_t packing()
    {
        const std::size_t a = vs_.size();
        used_.assign(a, -1);
        alive_.clear();
        for (std::size_t xi = 0; xi < xs_.size(); ++xi) {
            if (kill_[xi]) continue;
            auto& F = forced_[xi];
            F.clear();
            for (int u : loops_[xi])
                if (st_[u] == 0) F.push_back(u);
            for (auto [u, w] : edges_[xi]) {
                if (st_[u] == 1 && st_[w] == 0) F.push_back(w);
                else if (st_[w] == 1 && st_[u] == 0) F.push_back(u);
            }
            alive_.push_back(static_cast<int>(xi));
        }
        std::int64_t groups = 0;
        std::vector<int>& unmatched = scratch_;
        unmatched.clear();
        for (int xi : alive_) {
            ++stamp_;
            if (augment(xi)) ++groups;
            else unmatched.push_back(xi);
        }
        xused_.assign(xs_.size(), 0);
        for (int xi : alive_) xused_[xi] = 1;
        for (int xi : unmatched) {
            xused_[xi] = 0;
            for (auto [u, w] : edges_[xi]) {
                if (st_[u] || st_[w] || used_[u] != -1 || used_[w] != -1) continue;
                used_[u] = used_[w] = -2;
                xused_[xi] = 1;
                ++groups;
                break;
            }
        }
        // Schur constraints among the outsiders themselves
        for (const auto& c : xcons_) {
            bool ok = true;
            for (int i = 0; i < c.k && ok; ++i) ok = !kill_[c.v[i]] && !xused_[c.v[i]];
            if (!ok) continue;
            for (int i = 0; i < c.k; ++i) xused_[c.v[i]] = 1;
            ++groups;
        }
        return static_cast<std::int64_t>(alive_.size()) - groups;
    }

    bool augment(int xi)
    {
        for (int u : forced_[xi]) {
            if (mark_[u] == stamp_) continue;
            mark_[u] = stamp_;
            if (used_[u] == -1 || augment(used_[u])) {
                used_[u] = xi;
                return true;
            }
        }
        return false;
    }

    void dfs(std::size_t pos)
    {
        if (stopped_) return;
        if (!budget_.tick()) {
            stopped_ = true;
            return;
        }
        if (n_alive_ == 0) return;
        if (pos == order_.size()) {
            leaf();
            return;
        }
        if (n_in_ + n_undec_ + beta() < target_) return;
        if (n_in_ + n_undec_ + packing() < target_) return;

        int v = order_[pos];
        st_[v] = 1;
        ++n_in_;
        --n_undec_;
        in_elem_[static_cast<std::size_t>(vs_[v])] = 1;
        for (auto [xi, w] : incid_[v])
            if ((w == v || st_[w] == 1) && kill_[xi]++ == 0) --n_alive_;
        dfs(pos + 1);
        for (auto [xi, w] : incid_[v])
            if ((w == v || st_[w] == 1) && --kill_[xi] == 0) ++n_alive_;
        in_elem_[static_cast<std::size_t>(vs_[v])] = 0;
        st_[v] = 2;
        --n_in_;
        if (!stopped_) dfs(pos + 1);
        st_[v] = 0;
        ++n_undec_;
    }

    void leaf()
    {
        auto inI = [&](element e) { return in_elem_[static_cast<std::size_t>(e)] != 0; };
        std::vector<element> L;
        std::vector<int> lidx(static_cast<std::size_t>(G_.order()), -1);
        for (std::size_t xi = 0; xi < xs_.size(); ++xi) {
            if (kill_[xi] || inI(G_.add(xs_[xi], xs_[xi]))) continue;
            lidx[static_cast<std::size_t>(xs_[xi])] = static_cast<int>(L.size());
            L.push_back(xs_[xi]);
        }
        if (L.empty() || n_in_ + static_cast<std::int64_t>(L.size()) < target_) return;

        std::vector<Con> cons;
        for (std::size_t i = 0; i < L.size(); ++i) {
            element x = L[i];
            if (int d = lidx[static_cast<std::size_t>(G_.add(x, x))]; d >= 0)
                cons.push_back({{static_cast<int>(i), d, 0}, 2});
            for (std::size_t j = i + 1; j < L.size(); ++j) {
                element y = L[j];
                element s = G_.add(x, y);
                element d = G_.sub(x, y);
                if (inI(s) || inI(d) || inI(G_.neg(d))) {
                    cons.push_back({{static_cast<int>(i), static_cast<int>(j), 0}, 2});
                    continue;
                }
                if (int k = lidx[static_cast<std::size_t>(s)]; k >= 0)
                    cons.push_back({{static_cast<int>(i), static_cast<int>(j), k}, 3});
            }
        }

        Subset I(B_.group_ptr());
        for (std::size_t v = 0; v < vs_.size(); ++v)
            if (st_[v] == 1) I.insert(vs_[v]);
        std::vector<const Subset*> traps; // catalog members that still contain I
        for (const auto& A : escape_)
            if (!(A == anchor_) && I.is_subset_of(A)) traps.push_back(&A);

        HyperCore core(static_cast<int>(L.size()), cons, budget_);
        core.need = std::max<std::int64_t>(1, target_ - n_in_);
        core.on_leaf = [&](const std::vector<int>& chosen) {
            for (const Subset* A : traps) {
                bool inside = true;
                for (int c : chosen) inside = inside && A->contains(L[static_cast<std::size_t>(c)]);
                if (inside) return false;
            }
            Subset M = I;
            for (int c : chosen) M.insert(L[static_cast<std::size_t>(c)]);
            best_ = M;
            if (!maximize_) return true;
            target_ = M.size() + 1;
            core.need = target_ - n_in_;
            return false;
        };
        core.run();
        if (budget_.exhausted || (!maximize_ && best_)) stopped_ = true;
    }

    const GroupSpec& G_;
    const Subset& B_;
    const Subset& anchor_;
    const std::vector<Subset>& escape_;
    std::int64_t target_;
    bool maximize_;
    NodeBudget budget_;

    std::vector<element> vs_, xs_;
    std::vector<int> vidx_;
    std::vector<char> in_elem_;
    std::vector<std::vector<int>> loops_;
    std::vector<std::vector<std::pair<int, int>>> edges_;
    std::vector<std::vector<std::pair<int, int>>> incid_;
    std::vector<int> order_;
    std::vector<signed char> st_;
    std::vector<int> kill_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<std::int64_t> lbs_;
    std::vector<std::vector<int>> forced_;
    std::vector<int> used_, alive_, scratch_;
    std::vector<char> xused_;
    std::vector<Con> xcons_;
    std::int64_t n_in_ = 0, n_undec_ = 0, n_alive_ = 0;
    bool stopped_ = false;
    std::optional<Subset> best_;
};

} // namespace

AnchoredResult anchored_search(const Subset& B, const Subset& anchor, const std::vector<Subset>& escape,
                               std::int64_t target, bool maximize, std::int64_t cap)
{
    if (!is_sum_free(B & anchor)) throw std::invalid_argument("anchored_search: anchor part of B is not sum-free");
    AnchoredSearch s(B, anchor, escape, target, maximize, cap);
    return s.run();
}

namespace {

// Exact maximum once a set of size `found` beating the anchor is known.
struct MaxAfterFind {
    std::int64_t size = 0;
    bool exact = true;
    Subset witness;
};

MaxAfterFind max_after_find(const Subset& B, std::int64_t found, std::int64_t cap)
{
    auto r = max_sum_free(B, false, cap);
    if (!r.enumeration_complete) return {std::max(found, r.max_size), false, std::move(r.witness)};
    return {r.max_size, true, std::move(r.witness)};
}

} // namespace

GoodnessVerdict is_sum_free_good(const Subset& B, const std::vector<Subset>& catalog, std::int64_t cap)
{
    if (catalog.empty()) throw std::invalid_argument("is_sum_free_good: empty catalog");
    std::size_t best = 0;
    std::int64_t s_star = -1;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        auto s = B.intersection_size(catalog[i]);
        if (s > s_star) {
            s_star = s;
            best = i;
        }
    }
    auto r = anchored_search(B, catalog[best], catalog, s_star, false, cap);
    GoodnessVerdict v;
    v.nodes_explored = r.nodes_explored;
    v.max_size = s_star;
    if (r.best) {
        v.good = false;
        auto m = max_after_find(B, r.best->size(), cap);
        v.max_size = m.size;
        v.max_exact = m.exact;
        // above s_star every maximum set escapes the catalog
        if (m.exact && m.size > r.best->size()) v.counterexample = std::move(m.witness);
        else v.counterexample = std::move(r.best);
    }
    return v;
}

SharpOutcome analyze_sharp_event(const Subset& sample, std::int64_t cap)
{
    const auto& G = sample.group();
    if (!G.is_cyclic_literal() || G.order() % 2)
        throw std::invalid_argument("analyze_sharp_event: ambient group must be Z_2n");
    Subset O = odd_elements(sample.group_ptr());
    SharpOutcome out;
    out.s0 = sample.intersection_size(O);
    auto r = anchored_search(sample, O, {}, out.s0, false, cap);
    out.nodes_explored = r.nodes_explored;
    out.event = !r.best.has_value();
    out.solver_max = out.s0;
    if (r.best) {
        auto m = max_after_find(sample, r.best->size(), cap);
        out.solver_max = m.size;
        out.solver_max_exact = m.exact;
    }
    return out;
}

bool decide_sharp_event(const Subset& sample, std::int64_t cap)
{
    return analyze_sharp_event(sample, cap).event;
}

Subset augment_with_safe(const Subset& A_sample, const Subset& candidates, const Subset& A)
{
    if (!A_sample.is_subset_of(A)) throw std::invalid_argument("augment_with_safe: A_sample not inside A");
    if (candidates.intersects(A)) throw std::invalid_argument("augment_with_safe: candidates meet A");
    Subset out = A_sample;
    candidates.for_each([&](element x) {
        if (is_safe(x, A_sample, A)) out.insert(x);
    });
    if (!is_sum_free(out)) throw std::invalid_argument("augment_with_safe: result is not sum-free");
    return out;
}

} // namespace sumfree

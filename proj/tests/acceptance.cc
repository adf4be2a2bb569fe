// Acceptance gate: one pass/fail line per criterion, exact arithmetic
// throughout, nonzero exit when anything fails.
#include "ghom/bridge.hh"
#include "ghom/json_io.hh"
#include "fixtures.hh"
#include "logic_fixtures.hh"

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

using namespace ghom;

namespace {

int failures = 0;

struct Fail {
    std::string msg;
};

void need(bool ok, const std::string& msg) {
    if (!ok) throw Fail{msg};
}

template <class Body>
void criterion(int num, const std::string& label, Body body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
        body();
    } catch (const Fail& f) {
        err = f.msg;
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (err.empty()) {
        std::printf("PASS  %2d  %-58s (%.1fs)\n", num, label.c_str(), secs);
    } else {
        std::printf("FAIL  %2d  %-58s (%.1fs): %s\n", num, label.c_str(), secs, err.c_str());
        ++failures;
    }
}

Interpretation interp(const IncidenceGraph& g) { return {g, {}, {}}; }

bool models(const Hypergraph& h, const FormulaPtr& chi) {
    Interpretation m = interp(to_incidence(h));
    return eval(m, chi);
}

// ---- criterion 2 helpers: traversal-plan constraints ----

std::vector<int> parents_from(const TreeDecomp& d, int omega) {
    auto adj = d.adjacency();
    std::vector<int> parent(d.n_nodes, -1), order{omega};
    for (size_t q = 0; q < order.size(); ++q)
        for (int u : adj[order[q]])
            if (u != parent[order[q]] && u != omega) {
                parent[u] = order[q];
                order.push_back(u);
            }
    return parent;
}

void need_coloring(const TreeDecomp& d, int omega, const std::vector<int>& color, int k) {
    auto parent = parents_from(d, omega);
    for (int t = 0; t < d.n_nodes; ++t) {
        std::vector<int> cols;
        for (int e : d.cover[t]) {
            need(color[e] >= 1 && color[e] <= k, "color out of range");
            cols.push_back(color[e]);
        }
        std::sort(cols.begin(), cols.end());
        need(std::adjacent_find(cols.begin(), cols.end()) == cols.end(),
             "coloring not injective on a cover");
        if (parent[t] >= 0) {
            std::vector<int> pcols;
            for (int e : d.cover[parent[t]]) pcols.push_back(color[e]);
            std::sort(pcols.begin(), pcols.end());
            need(set_subset_(cols, pcols), "child colors escape the parent cover");
        }
    }
}

void need_schedule(const TreeDecomp& d, int omega, const IncidenceGraph& i,
                   const std::vector<std::vector<int>>& sched) {
    auto parent = parents_from(d, omega);
    for (int t = 0; t < d.n_nodes; ++t)
        for (int v : d.bag[t]) {
            int e = sched[t][v];
            need(e >= 0 && set_contains_(d.cover[t], e), "schedule outside the cover");
            need(i.has_edge(e, v), "scheduled guard is not an edge");
            int p = parent[t];
            if (p >= 0 && set_contains_(d.bag[p], v) && set_contains_(d.cover[t], sched[p][v]))
                need(e == sched[p][v], "schedule not persistent");
        }
}

// ---- criterion 4 generator (guarded counting formulas) ----

struct Gen {
    std::mt19937 rng;
    int k;

    int pick(int lo, int hi) { return lo + (int)(rng() % (hi - lo + 1)); }

    FormulaPtr gen(int depth) {
        int kind = pick(0, depth == 0 ? 3 : 7);
        switch (kind) {
            case 0:
                return top();
            case 1:
                return atom_e(pick(1, k), pick(1, 4));
            case 2:
                return eq_blue(pick(1, k), pick(1, k));
            case 3:
                return eq_red(pick(1, 4), pick(1, 4));
            case 4:
                return f_not(gen(depth - 1));
            case 5:
                return f_and(gen(depth - 1), gen(depth - 1));
            default: {
                auto psi = gen(depth - 1);
                auto fv = free_vars(psi);
                GuardFn g;
                for (int i : fv.red) g[i] = pick(1, k);
                auto body = f_and(guard_formula(g), psi);
                auto bodyfv = free_vars(body);
                auto& pool = kind == 6 ? bodyfv.red : bodyfv.blue;
                if (pool.empty()) return gen(depth);
                std::vector<int> qs;
                for (int i : pool)
                    if (rng() % 2) qs.push_back(i);
                if (qs.empty()) qs.push_back(pool[rng() % pool.size()]);
                long long n = pick(1, 3);
                return kind == 6 ? exists_geq_red(n, qs, body) : exists_geq_blue(n, qs, body);
            }
        }
    }
};

std::vector<IncidenceGraph> all_graphs(int n_red, int n_blue) {
    std::vector<IncidenceGraph> out;
    int bits = n_red * n_blue;
    for (int mask = 0; mask < (1 << bits); ++mask) {
        IncidenceGraph g;
        g.n_red = n_red;
        g.n_blue = n_blue;
        for (int b = 0; b < bits; ++b)
            if (mask & (1 << b)) g.edges.emplace_back(b / n_red, b % n_red);
        g.normalize();
        out.push_back(g);
    }
    return out;
}

// every assignment of the free variables into g; returns false on a mismatch
bool agree_everywhere(const IncidenceGraph& g, const FormulaPtr& x, const FormulaPtr& y) {
    auto fv = free_vars(x);
    Interpretation m = interp(g);
    if ((g.n_red == 0 && !fv.red.empty()) || (g.n_blue == 0 && !fv.blue.empty())) return true;
    std::vector<int> reds(fv.red.size(), 0);
    while (true) {
        for (size_t i = 0; i < reds.size(); ++i) m.red_assign[fv.red[i]] = reds[i];
        std::vector<int> blues(fv.blue.size(), 0);
        while (true) {
            for (size_t i = 0; i < blues.size(); ++i) m.blue_assign[fv.blue[i]] = blues[i];
            if (eval(m, x) != eval(m, y)) return false;
            size_t p = 0;
            while (p < blues.size() && ++blues[p] == g.n_blue) blues[p++] = 0;
            if (p == blues.size()) break;
        }
        size_t p = 0;
        while (p < reds.size() && ++reds[p] == g.n_red) reds[p++] = 0;
        if (p == reds.size()) break;
    }
    return true;
}

// ---- quantum generators (criteria 5, 6) ----

struct QGen {
    std::mt19937 rng;
    int k;

    int pick(int lo, int hi) { return lo + (int)(rng() % (hi - lo + 1)); }

    Assoc random_guard() {
        Assoc g;
        int n = pick(0, 2), lab = 0;
        for (int i = 0; i < n; ++i) {
            lab += pick(1, 2);
            g.push_back({lab, pick(1, k)});
        }
        return g;
    }

    std::vector<int> random_domb(const Assoc& g) {
        std::vector<int> out = assoc_values_sorted(g);
        for (int j = 1; j <= k; ++j)
            if (rng() % 2) out = set_union_(out, {j});
        return out;
    }

    LabeledGraph component(const Assoc& g, const std::vector<int>& domb, int extra_red,
                           int edge_den) {
        LabeledGraph l;
        int nb = (int)domb.size() + pick(0, 1);
        int nr = (int)g.size() + pick(0, extra_red);
        l.g.n_blue = nb;
        l.g.n_red = nr;
        for (int j = 0; j < (int)domb.size(); ++j) l.b.push_back({domb[j], j});
        int idx = 0;
        for (auto& [i, gj] : g) {
            int bn = (int)(std::lower_bound(domb.begin(), domb.end(), gj) - domb.begin());
            l.r.push_back({i, idx});
            l.gd.push_back({i, gj});
            l.g.edges.emplace_back(bn, idx);
            ++idx;
        }
        for (int v = 0; v < nr; ++v)
            for (int e = 0; e < nb; ++e)
                if ((int)(rng() % edge_den) == 0) l.g.edges.emplace_back(e, v);
        l.g.normalize();
        return l;
    }

    QuantumGraph quantum(const Assoc& g, const std::vector<int>& domb, int degree,
                         bool natural_coefs) {
        QuantumGraph q;
        for (int t = 0; t < degree; ++t) {
            Rat c = natural_coefs ? Rat(pick(0, 2)) : Rat(pick(-3, 3), pick(1, 3));
            q.terms.push_back({c, component(g, domb, 2, 3)});
        }
        return q;
    }

    std::vector<int> random_subset(const std::vector<int>& pool) {
        std::vector<int> out;
        for (int x : pool)
            if (rng() % 2) out.push_back(x);
        return out;
    }

    Assoc random_transition(const Assoc& g) {
        Assoc f;
        auto dom = assoc_keys(g);
        assoc_set(f, dom[rng() % dom.size()], pick(1, k));
        bool grew = true;
        while (grew) {
            grew = false;
            auto img = assoc_values_sorted(f);
            for (auto& [i, gi] : g)
                if (set_contains_(img, gi) && !assoc_get(f, i)) {
                    assoc_set(f, i, pick(1, k));
                    grew = true;
                }
        }
        return f;
    }
};

template <class F>
void for_tuples(int n, int len, F visit) {
    std::vector<int> t(len, 0);
    while (true) {
        visit(t);
        int i = 0;
        while (i < len && ++t[i] == n) t[i++] = 0;
        if (i == len) return;
    }
}

// ---- certificate / formula generators (criteria 7, 8) ----

struct CertGen {
    std::mt19937 rng;
    int k;

    int pick(int lo, int hi) { return lo + (int)(rng() % (hi - lo + 1)); }

    LabeledGraph random_base() {
        LabeledGraph l;
        int nb = pick(1, k), nr = pick(0, 2);
        l.g.n_blue = nb;
        l.g.n_red = nr;
        for (int j = 1; j <= nb; ++j) l.b.push_back({j, j - 1});
        int lab = 0;
        for (int v = 0; v < nr; ++v) {
            lab += pick(1, 2);
            int guard = pick(1, nb);
            l.r.push_back({lab, v});
            l.gd.push_back({lab, guard});
            l.g.edges.emplace_back(guard - 1, v);
            for (int e = 0; e < nb; ++e)
                if (rng() % 3 == 0) l.g.edges.emplace_back(e, v);
        }
        l.g.normalize();
        return l;
    }

    std::vector<int> random_subset(const std::vector<int>& pool) {
        std::vector<int> out;
        for (int x : pool)
            if (rng() % 2) out.push_back(x);
        return out;
    }

    std::pair<GliCertPtr, LabeledGraph> gen(int depth) {
        if (depth == 0) {
            auto b = random_base();
            return {cert_base(b), b};
        }
        auto [c, l] = gen(depth - 1);
        switch (pick(0, 3)) {
            case 0: {
                auto X = random_subset(assoc_keys(l.r));
                return {cert_reclaim_r(c, X), reclaim_red(l, X)};
            }
            case 1: {
                auto X = random_subset(set_minus_(assoc_keys(l.b), assoc_values_sorted(l.gd)));
                return {cert_reclaim_b(c, X), reclaim_blue(l, X)};
            }
            case 2: {
                if (l.gd.empty()) return {c, l};
                Assoc f;
                auto dom = assoc_keys(l.gd);
                assoc_set(f, dom[rng() % dom.size()], pick(1, k));
                bool grew = true;
                while (grew) {
                    grew = false;
                    auto img = assoc_values_sorted(f);
                    for (auto& [i, j] : l.gd)
                        if (set_contains_(img, j) && !assoc_get(f, i)) {
                            assoc_set(f, i, pick(1, k));
                            grew = true;
                        }
                }
                return {cert_switch(c, f), apply_transition(l, f).out};
            }
            default: {
                auto [c2, l2] = gen(depth - 1);
                std::vector<int> clash;
                for (auto& [i, j] : l2.gd) {
                    const int* mine = assoc_get(l.gd, i);
                    if (mine && *mine != j) clash.push_back(i);
                }
                if (!clash.empty()) {
                    c2 = cert_reclaim_r(c2, clash);
                    l2 = reclaim_red(l2, clash);
                }
                return {cert_glue(c, c2), glue(l, l2).out};
            }
        }
    }

    LabeledGraph host_for_labels(const Assoc& r_labels, const Assoc& b_labels, const Assoc& gd) {
        LabeledGraph h;
        int nb = pick(1, 3);
        int nr = (int)r_labels.size() + pick(0, 2);
        h.g.n_blue = nb;
        h.g.n_red = nr;
        int idx = 0;
        for (auto& [i, node] : r_labels) h.r.push_back({i, idx++});
        for (auto& [j, node] : b_labels) assoc_set(h.b, j, pick(0, nb - 1));
        h.gd = gd;
        for (auto& [i, gi] : gd) h.g.edges.emplace_back(*assoc_get(h.b, gi), *assoc_get(h.r, i));
        for (int v = 0; v < nr; ++v)
            for (int e = 0; e < nb; ++e)
                if (rng() % 3 == 0) h.g.edges.emplace_back(e, v);
        h.g.normalize();
        return h;
    }

    FormulaPtr random_leaf(const std::vector<int>& reds, int& negs) {
        FormulaPtr f;
        int kind = pick(0, 2);
        if (reds.empty() || kind == 1)
            f = eq_blue(pick(1, k), pick(1, k));
        else if (kind == 0)
            f = atom_e(pick(1, k), reds[rng() % reds.size()]);
        else
            f = eq_red(reds[rng() % reds.size()], reds[rng() % reds.size()]);
        if (negs > 0 && pick(0, 3) == 0) {
            f = f_not(f);
            --negs;
        }
        return f;
    }

    FormulaPtr random_ngc() {
        GuardFn g;
        int nred = pick(0, 2), lab = 0;
        for (int i = 0; i < nred; ++i) {
            lab += pick(1, 2);
            g.emplace(lab, pick(1, k));
        }
        std::vector<int> reds;
        for (auto& [i, j] : g) reds.push_back(i);
        int negs = 1;
        FormulaPtr psi = random_leaf(reds, negs);
        for (int extra = pick(0, 2); extra > 0; --extra) psi = f_and(psi, random_leaf(reds, negs));
        FormulaPtr chi0 = f_and(guard_formula(g), psi);
        int mode = pick(0, 2);
        if (mode == 1 && !reds.empty()) {
            int qi = reds[rng() % reds.size()];
            GuardFn gout = g;
            gout.erase(qi);
            return f_and(guard_formula(gout), exists_geq_red(pick(1, 5), {qi}, chi0));
        }
        if (mode == 2) {
            auto fb = free_vars(chi0).blue;
            if (!fb.empty()) {
                int qj = fb[rng() % fb.size()];
                GuardFn gt = g;
                std::vector<int> img;
                for (auto& [i, gi] : g) img.push_back(gi);
                std::sort(img.begin(), img.end());
                for (auto& [i, gi] : g) {
                    int roll = pick(0, 2);
                    if (roll == 1) gt[i] = qj;
                    if (roll == 2)
                        for (int v = 1; v <= k; ++v)
                            if (!set_contains_(img, v)) {
                                gt[i] = v;
                                break;
                            }
                }
                return f_and(guard_formula(gt), exists_geq_blue(pick(1, 3), {qj}, chi0));
            }
        }
        return chi0;
    }

    LabeledGraph host_for_formula(const FormulaPtr& chi) {
        GuardFn g = *as_guard(chi->lhs);
        auto fv = free_vars(chi);
        LabeledGraph h;
        int m = pick(1, 2);
        int nr = (int)g.size() + pick(0, 2);
        h.g.n_blue = m;
        h.g.n_red = nr;
        int idx = 0;
        for (auto& [i, gi] : g) {
            h.r.push_back({i, idx++});
            h.gd.push_back({i, gi});
        }
        std::vector<int> blabels = fv.blue;
        for (auto& [i, gi] : g) blabels = set_union_(blabels, {gi});
        for (int j : blabels) assoc_set(h.b, j, pick(0, m - 1));
        for (auto& [i, gi] : g) h.g.edges.emplace_back(*assoc_get(h.b, gi), *assoc_get(h.r, i));
        for (int v = 0; v < nr; ++v)
            for (int e = 0; e < m; ++e)
                if (rng() % 3 == 0) h.g.edges.emplace_back(e, v);
        h.g.normalize();
        for (int v = 0; v < nr; ++v)
            if (h.g.red_nbrs(v).empty()) h.g.edges.emplace_back(pick(0, m - 1), v);
        h.g.normalize();
        return h;
    }
};

Interpretation interp_of(const LabeledGraph& h) {
    Interpretation m;
    m.graph = h.g;
    for (auto& [i, node] : h.r) m.red_assign[i] = node;
    for (auto& [j, node] : h.b) m.blue_assign[j] = node;
    return m;
}

// ---- criterion 9 generator (random valid ghds) ----

std::optional<TreeDecomp> random_ghd(std::mt19937& rng, const IncidenceGraph& j) {
    if (j.n_blue == 0) return std::nullopt;
    int nn = 1 + (int)(rng() % j.n_blue);
    TreeDecomp d;
    d.n_nodes = nn;
    for (int t = 1; t < nn; ++t) d.edges.push_back({(int)(rng() % t), t});
    d.cover.assign(nn, {});
    for (int e = 0; e < j.n_blue; ++e) {
        d.cover[rng() % nn].push_back(e);
        if (rng() % 3 == 0) d.cover[rng() % nn].push_back(e);
    }
    for (auto& c : d.cover) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    auto adj = d.adjacency();
    std::vector<int> home(j.n_blue, -1);
    for (int e = 0; e < j.n_blue; ++e)
        for (int t = 0; t < nn && home[e] < 0; ++t)
            if (set_contains_(d.cover[t], e)) home[e] = t;
    d.bag.assign(nn, {});
    for (int v = 0; v < j.n_red; ++v) {
        std::vector<int> terms;
        for (int e = 0; e < j.n_blue; ++e)
            if (set_contains_(j.blue_nbrs(e), v)) terms.push_back(home[e]);
        if (terms.empty()) continue;
        for (size_t x = 0; x < terms.size(); ++x)
            for (size_t y = 0; y < terms.size(); ++y) {
                std::vector<int> par(nn, -2);
                std::vector<int> q = {terms[x]};
                par[terms[x]] = -1;
                for (size_t h = 0; h < q.size(); ++h)
                    for (int u : adj[q[h]])
                        if (par[u] == -2) {
                            par[u] = q[h];
                            q.push_back(u);
                        }
                for (int t = terms[y]; t != -1; t = par[t])
                    if (!set_contains_(d.bag[t], v)) d.bag[t] = set_union_(d.bag[t], {v});
            }
    }
    if (!validate(d, j, DecompMode::ghd).ok) return std::nullopt;
    return d;
}

// ---- criterion 10 corpus ----

IncidenceGraph blues_only(int n) { return IncidenceGraph{0, n, {}}; }

IncidenceGraph disjoint_edges(int n) {
    IncidenceGraph g{n, n, {}};
    for (int e = 0; e < n; ++e) g.edges.emplace_back(e, e);
    g.normalize();
    return g;
}

IncidenceGraph star(int blues) {
    IncidenceGraph g{1, blues, {}};
    for (int e = 0; e < blues; ++e) g.edges.emplace_back(e, 0);
    g.normalize();
    return g;
}

IncidenceGraph path_blues(int blues) {
    IncidenceGraph g{blues - 1, blues, {}};
    for (int v = 0; v < blues - 1; ++v) {
        g.edges.emplace_back(v, v);
        g.edges.emplace_back(v + 1, v);
    }
    g.normalize();
    return g;
}

IncidenceGraph double_edge() {
    IncidenceGraph g{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    g.normalize();
    return g;
}

IncidenceGraph two_disjoint_2edges() {
    IncidenceGraph g{4, 2, {{0, 0}, {0, 1}, {1, 2}, {1, 3}}};
    g.normalize();
    return g;
}

IncidenceGraph shared_red_2edges() {
    IncidenceGraph g{3, 2, {{0, 0}, {0, 1}, {1, 1}, {1, 2}}};
    g.normalize();
    return g;
}

IncidenceGraph complete_blue(int reds) {
    IncidenceGraph g{reds, 1, {}};
    for (int v = 0; v < reds; ++v) g.edges.emplace_back(0, v);
    g.normalize();
    return g;
}

// some blue node touching at least t red nodes that each touch >= 2 blue nodes
FormulaPtr reds_with_two_blues_sentence(long long t) {
    GuardFn g1{{1, 1}};
    auto inner = exists_geq_blue(2, {1}, f_and(guard_formula(g1), atom_e(1, 1)));
    GuardFn g2{{1, 2}};
    auto mid = exists_geq_red(t, {1}, f_and(guard_formula(g2), inner));
    return f_and(top(), exists_geq_blue(1, {2}, f_and(top(), mid)));
}

// some blue node with at least n red neighbours
FormulaPtr blue_with_reds_sentence(long long n) {
    GuardFn g{{1, 2}};
    auto mid = exists_geq_red(n, {1}, f_and(guard_formula(g), atom_e(2, 1)));
    return f_and(top(), exists_geq_blue(1, {2}, f_and(top(), mid)));
}

struct CorpusPair {
    std::string name;
    IncidenceGraph a, b;
    int max_blue, max_red;
    FormulaPtr sentence;   // forward-direction input; null when unavailable
    bool expect_witness;
};

}  // namespace

int main() {
    std::printf("acceptance gate, exact arithmetic, zero tolerance\n");

    criterion(1, "overlaid-triangles formula rejects all five single edits", [] {
        Hypergraph h = fx::overlay_hypergraph();
        FormulaPtr chi = fx::two_triangles_formula();
        need(models(h, chi), "the base hypergraph must satisfy the formula");

        std::vector<Hypergraph> mutants;
        Hypergraph m1 = h;  // delete a 2-edge
        m1.edges.erase(m1.edges.begin() + 2);
        mutants.push_back(m1);
        mutants.push_back(local_merge(h, 0, 1, 2).result);  // merge two vertices
        Hypergraph m3 = h;  // add a vertex to an edge
        m3.edges[5].push_back(0);
        m3.normalize();
        mutants.push_back(m3);
        Hypergraph m4 = h;  // duplicate an edge
        m4.edges.push_back(m4.edges[2]);
        m4.normalize();
        mutants.push_back(m4);
        Hypergraph m5 = h;  // swap an incidence
        m5.edges[2] = {0, 3};
        m5.normalize();
        mutants.push_back(m5);

        for (size_t i = 0; i < mutants.size(); ++i)
            need(!models(mutants[i], chi), "mutant " + std::to_string(i + 1) + " still satisfies");
    });

    criterion(2, "worked decomposition: validate, traversal plan, round trip", [] {
        auto i = fx::worked_incidence();
        auto d = fx::worked_ehd();
        need(validate(d, i, DecompMode::ehd).ok, "fixture decomposition invalid");
        need(width(d) == 2, "fixture width is not 2");
        auto plan = plan_traversal(d, 0, i);
        need_coloring(d, 0, plan.color, 2);
        need_schedule(d, 0, i, plan.schedule);
        auto l = eval_cert(ehd_to_cert(i, d));
        need(l.r.empty() && l.b.empty(), "round-trip graph still labeled");
        need(isomorphic(l.g, i).has_value(), "round-trip graph not isomorphic");
    });

    criterion(3, "both fixture sentences pass the width-2 normal-form check", [] {
        need(check_syntax(f_and(top(), fx::big_edges_disjoint()), 2, LogicMode::ngck).ok,
             "disjoint-big-edges sentence rejected");
        need(check_syntax(f_and(top(), fx::two_triangles_formula()), 2, LogicMode::ngck).ok,
             "overlaid-triangles sentence rejected");
    });

    criterion(4, "normal-form compiler: 200 formulas, every guard, all hosts", [] {
        Gen gen{std::mt19937(40), 2};
        std::vector<IncidenceGraph> hosts;
        for (int r = 0; r <= 3; ++r)
            for (int b = 0; b <= 2; ++b)
                for (auto& g : all_graphs(r, b)) hosts.push_back(g);
        int done = 0;
        for (int trial = 0; done < 200 && trial < 5000; ++trial) {
            auto phi = gen.gen(gen.pick(1, 3));
            if (!check_syntax(phi, 2, LogicMode::gck).ok) continue;
            auto fv = free_vars(phi);
            // every admissible guard: all maps free-reds -> [k]
            int combos = 1;
            for (size_t i = 0; i < fv.red.size(); ++i) combos *= 2;
            for (int c = 0; c < combos; ++c) {
                GuardFn f;
                int x = c;
                for (int i : fv.red) {
                    f[i] = 1 + x % 2;
                    x /= 2;
                }
                auto nf = to_normal_form(phi, f, 2);
                auto guarded_nf = f_and(guard_formula(f), nf);
                auto guarded_phi = f_and(guard_formula(f), phi);
                need(check_syntax(guarded_nf, 2, LogicMode::ngck).ok,
                     "output rejected: " + render_formula(guarded_nf));
                need(free_vars(guarded_nf).red == free_vars(guarded_phi).red &&
                         free_vars(guarded_nf).blue == free_vars(guarded_phi).blue,
                     "free variables changed: " + render_formula(phi));
                for (auto& g : hosts)
                    need(agree_everywhere(g, guarded_phi, guarded_nf),
                         "meaning changed: " + render_formula(phi));
            }
            ++done;
        }
        need(done == 200, "generator starved");
    });

    criterion(5, "all four counting identities on 540 random instances", [] {
        QGen gen{std::mt19937(50), 2};
        for (int it = 0; it < 140; ++it) {  // glue factorization
            Assoc g = gen.random_guard();
            auto domb = gen.random_domb(g);
            QuantumGraph q1 = gen.quantum(g, domb, gen.pick(1, 2), false);
            QuantumGraph q2 = gen.quantum(g, domb, gen.pick(1, 2), false);
            LabeledGraph host = gen.component(g, domb, 3, 2);
            need(qhom(q_glue(q1, q2), host) == qhom(q1, host) * qhom(q2, host),
                 "glue identity failed");
        }
        for (int it = 0; it < 140; ++it) {  // red reclaim sums over reseatings
            Assoc g = gen.random_guard();
            auto domb = gen.random_domb(g);
            QuantumGraph q = gen.quantum(g, domb, gen.pick(1, 2), false);
            LabeledGraph host = gen.component(g, domb, 3, 2);
            std::vector<int> X = gen.random_subset(q_domr(q));
            Rat rhs = 0;
            for_tuples(host.g.n_red, (int)X.size(),
                       [&](const std::vector<int>& v) { rhs += qhom(q, reseat_red(host, X, v)); });
            need(qhom(q_reclaim_red(q, X), host) == rhs, "red reclaim identity failed");
        }
        for (int it = 0; it < 140; ++it) {  // blue reclaim sums over reseatings
            Assoc g = gen.random_guard();
            auto domb = gen.random_domb(g);
            QuantumGraph q = gen.quantum(g, domb, gen.pick(1, 2), false);
            LabeledGraph host = gen.component(g, domb, 3, 2);
            std::vector<int> X =
                gen.random_subset(set_minus_(q_domb(q), assoc_values_sorted(q_guard(q))));
            Rat rhs = 0;
            for_tuples(host.g.n_blue, (int)X.size(),
                       [&](const std::vector<int>& e) { rhs += qhom(q, reseat_blue(host, X, e)); });
            need(qhom(q_reclaim_blue(q, X), host) == rhs, "blue reclaim identity failed");
        }
        int ran = 0;  // switch factors through the guard graph
        for (int it = 0; it < 400 && ran < 120; ++it) {
            Assoc g = gen.random_guard();
            if (g.empty()) continue;
            auto domb = gen.random_domb(g);
            QuantumGraph q = gen.quantum(g, domb, gen.pick(1, 2), false);
            LabeledGraph host = gen.component(g, domb, 3, 2);
            Assoc f = gen.random_transition(g);
            std::vector<int> B = set_intersect_(
                set_intersect_(q_domb(q), assoc_values_sorted(f)), assoc_values_sorted(g));
            Big lf = count_homs_labeled(from_guard_fn(f), host);
            need(lf == 0 || lf == 1, "guard graph count not 0/1");
            Rat rhs = 0;
            for_tuples(host.g.n_blue, (int)B.size(),
                       [&](const std::vector<int>& e) { rhs += qhom(q, reseat_blue(host, B, e)); });
            need(qhom(q_switch(q, f), host) == Rat(lf) * rhs, "switch identity failed");
            ++ran;
        }
        need(ran == 120, "switch generator starved");
    });

    criterion(6, "indicator forces 0 on X and 1 on Y, 200 instances", [] {
        QGen gen{std::mt19937(60), 2};
        for (int it = 0; it < 200; ++it) {
            Assoc g = gen.random_guard();
            auto domb = gen.random_domb(g);
            QuantumGraph q = gen.quantum(g, domb, gen.pick(1, 2), true);
            LabeledGraph host = gen.component(g, domb, 2, 2);
            Rat v = qhom(q, host);
            need(denominator(v) == 1 && v >= 0, "natural quantum count expected");
            int vi = (int)numerator(v);
            int w = vi + 1 + gen.pick(0, 2);
            need(qhom(normalize_indicator(q, {vi}, {w}), host) == 0, "value in X must give 0");
            need(qhom(normalize_indicator(q, {w}, {vi}), host) == 1, "value in Y must give 1");
        }
    });

    criterion(7, "count-pinning formulas: 300 triples, m up to 6", [] {
        CertGen gen{std::mt19937(70), 2};
        int done = 0;
        while (done < 300) {
            auto [cert, l] = gen.gen(gen.pick(0, 2));
            auto host = gen.host_for_labels(l.r, l.b, l.gd);
            Big h = count_homs_labeled(l, host);
            if (h > 6) continue;
            Interpretation m = interp_of(host);
            long long hv = (long long)h;
            for (long long target = 0; target <= 6; ++target)
                need(eval(m, formula_from_cert(cert, target)) == (hv == target),
                     "biconditional failed at m=" + std::to_string(target) + " h=" +
                         std::to_string(hv) + "\ncert " + cert_to_json(cert).dump() + "\nhost " +
                         labeled_to_json(host).dump());
            ++done;
        }
    });

    criterion(8, "formula-to-quantum compiler agrees with eval on 300 pairs", [] {
        CertGen gen{std::mt19937(80), 2};
        int done = 0;
        while (done < 300) {
            auto chi = gen.random_ngc();
            if (!check_syntax(chi, 2, LogicMode::ngck).ok) continue;
            auto host = gen.host_for_formula(chi);
            long long m = host.g.n_blue, d = 0;
            for (int e = 0; e < host.g.n_blue; ++e)
                d = std::max<long long>(d, (long long)host.g.blue_nbrs(e).size());
            auto cq = quantum_from_formula(chi, 2, {m, d});
            Rat v = qhom(cq.q, host);
            bool truth = eval(interp_of(host), chi);
            need(v == (truth ? 1 : 0), "verdict mismatch on " + render_formula(chi));
            ++done;
        }
    });

    criterion(9, "decomposition repair pipeline on 50 separated instances", [] {
        std::mt19937 rng(90);
        Caps caps{64, 64, 14, 14};
        int done = 0, nontrivial = 0;
        while (done < 50) {
            auto j = fx::random_incidence(rng, 4, 4);
            if (j.n_blue == 0) continue;
            auto d = random_ghd(rng, j);
            if (!d) continue;
            auto a = fx::random_incidence(rng, 3, 3);
            auto b = fx::random_incidence(rng, 3, 3);
            if (count_homs_incidence(j, a) == count_homs_incidence(j, b)) continue;
            if (!validate(*d, j, DecompMode::ehd).ok) ++nontrivial;
            auto out = ghd_to_ehd(j, *d, a, b);
            need(validate(out.d2, out.j2, DecompMode::ehd).ok, "repair output invalid");
            need(width(out.d2) <= width(*d), "repair increased the width");
            need(count_homs_incidence(out.j2, a, caps) != count_homs_incidence(out.j2, b, caps),
                 "repair lost the hom gap");
            ++done;
        }
        need(nontrivial > 0, "generator produced only valid inputs");
    });

    criterion(10, "both correspondence directions on the curated corpus", [] {
        std::vector<CorpusPair> corpus = {
            {"blue mismatch 1v2", blues_only(1), blues_only(2), 2, 2, nullptr, true},
            {"blue mismatch 1v3", blues_only(1), blues_only(3), 3, 2, nullptr, true},
            {"blue mismatch 2v4", blues_only(2), blues_only(4), 4, 2, nullptr, true},
            {"isomorphic control", two_disjoint_2edges(), two_disjoint_2edges(), 2, 2, nullptr,
             false},
            {"shared red vs disjoint", shared_red_2edges(), two_disjoint_2edges(), 3, 3,
             reds_with_two_blues_sentence(1), true},
            {"star vs matching", star(3), disjoint_edges(3), 3, 3, nullptr, true},
            {"double edge vs matching", double_edge(), two_disjoint_2edges(), 3, 3,
             reds_with_two_blues_sentence(1), true},
            {"double edge vs shared red", double_edge(), shared_red_2edges(), 3, 3,
             reds_with_two_blues_sentence(2), true},
            {"blue degree 3 vs 2", complete_blue(3), complete_blue(2), 2, 2,
             blue_with_reds_sentence(3), true},
            {"path vs matching", path_blues(3), disjoint_edges(3), 3, 3, nullptr, true},
        };
        need(corpus.size() >= 10, "corpus too small");
        for (auto& p : corpus) {
            auto r = crosscheck_main_theorem(p.a, p.b, 2, p.max_blue, p.max_red, p.sentence);
            if (!p.expect_witness) {
                need(!r.witness.has_value(), p.name + ": unexpected witness");
                need(!r.sentence_separates && !r.quantum_separates,
                     p.name + ": assertions on an isomorphic pair");
                continue;
            }
            need(r.witness.has_value(), p.name + ": no witness found");
            // re-verify the witness with the naive counter and the validator
            need(count_homs_incidence_naive(r.witness->j, p.a) == r.witness->count_a,
                 p.name + ": count_a not confirmed");
            need(count_homs_incidence_naive(r.witness->j, p.b) == r.witness->count_b,
                 p.name + ": count_b not confirmed");
            need(r.witness->count_a != r.witness->count_b, p.name + ": counts equal");
            need(validate(r.witness->d, r.witness->j, DecompMode::ehd).ok &&
                     width(r.witness->d) <= 2,
                 p.name + ": witness decomposition invalid");
            // backward direction: the derived sentence must separate under eval
            need(r.sentence_separates, p.name + ": derived sentence does not separate");
            Interpretation ia = interp(p.a), ib = interp(p.b);
            need(eval(ia, r.sentence) && !eval(ib, r.sentence),
                 p.name + ": separation not confirmed");
            // forward direction, when a sentence is realized
            if (p.sentence || p.a.n_blue != p.b.n_blue) {
                need(r.quantum_separates, p.name + ": no separating component");
                need(r.quantum.has_value() && r.component_index >= 0,
                     p.name + ": component not reported");
                auto& [coef, comp] = r.quantum->q.terms[r.component_index];
                need(coef != 0, p.name + ": separating coefficient is zero");
                need(count_homs_labeled_naive(comp, strip_labels(p.a)) !=
                         count_homs_labeled_naive(comp, strip_labels(p.b)),
                     p.name + ": component separation not confirmed");
                need(r.component_in_class, p.name + ": component not certified in class");
                auto [dt, omega] = cert_to_ehd(r.quantum->certs[r.component_index]);
                need(validate(dt, comp.g, DecompMode::ehd).ok && width(dt) <= 2,
                     p.name + ": component decomposition not confirmed");
            }
        }
    });

    criterion(11, "counting engines agree: exhaustive small + 1000 random", [] {
        std::vector<IncidenceGraph> small;
        for (int r = 0; r <= 5; ++r)
            for (int b = 0; r + b <= 5; ++b)
                for (auto& g : all_graphs(r, b)) small.push_back(g);
        for (auto& p : small)
            for (auto& h : small)
                need(count_homs_incidence(p, h) == count_homs_incidence_naive(p, h),
                     "exhaustive disagreement");
        std::mt19937 rng(110);
        for (int it = 0; it < 1000; ++it) {
            auto p = fx::random_incidence(rng, 3, 3);
            auto h = fx::random_incidence(rng, 6, 6);
            need(count_homs_incidence(p, h) == count_homs_incidence_naive(p, h),
                 "random disagreement");
        }
    });

    if (failures == 0) {
        std::printf("all %d criteria passed\n", 11);
        return 0;
    }
    std::printf("%d criteria FAILED\n", failures);
    return 1;
}

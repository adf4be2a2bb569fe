#include "ghom/decomp.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace ghom {

std::vector<std::vector<int>> TreeDecomp::adjacency() const {
    std::vector<std::vector<int>> adj(n_nodes);
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

namespace {

void sort_sets(TreeDecomp& d) {
    for (auto* side : {&d.bag, &d.cover})
        for (auto& s : *side) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
}

void check_structure(const TreeDecomp& d, const IncidenceGraph& i) {
    if (d.n_nodes < 1) throw DomainError("InvalidDecomp", "need at least one tree node");
    if ((int)d.bag.size() != d.n_nodes || (int)d.cover.size() != d.n_nodes)
        throw DomainError("InvalidDecomp", "bag/cover must be defined on exactly the tree nodes");
    if ((int)d.edges.size() != d.n_nodes - 1)
        throw DomainError("InvalidDecomp", "tree must have n-1 edges");
    for (auto& [a, b] : d.edges)
        if (a < 0 || a >= d.n_nodes || b < 0 || b >= d.n_nodes || a == b)
            throw DomainError("InvalidDecomp", "bad tree edge");
    auto adj = d.adjacency();
    std::vector<char> vis(d.n_nodes, 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        for (int u : adj[t])
            if (!vis[u]) {
                vis[u] = 1;
                ++cnt;
                q.push(u);
            }
    }
    if (cnt != d.n_nodes) throw DomainError("InvalidDecomp", "tree is disconnected");
    for (auto& s : d.bag)
        for (int v : s)
            if (v < 0 || v >= i.n_red) throw DomainError("InvalidDecomp", "bag id not in graph");
    for (auto& s : d.cover)
        for (int e : s)
            if (e < 0 || e >= i.n_blue) throw DomainError("InvalidDecomp", "cover id not in graph");
    if (d.root && (*d.root < 0 || *d.root >= d.n_nodes))
        throw DomainError("InvalidDecomp", "root outside the tree");
}

bool subset_connected(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes) {
    if (nodes.size() <= 1) return true;
    std::vector<char> in(adj.size(), 0), vis(adj.size(), 0);
    for (int t : nodes) in[t] = 1;
    std::queue<int> q;
    q.push(nodes[0]);
    vis[nodes[0]] = 1;
    size_t cnt = 1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        for (int u : adj[t])
            if (in[u] && !vis[u]) {
                vis[u] = 1;
                ++cnt;
                q.push(u);
            }
    }
    return cnt == nodes.size();
}

std::vector<std::vector<int>> subset_components(const std::vector<std::vector<int>>& adj,
                                                const std::vector<int>& nodes) {
    std::vector<char> in(adj.size(), 0), vis(adj.size(), 0);
    for (int t : nodes) in[t] = 1;
    std::vector<std::vector<int>> comps;
    for (int s : nodes) {
        if (vis[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        vis[s] = 1;
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            comp.push_back(t);
            for (int u : adj[t])
                if (in[u] && !vis[u]) {
                    vis[u] = 1;
                    q.push(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

std::vector<std::vector<int>> blue_neighbourhoods(const IncidenceGraph& i) {
    std::vector<std::vector<int>> nbr(i.n_blue);
    for (auto& [e, v] : i.edges) nbr[e].push_back(v);
    for (auto& s : nbr) std::sort(s.begin(), s.end());
    return nbr;
}

}  // namespace

DecompVerdict validate(const TreeDecomp& d0, const IncidenceGraph& i, DecompMode mode) {
    TreeDecomp d = d0;
    sort_sets(d);
    check_structure(d, i);
    auto adj = d.adjacency();
    auto nbr = blue_neighbourhoods(i);
    DecompVerdict out;
    auto fail = [&](const char* cond, const std::string& det) {
        out.ok = false;
        out.violations.push_back({cond, det});
    };
    for (int e = 0; e < i.n_blue; ++e) {
        bool found = false;
        for (int t = 0; t < d.n_nodes && !found; ++t)
            found = set_contains_(d.cover[t], e) && set_subset_(nbr[e], d.bag[t]);
        if (!found) fail("completeness", "blue " + std::to_string(e) + " has no covering node");
    }
    for (int v = 0; v < i.n_red; ++v) {
        std::vector<int> where;
        for (int t = 0; t < d.n_nodes; ++t)
            if (set_contains_(d.bag[t], v)) where.push_back(t);
        if (!subset_connected(adj, where))
            fail("red-connectedness", "red " + std::to_string(v) + " spans a disconnected set");
    }
    for (int t = 0; t < d.n_nodes; ++t) {
        std::vector<int> un;
        for (int e : d.cover[t]) un = set_union_(un, nbr[e]);
        if (!set_subset_(d.bag[t], un))
            fail("bag-covering", "bag of node " + std::to_string(t) + " not covered");
        else if (mode == DecompMode::ehd && d.bag[t] != un)
            fail("precise-coverage", "bag of node " + std::to_string(t) +
                                         " is smaller than its cover neighbourhood");
    }
    if (mode == DecompMode::ehd) {
        for (int e = 0; e < i.n_blue; ++e) {
            std::vector<int> where;
            for (int t = 0; t < d.n_nodes; ++t)
                if (set_contains_(d.cover[t], e)) where.push_back(t);
            if (!subset_connected(adj, where))
                fail("blue-connectedness",
                     "blue " + std::to_string(e) + " occurs in a disconnected set");
        }
    }
    return out;
}

int width(const TreeDecomp& d) {
    size_t w = 0;
    for (auto& c : d.cover) w = std::max(w, c.size());
    return (int)w;
}

namespace {

// Exact ehd search: grow rooted trees node by node. Each node's cover mixes
// blues inherited from its parent with fresh (never used) ones, at least one
// fresh per node, so trees never exceed |blue| nodes. Bags are forced by
// precise coverage; red connectedness prunes as soon as a placed red would
// have to reappear away from the current path.
struct EhdSearch {
    const IncidenceGraph& I;
    int k;
    std::vector<std::vector<int>> nbr;
    struct Node {
        int parent;
        std::vector<int> cover, bag, last_child;
    };
    std::vector<Node> nodes;
    std::vector<int> stack;
    std::vector<char> blue_used, red_seen;
    int used = 0;
    std::optional<TreeDecomp> result;

    EhdSearch(const IncidenceGraph& i, int kk) : I(i), k(kk), nbr(blue_neighbourhoods(i)) {
        blue_used.assign(I.n_blue, 0);
        red_seen.assign(I.n_red, 0);
    }

    void emit() {
        TreeDecomp d;
        d.n_nodes = (int)nodes.size();
        for (int t = 0; t < d.n_nodes; ++t) {
            d.bag.push_back(nodes[t].bag);
            d.cover.push_back(nodes[t].cover);
            if (nodes[t].parent >= 0) d.edges.push_back({nodes[t].parent, t});
        }
        d.root = 0;
        if (validate(d, I, DecompMode::ehd).ok) result = d;
    }

    // all covers for a child of `parent` (or a root when parent < 0)
    void for_each_cover(int parent, const std::function<void(const std::vector<int>&)>& fn) {
        std::vector<int> cands;
        if (parent >= 0)
            for (int e : nodes[parent].cover) cands.push_back(e);
        for (int e = 0; e < I.n_blue; ++e)
            if (!blue_used[e]) cands.push_back(e);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        std::vector<int> cur;
        std::function<void(size_t, bool)> go = [&](size_t idx, bool fresh) {
            if (result) return;
            if (!cur.empty() && fresh) fn(cur);
            if ((int)cur.size() == k || idx == cands.size()) return;
            for (size_t i = idx; i < cands.size(); ++i) {
                cur.push_back(cands[i]);
                go(i + 1, fresh || !blue_used[cands[i]]);
                cur.pop_back();
            }
        };
        go(0, false);
    }

    bool bag_ok(int parent, const std::vector<int>& bag) {
        for (int v : bag)
            if (red_seen[v] && (parent < 0 || !set_contains_(nodes[parent].bag, v))) return false;
        return true;
    }

    void add_and_recurse(int parent, const std::vector<int>& cover) {
        if (parent >= 0 && cover < nodes[parent].last_child) return;  // child ordering
        std::vector<int> bag;
        for (int e : cover) bag = set_union_(bag, nbr[e]);
        if (!bag_ok(parent, bag)) return;
        std::vector<int> fresh_b, fresh_r;
        for (int e : cover)
            if (!blue_used[e]) {
                blue_used[e] = 1;
                fresh_b.push_back(e);
            }
        for (int v : bag)
            if (!red_seen[v]) {
                red_seen[v] = 1;
                fresh_r.push_back(v);
            }
        used += (int)fresh_b.size();
        std::vector<int> prev_last;
        if (parent >= 0) {
            prev_last = nodes[parent].last_child;
            nodes[parent].last_child = cover;
        }
        nodes.push_back({parent, cover, bag, {}});
        stack.push_back((int)nodes.size() - 1);
        step();
        stack.pop_back();
        nodes.pop_back();
        if (parent >= 0) nodes[parent].last_child = prev_last;
        used -= (int)fresh_b.size();
        for (int e : fresh_b) blue_used[e] = 0;
        for (int v : fresh_r) red_seen[v] = 0;
    }

    void step() {
        if (result) return;
        if (stack.empty()) {
            if (used == I.n_blue) emit();
            return;
        }
        int top = stack.back();
        for_each_cover(top, [&](const std::vector<int>& c) { add_and_recurse(top, c); });
        if (result) return;
        // close the top node: reds leaving the path must never be needed again
        std::vector<int> pbag;
        if (nodes[top].parent >= 0) pbag = nodes[nodes[top].parent].bag;
        for (int v : set_minus_(nodes[top].bag, pbag))
            for (int e = 0; e < I.n_blue; ++e)
                if (!blue_used[e] && set_contains_(nbr[e], v)) return;
        stack.pop_back();
        step();
        stack.push_back(top);
    }

    std::optional<TreeDecomp> run() {
        for_each_cover(-1, [&](const std::vector<int>& c) { add_and_recurse(-1, c); });
        return result;
    }
};

// Exact ghd search: trees with <= |blue| nodes, covers are nonempty <=k
// subsets; afterwards choose a home node per blue and take minimal
// (Steiner-closure) bags, which is optimal for the bag-covering condition.
struct GhdSearch {
    const IncidenceGraph& I;
    int k;
    std::vector<std::vector<int>> nbr;
    int budget;
    struct Node {
        int parent;
        std::vector<int> cover, last_child;
    };
    std::vector<Node> nodes;
    std::vector<int> stack;
    std::vector<int> blue_occurs;  // occurrence count per blue
    int covered = 0;
    std::vector<std::vector<int>> covers_pool;
    std::optional<TreeDecomp> result;

    GhdSearch(const IncidenceGraph& i, int kk) : I(i), k(kk), nbr(blue_neighbourhoods(i)) {
        budget = std::max(1, I.n_blue);
        blue_occurs.assign(I.n_blue, 0);
        std::vector<int> cur;
        std::function<void(int)> go = [&](int idx) {
            if (!cur.empty()) covers_pool.push_back(cur);
            if ((int)cur.size() == k) return;
            for (int e = idx; e < I.n_blue; ++e) {
                cur.push_back(e);
                go(e + 1);
                cur.pop_back();
            }
        };
        go(0);
        std::sort(covers_pool.begin(), covers_pool.end());
    }

    std::vector<std::vector<int>> steiner_bags(const std::vector<std::vector<int>>& adj,
                                               const std::vector<int>& home) {
        int n = (int)nodes.size();
        std::vector<std::vector<int>> bag(n);
        for (int v = 0; v < I.n_red; ++v) {
            std::vector<int> terms;
            for (int e = 0; e < I.n_blue; ++e)
                if (set_contains_(nbr[e], v)) terms.push_back(home[e]);
            std::sort(terms.begin(), terms.end());
            terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
            if (terms.empty()) continue;
            // root at one terminal; a node is needed iff its subtree holds one
            int r = terms[0];
            std::vector<int> par(n, -1), order;
            std::vector<char> vis(n, 0);
            std::queue<int> q;
            q.push(r);
            vis[r] = 1;
            while (!q.empty()) {
                int t = q.front();
                q.pop();
                order.push_back(t);
                for (int u : adj[t])
                    if (!vis[u]) {
                        vis[u] = 1;
                        par[u] = t;
                        q.push(u);
                    }
            }
            std::vector<int> cnt(n, 0);
            for (int t : terms) cnt[t]++;
            for (auto it = order.rbegin(); it != order.rend(); ++it)
                if (par[*it] >= 0) cnt[par[*it]] += cnt[*it];
            for (int t = 0; t < n; ++t)
                if (cnt[t] > 0) bag[t].push_back(v);
        }
        return bag;
    }

    void try_complete() {
        TreeDecomp d;
        d.n_nodes = (int)nodes.size();
        for (int t = 0; t < d.n_nodes; ++t) {
            d.cover.push_back(nodes[t].cover);
            if (nodes[t].parent >= 0) d.edges.push_back({nodes[t].parent, t});
        }
        d.root = 0;
        auto adj = d.adjacency();
        // pick a home per blue among its occurrences
        std::vector<std::vector<int>> occ(I.n_blue);
        for (int t = 0; t < d.n_nodes; ++t)
            for (int e : nodes[t].cover) occ[e].push_back(t);
        std::vector<int> home(I.n_blue, 0);
        std::function<void(int)> go = [&](int e) {
            if (result) return;
            if (e == I.n_blue) {
                d.bag = steiner_bags(adj, home);
                if (validate(d, I, DecompMode::ghd).ok) result = d;
                return;
            }
            for (int t : occ[e]) {
                home[e] = t;
                go(e + 1);
            }
        };
        go(0);
    }

    void add_and_recurse(int parent, const std::vector<int>& cover) {
        if (parent >= 0 && cover < nodes[parent].last_child) return;
        std::vector<int> prev_last;
        if (parent >= 0) {
            prev_last = nodes[parent].last_child;
            nodes[parent].last_child = cover;
        }
        for (int e : cover)
            if (blue_occurs[e]++ == 0) ++covered;
        nodes.push_back({parent, cover, {}});
        stack.push_back((int)nodes.size() - 1);
        step();
        stack.pop_back();
        nodes.pop_back();
        for (int e : cover)
            if (--blue_occurs[e] == 0) --covered;
        if (parent >= 0) nodes[parent].last_child = prev_last;
    }

    void step() {
        if (result) return;
        if ((I.n_blue - covered) > (budget - (int)nodes.size()) * k) return;
        if (stack.empty()) {
            if (covered == I.n_blue) try_complete();
            return;
        }
        int top = stack.back();
        if ((int)nodes.size() < budget)
            for (auto& c : covers_pool) {
                add_and_recurse(top, c);
                if (result) return;
            }
        stack.pop_back();
        step();
        stack.push_back(top);
    }

    std::optional<TreeDecomp> run() {
        if (I.n_blue == 0) {
            TreeDecomp d;
            d.n_nodes = 1;
            d.bag = {{}};
            d.cover = {{}};
            d.root = 0;
            return d;
        }
        for (auto& c : covers_pool) {
            add_and_recurse(-1, c);
            if (result) break;
        }
        return result;
    }
};

std::optional<TreeDecomp> greedy_search(const IncidenceGraph& i, int k, DecompMode mode) {
    auto nbr = blue_neighbourhoods(i);
    if (i.n_blue <= k) {
        TreeDecomp d;
        d.n_nodes = 1;
        std::vector<int> cov, bag;
        for (int e = 0; e < i.n_blue; ++e) {
            cov.push_back(e);
            bag = set_union_(bag, nbr[e]);
        }
        d.cover = {cov};
        d.bag = {bag};
        d.root = 0;
        if (validate(d, i, mode).ok) return d;
    }
    if (i.n_blue >= 1 && k >= 1) {
        // join-tree attempt: one node per blue, maximum-overlap spanning tree
        int m = i.n_blue;
        TreeDecomp d;
        d.n_nodes = m;
        for (int e = 0; e < m; ++e) {
            d.cover.push_back({e});
            d.bag.push_back(nbr[e]);
        }
        std::vector<char> in(m, 0);
        std::vector<int> best(m, -1), bestw(m, -1);
        in[0] = 1;
        for (int e = 1; e < m; ++e)
            bestw[e] = (int)set_intersect_(nbr[0], nbr[e]).size(), best[e] = 0;
        for (int round = 1; round < m; ++round) {
            int pick = -1;
            for (int e = 0; e < m; ++e)
                if (!in[e] && (pick < 0 || bestw[e] > bestw[pick])) pick = e;
            in[pick] = 1;
            d.edges.push_back({best[pick], pick});
            for (int e = 0; e < m; ++e)
                if (!in[e]) {
                    int w = (int)set_intersect_(nbr[pick], nbr[e]).size();
                    if (w > bestw[e]) bestw[e] = w, best[e] = pick;
                }
        }
        d.root = 0;
        if (validate(d, i, mode).ok) return d;
    }
    return std::nullopt;
}

}  // namespace

std::optional<TreeDecomp> search_width(const IncidenceGraph& i, int k, DecompMode mode,
                                       SearchEngine engine, int exact_cap) {
    if (k < 0) throw DomainError("InvalidQuery", "negative width bound");
    if (engine == SearchEngine::greedy) return greedy_search(i, k, mode);
    if (i.n_blue > exact_cap)
        throw DomainError("CapExceeded", "exact search capped at " + std::to_string(exact_cap) +
                                             " blue nodes");
    if (i.n_blue == 0 || k == 0) {
        TreeDecomp d;
        d.n_nodes = 1;
        d.bag = {{}};
        d.cover = {{}};
        d.root = 0;
        if (validate(d, i, mode).ok) return d;
        return std::nullopt;
    }
    if (mode == DecompMode::ehd) return EhdSearch(i, k).run();
    return GhdSearch(i, k).run();
}

TreeDecomp normalize_binary_monotone(const TreeDecomp& d0, const IncidenceGraph& i) {
    if (!validate(d0, i, DecompMode::ehd).ok)
        throw DomainError("InvalidDecomp", "normalization needs a valid ehd");
    TreeDecomp d = d0;
    sort_sets(d);
    auto nbr = blue_neighbourhoods(i);
    int omega = 0;
    for (int t = 1; t < d.n_nodes; ++t)
        if (d.cover[t].size() > d.cover[omega].size()) omega = t;

    auto adj = d.adjacency();
    std::vector<int> par(d.n_nodes, -1), order;
    std::vector<char> vis(d.n_nodes, 0);
    std::queue<int> q;
    q.push(omega);
    vis[omega] = 1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        order.push_back(t);
        for (int u : adj[t])
            if (!vis[u]) {
                vis[u] = 1;
                par[u] = t;
                q.push(u);
            }
    }
    std::vector<std::vector<int>> children(d.n_nodes);
    for (int t : order)
        if (par[t] >= 0) children[par[t]].push_back(t);

    // bottom-up: pad a parent's cover from its largest child until monotone
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int p = *it;
        if (children[p].empty()) continue;
        int big = children[p][0];
        for (int c : children[p])
            if (d.cover[c].size() > d.cover[big].size()) big = c;
        for (int e : d.cover[big]) {
            if (d.cover[p].size() >= d.cover[big].size()) break;
            if (!set_contains_(d.cover[p], e)) {
                d.cover[p] = set_union_(d.cover[p], {e});
                d.bag[p] = set_union_(d.bag[p], nbr[e]);
            }
        }
    }

    // top-down: split >2 children into chains of duplicates
    for (size_t idx = 0; idx < order.size(); ++idx) {
        int t = order[idx];
        while (children[t].size() > 2) {
            int dup = d.n_nodes++;
            d.bag.push_back(d.bag[t]);
            d.cover.push_back(d.cover[t]);
            children.push_back({});
            par.push_back(t);
            std::vector<int> rest(children[t].begin() + 1, children[t].end());
            children[t] = {children[t][0], dup};
            children[dup] = rest;
            for (int c : rest) par[c] = dup;
            order.push_back(dup);
            t = dup;
        }
    }

    d.edges.clear();
    for (int t = 0; t < d.n_nodes; ++t)
        if (par[t] >= 0) d.edges.push_back({par[t], t});
    d.root = omega;
    if (!validate(d, i, DecompMode::ehd).ok)
        throw DomainError("Internal", "normalization produced an invalid ehd");
    return d;
}

long long find_pump_count(const IncidenceGraph& j, int e, const std::vector<int>& s, long long m,
                          const IncidenceGraph& hostA, const IncidenceGraph& hostB, int window) {
    if (e < 0 || e >= j.n_blue) throw DomainError("InvalidGraph", "unknown blue id");
    std::vector<int> ss(s);
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    if (!set_subset_(ss, j.blue_nbrs(e)))
        throw DomainError("InvalidPump", "pump set must sit inside the blue node's neighbourhood");
    Caps caps;
    caps.pat_red = 64;
    caps.pat_blue = 1 << 20;
    auto pa = pump_profile(j, ss, hostA, caps);
    auto pb = pump_profile(j, ss, hostB, caps);
    for (long long n = m; n <= m + window; ++n)
        if (pa.eval(n) != pb.eval(n)) return n;
    throw DomainError("SearchCapExceeded", "no distinguishing pump count in the window");
}

EhdConversion ghd_to_ehd(const IncidenceGraph& j0, const TreeDecomp& d0,
                         const IncidenceGraph& hostA, const IncidenceGraph& hostB) {
    if (!validate(d0, j0, DecompMode::ghd).ok)
        throw DomainError("InvalidDecomp", "input is not a valid ghd");
    Caps caps;
    caps.pat_red = 64;
    caps.pat_blue = 1 << 20;
    if (count_homs_incidence(j0, hostA, caps) == count_homs_incidence(j0, hostB, caps))
        throw DomainError("NotDistinguishing", "hosts are not distinguished by the pattern");

    IncidenceGraph j = j0;
    TreeDecomp d = d0;
    sort_sets(d);
    d.root.reset();

    // stage 1: precise coverage. Pump one fresh blue per distinct trace and
    // swap it into every offending cover; surplus copies become leaves.
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> by_trace;
    {
        auto nbr = blue_neighbourhoods(j);
        for (int t = 0; t < d.n_nodes; ++t)
            for (int e : d.cover[t])
                if (!set_subset_(nbr[e], d.bag[t]))
                    by_trace[set_intersect_(nbr[e], d.bag[t])].push_back({t, e});
    }
    for (auto& [trace, pairs] : by_trace) {
        long long n = find_pump_count(j, pairs[0].second, trace, 1, hostA, hostB);
        int base = j.n_blue;
        j = add_pumped_edges(j, trace, (int)n);
        for (auto& [t, e] : pairs) d.cover[t] = set_union_(set_minus_(d.cover[t], {e}), {base});
        for (int c = 1; c < (int)n; ++c) {
            int attach = -1;
            for (int t = 0; t < d.n_nodes && attach < 0; ++t)
                if (set_subset_(trace, d.bag[t])) attach = t;
            int leaf = d.n_nodes++;
            d.bag.push_back(trace);
            d.cover.push_back({base + c});
            d.edges.push_back({attach, leaf});
        }
    }

    // stage 2: blue connectedness. One fresh copy per extra component of a
    // blue's occurrence set; surplus copies become leaves at the kept one.
    auto adj = d.adjacency();
    for (int e = 0; e < j.n_blue; ++e) {
        std::vector<int> occ;
        for (int t = 0; t < d.n_nodes; ++t)
            if (set_contains_(d.cover[t], e)) occ.push_back(t);
        if (occ.empty()) throw DomainError("Internal", "blue lost from every cover");
        auto comps = subset_components(adj, occ);
        if (comps.size() <= 1) continue;
        auto s = j.blue_nbrs(e);
        long long n = find_pump_count(j, e, s, (long long)comps.size() - 1, hostA, hostB);
        int base = j.n_blue;
        j = add_pumped_edges(j, s, (int)n);
        for (size_t ci = 1; ci < comps.size(); ++ci)
            for (int t : comps[ci])
                d.cover[t] = set_union_(set_minus_(d.cover[t], {e}), {base + (int)ci - 1});
        for (int c = (int)comps.size() - 1; c < (int)n; ++c) {
            int leaf = d.n_nodes++;
            d.bag.push_back(s);
            d.cover.push_back({base + c});
            d.edges.push_back({comps[0][0], leaf});
        }
        adj = d.adjacency();
    }

    if (!validate(d, j, DecompMode::ehd).ok)
        throw DomainError("Internal", "conversion produced an invalid ehd");
    return {j, d};
}

}  // namespace ghom

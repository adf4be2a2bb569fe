#include "ghom/homcount.hh"

#include <algorithm>
#include <cstdint>
#include <map>

namespace ghom {

namespace {

using Mask = std::uint64_t;

int popcount(Mask m) { return __builtin_popcountll(m); }

void check_caps(const IncidenceGraph& pat, const IncidenceGraph& host, const Caps& caps) {
    if (pat.n_red > caps.pat_red || pat.n_blue > caps.pat_blue)
        throw DomainError("CapExceeded", "pattern exceeds counting caps");
    if (host.n_red > caps.host_red || host.n_blue > caps.host_blue)
        throw DomainError("CapExceeded", "host exceeds counting caps");
    if (host.n_blue > 64) throw DomainError("CapExceeded", "host blue count above 64");
}

// Backtracks over red images only. Each pattern blue keeps a bitmask of
// still-viable host blues; when the last red of its neighbourhood is placed
// the popcount enters the product, so blue nodes never branch.
struct Engine {
    const IncidenceGraph& pat;
    const IncidenceGraph& host;
    std::vector<std::vector<int>> red_to_blues;  // pattern red -> incident blues
    std::vector<Mask> host_red_mask;             // host red -> adjacent host blues
    std::vector<int> order;                      // red processing order
    std::vector<int> finish_at;                  // pattern blue -> order index of last red
    std::vector<int> forced_red;                 // pattern red -> host red or -1
    std::vector<Mask> mask;                      // per pattern blue
    std::vector<int> assign;                     // pattern red -> host red

    const std::vector<int>* group_reds = nullptr;
    std::map<std::vector<int>, Big>* grouped = nullptr;
    Big total = 0;

    Engine(const IncidenceGraph& p, const IncidenceGraph& h) : pat(p), host(h) {
        red_to_blues.assign(pat.n_red, {});
        for (auto& [e, v] : pat.edges) red_to_blues[v].push_back(e);
        host_red_mask.assign(host.n_red, 0);
        for (auto& [e, v] : host.edges) host_red_mask[v] |= Mask(1) << e;
        forced_red.assign(pat.n_red, -1);
        Mask all = host.n_blue == 64 ? ~Mask(0) : (Mask(1) << host.n_blue) - 1;
        mask.assign(pat.n_blue, all);
        assign.assign(pat.n_red, -1);
    }

    void build_order() {
        order.clear();
        std::vector<char> queued(pat.n_red, 0);
        auto push = [&](int v) {
            if (!queued[v]) {
                queued[v] = 1;
                order.push_back(v);
            }
        };
        for (int v = 0; v < pat.n_red; ++v)
            if (forced_red[v] >= 0) push(v);
        // BFS through shared blues so constraints bite early
        for (size_t head = 0;; ++head) {
            if (head == order.size()) {
                int nxt = -1;
                for (int v = 0; v < pat.n_red && nxt < 0; ++v)
                    if (!queued[v]) nxt = v;
                if (nxt < 0) break;
                push(nxt);
            }
            int v = order[head];
            for (int e : red_to_blues[v])
                for (int u : pat.blue_nbrs(e)) push(u);
        }
        std::vector<int> pos(pat.n_red, -1);
        for (int i = 0; i < (int)order.size(); ++i) pos[order[i]] = i;
        finish_at.assign(pat.n_blue, -1);
        for (auto& [e, v] : pat.edges) finish_at[e] = std::max(finish_at[e], pos[v]);
    }

    void emit(const Big& acc) {
        if (grouped) {
            std::vector<int> key;
            key.reserve(group_reds->size());
            for (int v : *group_reds) key.push_back(assign[v]);
            (*grouped)[key] += acc;
        } else {
            total += acc;
        }
    }

    void rec(int idx, const Big& acc) {
        if (idx == (int)order.size()) {
            emit(acc);
            return;
        }
        int v = order[idx];
        int lo = forced_red[v] >= 0 ? forced_red[v] : 0;
        int hi = forced_red[v] >= 0 ? forced_red[v] + 1 : host.n_red;
        for (int rho = lo; rho < hi; ++rho) {
            Big next = acc;
            std::vector<std::pair<int, Mask>> saved;
            bool ok = true;
            for (int e : red_to_blues[v]) {
                Mask m = mask[e] & host_red_mask[rho];
                if (m == 0) {
                    ok = false;
                    break;
                }
                saved.emplace_back(e, mask[e]);
                mask[e] = m;
                if (finish_at[e] == idx) next *= popcount(m);
            }
            if (ok) {
                assign[v] = rho;
                rec(idx + 1, next);
                assign[v] = -1;
            }
            for (auto& [e, m] : saved) mask[e] = m;
        }
    }

    void run() {
        build_order();
        Big start = 1;
        for (int e = 0; e < pat.n_blue; ++e)
            if (finish_at[e] < 0) start *= popcount(mask[e]);
        if (start == 0) {
            return;  // some forced blue already impossible
        }
        rec(0, start);
    }
};

}  // namespace

Big count_homs_incidence(const IncidenceGraph& pat, const IncidenceGraph& host, const Caps& caps) {
    check_caps(pat, host, caps);
    Engine eng(pat, host);
    eng.run();
    return eng.total;
}

Big count_homs_incidence_naive(const IncidenceGraph& pat, const IncidenceGraph& host) {
    std::vector<int> hb(pat.n_blue, 0), hr(pat.n_red, 0);
    Big total = 0;
    if (pat.n_blue > 0 && host.n_blue == 0) return 0;
    if (pat.n_red > 0 && host.n_red == 0) return 0;
    while (true) {
        bool ok = true;
        for (auto& [e, v] : pat.edges)
            if (!host.has_edge(hb[e], hr[v])) {
                ok = false;
                break;
            }
        if (ok) total += 1;
        int i = 0;
        for (; i < pat.n_blue; ++i) {
            if (++hb[i] < host.n_blue) break;
            hb[i] = 0;
        }
        if (i < pat.n_blue) continue;
        for (i = 0; i < pat.n_red; ++i) {
            if (++hr[i] < host.n_red) break;
            hr[i] = 0;
        }
        if (i == pat.n_red) break;
    }
    return total;
}

Big count_homs_hypergraph(const Hypergraph& pat, const Hypergraph& host, const Caps& caps) {
    if (pat.n_vertices > caps.pat_red || (int)pat.edges.size() > caps.pat_blue)
        throw DomainError("CapExceeded", "pattern exceeds counting caps");
    if (host.n_vertices > caps.host_red || (int)host.edges.size() > caps.host_blue)
        throw DomainError("CapExceeded", "host exceeds counting caps");
    std::map<std::vector<int>, Big> edge_count;
    for (auto& e : host.edges) edge_count[e] += 1;
    // per pattern edge: the vertex assigned last (vertices processed in id order)
    std::vector<int> last(pat.edges.size(), -1);
    for (int e = 0; e < (int)pat.edges.size(); ++e)
        for (int v : pat.edges[e]) last[e] = std::max(last[e], v);
    std::vector<int> h(pat.n_vertices, -1);
    Big total = 0;
    auto rec = [&](auto&& self, int v, Big acc) -> void {
        if (v == pat.n_vertices) {
            total += acc;
            return;
        }
        for (int rho = 0; rho < host.n_vertices; ++rho) {
            h[v] = rho;
            Big next = acc;
            bool ok = true;
            for (int e = 0; e < (int)pat.edges.size() && ok; ++e) {
                if (!set_contains_(pat.edges[e], v)) continue;
                std::vector<int> img;
                bool complete = last[e] == v;
                for (int u : pat.edges[e])
                    if (h[u] >= 0) img.push_back(h[u]);
                std::sort(img.begin(), img.end());
                img.erase(std::unique(img.begin(), img.end()), img.end());
                if (complete) {
                    auto it = edge_count.find(img);
                    if (it == edge_count.end())
                        ok = false;
                    else
                        next *= it->second;
                } else {
                    bool some = false;
                    for (auto& e2 : host.edges)
                        if (set_subset_(img, e2)) {
                            some = true;
                            break;
                        }
                    ok = some;
                }
            }
            if (ok) self(self, v + 1, next);
        }
        h[v] = -1;
    };
    // edges with no vertices map only to empty host edges
    Big start = 1;
    for (int e = 0; e < (int)pat.edges.size(); ++e)
        if (last[e] < 0) start *= edge_count[{}];
    if (start != 0) rec(rec, 0, start);
    return total;
}

Big count_homs_hypergraph_naive(const Hypergraph& pat, const Hypergraph& host) {
    int ne = (int)pat.edges.size(), mhe = (int)host.edges.size();
    if (pat.n_vertices > 0 && host.n_vertices == 0) return 0;
    if (ne > 0 && mhe == 0) return 0;
    std::vector<int> hv(pat.n_vertices, 0), he(ne, 0);
    Big total = 0;
    while (true) {
        bool ok = true;
        for (int e = 0; e < ne && ok; ++e) {
            std::vector<int> img;
            for (int v : pat.edges[e]) img.push_back(hv[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            ok = host.edges[he[e]] == img;
        }
        if (ok) total += 1;
        int i = 0;
        for (; i < ne; ++i) {
            if (++he[i] < mhe) break;
            he[i] = 0;
        }
        if (i < ne) continue;
        for (i = 0; i < pat.n_vertices; ++i) {
            if (++hv[i] < host.n_vertices) break;
            hv[i] = 0;
        }
        if (i == pat.n_vertices) break;
    }
    return total;
}

Big count_homs_labeled(const LabeledGraph& l, const LabeledGraph& lp, const Caps& caps) {
    check_caps(l.g, lp.g, caps);
    Engine eng(l.g, lp.g);
    for (auto& [lab, node] : l.r) {
        const int* img = assoc_get(lp.r, lab);
        if (!img) return 0;  // label missing on the host side
        if (eng.forced_red[node] >= 0 && eng.forced_red[node] != *img) return 0;
        eng.forced_red[node] = *img;
    }
    for (auto& [lab, node] : l.b) {
        const int* img = assoc_get(lp.b, lab);
        if (!img) return 0;
        eng.mask[node] &= Mask(1) << *img;
        if (eng.mask[node] == 0) return 0;
    }
    eng.run();
    return eng.total;
}

Big count_homs_labeled_naive(const LabeledGraph& l, const LabeledGraph& lp) {
    const IncidenceGraph &pat = l.g, &host = lp.g;
    if (pat.n_blue > 0 && host.n_blue == 0) return 0;
    if (pat.n_red > 0 && host.n_red == 0) return 0;
    std::vector<int> hb(pat.n_blue, 0), hr(pat.n_red, 0);
    Big total = 0;
    while (true) {
        bool ok = true;
        for (auto& [e, v] : pat.edges)
            if (!host.has_edge(hb[e], hr[v])) {
                ok = false;
                break;
            }
        for (auto& [lab, node] : l.r) {
            if (!ok) break;
            const int* img = assoc_get(lp.r, lab);
            ok = img && hr[node] == *img;
        }
        for (auto& [lab, node] : l.b) {
            if (!ok) break;
            const int* img = assoc_get(lp.b, lab);
            ok = img && hb[node] == *img;
        }
        if (ok) total += 1;
        int i = 0;
        for (; i < pat.n_blue; ++i) {
            if (++hb[i] < host.n_blue) break;
            hb[i] = 0;
        }
        if (i < pat.n_blue) continue;
        for (i = 0; i < pat.n_red; ++i) {
            if (++hr[i] < host.n_red) break;
            hr[i] = 0;
        }
        if (i == pat.n_red) break;
    }
    return total;
}

std::vector<Big> hom_vector(const std::vector<IncidenceGraph>& family, const IncidenceGraph& host,
                            const Caps& caps) {
    std::vector<Big> out;
    out.reserve(family.size());
    for (auto& j : family) out.push_back(count_homs_incidence(j, host, caps));
    return out;
}

Big PumpProfile::eval(long long n) const {
    Big out = 0;
    for (auto& [w, base] : groups) out += w * boost::multiprecision::pow(base, (unsigned)n);
    return out;
}

PumpProfile pump_profile(const IncidenceGraph& j, const std::vector<int>& s,
                         const IncidenceGraph& host, const Caps& caps) {
    check_caps(j, host, caps);
    for (int v : s)
        if (v < 0 || v >= j.n_red) throw DomainError("InvalidGraph", "pump set red id out of range");
    std::vector<int> key_reds(s);
    std::sort(key_reds.begin(), key_reds.end());
    key_reds.erase(std::unique(key_reds.begin(), key_reds.end()), key_reds.end());

    Engine eng(j, host);
    std::map<std::vector<int>, Big> grouped;
    eng.group_reds = &key_reds;
    eng.grouped = &grouped;
    eng.run();

    std::vector<Mask> host_red_mask(host.n_red, 0);
    for (auto& [e, v] : host.edges) host_red_mask[v] |= Mask(1) << e;
    Mask all = host.n_blue == 64 ? ~Mask(0) : (Mask(1) << host.n_blue) - 1;

    // merge placements with the same base factor
    std::map<Big, Big> by_base;
    for (auto& [key, w] : grouped) {
        Mask m = all;
        for (int rho : key) m &= host_red_mask[rho];
        by_base[Big(popcount(m))] += w;
    }
    PumpProfile out;
    for (auto& [base, w] : by_base) out.groups.emplace_back(w, base);
    return out;
}

}  // namespace ghom

#include "ghom/model.hh"

#include <algorithm>
#include <numeric>

namespace ghom {

void IncidenceGraph::normalize() {
    for (auto& [b, r] : edges) {
        if (b < 0 || b >= n_blue || r < 0 || r >= n_red)
            throw DomainError("InvalidGraph", "edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool IncidenceGraph::has_edge(int blue, int red) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(blue, red));
}

std::vector<int> IncidenceGraph::blue_nbrs(int blue) const {
    std::vector<int> out;
    auto lo = std::lower_bound(edges.begin(), edges.end(), std::make_pair(blue, -1));
    for (auto it = lo; it != edges.end() && it->first == blue; ++it) out.push_back(it->second);
    return out;
}

std::vector<int> IncidenceGraph::red_nbrs(int red) const {
    std::vector<int> out;
    for (auto& [b, r] : edges)
        if (r == red) out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
}

bool IncidenceGraph::reds_covered() const {
    std::vector<char> seen(n_red, 0);
    for (auto& [b, r] : edges) seen[r] = 1;
    for (int v = 0; v < n_red; ++v)
        if (!seen[v]) return false;
    return true;
}

void Hypergraph::normalize() {
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        for (int v : e)
            if (v < 0 || v >= n_vertices)
                throw DomainError("InvalidGraph", "incidence vertex out of range");
    }
}

bool Hypergraph::vertices_covered() const {
    std::vector<char> seen(n_vertices, 0);
    for (auto& e : edges)
        for (int v : e) seen[v] = 1;
    for (int v = 0; v < n_vertices; ++v)
        if (!seen[v]) return false;
    return true;
}

IncidenceGraph to_incidence(const Hypergraph& h) {
    IncidenceGraph i;
    i.n_red = h.n_vertices;
    i.n_blue = (int)h.edges.size();
    for (int e = 0; e < i.n_blue; ++e)
        for (int v : h.edges[e]) i.edges.emplace_back(e, v);
    i.normalize();
    return i;
}

Hypergraph from_incidence(const IncidenceGraph& i) {
    if (!i.reds_covered())
        throw DomainError("IsolatedRedNode", "red node without incident blue node");
    Hypergraph h;
    h.n_vertices = i.n_red;
    h.edges.assign(i.n_blue, {});
    for (auto& [b, r] : i.edges) h.edges[b].push_back(r);
    h.normalize();
    return h;
}

IncidenceGraph add_pumped_edges(const IncidenceGraph& j, const std::vector<int>& s, int n) {
    for (int v : s)
        if (v < 0 || v >= j.n_red)
            throw DomainError("InvalidGraph", "pump set contains unknown red id");
    if (n < 0) throw DomainError("InvalidGraph", "negative pump count");
    IncidenceGraph out = j;
    for (int c = 0; c < n; ++c) {
        int fresh = out.n_blue++;
        for (int v : s) out.edges.emplace_back(fresh, v);
    }
    out.normalize();
    return out;
}

HyperEdit pump_vertex(const Hypergraph& h, int edge) {
    if (edge < 0 || edge >= (int)h.edges.size())
        throw DomainError("InvalidGraph", "pump: unknown edge id");
    HyperEdit out;
    out.result = h;
    int fresh = out.result.n_vertices++;
    out.result.edges[edge].push_back(fresh);
    out.result.normalize();
    out.projection.resize(h.n_vertices);
    std::iota(out.projection.begin(), out.projection.end(), 0);
    return out;
}

HyperEdit local_merge(const Hypergraph& h, int u1, int u2, int edge) {
    if (edge < 0 || edge >= (int)h.edges.size())
        throw DomainError("InvalidGraph", "merge: unknown edge id");
    if (u1 == u2) throw DomainError("InvalidGraph", "merge: vertices must differ");
    const auto& inc = h.edges[edge];
    if (!set_contains_(inc, u1) || !set_contains_(inc, u2))
        throw DomainError("NotCoincident", "merge: vertices not co-incident in edge");
    HyperEdit out;
    // survivors keep relative order, merged vertex gets the last id
    std::vector<int> pi(h.n_vertices, -1);
    int next = 0;
    for (int v = 0; v < h.n_vertices; ++v)
        if (v != u1 && v != u2) pi[v] = next++;
    pi[u1] = pi[u2] = next;  // fresh vertex
    out.projection = pi;
    out.result.n_vertices = next + 1;
    for (auto& e : h.edges) {
        std::vector<int> ne;
        for (int v : e) ne.push_back(pi[v]);
        out.result.edges.push_back(std::move(ne));
    }
    out.result.normalize();
    return out;
}

namespace {

// Sorted multiset of neighbour degrees: a cheap invariant for pruning.
std::vector<std::vector<int>> degree_profiles(const IncidenceGraph& g, bool blue_side) {
    int n = blue_side ? g.n_blue : g.n_red;
    std::vector<int> rdeg(g.n_red, 0), bdeg(g.n_blue, 0);
    for (auto& [b, r] : g.edges) {
        rdeg[r]++;
        bdeg[b]++;
    }
    std::vector<std::vector<int>> prof(n);
    for (auto& [b, r] : g.edges) {
        if (blue_side)
            prof[b].push_back(rdeg[r]);
        else
            prof[r].push_back(bdeg[b]);
    }
    for (auto& p : prof) std::sort(p.begin(), p.end());
    return prof;
}

struct IsoSearch {
    const IncidenceGraph &a, &b;
    std::vector<std::vector<int>> pa_blue, pb_blue, pa_red, pb_red;
    std::vector<int> bmap, rmap;     // a -> b, -1 unassigned
    std::vector<char> bused, rused;  // images taken in b

    bool extend_blue(int bi);
    bool extend_red(int ri);
    bool edges_match() const;
};

bool IsoSearch::edges_match() const {
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(a.edges.size());
    for (auto& [e, v] : a.edges) mapped.emplace_back(bmap[e], rmap[v]);
    std::sort(mapped.begin(), mapped.end());
    return mapped == b.edges;
}

bool IsoSearch::extend_red(int ri) {
    if (ri == a.n_red) return edges_match();
    for (int cand = 0; cand < b.n_red; ++cand) {
        if (rused[cand] || pa_red[ri] != pb_red[cand]) continue;
        // all already-mapped blues incident to ri must map consistently
        bool ok = true;
        for (auto& [e, v] : a.edges) {
            if (v != ri) continue;
            if (!b.has_edge(bmap[e], cand)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        rmap[ri] = cand;
        rused[cand] = 1;
        if (extend_red(ri + 1)) return true;
        rused[cand] = 0;
        rmap[ri] = -1;
    }
    return false;
}

bool IsoSearch::extend_blue(int bi) {
    if (bi == a.n_blue) return extend_red(0);
    for (int cand = 0; cand < b.n_blue; ++cand) {
        if (bused[cand] || pa_blue[bi] != pb_blue[cand]) continue;
        bmap[bi] = cand;
        bused[cand] = 1;
        if (extend_blue(bi + 1)) return true;
        bused[cand] = 0;
        bmap[bi] = -1;
    }
    return false;
}

}  // namespace

std::optional<IsoWitness> isomorphic(const IncidenceGraph& a, const IncidenceGraph& b) {
    if (a.n_red > 12 || a.n_blue > 12 || b.n_red > 12 || b.n_blue > 12)
        throw DomainError("CapExceeded", "isomorphism cap is 12+12 nodes");
    if (a.n_red != b.n_red || a.n_blue != b.n_blue || a.edges.size() != b.edges.size())
        return std::nullopt;
    IsoSearch s{a,
                b,
                degree_profiles(a, true),
                degree_profiles(b, true),
                degree_profiles(a, false),
                degree_profiles(b, false),
                std::vector<int>(a.n_blue, -1),
                std::vector<int>(a.n_red, -1),
                std::vector<char>(b.n_blue, 0),
                std::vector<char>(b.n_red, 0)};
    if (!s.extend_blue(0)) return std::nullopt;
    return IsoWitness{s.rmap, s.bmap};
}

std::vector<int> set_union_(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> set_intersect_(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> set_minus_(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains_(const std::vector<int>& a, int x) {
    return std::binary_search(a.begin(), a.end(), x);
}

bool set_subset_(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace ghom

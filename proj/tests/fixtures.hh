#ifndef GHOM_TESTS_FIXTURES_HH_
#define GHOM_TESTS_FIXTURES_HH_

#include "ghom/decomp.hh"
#include "ghom/model.hh"

#include <random>

namespace fx {

// Two triangles overlaid with their 3-element supports: vertices 0..5,
// edges {0,1,2},{3,4,5} plus all six 2-element sides.
inline ghom::Hypergraph overlay_hypergraph() {
    ghom::Hypergraph h;
    h.n_vertices = 6;
    h.edges = {{0, 1, 2}, {3, 4, 5}, {0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    h.normalize();
    return h;
}

// The 12-red/11-blue bipartite graph used by the traversal worked example.
// Blues in order a,b,c,d,e,f,g,h,j,m,n -> ids 0..10.
inline ghom::IncidenceGraph worked_incidence() {
    std::vector<std::vector<int>> nbrs = {
        {1, 4, 5, 8, 10},   // a
        {1, 6, 7, 9, 11},   // b
        {2, 8, 9},          // c
        {2, 4},             // d
        {2, 6},             // e
        {3, 10, 11},        // f
        {3, 5},             // g
        {3, 7},             // h
        {0, 4, 5, 6, 7},    // j
        {4, 6},             // m
        {5, 7},             // n
    };
    ghom::IncidenceGraph g;
    g.n_red = 12;
    g.n_blue = 11;
    for (int e = 0; e < g.n_blue; ++e)
        for (int v : nbrs[e]) g.edges.emplace_back(e, v);
    g.normalize();
    return g;
}

// A width-2 ehd of worked_incidence(): nodes t1..t8 -> 0..7.
inline ghom::TreeDecomp worked_ehd() {
    ghom::TreeDecomp d;
    d.n_nodes = 8;
    d.cover = {{1, 8}, {0, 1}, {2, 9}, {5, 10}, {3}, {4}, {6}, {7}};
    d.edges = {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}};
    d.root = 0;
    auto g = worked_incidence();
    for (auto& cov : d.cover) {
        std::vector<int> bag;
        for (int e : cov) bag = ghom::set_union_(bag, g.blue_nbrs(e));
        d.bag.push_back(bag);
    }
    return d;
}

inline ghom::IncidenceGraph random_incidence(std::mt19937& rng, int max_red, int max_blue,
                                             double p = 0.5) {
    ghom::IncidenceGraph g;
    g.n_red = (int)(rng() % (max_red + 1));
    g.n_blue = (int)(rng() % (max_blue + 1));
    std::bernoulli_distribution coin(p);
    for (int e = 0; e < g.n_blue; ++e)
        for (int v = 0; v < g.n_red; ++v)
            if (coin(rng)) g.edges.emplace_back(e, v);
    g.normalize();
    return g;
}

}  // namespace fx

#endif  // GHOM_TESTS_FIXTURES_HH_

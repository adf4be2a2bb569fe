#ifndef GHOM_MODEL_HH_
#define GHOM_MODEL_HH_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ghom {

using Big = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Domain-level failure (caps, invalid inputs, ...). `name` is the stable
// machine-readable error name surfaced by the CLI (exit code 1).
struct DomainError : std::runtime_error {
    std::string name;
    DomainError(std::string n, const std::string& msg)
        : std::runtime_error(n + ": " + msg), name(std::move(n)) {}
};

// Bipartite incidence graph. Node ids are dense: red ids 0..n_red-1,
// blue ids 0..n_blue-1. Edges go from blue to red and are kept sorted
// and duplicate-free.
struct IncidenceGraph {
    int n_red = 0;
    int n_blue = 0;
    std::vector<std::pair<int, int>> edges;  // (blue, red), sorted

    bool operator==(const IncidenceGraph& o) const {
        return n_red == o.n_red && n_blue == o.n_blue && edges == o.edges;
    }

    void normalize();                       // sort + dedupe edges, bounds-check
    bool has_edge(int blue, int red) const; // binary search
    std::vector<int> blue_nbrs(int blue) const;  // sorted red neighbours
    std::vector<int> red_nbrs(int red) const;    // sorted blue neighbours
    // every red node adjacent to >=1 blue node?
    bool reds_covered() const;
};

// Hypergraph with multiset edge semantics: edge id = index into `edges`,
// each entry is the sorted incidence set. Vertex ids 0..n_vertices-1.
struct Hypergraph {
    int n_vertices = 0;
    std::vector<std::vector<int>> edges;

    bool operator==(const Hypergraph& o) const {
        return n_vertices == o.n_vertices && edges == o.edges;
    }

    void normalize();        // sort + dedupe each incidence set, bounds-check
    // every vertex occurs in some edge?
    bool vertices_covered() const;
};

IncidenceGraph to_incidence(const Hypergraph& h);
// Throws DomainError("IsolatedRedNode") if some red node has no blue neighbour.
Hypergraph from_incidence(const IncidenceGraph& i);

// J + n*s: insert n fresh blue nodes whose neighbourhood is exactly s.
// New blue ids are n_blue, n_blue+1, ..., n_blue+n-1.
IncidenceGraph add_pumped_edges(const IncidenceGraph& j, const std::vector<int>& s, int n);

// Edit operations on hypergraphs. Pump inserts a fresh vertex (id = old
// n_vertices) into one edge. LocalMerge identifies u1,u2 (co-incident in
// edge e) into a fresh vertex; ids are re-densified, survivors keep their
// relative order and the merged vertex comes last. `projection` maps old
// vertex ids to new ones.
struct HyperEdit {
    Hypergraph result;
    std::vector<int> projection;  // old vertex id -> new vertex id
};
HyperEdit pump_vertex(const Hypergraph& h, int edge);
HyperEdit local_merge(const Hypergraph& h, int u1, int u2, int edge);

// Exponential backtracking isomorphism test with degree-profile pruning.
// Hard cap of 12+12 nodes (DomainError("CapExceeded") beyond).
struct IsoWitness {
    std::vector<int> red_map;   // red of a -> red of b
    std::vector<int> blue_map;  // blue of a -> blue of b
};
std::optional<IsoWitness> isomorphic(const IncidenceGraph& a, const IncidenceGraph& b);

// ---- small shared helpers (sorted-vector sets) ----
std::vector<int> set_union_(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_intersect_(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_minus_(const std::vector<int>& a, const std::vector<int>& b);
bool set_contains_(const std::vector<int>& a, int x);
bool set_subset_(const std::vector<int>& a, const std::vector<int>& b);  // a subset of b

}  // namespace ghom

#endif  // GHOM_MODEL_HH_

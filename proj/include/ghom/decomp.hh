#ifndef GHOM_DECOMP_HH_
#define GHOM_DECOMP_HH_

#include "ghom/homcount.hh"
#include "ghom/model.hh"

#include <optional>
#include <string>

namespace ghom {

// Tree decomposition of an incidence graph: per tree node a bag of red ids
// and a cover of blue ids. Tree nodes are dense 0..n_nodes-1.
struct TreeDecomp {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> edges;  // undirected tree edges
    std::vector<std::vector<int>> bag;       // sorted red ids per node
    std::vector<std::vector<int>> cover;     // sorted blue ids per node
    std::optional<int> root;

    std::vector<std::vector<int>> adjacency() const;
};

enum class DecompMode { ghd, ehd };
enum class SearchEngine { exact, greedy };

struct DecompViolation {
    std::string condition;
    std::string detail;
};
struct DecompVerdict {
    bool ok = true;
    std::vector<DecompViolation> violations;
};

// Checks the three ghd conditions (completeness, red connectedness, bag
// covering) and, in ehd mode, precise coverage and blue connectedness.
// Malformed input (bad ids, non-tree) throws DomainError("InvalidDecomp").
DecompVerdict validate(const TreeDecomp& d, const IncidenceGraph& i, DecompMode mode);

int width(const TreeDecomp& d);

// Exact engine: complete search, returns a valid width-<=k decomposition iff
// one with <= |blue| tree nodes exists (|blue| <= exact_cap enforced).
// Greedy engine: cheap upper bound, valid decomposition or nothing.
std::optional<TreeDecomp> search_width(const IncidenceGraph& i, int k, DecompMode mode,
                                       SearchEngine engine, int exact_cap = 8);

// Roots at a maximum-cover node, pads child covers upward so parents are
// never smaller, then splits nodes with >2 children into duplicate chains.
// Input must be a valid ehd; output is a valid ehd of the same width.
TreeDecomp normalize_binary_monotone(const TreeDecomp& d, const IncidenceGraph& i);

// Smallest n >= m with hom(J+n*s, hostA) != hom(J+n*s, hostB), searched
// linearly up to m+window. Requires s subset of N_J(e).
long long find_pump_count(const IncidenceGraph& j, int e, const std::vector<int>& s, long long m,
                          const IncidenceGraph& hostA, const IncidenceGraph& hostB,
                          int window = 64);

// Turns a valid ghd of J into a valid ehd of a pumped J2 without increasing
// width, preserving hom(.,hostA) != hom(.,hostB). Stage 1 restores precise
// coverage, stage 2 blue connectedness.
struct EhdConversion {
    IncidenceGraph j2;
    TreeDecomp d2;
};
EhdConversion ghd_to_ehd(const IncidenceGraph& j, const TreeDecomp& d, const IncidenceGraph& hostA,
                         const IncidenceGraph& hostB);

}  // namespace ghom

#endif  // GHOM_DECOMP_HH_

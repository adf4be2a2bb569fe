#ifndef GHOM_HOMCOUNT_HH_
#define GHOM_HOMCOUNT_HH_

#include "ghom/labeled.hh"
#include "ghom/model.hh"

namespace ghom {

struct Caps {
    int pat_red = 14;
    int pat_blue = 10;
    int host_red = 14;
    int host_blue = 14;
};

// Color-preserving homomorphisms between incidence graphs (blue->blue,
// red->red, edges to edges). Backtracks over red images; each blue node
// contributes a multiplicative factor once its neighbourhood is placed,
// so duplicated blue nodes cost nothing extra.
Big count_homs_incidence(const IncidenceGraph& pat, const IncidenceGraph& host,
                         const Caps& caps = {});
Big count_homs_incidence_naive(const IncidenceGraph& pat, const IncidenceGraph& host);

// Hypergraph homomorphisms: (h_V, h_E) with exact edge images,
// f_host(h_E(e)) = h_V(f_pat(e)).
Big count_homs_hypergraph(const Hypergraph& pat, const Hypergraph& host, const Caps& caps = {});
Big count_homs_hypergraph_naive(const Hypergraph& pat, const Hypergraph& host);

// Label-respecting incidence homomorphisms: h(r(i)) = r'(i), h(b(j)) = b'(j);
// zero when Dom(r) or Dom(b) is not contained in the host's.
Big count_homs_labeled(const LabeledGraph& l, const LabeledGraph& lp, const Caps& caps = {});
Big count_homs_labeled_naive(const LabeledGraph& l, const LabeledGraph& lp);

std::vector<Big> hom_vector(const std::vector<IncidenceGraph>& family, const IncidenceGraph& host,
                            const Caps& caps = {});

// hom(J + n*s, host) = sum over groups of weight * base^n, grouped by the
// placement of the red nodes in s. Lets pump searches evaluate many n cheaply.
struct PumpProfile {
    std::vector<std::pair<Big, Big>> groups;  // (weight, base)
    Big eval(long long n) const;
};
PumpProfile pump_profile(const IncidenceGraph& j, const std::vector<int>& s,
                         const IncidenceGraph& host, const Caps& caps = {});

}  // namespace ghom

#endif  // GHOM_HOMCOUNT_HH_

#ifndef GHOM_CERT_HH_
#define GHOM_CERT_HH_

#include "ghom/decomp.hh"
#include "ghom/labeled.hh"

#include <memory>
#include <utility>

namespace ghom {

// Derivation certificate for the k-labeled calculus: base graphs, label
// reclaims, transitions, and glues.
struct GliCert;
using GliCertPtr = std::shared_ptr<const GliCert>;
struct GliCert {
    enum class Op { Base, ReclaimR, ReclaimB, Switch, Glue };
    Op op;
    LabeledGraph base;   // Base
    std::vector<int> X;  // ReclaimR / ReclaimB
    Assoc f;             // Switch
    GliCertPtr c1, c2;
};

GliCertPtr cert_base(LabeledGraph l);
GliCertPtr cert_reclaim_r(GliCertPtr c, std::vector<int> X);
GliCertPtr cert_reclaim_b(GliCertPtr c, std::vector<int> X);
GliCertPtr cert_switch(GliCertPtr c, Assoc f);
GliCertPtr cert_glue(GliCertPtr c1, GliCertPtr c2);

// Evaluates the certificate, validating every rule's side condition
// (throws DomainError("InvalidCertificate")). Glues whose guard functions
// disagree are flagged in `warnings` but still evaluated, l1 winning.
LabeledGraph eval_cert(const GliCertPtr& c, std::vector<std::string>* warnings = nullptr);

// Entangled decomposition of the certificate's graph, width <= k, with a
// distinguished node omega whose cover is exactly the labeled blues.
std::pair<TreeDecomp, int> cert_to_ehd(const GliCertPtr& c);

struct TraversalPlan {
    std::vector<int> color;                 // blue id -> color in [k]
    std::vector<std::vector<int>> schedule; // tree node -> red id -> blue id (-1 off bag)
};

// Coloring injective on every cover with parent color sets containing child
// color sets, plus a persistent guard schedule. D must be rooted binary
// monotone (as produced by normalize_binary_monotone).
TraversalPlan plan_traversal(const TreeDecomp& d, int omega, const IncidenceGraph& i);

// Bottom-up reconstruction of a label-free certificate whose evaluation is
// isomorphic to i, from any valid entangled decomposition.
GliCertPtr ehd_to_cert(const IncidenceGraph& i, const TreeDecomp& d);

}  // namespace ghom

#endif  // GHOM_CERT_HH_

#ifndef GHOM_BRIDGE_HH_
#define GHOM_BRIDGE_HH_

#include "ghom/cert.hh"
#include "ghom/logic.hh"
#include "ghom/quantum.hh"

#include <optional>

namespace ghom {

// Ways to write m as sum c_1*m_1 + ... + c_d*m_d with positive counts and
// strictly increasing values.
struct Segmentation {
    std::vector<long long> counts, values;
};
std::vector<Segmentation> enumerate_segmentations(long long m);

// phi such that interpretation-of(L') |= phi iff hom(L, L') = m, for the
// certificate's graph L and any host L' carrying L's labels with real guards
// for L's guard function. (Gamma_g & phi) passes the normal-form check.
// The certificate (not just the graph) is required: the construction walks
// the derivation rule by rule.
FormulaPtr formula_from_cert(const GliCertPtr& c, long long m);

struct SizeParams {
    long long m = 1;  // exact blue-node count of the intended hosts
    long long d = 0;  // max blue neighbourhood size of the intended hosts
};

// Quantum graph whose hom count into a matching host is 1 when the host's
// interpretation satisfies chi and 0 otherwise. Each component carries the
// derivation certificate backing its class membership.
struct CertifiedQuantum {
    QuantumGraph q;
    std::vector<GliCertPtr> certs;  // parallel to q.terms
};
CertifiedQuantum quantum_from_formula(const FormulaPtr& chi, int k, const SizeParams& p);

struct DistinguishResult {
    IncidenceGraph j;
    TreeDecomp d;  // width-<=k entangled decomposition of j
    Big count_a, count_b;
};

// Least incidence graph (ascending blue count, red count, edge count, edge
// set) within the bounds that has entangled width <= k and distinct hom
// counts into a and b.
std::optional<DistinguishResult> distinguish_by_ehw(const IncidenceGraph& a,
                                                    const IncidenceGraph& b, int k, int max_blue,
                                                    int max_red);

struct CrosscheckReport {
    std::optional<DistinguishResult> witness;
    FormulaPtr sentence;                // distinguishing sentence, if any
    bool sentence_separates = false;    // a satisfies it, b does not
    bool quantum_separates = false;     // some nonzero term's counts differ
    std::optional<CertifiedQuantum> quantum;  // compiled sentence, when realized
    int component_index = -1;
    bool component_in_class = false;    // that component admits a width-<=k ehd
    std::vector<std::string> notes;
};

// Runs both directions of the counting-graph correspondence on a concrete
// pair: distinguisher -> sentence via formula_from_cert, and sentence ->
// distinguishing component via quantum_from_formula. The second direction
// needs a separating sentence: pass one in `supplied`, or rely on the
// built-in blue-count sentence when the blue counts differ.
CrosscheckReport crosscheck_main_theorem(const IncidenceGraph& a, const IncidenceGraph& b, int k,
                                         int max_blue, int max_red,
                                         FormulaPtr supplied = nullptr);

}  // namespace ghom

#endif  // GHOM_BRIDGE_HH_

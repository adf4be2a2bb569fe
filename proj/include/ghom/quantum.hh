#ifndef GHOM_QUANTUM_HH_
#define GHOM_QUANTUM_HH_

#include "ghom/homcount.hh"
#include "ghom/labeled.hh"
#include "ghom/model.hh"

namespace ghom {

// Formal linear combination of compatible labeled incidence graphs: all
// components share Dom(r), Dom(b) and the guard function. Coefficients are
// exact rationals; zero coefficients are allowed and terms are never merged.
struct QuantumGraph {
    std::vector<std::pair<Rat, LabeledGraph>> terms;
};

QuantumGraph q_graph(const LabeledGraph& l, const Rat& coef = 1);

// Non-empty terms, every component well formed for the given k, and all
// components compatible. Throws DomainError("InvalidQuantum").
void check_quantum(const QuantumGraph& q, int k);

std::vector<int> q_domr(const QuantumGraph& q);
std::vector<int> q_domb(const QuantumGraph& q);
const Assoc& q_guard(const QuantumGraph& q);

// sum over terms of coef * hom(component, host), exact.
Rat qhom(const QuantumGraph& q, const LabeledGraph& host, const Caps& caps = {});

// Componentwise lifts of the label operations; glueing multiplies out the
// two term lists pairwise with coefficient products.
QuantumGraph q_reclaim_red(const QuantumGraph& q, const std::vector<int>& X);
QuantumGraph q_reclaim_blue(const QuantumGraph& q, const std::vector<int>& X);
QuantumGraph q_switch(const QuantumGraph& q, const Assoc& f);
QuantumGraph q_glue(const QuantumGraph& q1, const QuantumGraph& q2);

// Graph with one hom into every host that carries the labels in domb and
// real guards for g: the guard graph of g plus an isolated labeled blue
// node per label in domb \ Img(g). Empty g and domb give the empty graph.
LabeledGraph guard_unit(const Assoc& g, const std::vector<int>& domb);

// Q[X,Y]: apply the interpolating polynomial with p|X = 0, p|Y = 1 to Q
// under glue powers, so that qhom(Q,host) in X forces qhom(Q[X,Y],host) = 0
// and in Y forces 1, for hosts with real guards w.r.t. the guard of Q.
// X and Y must be disjoint sets of naturals, not both empty.
QuantumGraph normalize_indicator(const QuantumGraph& q, const std::vector<int>& X,
                                 const std::vector<int>& Y);

// Coefficients a_0..a_d of the interpolant through (x,0) for x in X and
// (x,1) for x in Y. Exposed for tests.
std::vector<Rat> interpolate_indicator(const std::vector<int>& X, const std::vector<int>& Y);

}  // namespace ghom

#endif  // GHOM_QUANTUM_HH_

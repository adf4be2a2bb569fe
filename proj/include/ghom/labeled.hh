#ifndef GHOM_LABELED_HH_
#define GHOM_LABELED_HH_

#include "ghom/model.hh"

#include <algorithm>
#include <climits>
#include <string>

namespace ghom {

// Sorted association list keyed by label.
using Assoc = std::vector<std::pair<int, int>>;

inline const int* assoc_get(const Assoc& m, int key) {
    auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(key, INT_MIN));
    if (it != m.end() && it->first == key) return &it->second;
    return nullptr;
}

inline void assoc_set(Assoc& m, int key, int val) {
    auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(key, INT_MIN));
    if (it != m.end() && it->first == key)
        it->second = val;
    else
        m.insert(it, {key, val});
}

inline std::vector<int> assoc_keys(const Assoc& m) {
    std::vector<int> out;
    out.reserve(m.size());
    for (auto& [k, v] : m) out.push_back(k);
    return out;
}

inline std::vector<int> assoc_values_sorted(const Assoc& m) {
    std::vector<int> out;
    out.reserve(m.size());
    for (auto& [k, v] : m) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// k-labeled incidence graph: red labels i >= 1 map to red nodes, blue labels
// j in [k] map to blue nodes, and the guard function g maps each red label
// to a blue label whose node covers the labeled red node.
struct LabeledGraph {
    IncidenceGraph g;
    Assoc r;   // red label -> red node id
    Assoc b;   // blue label -> blue node id
    Assoc gd;  // red label -> blue label (Dom(gd) == Dom(r))

    bool operator==(const LabeledGraph& o) const {
        return g == o.g && r == o.r && b == o.b && gd == o.gd;
    }
};

// Invariants: dense node ids, Dom(gd) == Dom(r), Img(gd) subset Dom(b), and
// every guard is real: (b(gd(i)), r(i)) is an edge. Throws DomainError.
void check_labeled(const LabeledGraph& l, int k);

LabeledGraph strip_labels(const IncidenceGraph& i);

inline bool assoc_compatible(const Assoc& a, const Assoc& b) {
    for (auto& [k, v] : a) {
        const int* w = assoc_get(b, k);
        if (w && *w != v) return false;
    }
    return true;
}

// One red node per label in Dom(f), one blue node per label in Img(f), and
// the guard edges between them. Throws on an empty domain.
LabeledGraph from_guard_fn(const Assoc& f);

// Label removal; reclaiming red labels also drops them from the guard.
LabeledGraph reclaim_red(const LabeledGraph& l, const std::vector<int>& X);
LabeledGraph reclaim_blue(const LabeledGraph& l, const std::vector<int>& X);

// Move the labels in X (ascending) onto the given nodes positionally; other
// labels and the guard function stay as they are.
LabeledGraph reseat_red(const LabeledGraph& l, const std::vector<int>& X,
                        const std::vector<int>& targets);
LabeledGraph reseat_blue(const LabeledGraph& l, const std::vector<int>& X,
                         const std::vector<int>& targets);

struct GlueResult {
    LabeledGraph out;
    std::vector<int> pi1_red, pi1_blue;  // node id in l1 -> node id in out
    std::vector<int> pi2_red, pi2_blue;  // node id in l2 -> node id in out
    std::vector<std::string> conflicts;  // guard disagreements, l1 wins
};

// Disjoint union quotiented by shared labels; l1 wins on common label
// domains and g = g1 union g2.
GlueResult glue(const LabeledGraph& l1, const LabeledGraph& l2);

// Transition check per the guard-change rule: nonempty Dom(f) within Dom(g)
// and every i whose guard value lands in Img(f) must itself be remapped.
bool is_transition(const Assoc& g, const Assoc& f);

// glue(from_guard_fn(f), reclaim_blue(l, Img(g) cap Img(f) cap Dom(b)));
// pi2 maps l's nodes into the result. Throws NotATransition.
GlueResult apply_transition(const LabeledGraph& l, const Assoc& f);

bool has_real_guards(const LabeledGraph& l, const Assoc& f);
inline bool has_real_guards(const LabeledGraph& l) { return has_real_guards(l, l.gd); }

}  // namespace ghom

#endif  // GHOM_LABELED_HH_

#include "ghom/quantum.hh"

#include <algorithm>

namespace ghom {

QuantumGraph q_graph(const LabeledGraph& l, const Rat& coef) {
    QuantumGraph q;
    q.terms.push_back({coef, l});
    return q;
}

void check_quantum(const QuantumGraph& q, int k) {
    if (q.terms.empty()) throw DomainError("InvalidQuantum", "no terms");
    const LabeledGraph& first = q.terms.front().second;
    for (auto& [coef, l] : q.terms) {
        check_labeled(l, k);
        if (assoc_keys(l.r) != assoc_keys(first.r) || assoc_keys(l.b) != assoc_keys(first.b) ||
            l.gd != first.gd)
            throw DomainError("InvalidQuantum",
                              "components must share label domains and the guard function");
    }
}

std::vector<int> q_domr(const QuantumGraph& q) {
    return assoc_keys(q.terms.front().second.r);
}

std::vector<int> q_domb(const QuantumGraph& q) {
    return assoc_keys(q.terms.front().second.b);
}

const Assoc& q_guard(const QuantumGraph& q) {
    return q.terms.front().second.gd;
}

Rat qhom(const QuantumGraph& q, const LabeledGraph& host, const Caps& caps) {
    Rat total = 0;
    for (auto& [coef, l] : q.terms) total += coef * Rat(count_homs_labeled(l, host, caps));
    return total;
}

QuantumGraph q_reclaim_red(const QuantumGraph& q, const std::vector<int>& X) {
    QuantumGraph out;
    for (auto& [coef, l] : q.terms) out.terms.push_back({coef, reclaim_red(l, X)});
    return out;
}

QuantumGraph q_reclaim_blue(const QuantumGraph& q, const std::vector<int>& X) {
    QuantumGraph out;
    for (auto& [coef, l] : q.terms) out.terms.push_back({coef, reclaim_blue(l, X)});
    return out;
}

QuantumGraph q_switch(const QuantumGraph& q, const Assoc& f) {
    QuantumGraph out;
    for (auto& [coef, l] : q.terms) out.terms.push_back({coef, apply_transition(l, f).out});
    return out;
}

QuantumGraph q_glue(const QuantumGraph& q1, const QuantumGraph& q2) {
    QuantumGraph out;
    for (auto& [c1, l1] : q1.terms)
        for (auto& [c2, l2] : q2.terms) out.terms.push_back({c1 * c2, glue(l1, l2).out});
    return out;
}

LabeledGraph guard_unit(const Assoc& g, const std::vector<int>& domb) {
    LabeledGraph l = g.empty() ? strip_labels({}) : from_guard_fn(g);
    for (int j : set_minus_(domb, assoc_values_sorted(g))) {
        assoc_set(l.b, j, l.g.n_blue);
        ++l.g.n_blue;
    }
    return l;
}

std::vector<Rat> interpolate_indicator(const std::vector<int>& X, const std::vector<int>& Y) {
    if (!set_intersect_(X, Y).empty())
        throw DomainError("InvalidIndicator", "X and Y must be disjoint");
    if (X.empty() && Y.empty())
        throw DomainError("InvalidIndicator", "X and Y must not both be empty");
    std::vector<int> pts = set_union_(X, Y);
    std::vector<Rat> p{0};
    for (int y : Y) {
        std::vector<Rat> basis{1};
        Rat denom = 1;
        for (int z : pts) {
            if (z == y) continue;
            // basis *= (x - z)
            basis.insert(basis.begin(), 0);
            for (size_t i = 0; i + 1 < basis.size(); ++i) basis[i] -= Rat(z) * basis[i + 1];
            denom *= Rat(y) - Rat(z);
        }
        if (p.size() < basis.size()) p.resize(basis.size(), 0);
        for (size_t i = 0; i < basis.size(); ++i) p[i] += basis[i] / denom;
    }
    return p;
}

QuantumGraph normalize_indicator(const QuantumGraph& q, const std::vector<int>& X,
                                 const std::vector<int>& Y) {
    std::vector<Rat> coefs = interpolate_indicator(X, Y);
    QuantumGraph unit = q_graph(guard_unit(q_guard(q), q_domb(q)));
    QuantumGraph out, power = unit;
    for (size_t i = 0; i < coefs.size(); ++i) {
        if (i == 1)
            power = q;
        else if (i > 1)
            power = q_glue(power, q);
        if (coefs[i] == 0) continue;
        for (auto& [c, l] : power.terms) out.terms.push_back({coefs[i] * c, l});
    }
    if (out.terms.empty()) out.terms.push_back({0, unit.terms.front().second});
    return out;
}

}  // namespace ghom

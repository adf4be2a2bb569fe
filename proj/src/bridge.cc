#include "ghom/bridge.hh"

#include <algorithm>
#include <map>

namespace ghom {

namespace {

void need(bool cond, const char* name, const std::string& msg) {
    if (!cond) throw DomainError(name, msg);
}

GuardFn guardfn_of(const Assoc& a) {
    GuardFn g;
    for (auto& [i, j] : a) g.emplace(i, j);
    return g;
}

Assoc assoc_of(const GuardFn& g) {
    Assoc a;
    for (auto& [i, j] : g) a.push_back({i, j});
    return a;
}

FormulaPtr conj(const std::vector<FormulaPtr>& xs) {
    if (xs.empty()) return tautology();
    FormulaPtr out = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) out = f_and(out, xs[i]);
    return out;
}

FormulaPtr disj(const std::vector<FormulaPtr>& xs) {
    FormulaPtr out = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) out = f_or(out, xs[i]);
    return out;
}

}  // namespace

std::vector<Segmentation> enumerate_segmentations(long long m) {
    need(m >= 1, "InvalidArgument", "segmentations exist only for positive numbers");
    std::vector<Segmentation> out;
    Segmentation cur;
    auto rec = [&](auto&& self, long long min_value, long long left) -> void {
        if (left == 0) {
            if (!cur.values.empty()) out.push_back(cur);
            return;
        }
        for (long long v = min_value; v <= left; ++v)
            for (long long c = 1; c * v <= left; ++c) {
                cur.values.push_back(v);
                cur.counts.push_back(c);
                self(self, v + 1, left - c * v);
                cur.values.pop_back();
                cur.counts.pop_back();
            }
    };
    rec(rec, 1, m);
    return out;
}

// ---- formulas from certificates ----

namespace {

struct FfcBuilder {
    std::map<const GliCert*, LabeledGraph> graphs;
    std::map<std::pair<const GliCert*, long long>, FormulaPtr> memo;

    const LabeledGraph& graph_of(const GliCertPtr& c) {
        auto it = graphs.find(c.get());
        if (it != graphs.end()) return it->second;
        LabeledGraph l;
        switch (c->op) {
            case GliCert::Op::Base: l = c->base; break;
            case GliCert::Op::ReclaimR: l = reclaim_red(graph_of(c->c1), c->X); break;
            case GliCert::Op::ReclaimB: l = reclaim_blue(graph_of(c->c1), c->X); break;
            case GliCert::Op::Switch: l = apply_transition(graph_of(c->c1), c->f).out; break;
            case GliCert::Op::Glue: l = glue(graph_of(c->c1), graph_of(c->c2)).out; break;
        }
        return graphs.emplace(c.get(), std::move(l)).first->second;
    }

    FormulaPtr base_one(const LabeledGraph& l) {
        std::vector<FormulaPtr> parts;
        for (auto& [j, be] : l.b)
            for (auto& [i, rv] : l.r)
                if (l.g.has_edge(be, rv)) parts.push_back(atom_e(j, i));
        for (auto it = l.r.begin(); it != l.r.end(); ++it)
            for (auto jt = std::next(it); jt != l.r.end(); ++jt)
                if (it->second == jt->second) parts.push_back(eq_red(it->first, jt->first));
        for (auto it = l.b.begin(); it != l.b.end(); ++it)
            for (auto jt = std::next(it); jt != l.b.end(); ++jt)
                if (it->second == jt->second) parts.push_back(eq_blue(it->first, jt->first));
        // trivial self-equalities keep every label free in the formula
        for (auto& [i, rv] : l.r) parts.push_back(eq_red(i, i));
        for (auto& [j, be] : l.b) parts.push_back(eq_blue(j, j));
        return conj(parts);
    }

    // segmentation disjunction shared by both reclaim rules and switch
    FormulaPtr counted(const GliCertPtr& inner, std::vector<int> X, bool blue_side,
                       long long m) {
        std::sort(X.begin(), X.end());
        GuardFn g = guardfn_of(graph_of(inner).gd);
        FormulaPtr gf = guard_formula(g);
        FormulaPtr not_zero = f_not(phi(inner, 0));
        auto exists_eq = [&](long long c, FormulaPtr body) {
            return blue_side ? exists_eq_blue(c, X, body) : exists_eq_red(c, X, body);
        };
        if (m == 0)
            return f_not(blue_side ? exists_geq_blue(1, X, f_and(gf, not_zero))
                                   : exists_geq_red(1, X, f_and(gf, not_zero)));
        std::vector<FormulaPtr> options;
        for (auto& seg : enumerate_segmentations(m)) {
            long long c = 0;
            for (long long ci : seg.counts) c += ci;
            std::vector<FormulaPtr> parts{exists_eq(c, f_and(gf, not_zero))};
            for (size_t j = 0; j < seg.values.size(); ++j)
                parts.push_back(exists_eq(seg.counts[j], f_and(gf, phi(inner, seg.values[j]))));
            options.push_back(conj(parts));
        }
        return disj(options);
    }

    FormulaPtr phi(const GliCertPtr& c, long long m) {
        auto key = std::make_pair(c.get(), m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        FormulaPtr out;
        switch (c->op) {
            case GliCert::Op::Base: {
                FormulaPtr one = base_one(graph_of(c));
                out = m == 1 ? one : m == 0 ? f_not(one) : f_and(f_not(one), one);
                break;
            }
            case GliCert::Op::ReclaimR:
                out = c->X.empty() ? phi(c->c1, m) : counted(c->c1, c->X, false, m);
                break;
            case GliCert::Op::ReclaimB:
                out = c->X.empty() ? phi(c->c1, m) : counted(c->c1, c->X, true, m);
                break;
            case GliCert::Op::Switch: {
                const LabeledGraph& l1 = graph_of(c->c1);
                std::vector<int> B = set_intersect_(
                    set_intersect_(assoc_values_sorted(l1.gd), assoc_values_sorted(c->f)),
                    assoc_keys(l1.b));
                FormulaPtr inner = B.empty() ? phi(c->c1, m) : counted(c->c1, B, true, m);
                // the count factors through the guard graph of the new guard
                // function; its edges need not be host guards when another
                // rule changes the guard function again further up
                FormulaPtr gf = guard_formula(guardfn_of(c->f));
                out = m == 0 ? f_not(f_and(gf, f_not(inner))) : f_and(gf, inner);
                break;
            }
            case GliCert::Op::Glue: {
                if (m == 0) {
                    out = f_or(phi(c->c1, 0), phi(c->c2, 0));
                } else {
                    std::vector<FormulaPtr> options;
                    for (long long m1 = 1; m1 <= m; ++m1)
                        if (m % m1 == 0)
                            options.push_back(f_and(phi(c->c1, m1), phi(c->c2, m / m1)));
                    out = disj(options);
                }
                break;
            }
        }
        memo.emplace(key, out);
        return out;
    }
};

}  // namespace

FormulaPtr formula_from_cert(const GliCertPtr& c, long long m) {
    need(m >= 0, "InvalidArgument", "hom counts are non-negative");
    eval_cert(c);  // validates every rule of the derivation
    FfcBuilder b;
    return b.phi(c, m);
}

// ---- quantum graphs from formulas ----

namespace {

CertifiedQuantum cq_graph(const Rat& coef, const LabeledGraph& l) {
    return {q_graph(l, coef), {cert_base(l)}};
}

CertifiedQuantum cq_reclaim_red(const CertifiedQuantum& q, const std::vector<int>& X) {
    CertifiedQuantum out{q_reclaim_red(q.q, X), {}};
    for (auto& c : q.certs) out.certs.push_back(cert_reclaim_r(c, X));
    return out;
}

CertifiedQuantum cq_reclaim_blue(const CertifiedQuantum& q, const std::vector<int>& X) {
    CertifiedQuantum out{q_reclaim_blue(q.q, X), {}};
    for (auto& c : q.certs) out.certs.push_back(cert_reclaim_b(c, X));
    return out;
}

CertifiedQuantum cq_switch(const CertifiedQuantum& q, const Assoc& f) {
    CertifiedQuantum out{q_switch(q.q, f), {}};
    for (auto& c : q.certs) out.certs.push_back(cert_switch(c, f));
    return out;
}

CertifiedQuantum cq_glue(const CertifiedQuantum& a, const CertifiedQuantum& b) {
    CertifiedQuantum out{q_glue(a.q, b.q), {}};
    for (auto& c1 : a.certs)
        for (auto& c2 : b.certs) out.certs.push_back(cert_glue(c1, c2));
    return out;
}

CertifiedQuantum cq_indicator(const CertifiedQuantum& q, const std::vector<int>& X,
                              const std::vector<int>& Y) {
    std::vector<Rat> coefs = interpolate_indicator(X, Y);
    CertifiedQuantum unit = cq_graph(1, guard_unit(q_guard(q.q), q_domb(q.q)));
    CertifiedQuantum out, power = unit;
    for (size_t i = 0; i < coefs.size(); ++i) {
        if (i == 1)
            power = q;
        else if (i > 1)
            power = cq_glue(power, q);
        if (coefs[i] == 0) continue;
        for (size_t t = 0; t < power.q.terms.size(); ++t) {
            out.q.terms.push_back({coefs[i] * power.q.terms[t].first, power.q.terms[t].second});
            out.certs.push_back(power.certs[t]);
        }
    }
    if (out.q.terms.empty()) {
        out.q.terms.push_back({0, unit.q.terms.front().second});
        out.certs.push_back(unit.certs.front());
    }
    return out;
}

struct QfBuilder {
    int k;
    long long m, d;

    LabeledGraph unfulfillable_shape(const GuardFn& g, const FormulaPtr& phi) {
        return guard_unit(assoc_of(g), free_vars(phi).blue);
    }

    LabeledGraph atom_base(const FormulaPtr& phi, const GuardFn& g) {
        LabeledGraph l;
        if (phi->kind == Formula::Kind::EqBlue) {
            l.g.n_blue = 1;
            assoc_set(l.b, phi->a, 0);
            assoc_set(l.b, phi->b, 0);
            return l;
        }
        // one red node adjacent to every blue node
        std::vector<int> blues;
        if (phi->kind == Formula::Kind::AtomE) {
            blues = {phi->a, g.at(phi->b)};
            assoc_set(l.r, phi->b, 0);
        } else {  // EqRed
            blues = {g.at(phi->a), g.at(phi->b)};
            assoc_set(l.r, phi->a, 0);
            assoc_set(l.r, phi->b, 0);
        }
        std::sort(blues.begin(), blues.end());
        blues.erase(std::unique(blues.begin(), blues.end()), blues.end());
        l.g.n_red = 1;
        l.g.n_blue = (int)blues.size();
        for (int e = 0; e < (int)blues.size(); ++e) {
            assoc_set(l.b, blues[e], e);
            l.g.edges.emplace_back(e, 0);
        }
        l.gd = assoc_of(g);
        l.g.normalize();
        return l;
    }

    long long quantifier_bound(long long base, size_t len) {
        long long out = 1;
        for (size_t i = 0; i < len; ++i) {
            if (base != 0 && out > (1LL << 40) / std::max<long long>(base, 1)) return 1LL << 40;
            out *= base;
        }
        return out;
    }

    std::vector<int> range(long long lo, long long hi) {
        need(hi - lo <= 256, "CapExceeded", "indicator bound too large");
        std::vector<int> out;
        for (long long x = lo; x <= hi; ++x) out.push_back((int)x);
        return out;
    }

    CertifiedQuantum quantifier(const GuardFn& gout, const FormulaPtr& phi, bool blue_side) {
        need(phi->lhs && phi->lhs->kind == Formula::Kind::And, "NotInNGC",
             "quantifier body must be a guard-and-body conjunction");
        auto g_opt = as_guard(phi->lhs->lhs);
        need(g_opt.has_value(), "NotInNGC", "quantifier body must start with a guard");
        GuardFn g_in = *g_opt;
        size_t ell = phi->indices.size();
        long long bound = quantifier_bound(blue_side ? m : m * d, ell);
        if (phi->n > bound) return cq_graph(0, unfulfillable_shape(gout, phi));
        CertifiedQuantum inner = build(g_in, phi->lhs);
        CertifiedQuantum flat;
        if (!blue_side) {
            flat = cq_reclaim_red(inner, phi->indices);
        } else {
            const std::vector<int>& S = phi->indices;
            std::vector<int> img_g = assoc_values_sorted(assoc_of(g_in));
            Assoc f;
            for (auto& [i, gi] : g_in)
                if (gout.at(i) != gi || set_contains_(S, gi)) f.push_back({i, gout.at(i)});
            if (f.empty()) {
                flat = cq_reclaim_blue(inner, S);
            } else {
                std::vector<int> img_f = assoc_values_sorted(f);
                std::vector<int> img_gout = assoc_values_sorted(assoc_of(gout));
                std::vector<int> D1 = set_minus_(set_intersect_(S, img_f), img_g);
                std::vector<int> D2 = set_minus_(S, img_gout);
                flat = cq_reclaim_blue(cq_switch(cq_reclaim_blue(inner, D1), f), D2);
            }
        }
        return cq_indicator(flat, range(0, phi->n - 1), range(phi->n, bound));
    }

    CertifiedQuantum build(const GuardFn& g, const FormulaPtr& phi) {
        switch (phi->kind) {
            case Formula::Kind::Top: return cq_graph(1, guard_unit({}, {}));
            case Formula::Kind::AtomE:
            case Formula::Kind::EqBlue:
            case Formula::Kind::EqRed: return cq_graph(1, atom_base(phi, g));
            case Formula::Kind::Not:
                return cq_indicator(build(g, phi->lhs), {1}, {0});
            case Formula::Kind::And: {
                auto restrict_to = [&](const FormulaPtr& part) {
                    GuardFn out;
                    for (int i : free_vars(part).red) out.emplace(i, g.at(i));
                    return out;
                };
                return cq_glue(build(restrict_to(phi->lhs), phi->lhs),
                               build(restrict_to(phi->rhs), phi->rhs));
            }
            case Formula::Kind::ExistsRed: return quantifier(g, phi, false);
            case Formula::Kind::ExistsBlue: return quantifier(g, phi, true);
        }
        throw DomainError("Internal", "unhandled formula kind");
    }
};

}  // namespace

CertifiedQuantum quantum_from_formula(const FormulaPtr& chi, int k, const SizeParams& p) {
    need(p.m >= 1, "InvalidArgument", "hosts must have at least one blue node");
    auto verdict = check_syntax(chi, k, LogicMode::ngck);
    need(verdict.ok, "NotInNGC",
         verdict.violations.empty() ? "formula is not in normal form" : verdict.violations[0]);
    need(chi->kind == Formula::Kind::And && as_guard(chi->lhs).has_value(), "NotInNGC",
         "expected a guard-and-body conjunction");
    GuardFn g = *as_guard(chi->lhs);
    QfBuilder b{k, p.m, p.d};
    CertifiedQuantum out = b.build(g, chi);
    check_quantum(out.q, k);
    return out;
}

// ---- desk-scale instantiation of the main correspondence ----

std::optional<DistinguishResult> distinguish_by_ehw(const IncidenceGraph& a,
                                                    const IncidenceGraph& b, int k, int max_blue,
                                                    int max_red) {
    for (int nb = 0; nb <= max_blue; ++nb)
        for (int nr = 0; nr <= max_red; ++nr) {
            int cells = nb * nr;
            need(cells <= 20, "CapExceeded", "candidate space too large");
            std::vector<std::vector<std::pair<int, int>>> candidates;
            for (long long mask = 0; mask < (1LL << cells); ++mask) {
                std::vector<std::pair<int, int>> edges;
                for (int c = 0; c < cells; ++c)
                    if (mask >> c & 1) edges.emplace_back(c / nr, c % nr);
                candidates.push_back(std::move(edges));
            }
            std::sort(candidates.begin(), candidates.end(),
                      [](const auto& x, const auto& y) {
                          if (x.size() != y.size()) return x.size() < y.size();
                          return x < y;
                      });
            for (auto& edges : candidates) {
                IncidenceGraph j{nr, nb, edges};
                j.normalize();
                if (!j.reds_covered()) continue;
                Big ca = count_homs_incidence(j, a);
                Big cb = count_homs_incidence(j, b);
                if (ca == cb) continue;
                auto d = search_width(j, k, DecompMode::ehd, SearchEngine::greedy);
                if (!d) d = search_width(j, k, DecompMode::ehd, SearchEngine::exact);
                if (!d) continue;
                return DistinguishResult{j, *d, ca, cb};
            }
        }
    return std::nullopt;
}

CrosscheckReport crosscheck_main_theorem(const IncidenceGraph& a, const IncidenceGraph& b, int k,
                                         int max_blue, int max_red, FormulaPtr supplied) {
    CrosscheckReport r;
    r.witness = distinguish_by_ehw(a, b, k, max_blue, max_red);
    if (!r.witness) {
        r.notes.push_back("no distinguisher within bounds");
        return r;
    }

    // distinguisher -> sentence
    GliCertPtr cert = ehd_to_cert(r.witness->j, r.witness->d);
    LabeledGraph lc = eval_cert(cert);
    Big m_big = count_homs_incidence(lc.g, a);
    FormulaPtr phi = formula_from_cert(cert, (long long)m_big);
    r.sentence = f_and(top(), phi);
    Interpretation ia{a, {}, {}}, ib{b, {}, {}};
    r.sentence_separates = eval(ia, r.sentence) && !eval(ib, r.sentence);
    r.notes.push_back("sentence built from the width-" + std::to_string(width(r.witness->d)) +
                      " witness");

    // sentence -> distinguishing component; the certificate-derived sentence
    // is usually too large to compile, so this direction runs on a supplied
    // sentence or on the blue-count sentence.
    FormulaPtr chi = supplied;
    if (!chi && a.n_blue != b.n_blue) {
        chi = f_and(top(), exists_eq_blue(a.n_blue, {1}, f_and(top(), eq_blue(1, 1))));
        r.notes.push_back("blue counts differ; using the counting sentence");
    }
    if (!chi) {
        r.notes.push_back("no sentence supplied; component direction skipped");
        return r;
    }
    Interpretation sa{a, {}, {}}, sb{b, {}, {}};
    if (!eval(sa, chi) || eval(sb, chi)) {
        r.notes.push_back("supplied sentence does not separate the pair");
        return r;
    }
    long long d_cap = 0;
    for (int e = 0; e < a.n_blue; ++e)
        d_cap = std::max<long long>(d_cap, (long long)a.blue_nbrs(e).size());
    for (int e = 0; e < b.n_blue; ++e)
        d_cap = std::max<long long>(d_cap, (long long)b.blue_nbrs(e).size());
    CertifiedQuantum cq = quantum_from_formula(chi, k, {std::max(a.n_blue, 1), d_cap});
    r.quantum = cq;
    for (size_t t = 0; t < cq.q.terms.size(); ++t) {
        if (cq.q.terms[t].first == 0) continue;
        const IncidenceGraph& comp = cq.q.terms[t].second.g;
        if (count_homs_incidence(comp, a) == count_homs_incidence(comp, b)) continue;
        r.quantum_separates = true;
        r.component_index = (int)t;
        auto [dt, omega] = cert_to_ehd(cq.certs[t]);
        r.component_in_class =
            width(dt) <= k && validate(dt, comp, DecompMode::ehd).ok;
        break;
    }
    return r;
}

}  // namespace ghom

#include "ghom/cert.hh"
#include "ghom/labeled.hh"

#include <numeric>

namespace ghom {

namespace {

Assoc assoc_minus(const Assoc& m, const std::vector<int>& keys) {
    Assoc out;
    for (auto& kv : m)
        if (!set_contains_(keys, kv.first)) out.push_back(kv);
    return out;
}

void need(bool cond, const char* name, const std::string& msg) {
    if (!cond) throw DomainError(name, msg);
}

}  // namespace

void check_labeled(const LabeledGraph& l, int k) {
    IncidenceGraph g = l.g;
    g.normalize();
    for (auto& [lab, node] : l.r) {
        if (lab < 1) throw DomainError("InvalidLabeled", "red labels start at 1");
        if (node < 0 || node >= l.g.n_red)
            throw DomainError("InvalidLabeled", "red label maps outside the graph");
    }
    for (auto& [lab, node] : l.b) {
        if (lab < 1 || lab > k) throw DomainError("InvalidLabeled", "blue label outside [k]");
        if (node < 0 || node >= l.g.n_blue)
            throw DomainError("InvalidLabeled", "blue label maps outside the graph");
    }
    if (assoc_keys(l.gd) != assoc_keys(l.r))
        throw DomainError("InvalidLabeled", "guard domain must equal the red-label domain");
    for (auto& [lab, blab] : l.gd) {
        const int* bnode = assoc_get(l.b, blab);
        if (!bnode) throw DomainError("InvalidLabeled", "guard points at an unused blue label");
        if (!l.g.has_edge(*bnode, *assoc_get(l.r, lab)))
            throw DomainError("InvalidLabeled", "guard is not real: no covering edge");
    }
}

LabeledGraph strip_labels(const IncidenceGraph& i) {
    LabeledGraph l;
    l.g = i;
    return l;
}

LabeledGraph from_guard_fn(const Assoc& f) {
    need(!f.empty(), "EmptyGuard", "a guard-defined graph needs a non-empty domain");
    LabeledGraph l;
    std::vector<int> blues = assoc_values_sorted(f);
    l.g.n_blue = (int)blues.size();
    l.g.n_red = (int)f.size();
    int idx = 0;
    for (auto& [i, j] : f) {
        int be = (int)(std::lower_bound(blues.begin(), blues.end(), j) - blues.begin());
        l.g.edges.emplace_back(be, idx);
        l.r.push_back({i, idx});
        ++idx;
    }
    for (int j = 0; j < (int)blues.size(); ++j) l.b.push_back({blues[j], j});
    l.gd = f;
    l.g.normalize();
    return l;
}

LabeledGraph reclaim_red(const LabeledGraph& l, const std::vector<int>& X) {
    for (int i : X)
        need(assoc_get(l.r, i), "UnknownLabel", "red label " + std::to_string(i) + " not set");
    LabeledGraph out = l;
    out.r = assoc_minus(l.r, X);
    out.gd = assoc_minus(l.gd, X);
    return out;
}

LabeledGraph reclaim_blue(const LabeledGraph& l, const std::vector<int>& X) {
    for (int j : X)
        need(assoc_get(l.b, j), "UnknownLabel", "blue label " + std::to_string(j) + " not set");
    LabeledGraph out = l;
    out.b = assoc_minus(l.b, X);
    return out;
}

LabeledGraph reseat_red(const LabeledGraph& l, const std::vector<int>& X,
                        const std::vector<int>& targets) {
    need(X.size() == targets.size(), "InvalidReseat", "index and target counts differ");
    for (size_t i = 1; i < X.size(); ++i)
        need(X[i - 1] < X[i], "InvalidReseat", "indices must be strictly ascending");
    LabeledGraph out = l;
    for (size_t i = 0; i < X.size(); ++i) {
        need(targets[i] >= 0 && targets[i] < l.g.n_red, "InvalidReseat",
             "target outside the red nodes");
        assoc_set(out.r, X[i], targets[i]);
    }
    return out;
}

LabeledGraph reseat_blue(const LabeledGraph& l, const std::vector<int>& X,
                         const std::vector<int>& targets) {
    need(X.size() == targets.size(), "InvalidReseat", "index and target counts differ");
    for (size_t i = 1; i < X.size(); ++i)
        need(X[i - 1] < X[i], "InvalidReseat", "indices must be strictly ascending");
    LabeledGraph out = l;
    for (size_t i = 0; i < X.size(); ++i) {
        need(targets[i] >= 0 && targets[i] < l.g.n_blue, "InvalidReseat",
             "target outside the blue nodes");
        assoc_set(out.b, X[i], targets[i]);
    }
    return out;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;  // keep the lexicographically least member as root
    }
};

// dense renumbering of class roots in ascending root order
std::vector<int> quotient_map(Dsu& d, int n, int& n_classes) {
    std::vector<int> root_to_new(n, -1);
    n_classes = 0;
    for (int x = 0; x < n; ++x)
        if (d.find(x) == x) root_to_new[x] = n_classes++;
    std::vector<int> out(n);
    for (int x = 0; x < n; ++x) out[x] = root_to_new[d.find(x)];
    return out;
}

}  // namespace

GlueResult glue(const LabeledGraph& l1, const LabeledGraph& l2) {
    int off_r = l1.g.n_red, off_b = l1.g.n_blue;
    Dsu reds(off_r + l2.g.n_red), blues(off_b + l2.g.n_blue);
    for (auto& [lab, node] : l1.r) {
        const int* other = assoc_get(l2.r, lab);
        if (other) reds.unite(node, off_r + *other);
    }
    for (auto& [lab, node] : l1.b) {
        const int* other = assoc_get(l2.b, lab);
        if (other) blues.unite(node, off_b + *other);
    }
    GlueResult res;
    int nr = 0, nb = 0;
    std::vector<int> rmap = quotient_map(reds, off_r + l2.g.n_red, nr);
    std::vector<int> bmap = quotient_map(blues, off_b + l2.g.n_blue, nb);
    res.out.g.n_red = nr;
    res.out.g.n_blue = nb;
    for (auto& [e, v] : l1.g.edges) res.out.g.edges.emplace_back(bmap[e], rmap[v]);
    for (auto& [e, v] : l2.g.edges)
        res.out.g.edges.emplace_back(bmap[off_b + e], rmap[off_r + v]);
    res.out.g.normalize();
    for (auto& [lab, node] : l1.r) res.out.r.push_back({lab, rmap[node]});
    for (auto& [lab, node] : l2.r)
        if (!assoc_get(l1.r, lab)) assoc_set(res.out.r, lab, rmap[off_r + node]);
    for (auto& [lab, node] : l1.b) res.out.b.push_back({lab, bmap[node]});
    for (auto& [lab, node] : l2.b)
        if (!assoc_get(l1.b, lab)) assoc_set(res.out.b, lab, bmap[off_b + node]);
    res.out.gd = l1.gd;
    for (auto& [lab, val] : l2.gd) {
        const int* mine = assoc_get(l1.gd, lab);
        if (!mine)
            assoc_set(res.out.gd, lab, val);
        else if (*mine != val)
            res.conflicts.push_back("guard functions disagree on red label " +
                                    std::to_string(lab) + "; left operand wins");
    }
    res.pi1_red.assign(rmap.begin(), rmap.begin() + off_r);
    res.pi2_red.assign(rmap.begin() + off_r, rmap.end());
    res.pi1_blue.assign(bmap.begin(), bmap.begin() + off_b);
    res.pi2_blue.assign(bmap.begin() + off_b, bmap.end());
    return res;
}

bool is_transition(const Assoc& g, const Assoc& f) {
    if (f.empty()) return false;
    for (auto& [i, j] : f)
        if (!assoc_get(g, i)) return false;
    std::vector<int> img_f = assoc_values_sorted(f);
    for (auto& [i, j] : g)
        if (set_contains_(img_f, j) && !assoc_get(f, i)) return false;
    return true;
}

GlueResult apply_transition(const LabeledGraph& l, const Assoc& f) {
    if (f.empty()) throw DomainError("NotATransition", "empty domain");
    for (auto& [i, j] : f)
        if (!assoc_get(l.gd, i))
            throw DomainError("NotATransition",
                              "red label " + std::to_string(i) + " has no guard to change");
    std::vector<int> img_f = assoc_values_sorted(f);
    for (auto& [i, j] : l.gd)
        if (set_contains_(img_f, j) && !assoc_get(f, i))
            throw DomainError("NotATransition", "red label " + std::to_string(i) +
                                                    " would lose its guard " +
                                                    std::to_string(j));
    std::vector<int> B =
        set_intersect_(set_intersect_(assoc_values_sorted(l.gd), img_f), assoc_keys(l.b));
    GlueResult res = glue(from_guard_fn(f), reclaim_blue(l, B));
    // the caller tracks l's nodes; expose them through pi2
    return res;
}

bool has_real_guards(const LabeledGraph& l, const Assoc& f) {
    for (auto& [i, j] : f) {
        const int* v = assoc_get(l.r, i);
        if (!v) return false;
        const int* e = assoc_get(l.b, j);
        if (!e) return false;
        if (!l.g.has_edge(*e, *v)) return false;
    }
    return true;
}

GliCertPtr cert_base(LabeledGraph l) {
    auto c = std::make_shared<GliCert>();
    c->op = GliCert::Op::Base;
    c->base = std::move(l);
    return c;
}
GliCertPtr cert_reclaim_r(GliCertPtr ch, std::vector<int> X) {
    auto c = std::make_shared<GliCert>();
    c->op = GliCert::Op::ReclaimR;
    c->c1 = std::move(ch);
    c->X = std::move(X);
    return c;
}
GliCertPtr cert_reclaim_b(GliCertPtr ch, std::vector<int> X) {
    auto c = std::make_shared<GliCert>();
    c->op = GliCert::Op::ReclaimB;
    c->c1 = std::move(ch);
    c->X = std::move(X);
    return c;
}
GliCertPtr cert_switch(GliCertPtr ch, Assoc f) {
    auto c = std::make_shared<GliCert>();
    c->op = GliCert::Op::Switch;
    c->c1 = std::move(ch);
    c->f = std::move(f);
    return c;
}
GliCertPtr cert_glue(GliCertPtr a, GliCertPtr b) {
    auto c = std::make_shared<GliCert>();
    c->op = GliCert::Op::Glue;
    c->c1 = std::move(a);
    c->c2 = std::move(b);
    return c;
}

namespace {

void validate_base(const LabeledGraph& l) {
    std::vector<int> reds, blues;
    for (auto& [lab, node] : l.r) reds.push_back(node);
    for (auto& [lab, node] : l.b) blues.push_back(node);
    std::sort(reds.begin(), reds.end());
    reds.erase(std::unique(reds.begin(), reds.end()), reds.end());
    std::sort(blues.begin(), blues.end());
    blues.erase(std::unique(blues.begin(), blues.end()), blues.end());
    need((int)reds.size() == l.g.n_red && (reds.empty() || reds.back() == l.g.n_red - 1),
         "InvalidCertificate", "base rule: every red node must carry a label");
    need((int)blues.size() == l.g.n_blue && (blues.empty() || blues.back() == l.g.n_blue - 1),
         "InvalidCertificate", "base rule: every blue node must carry a label");
    need(has_real_guards(l), "InvalidCertificate", "base rule: guards must be real");
}

void validate_reclaim_b(const LabeledGraph& l, const std::vector<int>& X) {
    std::vector<int> allowed = set_minus_(assoc_keys(l.b), assoc_values_sorted(l.gd));
    need(set_subset_(X, allowed), "InvalidCertificate",
         "blue reclaim rule: labels must be unused as guards");
}

}  // namespace

LabeledGraph eval_cert(const GliCertPtr& c, std::vector<std::string>* warnings) {
    need(c != nullptr, "InvalidCertificate", "empty certificate");
    switch (c->op) {
        case GliCert::Op::Base:
            validate_base(c->base);
            return c->base;
        case GliCert::Op::ReclaimR: {
            auto l = eval_cert(c->c1, warnings);
            need(set_subset_(c->X, assoc_keys(l.r)), "InvalidCertificate",
                 "red reclaim rule: labels must be present");
            return reclaim_red(l, c->X);
        }
        case GliCert::Op::ReclaimB: {
            auto l = eval_cert(c->c1, warnings);
            validate_reclaim_b(l, c->X);
            return reclaim_blue(l, c->X);
        }
        case GliCert::Op::Switch: {
            auto l = eval_cert(c->c1, warnings);
            return apply_transition(l, c->f).out;
        }
        case GliCert::Op::Glue: {
            auto l1 = eval_cert(c->c1, warnings);
            auto l2 = eval_cert(c->c2, warnings);
            auto res = glue(l1, l2);
            if (warnings)
                for (auto& w : res.conflicts) warnings->push_back("glue rule: " + w);
            return res.out;
        }
    }
    throw DomainError("InvalidCertificate", "unknown rule");
}

namespace {

struct Built {
    LabeledGraph l;
    TreeDecomp d;
    int omega = 0;
};

std::vector<int> blue_union_nbrs(const IncidenceGraph& g, const std::vector<int>& cover) {
    std::vector<int> bag;
    for (int e : cover) bag = set_union_(bag, g.blue_nbrs(e));
    return bag;
}

void remap_covers(TreeDecomp& d, const IncidenceGraph& g, const std::vector<int>& pi_blue) {
    for (auto& cov : d.cover) {
        for (int& e : cov) e = pi_blue[e];
        std::sort(cov.begin(), cov.end());
        cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
    }
    d.bag.clear();
    for (auto& cov : d.cover) d.bag.push_back(blue_union_nbrs(g, cov));
}

int append_leaf(TreeDecomp& d, int at, const IncidenceGraph& g, const std::vector<int>& cover) {
    int id = d.n_nodes++;
    d.edges.emplace_back(at, id);
    d.cover.push_back(cover);
    d.bag.push_back(blue_union_nbrs(g, cover));
    return id;
}

Built build_ehd(const GliCertPtr& c) {
    need(c != nullptr, "InvalidCertificate", "empty certificate");
    switch (c->op) {
        case GliCert::Op::Base: {
            validate_base(c->base);
            Built b;
            b.l = c->base;
            b.d.n_nodes = 1;
            std::vector<int> bag(b.l.g.n_red), cover(b.l.g.n_blue);
            std::iota(bag.begin(), bag.end(), 0);
            std::iota(cover.begin(), cover.end(), 0);
            b.d.bag = {bag};
            b.d.cover = {cover};
            b.d.root = 0;
            b.omega = 0;
            return b;
        }
        case GliCert::Op::ReclaimR: {
            Built b = build_ehd(c->c1);
            need(set_subset_(c->X, assoc_keys(b.l.r)), "InvalidCertificate",
                 "red reclaim rule: labels must be present");
            b.l = reclaim_red(b.l, c->X);
            return b;
        }
        case GliCert::Op::ReclaimB: {
            Built b = build_ehd(c->c1);
            validate_reclaim_b(b.l, c->X);
            b.l = reclaim_blue(b.l, c->X);
            b.omega = append_leaf(b.d, b.omega, b.l.g, assoc_values_sorted(b.l.b));
            return b;
        }
        case GliCert::Op::Switch: {
            Built b = build_ehd(c->c1);
            GlueResult res = apply_transition(b.l, c->f);
            b.l = res.out;
            remap_covers(b.d, b.l.g, res.pi2_blue);
            b.omega = append_leaf(b.d, b.omega, b.l.g, assoc_values_sorted(b.l.b));
            return b;
        }
        case GliCert::Op::Glue: {
            Built b1 = build_ehd(c->c1);
            Built b2 = build_ehd(c->c2);
            GlueResult res = glue(b1.l, b2.l);
            Built b;
            b.l = res.out;
            remap_covers(b1.d, b.l.g, res.pi1_blue);
            remap_covers(b2.d, b.l.g, res.pi2_blue);
            b.d = b1.d;
            int off = b.d.n_nodes;
            b.d.n_nodes += b2.d.n_nodes;
            for (auto& [x, y] : b2.d.edges) b.d.edges.emplace_back(x + off, y + off);
            b.d.bag.insert(b.d.bag.end(), b2.d.bag.begin(), b2.d.bag.end());
            b.d.cover.insert(b.d.cover.end(), b2.d.cover.begin(), b2.d.cover.end());
            int omega = b.d.n_nodes++;
            b.d.edges.emplace_back(b1.omega, omega);
            b.d.edges.emplace_back(b2.omega + off, omega);
            b.d.cover.push_back(assoc_values_sorted(b.l.b));
            b.d.bag.push_back(blue_union_nbrs(b.l.g, b.d.cover.back()));
            b.d.root = omega;
            b.omega = omega;
            return b;
        }
    }
    throw DomainError("InvalidCertificate", "unknown rule");
}

}  // namespace

std::pair<TreeDecomp, int> cert_to_ehd(const GliCertPtr& c) {
    Built b = build_ehd(c);
    b.d.root = b.omega;
    auto verdict = validate(b.d, b.l.g, DecompMode::ehd);
    need(verdict.ok, "Internal",
         verdict.ok ? "" : "constructed decomposition fails: " +
                               verdict.violations.front().condition);
    return {b.d, b.omega};
}

TraversalPlan plan_traversal(const TreeDecomp& d, int omega, const IncidenceGraph& i) {
    TraversalPlan plan;
    plan.color.assign(i.n_blue, 0);
    plan.schedule.assign(d.n_nodes, std::vector<int>(i.n_red, -1));
    auto adj = d.adjacency();
    std::vector<int> order, parent(d.n_nodes, -1);
    order.push_back(omega);
    for (size_t q = 0; q < order.size(); ++q) {
        int t = order[q];
        for (int u : adj[t])
            if (u != parent[t]) {
                parent[u] = t;
                order.push_back(u);
            }
    }
    for (int t : order) {
        std::vector<int> pool;
        if (parent[t] < 0) {
            pool.resize(d.cover[t].size());
            std::iota(pool.begin(), pool.end(), 1);
        } else {
            for (int e : d.cover[parent[t]]) pool.push_back(plan.color[e]);
            std::sort(pool.begin(), pool.end());
        }
        std::vector<int> used;
        for (int e : d.cover[t])
            if (plan.color[e] != 0) used.push_back(plan.color[e]);
        std::sort(used.begin(), used.end());
        for (int e : d.cover[t]) {
            if (plan.color[e] != 0) continue;
            std::vector<int> avail = set_minus_(pool, used);
            need(!avail.empty(), "Internal", "ran out of colors; tree not monotone?");
            plan.color[e] = avail.front();
            used.push_back(avail.front());
            std::sort(used.begin(), used.end());
        }
        for (int v : d.bag[t]) {
            int choice = -1;
            if (parent[t] >= 0) {
                int sp = plan.schedule[parent[t]][v];
                if (sp >= 0 && set_contains_(d.cover[t], sp)) choice = sp;
            }
            if (choice < 0)
                for (int e : d.cover[t])
                    if (i.has_edge(e, v)) {
                        choice = e;
                        break;
                    }
            need(choice >= 0, "Internal", "bag red without covering blue");
            plan.schedule[t][v] = choice;
        }
    }
    return plan;
}

namespace {

struct EhdCompiler {
    const IncidenceGraph& I;
    const TreeDecomp& D;
    const TraversalPlan& plan;
    std::vector<std::vector<int>> adj;

    // c(t, j): the cover element of t colored j, or -1
    int cover_with_color(int t, int j) const {
        for (int e : D.cover[t])
            if (plan.color[e] == j) return e;
        return -1;
    }

    LabeledGraph base_of(int t) const {
        LabeledGraph l;
        const std::vector<int>&blues = D.cover[t], &reds = D.bag[t];
        l.g.n_blue = (int)blues.size();
        l.g.n_red = (int)reds.size();
        auto local = [](const std::vector<int>& ids, int id) {
            return (int)(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        for (int e : blues)
            for (int v : I.blue_nbrs(e))
                if (set_contains_(reds, v)) l.g.edges.emplace_back(local(blues, e), local(reds, v));
        l.g.normalize();
        for (int v : reds) {
            l.r.push_back({v + 1, local(reds, v)});
            l.gd.push_back({v + 1, plan.color[plan.schedule[t][v]]});
        }
        for (int e : blues) assoc_set(l.b, plan.color[e], local(blues, e));
        return l;
    }

    std::pair<GliCertPtr, LabeledGraph> compile(int t, int from) {
        LabeledGraph base = base_of(t);
        GliCertPtr cert = cert_base(base);
        LabeledGraph cur = base;
        for (int tc : adj[t]) {
            if (tc == from) continue;
            auto [ccert, cl] = compile(tc, t);
            // release red labels leaving the parent's bag
            std::vector<int> drop = set_minus_(assoc_keys(cl.r), assoc_keys(base.r));
            GliCertPtr acert = cert_reclaim_r(ccert, drop);
            LabeledGraph a1 = reclaim_red(cl, drop);
            // blue labels that sit on different nodes in child and parent
            std::vector<int> B;
            for (int e : D.cover[tc]) {
                int j = plan.color[e];
                if (cover_with_color(t, j) != e) B.push_back(j);
            }
            std::sort(B.begin(), B.end());
            // red labels whose guard blue changes from child to parent
            Assoc f;
            for (auto& [lab, node] : a1.r) {
                int v = lab - 1;
                if (set_contains_(D.bag[t], v) &&
                    plan.schedule[tc][v] != plan.schedule[t][v])
                    f.push_back({lab, plan.color[plan.schedule[t][v]]});
            }
            LabeledGraph a2;
            GliCertPtr a2cert;
            if (f.empty()) {
                std::vector<int> allowed =
                    set_minus_(assoc_keys(a1.b), assoc_values_sorted(a1.gd));
                need(set_subset_(B, allowed), "Internal", "stale blue label still guards");
                a2cert = cert_reclaim_b(acert, B);
                a2 = reclaim_blue(a1, B);
            } else {
                std::vector<int> img_f = assoc_values_sorted(f);
                need(set_subset_(set_intersect_(img_f, assoc_keys(a1.b)), B), "Internal",
                     "transition target not stale");
                std::vector<int> xb = set_minus_(set_intersect_(assoc_keys(a1.b), img_f),
                                                 assoc_values_sorted(a1.gd));
                a2cert = cert_reclaim_b(acert, xb);
                LabeledGraph hat = reclaim_blue(a1, xb);
                need(is_transition(hat.gd, f), "Internal", "guard change is no transition");
                a2cert = cert_switch(a2cert, f);
                LabeledGraph til = apply_transition(hat, f).out;
                std::vector<int> btilde = set_minus_(B, img_f);
                std::vector<int> allowed =
                    set_minus_(assoc_keys(til.b), assoc_values_sorted(til.gd));
                need(set_subset_(btilde, allowed), "Internal", "stale blue label still guards");
                a2cert = cert_reclaim_b(a2cert, btilde);
                a2 = reclaim_blue(til, btilde);
            }
            need(assoc_compatible(cur.gd, a2.gd), "Internal", "incompatible guards at glue");
            cert = cert_glue(cert, a2cert);
            cur = glue(cur, a2).out;
        }
        return {cert, cur};
    }
};

}  // namespace

GliCertPtr ehd_to_cert(const IncidenceGraph& i, const TreeDecomp& d) {
    auto verdict = validate(d, i, DecompMode::ehd);
    if (!verdict.ok)
        throw DomainError("InvalidDecomp", "not an entangled decomposition: " +
                                               verdict.violations.front().condition);
    TreeDecomp norm = normalize_binary_monotone(d, i);
    int omega = *norm.root;
    TraversalPlan plan = plan_traversal(norm, omega, i);
    EhdCompiler comp{i, norm, plan, norm.adjacency()};
    auto [cert, top] = comp.compile(omega, -1);
    return cert_reclaim_b(cert_reclaim_r(cert, assoc_keys(top.r)), assoc_keys(top.b));
}

}  // namespace ghom

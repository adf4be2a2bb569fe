#include "ghom/logic.hh"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ghom {

namespace {
using K = Formula::Kind;

FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr top() { return mk({K::Top}); }
FormulaPtr atom_e(int j, int i) { return mk({K::AtomE, j, i}); }
FormulaPtr eq_blue(int j, int j2) { return mk({K::EqBlue, j, j2}); }
FormulaPtr eq_red(int i, int i2) { return mk({K::EqRed, i, i2}); }
FormulaPtr f_not(FormulaPtr x) {
    Formula f{K::Not};
    f.lhs = std::move(x);
    return mk(std::move(f));
}
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
    Formula f{K::And};
    f.lhs = std::move(l);
    f.rhs = std::move(r);
    return mk(std::move(f));
}
FormulaPtr exists_geq_red(long long n, std::vector<int> idx, FormulaPtr body) {
    Formula f{K::ExistsRed};
    f.n = n;
    f.indices = std::move(idx);
    f.lhs = std::move(body);
    return mk(std::move(f));
}
FormulaPtr exists_geq_blue(long long n, std::vector<int> idx, FormulaPtr body) {
    Formula f{K::ExistsBlue};
    f.n = n;
    f.indices = std::move(idx);
    f.lhs = std::move(body);
    return mk(std::move(f));
}

FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
    return f_not(f_and(f_not(std::move(l)), f_not(std::move(r))));
}
FormulaPtr f_implies(FormulaPtr l, FormulaPtr r) {
    return f_not(f_and(std::move(l), f_not(std::move(r))));
}
FormulaPtr exists_eq_red(long long n, std::vector<int> idx, FormulaPtr body) {
    if (n == 0) return f_not(exists_geq_red(1, std::move(idx), std::move(body)));
    return f_and(exists_geq_red(n, idx, body), f_not(exists_geq_red(n + 1, idx, body)));
}
FormulaPtr exists_eq_blue(long long n, std::vector<int> idx, FormulaPtr body) {
    if (n == 0) return f_not(exists_geq_blue(1, std::move(idx), std::move(body)));
    return f_and(exists_geq_blue(n, idx, body), f_not(exists_geq_blue(n + 1, idx, body)));
}
FormulaPtr tautology() {
    return f_not(exists_geq_blue(1, {1}, f_and(top(), f_not(eq_blue(1, 1)))));
}

bool equal(const FormulaPtr& x, const FormulaPtr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->a != y->a || x->b != y->b || x->n != y->n ||
        x->indices != y->indices)
        return false;
    return equal(x->lhs, y->lhs) && equal(x->rhs, y->rhs);
}

FormulaPtr guard_formula(const GuardFn& g) {
    if (g.empty()) return top();
    FormulaPtr out;
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
        auto atom = atom_e(it->second, it->first);
        out = out ? f_and(atom, out) : atom;
    }
    return out;
}

std::optional<GuardFn> as_guard(const FormulaPtr& f) {
    if (f->kind == K::Top) return GuardFn{};
    GuardFn g;
    std::function<bool(const FormulaPtr&)> go = [&](const FormulaPtr& x) {
        if (x->kind == K::AtomE) return g.emplace(x->b, x->a).second;
        if (x->kind == K::And) return go(x->lhs) && go(x->rhs);
        return false;
    };
    if (!go(f)) return std::nullopt;
    return g;
}

FreeVars free_vars(const FormulaPtr& f) {
    FreeVars out;
    switch (f->kind) {
        case K::Top:
            break;
        case K::AtomE:
            out.blue = {f->a};
            out.red = {f->b};
            break;
        case K::EqBlue:
            out.blue = {f->a, f->b};
            break;
        case K::EqRed:
            out.red = {f->a, f->b};
            break;
        case K::Not:
            out = free_vars(f->lhs);
            break;
        case K::And: {
            out = free_vars(f->lhs);
            auto r = free_vars(f->rhs);
            out.red = set_union_(out.red, r.red);
            out.blue = set_union_(out.blue, r.blue);
            break;
        }
        case K::ExistsRed:
        case K::ExistsBlue: {
            out = free_vars(f->lhs);
            std::vector<int> idx = f->indices;
            std::sort(idx.begin(), idx.end());
            if (f->kind == K::ExistsRed)
                out.red = set_minus_(out.red, idx);
            else
                out.blue = set_minus_(out.blue, idx);
            break;
        }
    }
    std::sort(out.red.begin(), out.red.end());
    out.red.erase(std::unique(out.red.begin(), out.red.end()), out.red.end());
    std::sort(out.blue.begin(), out.blue.end());
    out.blue.erase(std::unique(out.blue.begin(), out.blue.end()), out.blue.end());
    return out;
}

namespace {

int lookup(const std::map<int, int>& m, int key, const char* sort) {
    auto it = m.find(key);
    if (it == m.end())
        throw DomainError("UnassignedFreeVariable",
                          std::string(sort) + " variable " + std::to_string(key) + " unassigned");
    return it->second;
}

bool eval_rec(const IncidenceGraph& g, std::map<int, int>& red, std::map<int, int>& blue,
              const FormulaPtr& f) {
    switch (f->kind) {
        case K::Top:
            return true;
        case K::AtomE:
            return g.has_edge(lookup(blue, f->a, "blue"), lookup(red, f->b, "red"));
        case K::EqBlue:
            return lookup(blue, f->a, "blue") == lookup(blue, f->b, "blue");
        case K::EqRed:
            return lookup(red, f->a, "red") == lookup(red, f->b, "red");
        case K::Not:
            return !eval_rec(g, red, blue, f->lhs);
        case K::And:
            return eval_rec(g, red, blue, f->lhs) && eval_rec(g, red, blue, f->rhs);
        case K::ExistsRed:
        case K::ExistsBlue: {
            bool red_sort = f->kind == K::ExistsRed;
            auto& assign = red_sort ? red : blue;
            int domain = red_sort ? g.n_red : g.n_blue;
            std::vector<std::optional<int>> saved;
            for (int i : f->indices) {
                auto it = assign.find(i);
                saved.push_back(it == assign.end() ? std::nullopt : std::optional<int>(it->second));
            }
            long long count = 0;
            std::function<bool(size_t)> tuples = [&](size_t pos) -> bool {
                if (pos == f->indices.size()) {
                    if (eval_rec(g, red, blue, f->lhs) && ++count >= f->n) return true;
                    return false;
                }
                for (int node = 0; node < domain; ++node) {
                    assign[f->indices[pos]] = node;
                    if (tuples(pos + 1)) return true;
                }
                return false;
            };
            bool res = tuples(0);
            for (size_t i = 0; i < f->indices.size(); ++i) {
                if (saved[i])
                    assign[f->indices[i]] = *saved[i];
                else
                    assign.erase(f->indices[i]);
            }
            return res;
        }
    }
    return false;
}

}  // namespace

bool eval(const Interpretation& m, const FormulaPtr& f) {
    auto red = m.red_assign;
    auto blue = m.blue_assign;
    return eval_rec(m.graph, red, blue, f);
}

namespace {

struct Checker {
    int k;
    LogicMode mode;
    SyntaxVerdict verdict;

    void fail(const std::string& msg) {
        verdict.ok = false;
        verdict.violations.push_back(msg);
    }

    bool blue_ok(int j) { return j >= 1 && j <= k; }

    bool ascending(const std::vector<int>& idx) {
        for (size_t i = 1; i < idx.size(); ++i)
            if (idx[i - 1] >= idx[i]) return false;
        return !idx.empty();
    }

    void check_indices(const FormulaPtr& f) {
        switch (f->kind) {
            case K::Top:
                break;
            case K::AtomE:
                if (!blue_ok(f->a)) fail("blue index outside [k] in edge atom");
                if (f->b < 1) fail("red index below 1 in edge atom");
                break;
            case K::EqBlue:
                if (!blue_ok(f->a) || !blue_ok(f->b)) fail("blue index outside [k] in equality");
                break;
            case K::EqRed:
                if (f->a < 1 || f->b < 1) fail("red index below 1 in equality");
                break;
            case K::Not:
                check_indices(f->lhs);
                break;
            case K::And:
                check_indices(f->lhs);
                check_indices(f->rhs);
                break;
            case K::ExistsRed:
            case K::ExistsBlue:
                if (f->n < 1) fail("quantifier threshold below 1");
                if (!ascending(f->indices)) fail("quantified indices not nonempty ascending");
                for (int i : f->indices)
                    if (f->kind == K::ExistsBlue ? !blue_ok(i) : i < 1)
                        fail("quantified index out of range");
                check_indices(f->lhs);
                break;
        }
    }

    // GC^k quantifier shape: body (Gamma_g & psi) with Dom(g) = freeR(psi)
    // and quantified indices free in the body
    void gck(const FormulaPtr& f) {
        if (f->kind == K::Not) {
            gck(f->lhs);
        } else if (f->kind == K::And) {
            gck(f->lhs);
            gck(f->rhs);
        } else if (f->kind == K::ExistsRed || f->kind == K::ExistsBlue) {
            if (f->lhs->kind != K::And) {
                fail("quantifier body is not a guarded conjunction");
                return;
            }
            auto g = as_guard(f->lhs->lhs);
            if (!g) {
                fail("quantifier body has no guard conjunction on the left");
                return;
            }
            auto fv = free_vars(f->lhs->rhs);
            std::vector<int> dom;
            for (auto& [i, j] : *g) dom.push_back(i);
            if (dom != fv.red) fail("guard domain differs from the free red variables");
            auto bodyfv = free_vars(f->lhs);
            auto& pool = f->kind == K::ExistsRed ? bodyfv.red : bodyfv.blue;
            for (int i : f->indices)
                if (!set_contains_(pool, i)) fail("quantified variable is not free in the body");
            gck(f->lhs);
        }
    }

    std::vector<int> dom_of(const GuardFn& g) {
        std::vector<int> out;
        for (auto& [i, j] : g) out.push_back(i);
        return out;
    }

    GuardFn restrict_to(const GuardFn& g, const std::vector<int>& keys) {
        GuardFn out;
        for (int i : keys) {
            auto it = g.find(i);
            if (it != g.end()) out.insert(*it);
        }
        return out;
    }

    // NGC^k: the whole formula is (Gamma_g & psi)
    void ngc_formula(const FormulaPtr& f) {
        if (f->kind != K::And) {
            fail("formula is not of the shape (guard & body)");
            return;
        }
        auto g = as_guard(f->lhs);
        if (!g) {
            fail("left conjunct is not a guard conjunction");
            return;
        }
        for (auto& [i, j] : *g) {
            if (i < 1) fail("guard red index below 1");
            if (!blue_ok(j)) fail("guard value outside [k]");
        }
        if (dom_of(*g) != free_vars(f->rhs).red)
            fail("guard domain differs from the free red variables of the body");
        ngc_body(*g, f->rhs);
    }

    void ngc_body(const GuardFn& g, const FormulaPtr& psi) {
        switch (psi->kind) {
            case K::Top:
                fail("bare T is not derivable in normal form");
                break;
            case K::AtomE:
                if (dom_of(g) != std::vector<int>{psi->b})
                    fail("edge atom needs guard domain exactly its red index");
                break;
            case K::EqBlue:
                if (!g.empty()) fail("blue equality needs an empty guard domain");
                break;
            case K::EqRed: {
                std::vector<int> want = {psi->a, psi->b};
                std::sort(want.begin(), want.end());
                want.erase(std::unique(want.begin(), want.end()), want.end());
                if (dom_of(g) != want)
                    fail("red equality needs guard domain exactly its two indices");
                break;
            }
            case K::Not:
                ngc_body(g, psi->lhs);
                break;
            case K::And: {
                auto fl = free_vars(psi->lhs), fr = free_vars(psi->rhs);
                if (set_union_(fl.red, fr.red) != dom_of(g))
                    fail("conjunction guard is not the union of the conjunct guards");
                ngc_body(restrict_to(g, fl.red), psi->lhs);
                ngc_body(restrict_to(g, fr.red), psi->rhs);
                break;
            }
            case K::ExistsRed: {
                if (psi->lhs->kind != K::And) {
                    fail("red quantifier body is not a guarded conjunction");
                    return;
                }
                auto gi = as_guard(psi->lhs->lhs);
                if (!gi) {
                    fail("red quantifier body has no guard");
                    return;
                }
                for (int i : psi->indices)
                    if (!gi->count(i)) fail("quantified red variable outside the inner guard");
                GuardFn expect = *gi;
                for (int i : psi->indices) expect.erase(i);
                if (expect != g) fail("outer guard is not the inner guard minus the quantified");
                ngc_formula(psi->lhs);
                break;
            }
            case K::ExistsBlue: {
                if (psi->lhs->kind != K::And) {
                    fail("blue quantifier body is not a guarded conjunction");
                    return;
                }
                auto gi = as_guard(psi->lhs->lhs);
                if (!gi) {
                    fail("blue quantifier body has no guard");
                    return;
                }
                auto bodyfv = free_vars(psi->lhs);
                for (int j : psi->indices)
                    if (!set_contains_(bodyfv.blue, j))
                        fail("quantified blue variable is not free in the body");
                if (dom_of(g) != dom_of(*gi))
                    fail("blue quantification must keep the guard domain");
                else {
                    std::vector<int> img;
                    for (auto& [i, j] : *gi) img.push_back(j);
                    std::sort(img.begin(), img.end());
                    for (auto& [i, j] : *gi) {
                        int jt = g.at(i);
                        bool ok = jt == j || set_contains_(psi->indices, jt) ||
                                  !set_contains_(img, jt);
                        if (!ok)
                            fail("guard change for red variable " + std::to_string(i) +
                                 " is not licensed by the quantification");
                    }
                }
                ngc_formula(psi->lhs);
                break;
            }
        }
    }
};

}  // namespace

SyntaxVerdict check_syntax(const FormulaPtr& f, int k, LogicMode mode) {
    Checker c{k, mode};
    c.check_indices(f);
    if (mode == LogicMode::gck)
        c.gck(f);
    else
        c.ngc_formula(f);
    return c.verdict;
}

namespace {

GuardFn restrict_guard(const GuardFn& g, const std::vector<int>& keys) {
    GuardFn out;
    for (int i : keys) {
        auto it = g.find(i);
        if (it != g.end()) out.insert(*it);
    }
    return out;
}

FormulaPtr nf(const FormulaPtr& phi, const GuardFn& f, int k);

FormulaPtr nf_quantifier(const FormulaPtr& phi, const GuardFn& f, int k) {
    const GuardFn g = *as_guard(phi->lhs->lhs);
    const FormulaPtr chi = phi->lhs->rhs;
    GuardFn gp;
    if (phi->kind == K::ExistsRed) {
        // keep g on the quantified indices, take f elsewhere
        gp = g;
        for (auto& [i, j] : f) gp[i] = j;
        for (int i : phi->indices) gp[i] = g.at(i);
    } else {
        std::vector<int> img;
        for (auto& [i, j] : g) img.push_back(j);
        std::sort(img.begin(), img.end());
        for (auto& [i, j] : g) {
            int fi = f.at(i);
            bool keep = set_contains_(phi->indices, fi) || !set_contains_(img, fi);
            gp[i] = keep ? j : fi;
        }
    }
    // an empty inner guard is the empty conjunction and is dropped entirely
    auto inner = g.empty() ? nf(chi, gp, k) : f_and(guard_formula(g), nf(chi, gp, k));
    auto body = f_and(guard_formula(gp), inner);
    return phi->kind == K::ExistsRed ? exists_geq_red(phi->n, phi->indices, body)
                                     : exists_geq_blue(phi->n, phi->indices, body);
}

FormulaPtr nf(const FormulaPtr& phi, const GuardFn& f, int k) {
    switch (phi->kind) {
        case K::Top:
            return tautology();
        case K::AtomE:
        case K::EqBlue:
        case K::EqRed:
            return phi;
        case K::Not:
            return f_not(nf(phi->lhs, f, k));
        case K::And:
            return f_and(nf(phi->lhs, restrict_guard(f, free_vars(phi->lhs).red), k),
                         nf(phi->rhs, restrict_guard(f, free_vars(phi->rhs).red), k));
        case K::ExistsRed:
        case K::ExistsBlue:
            return nf_quantifier(phi, f, k);
    }
    throw DomainError("Internal", "unreachable formula kind");
}

}  // namespace

FormulaPtr to_normal_form(const FormulaPtr& phi, const GuardFn& f, int k) {
    auto v = check_syntax(phi, k, LogicMode::gck);
    if (!v.ok) throw DomainError("NotInGC", v.violations.front());
    std::vector<int> dom;
    for (auto& [i, j] : f) {
        dom.push_back(i);
        if (j < 1 || j > k) throw DomainError("NotInGC", "guard value outside [k]");
    }
    if (dom != free_vars(phi).red)
        throw DomainError("NotInGC", "guard domain must equal the free red variables");
    return nf(phi, f, k);
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void err(const std::string& msg) {
        throw DomainError("SyntaxError", msg + " at position " + std::to_string(pos));
    }
    void ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    char peek() {
        ws();
        if (pos >= s.size()) err("unexpected end of input");
        return s[pos];
    }
    void expect(char c) {
        if (peek() != c) err(std::string("expected '") + c + "'");
        ++pos;
    }
    long long number() {
        ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) err("expected a number");
        return std::stoll(s.substr(start, pos - start));
    }

    FormulaPtr formula() {
        char c = peek();
        if (c == 'T') {
            ++pos;
            return top();
        }
        if (c == '!') {
            ++pos;
            return f_not(formula());
        }
        if (c == '(') {
            ++pos;
            auto l = formula();
            ws();
            expect('&');
            auto r = formula();
            expect(')');
            return f_and(l, r);
        }
        if (c == 'E') {
            ++pos;
            char nxt = peek();
            if (nxt == '(') {
                ++pos;
                expect('e');
                int j = (int)number();
                expect(',');
                expect('v');
                int i = (int)number();
                expect(')');
                return atom_e(j, i);
            }
            if (nxt == '>') {
                ++pos;
                expect('=');
                long long n = number();
                expect('(');
                char sort = peek();
                if (sort != 'v' && sort != 'e') err("expected a variable list");
                std::vector<int> idx;
                while (true) {
                    char cc = peek();
                    if (cc != sort) err("mixed-sort variable list");
                    ++pos;
                    idx.push_back((int)number());
                    if (peek() == ',') {
                        ++pos;
                        continue;
                    }
                    break;
                }
                expect(')');
                expect('.');
                auto body = formula();
                return sort == 'v' ? exists_geq_red(n, idx, body)
                                   : exists_geq_blue(n, idx, body);
            }
            err("expected '(' or '>=' after 'E'");
        }
        if (c == 'e') {
            ++pos;
            int j = (int)number();
            expect('=');
            expect('e');
            int j2 = (int)number();
            return eq_blue(j, j2);
        }
        if (c == 'v') {
            ++pos;
            int i = (int)number();
            expect('=');
            expect('v');
            int i2 = (int)number();
            return eq_red(i, i2);
        }
        err("unexpected character");
    }
};

void render(const FormulaPtr& f, std::string& out) {
    switch (f->kind) {
        case K::Top:
            out += "T";
            break;
        case K::AtomE:
            out += "E(e" + std::to_string(f->a) + ",v" + std::to_string(f->b) + ")";
            break;
        case K::EqBlue:
            out += "e" + std::to_string(f->a) + "=e" + std::to_string(f->b);
            break;
        case K::EqRed:
            out += "v" + std::to_string(f->a) + "=v" + std::to_string(f->b);
            break;
        case K::Not:
            out += "!";
            render(f->lhs, out);
            break;
        case K::And:
            out += "(";
            render(f->lhs, out);
            out += " & ";
            render(f->rhs, out);
            out += ")";
            break;
        case K::ExistsRed:
        case K::ExistsBlue: {
            const char* v = f->kind == K::ExistsRed ? "v" : "e";
            out += "E>=" + std::to_string(f->n) + "(";
            for (size_t i = 0; i < f->indices.size(); ++i) {
                if (i) out += ",";
                out += v + std::to_string(f->indices[i]);
            }
            out += ").";
            render(f->lhs, out);
            break;
        }
    }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p{text};
    auto f = p.formula();
    p.ws();
    if (p.pos != text.size()) p.err("trailing input");
    return f;
}

std::string render_formula(const FormulaPtr& f) {
    std::string out;
    render(f, out);
    return out;
}

}  // namespace ghom

#ifndef GHOM_LOGIC_HH_
#define GHOM_LOGIC_HH_

#include "ghom/model.hh"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace ghom {

// Guard function: red variable index (>=1) -> blue variable index in [k].
using GuardFn = std::map<int, int>;

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Core two-sorted counting-logic AST. Quantifier bodies are expected to be
// conjunctions whose left side is a guard conjunction; that shape is checked
// by check_syntax, not enforced structurally.
struct Formula {
    enum class Kind { Top, AtomE, EqBlue, EqRed, Not, And, ExistsRed, ExistsBlue };
    Kind kind;
    int a = 0, b = 0;          // AtomE: a = blue j, b = red i; Eq*: the two indices
    long long n = 0;           // quantifier threshold
    std::vector<int> indices;  // quantified indices, ascending
    FormulaPtr lhs, rhs;       // And: both; Not and quantifiers: lhs only
};

FormulaPtr top();
FormulaPtr atom_e(int j, int i);
FormulaPtr eq_blue(int j, int j2);
FormulaPtr eq_red(int i, int i2);
FormulaPtr f_not(FormulaPtr x);
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr exists_geq_red(long long n, std::vector<int> idx, FormulaPtr body);
FormulaPtr exists_geq_blue(long long n, std::vector<int> idx, FormulaPtr body);

// shorthands expanding into the core constructors
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr exists_eq_red(long long n, std::vector<int> idx, FormulaPtr body);
FormulaPtr exists_eq_blue(long long n, std::vector<int> idx, FormulaPtr body);
FormulaPtr tautology();  // !E>=1(e1).(T & !e1=e1)

bool equal(const FormulaPtr& x, const FormulaPtr& y);

// Gamma_g: right-associated conjunction of E(e_g(i), v_i) ascending in i;
// Top for the empty domain.
FormulaPtr guard_formula(const GuardFn& g);
// Reads any conjunction tree of E-atoms with pairwise distinct red indices
// (or a bare Top) back into a guard function.
std::optional<GuardFn> as_guard(const FormulaPtr& f);

struct FreeVars {
    std::vector<int> red, blue;  // sorted index sets
};
FreeVars free_vars(const FormulaPtr& f);

struct Interpretation {
    IncidenceGraph graph;
    std::map<int, int> red_assign;   // red var index -> red node id
    std::map<int, int> blue_assign;  // blue var index -> blue node id
};

// Throws DomainError("UnassignedFreeVariable") when a needed variable is
// missing from the assignment.
bool eval(const Interpretation& m, const FormulaPtr& f);

enum class LogicMode { gck, ngck };
struct SyntaxVerdict {
    bool ok = true;
    std::vector<std::string> violations;
};
SyntaxVerdict check_syntax(const FormulaPtr& f, int k, LogicMode mode);

// Normal-form compiler: given phi in GC^k and a guard f with
// Dom(f) = free red indices of phi, produces phi_f such that
// (Gamma_f & phi_f) is in NGC^k and equivalent to (Gamma_f & phi).
FormulaPtr to_normal_form(const FormulaPtr& phi, const GuardFn& f, int k);

FormulaPtr parse_formula(const std::string& text);
std::string render_formula(const FormulaPtr& f);

}  // namespace ghom

#endif  // GHOM_LOGIC_HH_

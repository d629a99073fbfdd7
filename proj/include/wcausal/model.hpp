#ifndef WCAUSAL_MODEL_HPP
#define WCAUSAL_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcausal/source.hpp"

namespace wcausal {

// ---------------------------------------------------------------------------
// Sorted signature
// ---------------------------------------------------------------------------

// Built-in sort names. "boolean" has values {true,false}; "natural" and
// "time" are bounded by the run configuration (duration cap / horizon);
// "action" ranges over the declared action instances.
inline constexpr const char* kBoolSort = "boolean";
inline constexpr const char* kNaturalSort = "natural";
inline constexpr const char* kTimeSort = "time";
inline constexpr const char* kActionSort = "action";

enum class SymbolKind {
    Static,
    Action,
    InertialFluent,
    TransientFluent,
    TimelessFluent,
};

const char* symbol_kind_name(SymbolKind k);

struct Sort {
    std::string name;
    std::vector<std::string> values;  // enumerated constants
    SourceSpan span;
};

struct FunctionSymbol {
    std::string name;
    std::vector<std::string> param_sorts;
    std::string value_sort;  // always "boolean" for actions
    SymbolKind kind;
    SourceSpan span;

    bool time_dependent() const {
        return kind == SymbolKind::Action || kind == SymbolKind::InertialFluent ||
               kind == SymbolKind::TransientFluent;
    }
    bool is_fluent() const {
        return kind == SymbolKind::InertialFluent || kind == SymbolKind::TransientFluent ||
               kind == SymbolKind::TimelessFluent;
    }
};

struct Signature {
    std::vector<Sort> sorts;
    std::vector<FunctionSymbol> symbols;

    const Sort* find_sort(const std::string& name) const;
    const FunctionSymbol* find_symbol(const std::string& name) const;
    // Sort of an object constant, or nullptr when undeclared. A constant may
    // be listed by several sorts (sub-sort idiom); the first declaring sort
    // is returned.
    const Sort* constant_sort(const std::string& name) const;
    bool sort_has_value(const std::string& sort, const std::string& value) const;
    bool is_numeric_sort(const std::string& sort) const {
        return sort == kNaturalSort || sort == kTimeSort;
    }
};

// ---------------------------------------------------------------------------
// Terms and atoms
// ---------------------------------------------------------------------------

struct Term {
    enum class Kind {
        Number,         // natural-number literal
        ObjectConst,    // declared object constant (incl. true/false)
        AbstractConst,  // symbolic natural, fixed only by an interpretation
        Variable,
        Func,           // f(args...) — functional term or action instance
        Binary,         // arithmetic: lhs op rhs with op in {+,-,*}
    };

    Kind kind = Kind::Number;
    long number = 0;
    std::string name;        // constant/variable/function name
    std::vector<Term> args;  // Func arguments or Binary {lhs, rhs}
    char op = 0;             // Binary operator
    SourceSpan span;

    static Term make_number(long v);
    static Term make_const(std::string name);
    static Term make_abstract(std::string name);
    static Term make_variable(std::string name);
    static Term make_func(std::string name, std::vector<Term> args);
    static Term make_binary(char op, Term lhs, Term rhs);

    bool is_ground() const;  // no variables (abstract constants allowed)
    std::string str() const;
};

bool term_equal(const Term& a, const Term& b);

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };
const char* rel_text(Rel r);
bool rel_eval(Rel r, long lhs, long rhs);

// e(args..., time) = value  or  e(args..., time) != value.
// `occurs_arg` carries the action term of the builtin occurs(A, I) form,
// in which case `symbol` is empty until grounding resolves it.
struct Atom {
    std::string symbol;
    std::optional<Term> occurs_arg;
    std::vector<Term> args;
    std::optional<Term> time;
    bool neq = false;
    Term value;
    SourceSpan span;

    std::string str() const;
};

struct ArithmeticAtom {
    Term lhs;
    Rel rel = Rel::Eq;
    Term rhs;
    SourceSpan span;

    std::string str() const;
};

using BodyLiteral = std::variant<Atom, ArithmeticAtom>;

// ---------------------------------------------------------------------------
// Causal mechanisms and scenarios
// ---------------------------------------------------------------------------

// Labeled defeasible rule  m : head <- body, neg ab(m, I).
// The ab-guard is implicit machinery: `guard_var` names its time variable
// (the head's time variable, or the explicit `at` variable when the head is
// time-independent).
struct CausalMechanism {
    std::string label;
    std::vector<std::string> label_params;
    Atom head;
    std::vector<BodyLiteral> body;
    std::string guard_var;
    SourceSpan span;

    std::string label_str() const;
    // Body atom count including the implicit ab-guard.
    std::size_t body_size_with_guard() const { return body.size() + 1; }
};

struct InitAtom {
    std::string symbol;
    std::vector<Term> args;
    Term value;
    SourceSpan span;

    std::string str() const;
};

struct DoAtom {
    Term action;  // ground action instance term
    bool positive = true;
    Term step;
    SourceSpan span;

    std::string str() const;
};

struct ObsAtom {
    std::string symbol;
    std::vector<Term> args;
    Term value;
    Term step;
    SourceSpan span;

    std::string str() const;
};

struct AbstractConstDecl {
    std::string name;
    bool time_valued = false;  // time-steps range over [0,horizon], others over the duration cap
    SourceSpan span;
};

struct Scenario {
    std::vector<Atom> statics;  // ground static atoms (values may be abstract)
    std::vector<ArithmeticAtom> constraints;
    std::vector<InitAtom> inits;
    std::vector<DoAtom> dos;
    std::vector<ObsAtom> observations;
    std::vector<AbstractConstDecl> abstracts;

    const AbstractConstDecl* find_abstract(const std::string& name) const;
};

struct CausalTheory {
    Signature signature;
    std::vector<CausalMechanism> mechanisms;
    Scenario scenario;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Structural well-formedness: sort/symbol declarations, mechanism heads,
// label uniqueness, scenario typing, statically decidable causality
// violations. Empty result means the theory is valid.
Diagnostics validate(const CausalTheory& theory);

// Principle of causality on a fully ground mechanism instance: every body
// time-step j must satisfy j < i for action atoms and j <= i otherwise,
// where i is the head time-step. Mechanisms with time-independent heads
// pass vacuously.
struct CausalityCheck {
    bool ok = true;
    std::string offending;  // rendered offending atom when !ok
};
CausalityCheck check_causality_ground(const std::vector<int>& body_action_steps,
                                      const std::vector<int>& body_other_steps,
                                      std::optional<int> head_step);

// Replaces comparison shorthands over static functional terms by explicit
// value bindings: each functional term inside an arithmetic atom becomes a
// fresh abstract constant d with a new static fact f(x) = d. Existing
// bindings are reused, so the operation is idempotent.
Scenario expand_shorthands(const Scenario& scenario, const Signature& sig);

// Classifies the scenario's abstract constants as time-valued or not, from
// the positions they occupy (do/obs steps, values of time-valued statics).
void infer_abstract_classes(Scenario& scenario, const Signature& sig);

// Sorts of a mechanism's variables, inferred from the positions they occupy;
// a variable constrained by several positions gets the meet of their sorts.
struct VariableSorts {
    std::map<std::string, std::string> sorts;
    Diagnostics diags;
};
VariableSorts infer_variable_sorts(const CausalMechanism& m, const Signature& sig);

}  // namespace wcausal

#endif

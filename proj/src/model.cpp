#include "wcausal/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace wcausal {

std::string SourceSpan::str() const {
    std::ostringstream os;
    os << (file.empty() ? "<input>" : file) << ":" << line << ":" << column;
    return os.str();
}

std::string Diagnostic::str() const {
    std::string out = span.str() + ": " + message;
    if (!expected.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) out += ", ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

std::string format_diagnostics(const Diagnostics& diags) {
    std::string out;
    for (const auto& d : diags) {
        out += d.str();
        out += '\n';
    }
    return out;
}

const char* symbol_kind_name(SymbolKind k) {
    switch (k) {
        case SymbolKind::Static: return "static";
        case SymbolKind::Action: return "action";
        case SymbolKind::InertialFluent: return "inertial fluent";
        case SymbolKind::TransientFluent: return "transient fluent";
        case SymbolKind::TimelessFluent: return "time-independent fluent";
    }
    return "?";
}

const Sort* Signature::find_sort(const std::string& name) const {
    for (const auto& s : sorts)
        if (s.name == name) return &s;
    return nullptr;
}

const FunctionSymbol* Signature::find_symbol(const std::string& name) const {
    for (const auto& s : symbols)
        if (s.name == name) return &s;
    return nullptr;
}

const Sort* Signature::constant_sort(const std::string& name) const {
    for (const auto& s : sorts)
        if (std::find(s.values.begin(), s.values.end(), name) != s.values.end()) return &s;
    return nullptr;
}

bool Signature::sort_has_value(const std::string& sort, const std::string& value) const {
    if (sort == kBoolSort) return value == "true" || value == "false";
    const Sort* s = find_sort(sort);
    if (!s) return false;
    return std::find(s->values.begin(), s->values.end(), value) != s->values.end();
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

Term Term::make_number(long v) {
    Term t;
    t.kind = Kind::Number;
    t.number = v;
    return t;
}
Term Term::make_const(std::string name) {
    Term t;
    t.kind = Kind::ObjectConst;
    t.name = std::move(name);
    return t;
}
Term Term::make_abstract(std::string name) {
    Term t;
    t.kind = Kind::AbstractConst;
    t.name = std::move(name);
    return t;
}
Term Term::make_variable(std::string name) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    return t;
}
Term Term::make_func(std::string name, std::vector<Term> args) {
    Term t;
    t.kind = Kind::Func;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
}
Term Term::make_binary(char op, Term lhs, Term rhs) {
    Term t;
    t.kind = Kind::Binary;
    t.op = op;
    t.args.push_back(std::move(lhs));
    t.args.push_back(std::move(rhs));
    return t;
}

bool Term::is_ground() const {
    switch (kind) {
        case Kind::Variable: return false;
        case Kind::Func:
        case Kind::Binary:
            for (const auto& a : args)
                if (!a.is_ground()) return false;
            return true;
        default: return true;
    }
}

static void render_term(const Term& t, std::ostream& os, int parent_prec, bool rhs) {
    switch (t.kind) {
        case Term::Kind::Number: os << t.number; return;
        case Term::Kind::ObjectConst:
        case Term::Kind::Variable: os << t.name; return;
        case Term::Kind::AbstractConst: os << '#' << t.name; return;
        case Term::Kind::Func:
            os << t.name;
            if (!t.args.empty()) {
                os << '(';
                for (std::size_t i = 0; i < t.args.size(); ++i) {
                    if (i) os << ", ";
                    render_term(t.args[i], os, 0, false);
                }
                os << ')';
            }
            return;
        case Term::Kind::Binary: {
            int prec = (t.op == '*') ? 2 : 1;
            bool parens = prec < parent_prec || (prec == parent_prec && rhs);
            if (parens) os << '(';
            render_term(t.args[0], os, prec, false);
            os << ' ' << t.op << ' ';
            render_term(t.args[1], os, prec, true);
            if (parens) os << ')';
            return;
        }
    }
}

std::string Term::str() const {
    std::ostringstream os;
    render_term(*this, os, 0, false);
    return os.str();
}

bool term_equal(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Number: return a.number == b.number;
        case Term::Kind::ObjectConst:
        case Term::Kind::AbstractConst:
        case Term::Kind::Variable: return a.name == b.name;
        case Term::Kind::Func:
        case Term::Kind::Binary:
            if (a.name != b.name || a.op != b.op || a.args.size() != b.args.size()) return false;
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (!term_equal(a.args[i], b.args[i])) return false;
            return true;
    }
    return false;
}

const char* rel_text(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
    }
    return "?";
}

bool rel_eval(Rel r, long lhs, long rhs) {
    switch (r) {
        case Rel::Eq: return lhs == rhs;
        case Rel::Ne: return lhs != rhs;
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Gt: return lhs > rhs;
        case Rel::Ge: return lhs >= rhs;
    }
    return false;
}

std::string Atom::str() const {
    std::ostringstream os;
    bool bool_true = !neq && value.kind == Term::Kind::ObjectConst && value.name == "true";
    bool bool_false = !neq && value.kind == Term::Kind::ObjectConst && value.name == "false";
    if (bool_false) os << "neg ";
    if (occurs_arg) {
        os << "occurs(" << occurs_arg->str();
        if (time) os << ", " << time->str();
        os << ')';
    } else {
        os << symbol;
        if (!args.empty() || time) {
            os << '(';
            bool first = true;
            for (const auto& a : args) {
                if (!first) os << ", ";
                os << a.str();
                first = false;
            }
            if (time) {
                if (!first) os << ", ";
                os << time->str();
            }
            os << ')';
        }
    }
    if (!bool_true && !bool_false) os << ' ' << (neq ? "!=" : "=") << ' ' << value.str();
    return os.str();
}

std::string ArithmeticAtom::str() const {
    return lhs.str() + " " + rel_text(rel) + " " + rhs.str();
}

std::string CausalMechanism::label_str() const {
    std::string out = label;
    if (!label_params.empty()) {
        out += '(';
        for (std::size_t i = 0; i < label_params.size(); ++i) {
            if (i) out += ", ";
            out += label_params[i];
        }
        out += ')';
    }
    return out;
}

std::string InitAtom::str() const {
    std::string head = symbol;
    if (!args.empty()) {
        head += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) head += ", ";
            head += args[i].str();
        }
        head += ')';
    }
    if (value.kind == Term::Kind::ObjectConst && value.name == "true") return "init(" + head + ")";
    if (value.kind == Term::Kind::ObjectConst && value.name == "false")
        return "init(neg " + head + ")";
    return "init(" + head + " = " + value.str() + ")";
}

std::string DoAtom::str() const {
    return std::string("do(") + (positive ? "" : "neg ") + action.str() + ", " + step.str() + ")";
}

std::string ObsAtom::str() const {
    std::string head = symbol;
    if (!args.empty()) {
        head += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) head += ", ";
            head += args[i].str();
        }
        head += ')';
    }
    return "obs(" + head + ", " + value.str() + ", " + step.str() + ")";
}

const AbstractConstDecl* Scenario::find_abstract(const std::string& name) const {
    for (const auto& a : abstracts)
        if (a.name == name) return &a;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Causality check
// ---------------------------------------------------------------------------

CausalityCheck check_causality_ground(const std::vector<int>& body_action_steps,
                                      const std::vector<int>& body_other_steps,
                                      std::optional<int> head_step) {
    CausalityCheck out;
    if (!head_step) return out;  // time-independent head: nothing to precede
    for (int j : body_action_steps) {
        if (!(j < *head_step)) {
            out.ok = false;
            out.offending = "action atom at step " + std::to_string(j) +
                            " does not precede head step " + std::to_string(*head_step);
            return out;
        }
    }
    for (int j : body_other_steps) {
        if (!(j <= *head_step)) {
            out.ok = false;
            out.offending = "body atom at step " + std::to_string(j) + " follows head step " +
                            std::to_string(*head_step);
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shorthand expansion
// ---------------------------------------------------------------------------

namespace {

// Existing binding of a static functional term to an abstract constant or
// numeral, from the scenario's static atoms.
const Term* find_binding(const Scenario& sc, const Term& func) {
    for (const auto& a : sc.statics) {
        if (a.neq || a.symbol != func.name || a.args.size() != func.args.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!term_equal(a.args[i], func.args[i])) same = false;
        if (!same) continue;
        if (a.value.kind == Term::Kind::AbstractConst || a.value.kind == Term::Kind::Number)
            return &a.value;
    }
    return nullptr;
}

struct Expander {
    Scenario& sc;
    const Signature& sig;

    Term rewrite(const Term& t) {
        switch (t.kind) {
            case Term::Kind::Binary: {
                Term out = t;
                out.args[0] = rewrite(t.args[0]);
                out.args[1] = rewrite(t.args[1]);
                return out;
            }
            case Term::Kind::Func: {
                const FunctionSymbol* f = sig.find_symbol(t.name);
                if (!f || f->kind != SymbolKind::Static) return t;  // validation reports it
                if (const Term* bound = find_binding(sc, t)) return *bound;
                // Introduce a fresh abstract constant named after the term.
                std::string name = t.str();
                Term fresh = Term::make_abstract(name);
                Atom fact;
                fact.symbol = t.name;
                fact.args = t.args;
                fact.value = fresh;
                fact.span = t.span;
                sc.statics.push_back(fact);
                AbstractConstDecl decl;
                decl.name = name;
                decl.time_valued = f->value_sort == kTimeSort;
                decl.span = t.span;
                if (!sc.find_abstract(name)) sc.abstracts.push_back(decl);
                return fresh;
            }
            default: return t;
        }
    }
};

}  // namespace

Scenario expand_shorthands(const Scenario& scenario, const Signature& sig) {
    Scenario out = scenario;
    Expander ex{out, sig};
    for (auto& c : out.constraints) {
        c.lhs = ex.rewrite(c.lhs);
        c.rhs = ex.rewrite(c.rhs);
    }
    infer_abstract_classes(out, sig);
    return out;
}

void infer_abstract_classes(Scenario& scenario, const Signature& sig) {
    std::set<std::string> time_names;
    for (const auto& d : scenario.dos)
        if (d.step.kind == Term::Kind::AbstractConst) time_names.insert(d.step.name);
    for (const auto& o : scenario.observations)
        if (o.step.kind == Term::Kind::AbstractConst) time_names.insert(o.step.name);
    for (const auto& a : scenario.statics) {
        if (a.value.kind != Term::Kind::AbstractConst) continue;
        const FunctionSymbol* f = sig.find_symbol(a.symbol);
        if (f && f->value_sort == kTimeSort) time_names.insert(a.value.name);
    }
    for (auto& d : scenario.abstracts)
        if (time_names.count(d.name)) d.time_valued = true;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

bool reserved_sort(const std::string& n) {
    return n == kBoolSort || n == kNaturalSort || n == kTimeSort || n == kActionSort;
}

// Shared between validation and grounding.
struct SortInferencer {
    const Signature& sig;
    const CausalMechanism& m;
    std::map<std::string, std::string> vars;
    Diagnostics diags;

    void report(const SourceSpan& span, std::string msg) {
        diags.push_back({span, std::move(msg), {}});
    }

    // Sort meet; `ok` is cleared when the sorts are incompatible.
    std::string meet(const std::string& a, const std::string& b, bool& ok) {
        ok = true;
        if (a == b) return a;
        if ((a == kNaturalSort && b == kTimeSort) || (a == kTimeSort && b == kNaturalSort))
            return kTimeSort;
        const Sort* sa = sig.find_sort(a);
        const Sort* sb = sig.find_sort(b);
        if (sa && sb) {
            auto subset = [](const Sort* x, const Sort* y) {
                for (const auto& v : x->values)
                    if (std::find(y->values.begin(), y->values.end(), v) == y->values.end())
                        return false;
                return true;
            };
            if (subset(sa, sb)) return a;
            if (subset(sb, sa)) return b;
        }
        ok = false;
        return a;
    }

    void bind(const std::string& var, const std::string& sort) {
        auto it = vars.find(var);
        if (it == vars.end()) {
            vars[var] = sort;
            return;
        }
        bool ok = true;
        std::string met = meet(it->second, sort, ok);
        if (!ok)
            report(m.span, "variable " + var + " of mechanism " + m.label_str() +
                               " occupies incompatible sorts '" + it->second + "' and '" + sort +
                               "'");
        else
            it->second = met;
    }

    void bind_expr(const Term& t, const std::string& sort) {
        switch (t.kind) {
            case Term::Kind::Variable: bind(t.name, sort); return;
            case Term::Kind::Binary:
                bind_expr(t.args[0], kNaturalSort);
                bind_expr(t.args[1], kNaturalSort);
                return;
            case Term::Kind::Func: {
                const FunctionSymbol* f = sig.find_symbol(t.name);
                for (std::size_t i = 0; i < t.args.size(); ++i) {
                    if (f && i < f->param_sorts.size())
                        bind_expr(t.args[i], f->param_sorts[i]);
                    else
                        bind_expr(t.args[i], kNaturalSort);
                }
                return;
            }
            default: return;
        }
    }

    void bind_atom(const Atom& a) {
        if (a.occurs_arg) {
            if (a.occurs_arg->kind == Term::Kind::Variable) {
                bind(a.occurs_arg->name, kActionSort);
            } else if (a.occurs_arg->kind == Term::Kind::Func) {
                const FunctionSymbol* f = sig.find_symbol(a.occurs_arg->name);
                if (!f || f->kind != SymbolKind::Action) {
                    report(a.span, "occurs requires an action, got '" + a.occurs_arg->name + "'");
                } else {
                    for (std::size_t i = 0;
                         i < a.occurs_arg->args.size() && i < f->param_sorts.size(); ++i) {
                        const Term& arg = a.occurs_arg->args[i];
                        if (arg.kind == Term::Kind::Variable) bind(arg.name, f->param_sorts[i]);
                    }
                }
            }
        } else {
            const FunctionSymbol* f = sig.find_symbol(a.symbol);
            if (!f) {
                report(a.span, "unknown symbol '" + a.symbol + "'");
                return;
            }
            if (a.args.size() != f->param_sorts.size()) {
                report(a.span, "symbol '" + a.symbol + "' takes " +
                                   std::to_string(f->param_sorts.size()) + " argument(s), got " +
                                   std::to_string(a.args.size()));
                return;
            }
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                const Term& arg = a.args[i];
                if (arg.kind == Term::Kind::Variable)
                    bind(arg.name, f->param_sorts[i]);
                else
                    bind_expr(arg, kNaturalSort);
            }
            if (a.value.kind == Term::Kind::Variable)
                bind(a.value.name, f->value_sort);
            else
                bind_expr(a.value, kNaturalSort);
            if ((f->time_dependent()) != a.time.has_value())
                report(a.span, std::string("symbol '") + a.symbol + "' " +
                                   (f->time_dependent() ? "requires" : "does not take") +
                                   " a time-step argument");
        }
        if (a.time) {
            if (a.time->kind == Term::Kind::Variable)
                bind(a.time->name, kTimeSort);
            else
                bind_expr(*a.time, kNaturalSort);
        }
    }

    void run() {
        if (!m.guard_var.empty()) bind(m.guard_var, kTimeSort);
        bind_atom(m.head);
        for (const auto& lit : m.body) {
            if (const Atom* a = std::get_if<Atom>(&lit)) {
                bind_atom(*a);
            } else {
                const auto& ar = std::get<ArithmeticAtom>(lit);
                bind_expr(ar.lhs, kNaturalSort);
                bind_expr(ar.rhs, kNaturalSort);
            }
        }
    }
};

struct Validator {
    const CausalTheory& th;
    Diagnostics diags;

    void report(const SourceSpan& span, std::string msg) {
        diags.push_back({span, std::move(msg), {}});
    }

    void check_sorts() {
        std::set<std::string> seen;
        for (const auto& s : th.signature.sorts) {
            if (reserved_sort(s.name)) report(s.span, "sort name '" + s.name + "' is built in");
            if (!seen.insert(s.name).second)
                report(s.span, "duplicate declaration of sort '" + s.name + "'");
            std::set<std::string> vals;
            for (const auto& v : s.values) {
                if (v == "true" || v == "false")
                    report(s.span, "constant '" + v + "' is reserved");
                if (!vals.insert(v).second)
                    report(s.span, "duplicate constant '" + v + "' in sort '" + s.name + "'");
            }
        }
    }

    void check_symbols() {
        std::set<std::string> seen;
        for (const auto& f : th.signature.symbols) {
            if (!seen.insert(f.name).second)
                report(f.span, "duplicate declaration of symbol '" + f.name + "'");
            if (f.name == "ab" || f.name == "occurs")
                report(f.span, "symbol name '" + f.name + "' is reserved");
            for (const auto& p : f.param_sorts)
                if (!reserved_sort(p) && !th.signature.find_sort(p))
                    report(f.span, "unknown sort '" + p + "' in declaration of '" + f.name + "'");
            if (f.kind == SymbolKind::Action && f.value_sort != kBoolSort)
                report(f.span, "action '" + f.name + "' must have Boolean value sort");
            if (!reserved_sort(f.value_sort) && !th.signature.find_sort(f.value_sort))
                report(f.span, "unknown value sort '" + f.value_sort + "' for '" + f.name + "'");
        }
    }

    // Offset of a time expression relative to the head variable: expr == var + c.
    std::optional<long> offset_from(const Term& t, const std::string& var) {
        if (t.kind == Term::Kind::Variable && t.name == var) return 0;
        if (t.kind == Term::Kind::Binary && (t.op == '+' || t.op == '-')) {
            if (t.args[0].kind == Term::Kind::Variable && t.args[0].name == var &&
                t.args[1].kind == Term::Kind::Number)
                return t.op == '+' ? t.args[1].number : -t.args[1].number;
        }
        return std::nullopt;
    }

    bool atom_is_action(const Atom& a) {
        if (a.occurs_arg) return true;
        const FunctionSymbol* f = th.signature.find_symbol(a.symbol);
        return f && f->kind == SymbolKind::Action;
    }

    void check_mechanism(const CausalMechanism& m) {
        const Atom& h = m.head;
        if (h.occurs_arg) {
            // trigger with an action-term head
        } else {
            const FunctionSymbol* f = th.signature.find_symbol(h.symbol);
            if (!f) {
                report(h.span, "unknown symbol '" + h.symbol + "' in head of " + m.label_str());
                return;
            }
            if (f->kind == SymbolKind::Static)
                report(h.span, "head of mechanism " + m.label_str() + " must be non-static");
        }
        if (h.neq) report(h.span, "mechanism head must use '='");
        if (h.time && h.time->kind != Term::Kind::Variable)
            report(h.span, "head time-step of " + m.label_str() + " must be a plain variable");
        if (!h.time && m.guard_var.empty())
            report(m.span, "mechanism " + m.label_str() +
                               " has a time-independent head and needs an 'at' time variable");

        VariableSorts vs = infer_variable_sorts(m, th.signature);
        for (auto& d : vs.diags) diags.push_back(std::move(d));
        for (const auto& p : m.label_params)
            if (!vs.sorts.count(p))
                report(m.span, "label parameter " + p + " of " + m.label_str() +
                                   " does not occur in the rule");

        // No abstract constants in background theory.
        auto scan_abstract = [&](const Term& t, auto&& self) -> void {
            if (t.kind == Term::Kind::AbstractConst)
                report(t.span, "abstract constant #" + t.name + " is not allowed in mechanisms");
            for (const auto& a : t.args) self(a, self);
        };
        auto scan_atom = [&](const Atom& a) {
            for (const auto& t : a.args) scan_abstract(t, scan_abstract);
            if (a.time) scan_abstract(*a.time, scan_abstract);
            scan_abstract(a.value, scan_abstract);
        };
        scan_atom(h);
        for (const auto& lit : m.body) {
            if (const Atom* a = std::get_if<Atom>(&lit))
                scan_atom(*a);
            else {
                scan_abstract(std::get<ArithmeticAtom>(lit).lhs, scan_abstract);
                scan_abstract(std::get<ArithmeticAtom>(lit).rhs, scan_abstract);
            }
        }

        // Statically decidable causality violations: body step = head var + c.
        if (h.time) {
            const std::string& hv = h.time->name;
            for (const auto& lit : m.body) {
                const Atom* a = std::get_if<Atom>(&lit);
                if (!a || !a->time) continue;
                auto off = offset_from(*a->time, hv);
                if (!off) continue;  // interpretation-dependent, rechecked per gamma
                bool action = atom_is_action(*a);
                if ((action && *off >= 0) || (!action && *off > 0))
                    report(a->span, "body atom of " + m.label_str() +
                                        (action ? " (action) must strictly precede the head step"
                                                : " must not follow the head step"));
            }
        }
    }

    void check_mechanisms() {
        std::set<std::string> labels;
        for (const auto& m : th.mechanisms) {
            if (!labels.insert(m.label).second)
                report(m.span, "duplicate mechanism label '" + m.label + "'");
            check_mechanism(m);
        }
    }

    void check_value(const SourceSpan& span, const FunctionSymbol& f, const Term& v) {
        switch (v.kind) {
            case Term::Kind::Number:
            case Term::Kind::AbstractConst:
                if (!th.signature.is_numeric_sort(f.value_sort))
                    report(span, "value of '" + f.name + "' must belong to sort '" + f.value_sort +
                                     "'");
                return;
            case Term::Kind::ObjectConst:
                if (f.value_sort == kActionSort) {
                    const FunctionSymbol* a = th.signature.find_symbol(v.name);
                    if (!a || a->kind != SymbolKind::Action)
                        report(span, "'" + v.name + "' is not an action");
                    return;
                }
                if (!th.signature.sort_has_value(f.value_sort, v.name))
                    report(span, "constant '" + v.name + "' is not in sort '" + f.value_sort + "'");
                return;
            case Term::Kind::Func: {
                if (f.value_sort == kActionSort) return;  // action instance value
                report(span, "functional value for '" + f.name + "'");
                return;
            }
            default: report(span, "ill-formed value for '" + f.name + "'");
        }
    }

    void check_ground_args(const SourceSpan& span, const FunctionSymbol& f,
                           const std::vector<Term>& args) {
        if (args.size() != f.param_sorts.size()) {
            report(span, "symbol '" + f.name + "' takes " + std::to_string(f.param_sorts.size()) +
                             " argument(s), got " + std::to_string(args.size()));
            return;
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
            const Term& a = args[i];
            const std::string& sort = f.param_sorts[i];
            if (a.kind == Term::Kind::ObjectConst) {
                if (sort == kActionSort) {
                    const FunctionSymbol* af = th.signature.find_symbol(a.name);
                    if (!af || af->kind != SymbolKind::Action)
                        report(a.span, "'" + a.name + "' is not an action");
                } else if (!th.signature.sort_has_value(sort, a.name)) {
                    report(a.span, "constant '" + a.name + "' is not in sort '" + sort + "'");
                }
            } else if (a.kind == Term::Kind::Number) {
                if (!th.signature.is_numeric_sort(sort))
                    report(a.span, "numeral argument where sort '" + sort + "' expected");
            } else if (a.kind == Term::Kind::Func) {
                if (sort != kActionSort) report(a.span, "unexpected functional argument");
            } else if (a.kind == Term::Kind::Variable) {
                report(a.span, "variables are not allowed in scenarios");
            }
        }
    }

    // Resolve a scenario action term to its declared symbol.
    const FunctionSymbol* action_of(const Term& t, const SourceSpan& span) {
        std::string name = t.kind == Term::Kind::Func || t.kind == Term::Kind::ObjectConst
                               ? t.name
                               : std::string();
        const FunctionSymbol* f = name.empty() ? nullptr : th.signature.find_symbol(name);
        if (!f || f->kind != SymbolKind::Action) {
            report(span, "'" + t.str() + "' is not an action");
            return nullptr;
        }
        std::vector<Term> args = t.kind == Term::Kind::Func ? t.args : std::vector<Term>{};
        check_ground_args(span, *f, args);
        return f;
    }

    void check_scenario() {
        const Scenario& sc = th.scenario;
        for (const auto& a : sc.statics) {
            const FunctionSymbol* f = th.signature.find_symbol(a.symbol);
            if (!f) {
                report(a.span, "unknown symbol '" + a.symbol + "'");
                continue;
            }
            if (f->kind != SymbolKind::Static)
                report(a.span, "scenario fact on non-static '" + a.symbol + "'");
            check_ground_args(a.span, *f, a.args);
            check_value(a.span, *f, a.value);
        }
        for (const auto& i : sc.inits) {
            const FunctionSymbol* f = th.signature.find_symbol(i.symbol);
            if (!f) {
                report(i.span, "unknown symbol '" + i.symbol + "'");
                continue;
            }
            if (f->kind != SymbolKind::InertialFluent)
                report(i.span, "init applies only to inertial fluents, '" + i.symbol + "' is a " +
                                   symbol_kind_name(f->kind));
            else {
                check_ground_args(i.span, *f, i.args);
                check_value(i.span, *f, i.value);
            }
        }
        for (const auto& d : sc.dos) action_of(d.action, d.span);
        for (const auto& o : sc.observations) {
            const FunctionSymbol* f = th.signature.find_symbol(o.symbol);
            if (!f) {
                report(o.span, "unknown symbol '" + o.symbol + "'");
                continue;
            }
            if (!f->is_fluent())
                report(o.span, "obs applies only to fluents, '" + o.symbol + "' is a " +
                                   symbol_kind_name(f->kind));
            else {
                check_ground_args(o.span, *f, o.args);
                check_value(o.span, *f, o.value);
            }
        }
        // Arithmetic atoms range over naturals: abstract constants, numerals
        // and numeric-valued static terms only.
        auto check_num = [&](const Term& t, auto&& self) -> void {
            switch (t.kind) {
                case Term::Kind::Number:
                case Term::Kind::AbstractConst: return;
                case Term::Kind::Binary:
                    self(t.args[0], self);
                    self(t.args[1], self);
                    return;
                case Term::Kind::Func: {
                    const FunctionSymbol* f = th.signature.find_symbol(t.name);
                    if (!f || f->kind != SymbolKind::Static ||
                        !th.signature.is_numeric_sort(f->value_sort))
                        report(t.span, "arithmetic over non-numeric term '" + t.str() + "'");
                    return;
                }
                default: report(t.span, "arithmetic over non-numeric term '" + t.str() + "'");
            }
        };
        for (const auto& c : sc.constraints) {
            check_num(c.lhs, check_num);
            check_num(c.rhs, check_num);
        }
    }

    Diagnostics run() {
        check_sorts();
        check_symbols();
        check_mechanisms();
        check_scenario();
        return std::move(diags);
    }
};

}  // namespace

VariableSorts infer_variable_sorts(const CausalMechanism& m, const Signature& sig) {
    SortInferencer inf{sig, m, {}, {}};
    inf.run();
    return {std::move(inf.vars), std::move(inf.diags)};
}

Diagnostics validate(const CausalTheory& theory) {
    Validator v{theory, {}};
    return v.run();
}

}  // namespace wcausal


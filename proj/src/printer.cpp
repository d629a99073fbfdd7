#include "wcausal/printer.hpp"

#include <sstream>

namespace wcausal {

namespace {

void print_sig(std::ostream& os, const FunctionSymbol& f, bool with_value_sort) {
    os << f.name;
    if (!f.param_sorts.empty()) {
        os << '(';
        for (std::size_t i = 0; i < f.param_sorts.size(); ++i) {
            if (i) os << ", ";
            os << f.param_sorts[i];
        }
        os << ')';
    }
    if (with_value_sort) os << " : " << f.value_sort;
}

std::string literal_str(const BodyLiteral& lit) {
    if (const Atom* a = std::get_if<Atom>(&lit)) return a->str();
    return std::get<ArithmeticAtom>(lit).str();
}

}  // namespace

std::string print_scenario(const Scenario& sc) {
    std::ostringstream os;
    os << "scenario\n";
    for (const auto& a : sc.statics) os << "  " << a.str() << ";\n";
    for (const auto& c : sc.constraints) os << "  " << c.str() << ";\n";
    for (const auto& i : sc.inits) os << "  " << i.str() << ";\n";
    for (const auto& d : sc.dos) os << "  " << d.str() << ";\n";
    for (const auto& o : sc.observations) os << "  " << o.str() << ";\n";
    return os.str();
}

std::string print_theory(const CausalTheory& th) {
    std::ostringstream os;
    for (const auto& s : th.signature.sorts) {
        os << "sorts " << s.name << " = {";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (i) os << ", ";
            os << s.values[i];
        }
        os << "};\n";
    }
    for (const auto& f : th.signature.symbols) {
        switch (f.kind) {
            case SymbolKind::Static:
                os << "statics ";
                print_sig(os, f, true);
                os << ";\n";
                break;
            case SymbolKind::Action:
                os << "actions ";
                print_sig(os, f, false);
                os << ";\n";
                break;
            case SymbolKind::InertialFluent:
                os << "fluents inertial ";
                print_sig(os, f, true);
                os << ";\n";
                break;
            case SymbolKind::TransientFluent:
                os << "fluents transient ";
                print_sig(os, f, true);
                os << ";\n";
                break;
            case SymbolKind::TimelessFluent:
                os << "fluents timeless ";
                print_sig(os, f, true);
                os << ";\n";
                break;
        }
    }
    for (const auto& m : th.mechanisms) {
        os << "mechanism " << m.label_str();
        bool head_timed = m.head.time.has_value();
        if (!head_timed && !m.guard_var.empty()) os << " at " << m.guard_var;
        os << ": " << m.head.str() << " <-\n    ";
        for (std::size_t i = 0; i < m.body.size(); ++i) {
            if (i) os << ", ";
            os << literal_str(m.body[i]);
        }
        os << ";\n";
    }
    bool empty_scenario = th.scenario.statics.empty() && th.scenario.constraints.empty() &&
                          th.scenario.inits.empty() && th.scenario.dos.empty() &&
                          th.scenario.observations.empty();
    if (!empty_scenario) os << "\n" << print_scenario(th.scenario);
    return os.str();
}

// ---------------------------------------------------------------------------
// Structural equality (spans ignored)
// ---------------------------------------------------------------------------

namespace {

bool eq(const Term& a, const Term& b) { return term_equal(a, b); }

bool eq(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i])) return false;
    return true;
}

bool eq(const Atom& a, const Atom& b) {
    if (a.symbol != b.symbol || a.neq != b.neq) return false;
    if (a.occurs_arg.has_value() != b.occurs_arg.has_value()) return false;
    if (a.occurs_arg && !eq(*a.occurs_arg, *b.occurs_arg)) return false;
    if (a.time.has_value() != b.time.has_value()) return false;
    if (a.time && !eq(*a.time, *b.time)) return false;
    return eq(a.args, b.args) && eq(a.value, b.value);
}

bool eq(const ArithmeticAtom& a, const ArithmeticAtom& b) {
    return a.rel == b.rel && eq(a.lhs, b.lhs) && eq(a.rhs, b.rhs);
}

bool eq(const BodyLiteral& a, const BodyLiteral& b) {
    if (a.index() != b.index()) return false;
    if (const Atom* aa = std::get_if<Atom>(&a)) return eq(*aa, std::get<Atom>(b));
    return eq(std::get<ArithmeticAtom>(a), std::get<ArithmeticAtom>(b));
}

}  // namespace

bool structurally_equal(const Scenario& a, const Scenario& b) {
    if (a.statics.size() != b.statics.size() || a.constraints.size() != b.constraints.size() ||
        a.inits.size() != b.inits.size() || a.dos.size() != b.dos.size() ||
        a.observations.size() != b.observations.size())
        return false;
    for (std::size_t i = 0; i < a.statics.size(); ++i)
        if (!eq(a.statics[i], b.statics[i])) return false;
    for (std::size_t i = 0; i < a.constraints.size(); ++i)
        if (!eq(a.constraints[i], b.constraints[i])) return false;
    for (std::size_t i = 0; i < a.inits.size(); ++i) {
        if (a.inits[i].symbol != b.inits[i].symbol || !eq(a.inits[i].args, b.inits[i].args) ||
            !eq(a.inits[i].value, b.inits[i].value))
            return false;
    }
    for (std::size_t i = 0; i < a.dos.size(); ++i) {
        if (a.dos[i].positive != b.dos[i].positive || !eq(a.dos[i].action, b.dos[i].action) ||
            !eq(a.dos[i].step, b.dos[i].step))
            return false;
    }
    for (std::size_t i = 0; i < a.observations.size(); ++i) {
        if (a.observations[i].symbol != b.observations[i].symbol ||
            !eq(a.observations[i].args, b.observations[i].args) ||
            !eq(a.observations[i].value, b.observations[i].value) ||
            !eq(a.observations[i].step, b.observations[i].step))
            return false;
    }
    return true;
}

bool structurally_equal(const CausalTheory& a, const CausalTheory& b) {
    if (a.signature.sorts.size() != b.signature.sorts.size() ||
        a.signature.symbols.size() != b.signature.symbols.size() ||
        a.mechanisms.size() != b.mechanisms.size())
        return false;
    for (std::size_t i = 0; i < a.signature.sorts.size(); ++i) {
        if (a.signature.sorts[i].name != b.signature.sorts[i].name ||
            a.signature.sorts[i].values != b.signature.sorts[i].values)
            return false;
    }
    for (std::size_t i = 0; i < a.signature.symbols.size(); ++i) {
        const auto& fa = a.signature.symbols[i];
        const auto& fb = b.signature.symbols[i];
        if (fa.name != fb.name || fa.param_sorts != fb.param_sorts ||
            fa.value_sort != fb.value_sort || fa.kind != fb.kind)
            return false;
    }
    for (std::size_t i = 0; i < a.mechanisms.size(); ++i) {
        const auto& ma = a.mechanisms[i];
        const auto& mb = b.mechanisms[i];
        if (ma.label != mb.label || ma.label_params != mb.label_params ||
            ma.guard_var != mb.guard_var || ma.body.size() != mb.body.size())
            return false;
        if (!eq(ma.head, mb.head)) return false;
        for (std::size_t j = 0; j < ma.body.size(); ++j)
            if (!eq(ma.body[j], mb.body[j])) return false;
    }
    return structurally_equal(a.scenario, b.scenario);
}

}  // namespace wcausal

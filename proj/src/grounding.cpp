#include "wcausal/grounding.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace wcausal {

long Interpretation::at(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw WError("no value for abstract constant '" + name + "'");
    return it->second;
}

std::string Interpretation::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : values) {
        if (!first) os << ", ";
        os << k << "=" << v;
        first = false;
    }
    return values.empty() ? std::string("{}") : os.str();
}

// ---------------------------------------------------------------------------
// Scenario term evaluation
// ---------------------------------------------------------------------------

namespace {

const Term* scenario_binding(const Scenario& sc, const Term& func) {
    for (const auto& a : sc.statics) {
        if (a.neq || a.symbol != func.name || a.args.size() != func.args.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!term_equal(a.args[i], func.args[i])) same = false;
        if (same && (a.value.kind == Term::Kind::AbstractConst ||
                     a.value.kind == Term::Kind::Number))
            return &a.value;
    }
    return nullptr;
}

}  // namespace

std::optional<long> eval_scenario_term(const Term& t, const Scenario& sc,
                                       const Interpretation& gamma) {
    switch (t.kind) {
        case Term::Kind::Number: return t.number;
        case Term::Kind::AbstractConst: {
            auto it = gamma.values.find(t.name);
            if (it == gamma.values.end()) return std::nullopt;
            return it->second;
        }
        case Term::Kind::Binary: {
            auto l = eval_scenario_term(t.args[0], sc, gamma);
            auto r = eval_scenario_term(t.args[1], sc, gamma);
            if (!l || !r) return std::nullopt;
            switch (t.op) {
                case '+': return *l + *r;
                case '-': return *l - *r;
                case '*': return *l * *r;
            }
            return std::nullopt;
        }
        case Term::Kind::Func: {
            if (const Term* b = scenario_binding(sc, t)) return eval_scenario_term(*b, sc, gamma);
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Interpretation enumeration
// ---------------------------------------------------------------------------

std::vector<Interpretation> enumerate_interpretations(
    const CausalTheory& theory, const Bounds& bounds,
    const std::map<std::string, long>& pinned) {
    const Scenario& sc = theory.scenario;
    std::vector<AbstractConstDecl> consts = sc.abstracts;
    std::sort(consts.begin(), consts.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    for (const auto& [k, v] : pinned)
        if (!sc.find_abstract(k))
            throw WError("unknown abstract constant '" + k + "' in gamma assignment");

    std::vector<Interpretation> out;
    Interpretation cur;
    auto satisfied = [&]() {
        for (const auto& c : sc.constraints) {
            auto l = eval_scenario_term(c.lhs, sc, cur);
            auto r = eval_scenario_term(c.rhs, sc, cur);
            if (!l || !r)
                throw WError("cannot evaluate constraint '" + c.str() +
                             "'; no value binding for a term");
            if (!rel_eval(c.rel, *l, *r)) return false;
        }
        return true;
    };
    // Nested ascending loops over the constants, last name varying fastest.
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == consts.size()) {
            if (satisfied()) out.push_back(cur);
            return;
        }
        const auto& decl = consts[idx];
        auto it = pinned.find(decl.name);
        long lo = 0;
        long hi = decl.time_valued ? bounds.horizon : bounds.duration_cap;
        if (it != pinned.end()) lo = hi = it->second;
        for (long v = lo; v <= hi; ++v) {
            cur.values[decl.name] = v;
            self(self, idx + 1);
        }
        cur.values.erase(decl.name);
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Atom table
// ---------------------------------------------------------------------------

std::string render_ground_atom(const GroundAtom& a) {
    auto term = [&](const std::string& sym, const std::vector<std::string>& args, int step) {
        std::string out = sym;
        if (!args.empty() || step >= 0) {
            out += '(';
            bool first = true;
            for (const auto& x : args) {
                if (!first) out += ',';
                out += x;
                first = false;
            }
            if (step >= 0) {
                if (!first) out += ',';
                out += std::to_string(step);
            }
            out += ')';
        }
        return out;
    };
    switch (a.kind) {
        case GroundAtom::Kind::Value: {
            std::string t = term(a.symbol, a.args, a.step);
            if (!a.neq && a.value == "true") return t;
            if (!a.neq && a.value == "false") return "neg " + t;
            return t + (a.neq ? "!=" : "=") + a.value;
        }
        case GroundAtom::Kind::Def: return "def(" + term(a.symbol, a.args, a.step) + ")";
        case GroundAtom::Kind::Do: {
            std::string inst = a.symbol;
            if (!a.args.empty()) {
                inst += '(';
                for (std::size_t i = 0; i < a.args.size(); ++i) {
                    if (i) inst += ',';
                    inst += a.args[i];
                }
                inst += ')';
            }
            return "do(" + std::string(a.do_positive ? "" : "neg ") + inst + "," +
                   std::to_string(a.step) + ")";
        }
        case GroundAtom::Kind::Obs:
            return "obs(" + term(a.symbol, a.args, -1) + "," + a.value + "," +
                   std::to_string(a.step) + ")";
        case GroundAtom::Kind::Init: {
            std::string t = term(a.symbol, a.args, -1);
            if (a.value == "true") return "init(" + t + ")";
            if (a.value == "false") return "init(neg " + t + ")";
            return "init(" + t + "=" + a.value + ")";
        }
    }
    return "?";
}

std::uint32_t AtomTable::intern(GroundAtom a) {
    a.text = render_ground_atom(a);
    auto it = index_.find(a.text);
    if (it != index_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(atoms_.size());
    index_.emplace(a.text, id);
    atoms_.push_back(std::move(a));
    return id;
}

std::uint32_t AtomTable::value_atom(const std::string& symbol, std::vector<std::string> args,
                                    int step, bool neq, const std::string& value) {
    GroundAtom a;
    a.kind = GroundAtom::Kind::Value;
    a.symbol = symbol;
    a.args = std::move(args);
    a.step = step;
    a.neq = neq;
    a.value = value;
    return intern(std::move(a));
}

std::optional<std::uint32_t> AtomTable::find(const std::string& text) const {
    auto it = index_.find(text);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string Provenance::str() const {
    switch (kind) {
        case Kind::Mechanism: return "mechanism " + label + "@" + std::to_string(step);
        case Kind::Axiom: return "axiom(" + std::to_string(axiom) + ")";
        case Kind::Fact: return "fact";
    }
    return "?";
}

std::string GroundRule::text(const AtomTable& atoms) const {
    std::string out;
    if (head >= 0) out = atoms.at(static_cast<std::uint32_t>(head)).text;
    if (pos.empty() && neg.empty()) {
        out += cr ? " :+." : ".";
        return out;
    }
    out += cr ? " :+ " : " :- ";
    bool first = true;
    for (auto a : pos) {
        if (!first) out += ", ";
        out += atoms.at(a).text;
        first = false;
    }
    for (auto a : neg) {
        if (!first) out += ", ";
        out += "not " + atoms.at(a).text;
        first = false;
    }
    out += ".";
    return out;
}

// ---------------------------------------------------------------------------
// Sort domains and action instances
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> numeric_range(long lo, long hi) {
    std::vector<std::string> out;
    for (long v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
    return out;
}

std::string render_instance(const std::string& name, const std::vector<std::string>& args) {
    if (args.empty()) return name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ")";
}

void product(const std::vector<std::vector<std::string>>& domains,
             const std::function<void(const std::vector<std::string>&)>& fn) {
    std::vector<std::string> tuple(domains.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == domains.size()) {
            fn(tuple);
            return;
        }
        for (const auto& v : domains[i]) {
            tuple[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

struct DomainOracle {
    const Signature& sig;
    const Bounds& bounds;

    std::vector<std::string> domain(const std::string& sort) const {
        if (sort == kBoolSort) return {"false", "true"};
        if (sort == kTimeSort) return numeric_range(0, bounds.horizon);
        if (sort == kNaturalSort)
            return numeric_range(0, bounds.horizon + bounds.duration_cap);
        if (sort == kActionSort) return action_instances(sig, bounds);
        const Sort* s = sig.find_sort(sort);
        if (!s) throw WError("unknown sort '" + sort + "'");
        return s->values;
    }
};

// "flipTo(right)" -> {"flipTo", {"right"}}; instances are flat renders.
std::pair<std::string, std::vector<std::string>> split_instance(const std::string& text) {
    auto paren = text.find('(');
    if (paren == std::string::npos) return {text, {}};
    std::string name = text.substr(0, paren);
    std::vector<std::string> args;
    std::string cur;
    for (std::size_t i = paren + 1; i + 1 < text.size() + 1; ++i) {
        char c = text[i];
        if (c == ',' ) {
            args.push_back(cur);
            cur.clear();
        } else if (c == ')') {
            break;
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) args.push_back(cur);
    return {name, args};
}

}  // namespace

std::vector<std::string> action_instances(const Signature& sig, const Bounds& bounds) {
    std::vector<std::string> out;
    DomainOracle oracle{sig, bounds};
    for (const auto& f : sig.symbols) {
        if (f.kind != SymbolKind::Action) continue;
        std::vector<std::vector<std::string>> domains;
        for (const auto& p : f.param_sorts) domains.push_back(oracle.domain(p));
        product(domains, [&](const std::vector<std::string>& tuple) {
            out.push_back(render_instance(f.name, tuple));
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

namespace {

struct Reducer {
    const CausalTheory& theory;
    const Interpretation& gamma;
    const Bounds& bounds;
    ConcreteTheory out;
    DomainOracle oracle;
    std::map<std::string, long> bindings;  // functional static term -> value
    std::map<std::string, std::string> subst;
    std::set<std::string> seen_rules;

    Reducer(const CausalTheory& t, const Interpretation& g, const Bounds& b)
        : theory(t), gamma(g), bounds(b), oracle{t.signature, b} {
        out.horizon = b.horizon;
        out.duration_cap = b.duration_cap;
    }

    std::optional<long> num_of(const std::string& s) const {
        if (s.empty()) return std::nullopt;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        return std::stol(s);
    }

    std::optional<long> ground_number(const Term& t) {
        switch (t.kind) {
            case Term::Kind::Number: return t.number;
            case Term::Kind::AbstractConst: {
                auto it = gamma.values.find(t.name);
                if (it == gamma.values.end()) return std::nullopt;
                return it->second;
            }
            case Term::Kind::Variable: {
                auto it = subst.find(t.name);
                if (it == subst.end()) return std::nullopt;
                return num_of(it->second);
            }
            case Term::Kind::Binary: {
                auto l = ground_number(t.args[0]);
                auto r = ground_number(t.args[1]);
                if (!l || !r) return std::nullopt;
                switch (t.op) {
                    case '+': return *l + *r;
                    case '-': return *l - *r;
                    case '*': return *l * *r;
                }
                return std::nullopt;
            }
            case Term::Kind::Func: {
                std::vector<std::string> args;
                for (const auto& a : t.args) {
                    auto v = ground_value(a);
                    if (!v) return std::nullopt;
                    args.push_back(*v);
                }
                auto it = bindings.find(render_instance(t.name, args));
                if (it == bindings.end()) return std::nullopt;
                return it->second;
            }
            default: return std::nullopt;
        }
    }

    std::optional<std::string> ground_value(const Term& t) {
        switch (t.kind) {
            case Term::Kind::ObjectConst: return t.name;
            case Term::Kind::Variable: {
                auto it = subst.find(t.name);
                if (it == subst.end()) return std::nullopt;
                return it->second;
            }
            case Term::Kind::Func: {
                const FunctionSymbol* f = theory.signature.find_symbol(t.name);
                if (f && f->kind == SymbolKind::Action) {
                    std::vector<std::string> args;
                    for (const auto& a : t.args) {
                        auto v = ground_value(a);
                        if (!v) return std::nullopt;
                        args.push_back(*v);
                    }
                    return render_instance(t.name, args);
                }
                auto n = ground_number(t);
                if (!n) return std::nullopt;
                return std::to_string(*n);
            }
            default: {
                auto n = ground_number(t);
                if (!n) return std::nullopt;
                return std::to_string(*n);
            }
        }
    }

    struct GroundedAtom {
        std::string symbol;
        std::vector<std::string> args;
        int step = -1;
        bool has_step = false;
        bool neq = false;
        std::string value;
        bool is_action = false;
    };

    // Grounds a mechanism atom; empty result means the instance is dropped
    // (unresolvable term or step outside the horizon), with the reason noted.
    std::optional<GroundedAtom> ground_atom(const Atom& a, std::string& why) {
        GroundedAtom g;
        if (a.occurs_arg) {
            auto inst = ground_value(*a.occurs_arg);
            if (!inst) {
                why = "unresolved action term in " + a.str();
                return std::nullopt;
            }
            auto [name, args] = split_instance(*inst);
            g.symbol = name;
            g.args = std::move(args);
            g.is_action = true;
        } else {
            g.symbol = a.symbol;
            const FunctionSymbol* f = theory.signature.find_symbol(a.symbol);
            g.is_action = f && f->kind == SymbolKind::Action;
            for (const auto& arg : a.args) {
                auto v = ground_value(arg);
                if (!v) {
                    why = "unresolved argument in " + a.str();
                    return std::nullopt;
                }
                g.args.push_back(*v);
            }
        }
        if (a.time) {
            auto s = ground_number(*a.time);
            if (!s) {
                why = "unresolved time-step in " + a.str();
                return std::nullopt;
            }
            if (*s < 0 || *s > bounds.horizon) {
                ++out.dropped_out_of_range;
                return std::nullopt;
            }
            g.step = static_cast<int>(*s);
            g.has_step = true;
        }
        g.neq = a.neq;
        auto v = ground_value(a.value);
        if (!v) {
            why = "unresolved value in " + a.str();
            return std::nullopt;
        }
        g.value = *v;
        return g;
    }

    void instantiate(const CausalMechanism& m) {
        // Concrete label from the declared parameters.
        std::vector<std::string> label_args;
        for (const auto& p : m.label_params) label_args.push_back(subst.at(p));
        std::string label = render_instance(m.label, label_args);

        long guard_step_l = 0;
        if (auto gs = num_of(subst.at(m.guard_var))) {
            guard_step_l = *gs;
        } else {
            out.dropped.push_back(label + ": non-numeric guard step");
            return;
        }
        if (guard_step_l < 0 || guard_step_l > bounds.horizon) return;
        int guard_step = static_cast<int>(guard_step_l);

        std::string why;
        auto head = ground_atom(m.head, why);
        if (!head) {
            if (!why.empty()) out.dropped.push_back(label + ": " + why);
            return;
        }
        std::vector<GroundedAtom> body;
        std::vector<int> action_steps, other_steps;
        for (const auto& lit : m.body) {
            if (const Atom* a = std::get_if<Atom>(&lit)) {
                auto g = ground_atom(*a, why);
                if (!g) {
                    if (!why.empty()) out.dropped.push_back(label + ": " + why);
                    return;
                }
                if (g->has_step) {
                    if (g->is_action)
                        action_steps.push_back(g->step);
                    else
                        other_steps.push_back(g->step);
                }
                body.push_back(std::move(*g));
            } else {
                const auto& ar = std::get<ArithmeticAtom>(lit);
                auto l = ground_number(ar.lhs);
                auto r = ground_number(ar.rhs);
                if (!l || !r) {
                    out.dropped.push_back(label + ": unresolved arithmetic " + ar.str());
                    return;
                }
                if (!rel_eval(ar.rel, *l, *r)) return;  // false arithmetic atom
            }
        }
        std::optional<int> head_step = head->has_step ? std::optional<int>(head->step)
                                                      : std::nullopt;
        CausalityCheck cc = check_causality_ground(action_steps, other_steps, head_step);
        if (!cc.ok) {
            ++out.dropped_causality;
            return;
        }

        GroundMechanism gm;
        gm.label = label;
        gm.step = guard_step;
        gm.head_step = head_step;
        gm.head = out.atoms.value_atom(head->symbol, head->args, head->has_step ? head->step : -1,
                                       head->neq, head->value);
        for (const auto& b : body)
            gm.body.push_back(out.atoms.value_atom(b.symbol, b.args, b.has_step ? b.step : -1,
                                                   b.neq, b.value));
        // Implicit defeasibility guard.
        gm.body.push_back(
            out.atoms.value_atom("ab", {label}, guard_step, false, "false"));

        std::string key = std::to_string(gm.head) + "|" + gm.label + "@" +
                          std::to_string(gm.step);
        std::vector<std::uint32_t> sorted_body = gm.body;
        std::sort(sorted_body.begin(), sorted_body.end());
        for (auto b : sorted_body) key += "," + std::to_string(b);
        if (seen_rules.insert(key).second) out.mechanisms.push_back(std::move(gm));
    }

    void ground_mechanism(const CausalMechanism& m) {
        VariableSorts vs = infer_variable_sorts(m, theory.signature);
        std::vector<std::pair<std::string, std::vector<std::string>>> domains;
        for (const auto& [var, sort] : vs.sorts) domains.push_back({var, oracle.domain(sort)});
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == domains.size()) {
                instantiate(m);
                return;
            }
            for (const auto& v : domains[i].second) {
                subst[domains[i].first] = v;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        subst.clear();
    }

    void reduce_scenario() {
        const Scenario& sc = theory.scenario;
        for (const auto& a : sc.statics) {
            std::vector<std::string> args;
            bool ok = true;
            for (const auto& t : a.args) {
                auto v = ground_value(t);
                if (!v) ok = false;
                else args.push_back(*v);
            }
            auto v = ground_value(a.value);
            if (!ok || !v) {
                out.dropped.push_back("static fact " + a.str() + ": unresolved term");
                continue;
            }
            out.scenario.static_facts.push_back(
                out.atoms.value_atom(a.symbol, args, -1, a.neq, *v));
        }
        for (const auto& i : sc.inits) {
            GroundAtom g;
            g.kind = GroundAtom::Kind::Init;
            g.symbol = i.symbol;
            bool ok = true;
            for (const auto& t : i.args) {
                auto v = ground_value(t);
                if (!v) ok = false;
                else g.args.push_back(*v);
            }
            auto v = ground_value(i.value);
            if (!ok || !v) {
                out.dropped.push_back("init " + i.str() + ": unresolved term");
                continue;
            }
            g.value = *v;
            out.scenario.init_facts.push_back(out.atoms.intern(std::move(g)));
        }
        for (const auto& d : sc.dos) {
            auto step = ground_number(d.step);
            auto inst = ground_value(d.action);
            if (!step || !inst) {
                out.dropped.push_back("do " + d.str() + ": unresolved term");
                continue;
            }
            if (*step < 0 || *step > bounds.horizon) {
                out.dropped.push_back("do " + d.str() + ": step " + std::to_string(*step) +
                                      " outside horizon");
                continue;
            }
            auto [name, args] = split_instance(*inst);
            GroundAtom g;
            g.kind = GroundAtom::Kind::Do;
            g.symbol = name;
            g.args = args;
            g.step = static_cast<int>(*step);
            g.do_positive = d.positive;
            out.scenario.do_facts.push_back(out.atoms.intern(std::move(g)));
        }
        for (const auto& o : sc.observations) {
            auto step = ground_number(o.step);
            auto v = ground_value(o.value);
            bool ok = true;
            std::vector<std::string> args;
            for (const auto& t : o.args) {
                auto av = ground_value(t);
                if (!av) ok = false;
                else args.push_back(*av);
            }
            if (!step || !v || !ok) {
                out.dropped.push_back("obs " + o.str() + ": unresolved term");
                continue;
            }
            if (*step < 0 || *step > bounds.horizon) {
                out.dropped.push_back("obs " + o.str() + ": step " + std::to_string(*step) +
                                      " outside horizon");
                continue;
            }
            GroundAtom g;
            g.kind = GroundAtom::Kind::Obs;
            g.symbol = o.symbol;
            g.args = args;
            g.step = static_cast<int>(*step);
            g.value = *v;
            out.scenario.obs_facts.push_back(out.atoms.intern(std::move(g)));
        }
    }

    ConcreteTheory run() {
        // Value bindings of numeric statics, used when functional terms occur
        // inside arithmetic (the value a term "stands for").
        for (const auto& a : theory.scenario.statics) {
            if (a.neq) continue;
            const FunctionSymbol* f = theory.signature.find_symbol(a.symbol);
            if (!f || !theory.signature.is_numeric_sort(f->value_sort)) continue;
            auto v = eval_scenario_term(a.value, theory.scenario, gamma);
            if (!v) continue;
            std::vector<std::string> args;
            bool ok = true;
            for (const auto& t : a.args) {
                auto av = ground_value(t);
                if (!av) ok = false;
                else args.push_back(*av);
            }
            if (ok) bindings[render_instance(a.symbol, args)] = *v;
        }
        for (const auto& c : theory.scenario.constraints) {
            auto l = eval_scenario_term(c.lhs, theory.scenario, gamma);
            auto r = eval_scenario_term(c.rhs, theory.scenario, gamma);
            if (!l || !r || !rel_eval(c.rel, *l, *r))
                throw WError("assignment " + gamma.str() + " does not satisfy constraint '" +
                             c.str() + "'");
        }
        for (const auto& m : theory.mechanisms) ground_mechanism(m);
        reduce_scenario();
        return std::move(out);
    }
};

}  // namespace

ConcreteTheory reduce(const CausalTheory& theory, const Interpretation& gamma,
                      const Bounds& bounds) {
    Reducer r(theory, gamma, bounds);
    return r.run();
}

// ---------------------------------------------------------------------------
// Program construction: general axioms over the ground universe
// ---------------------------------------------------------------------------

GroundProgram build_program(const CausalTheory& theory, const ConcreteTheory& concrete,
                            const Bounds& bounds) {
    const Signature& sig = theory.signature;
    GroundProgram p;
    p.atoms = concrete.atoms;
    p.horizon = concrete.horizon;
    DomainOracle oracle{sig, bounds};

    auto axiom = [&](int id) {
        Provenance pr;
        pr.kind = Provenance::Kind::Axiom;
        pr.axiom = id;
        return pr;
    };
    auto fact_prov = [] {
        Provenance pr;
        pr.kind = Provenance::Kind::Fact;
        return pr;
    };

    // Scenario facts.
    for (auto a : concrete.scenario.static_facts) p.rules.push_back({(std::int32_t)a, {}, {}, fact_prov(), false});
    for (auto a : concrete.scenario.init_facts) p.rules.push_back({(std::int32_t)a, {}, {}, fact_prov(), false});
    for (auto a : concrete.scenario.do_facts) p.rules.push_back({(std::int32_t)a, {}, {}, fact_prov(), false});
    for (auto a : concrete.scenario.obs_facts) p.rules.push_back({(std::int32_t)a, {}, {}, fact_prov(), false});

    // Mechanism instances.
    for (const auto& m : concrete.mechanisms) {
        Provenance pr;
        pr.kind = Provenance::Kind::Mechanism;
        pr.label = m.label;
        pr.step = m.step;
        p.rules.push_back({(std::int32_t)m.head, m.body, {}, pr, false});
    }

    // Functional-term universe with axioms (3), (4), (5), inertia (8)/(9).
    auto emit_term_axioms = [&](const std::string& symbol, const std::vector<std::string>& args,
                                int step, const std::vector<std::string>& values,
                                bool inertial) {
        GroundAtom def;
        def.kind = GroundAtom::Kind::Def;
        def.symbol = symbol;
        def.args = args;
        def.step = step;
        std::uint32_t def_id = p.atoms.intern(std::move(def));
        std::vector<std::uint32_t> eq_ids, ne_ids;
        for (const auto& v : values) {
            eq_ids.push_back(p.atoms.value_atom(symbol, args, step, false, v));
            ne_ids.push_back(p.atoms.value_atom(symbol, args, step, true, v));
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            p.rules.push_back({(std::int32_t)def_id, {eq_ids[i]}, {}, axiom(3), false});
            p.rules.push_back({-1, {ne_ids[i]}, {def_id}, axiom(4), false});
            p.rules.push_back({-1, {eq_ids[i], ne_ids[i]}, {}, axiom(4), false});
            for (std::size_t j = 0; j < values.size(); ++j)
                if (i != j)
                    p.rules.push_back({(std::int32_t)ne_ids[i], {eq_ids[j]}, {}, axiom(5), false});
        }
        if (inertial && step >= 1) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                std::uint32_t prev_eq =
                    p.atoms.value_atom(symbol, args, step - 1, false, values[i]);
                std::uint32_t prev_ne =
                    p.atoms.value_atom(symbol, args, step - 1, true, values[i]);
                p.rules.push_back(
                    {(std::int32_t)eq_ids[i], {prev_eq}, {ne_ids[i]}, axiom(8), false});
                p.rules.push_back(
                    {(std::int32_t)ne_ids[i], {prev_ne}, {eq_ids[i]}, axiom(9), false});
            }
        }
    };

    for (const auto& f : sig.symbols) {
        std::vector<std::vector<std::string>> domains;
        for (const auto& ps : f.param_sorts) domains.push_back(oracle.domain(ps));
        std::vector<std::string> values = oracle.domain(f.value_sort);
        bool inertial = f.kind == SymbolKind::InertialFluent;
        product(domains, [&](const std::vector<std::string>& args) {
            if (f.time_dependent()) {
                for (int s = 0; s <= bounds.horizon; ++s)
                    emit_term_axioms(f.name, args, s, values, inertial);
            } else {
                emit_term_axioms(f.name, args, -1, values, false);
            }
        });
    }

    // Action machinery: (10) effects of do, (11) closed world, (12) cr-rules.
    std::vector<std::string> bools = {"false", "true"};
    for (const auto& inst : action_instances(sig, bounds)) {
        auto [name, args] = split_instance(inst);
        for (int s = 0; s <= bounds.horizon; ++s) {
            std::uint32_t a_true = p.atoms.value_atom(name, args, s, false, "true");
            std::uint32_t a_false = p.atoms.value_atom(name, args, s, false, "false");
            GroundAtom dp;
            dp.kind = GroundAtom::Kind::Do;
            dp.symbol = name;
            dp.args = args;
            dp.step = s;
            dp.do_positive = true;
            GroundAtom dn = dp;
            dn.do_positive = false;
            std::uint32_t do_pos = p.atoms.intern(std::move(dp));
            std::uint32_t do_neg = p.atoms.intern(std::move(dn));
            p.rules.push_back({(std::int32_t)a_true, {do_pos}, {}, axiom(10), false});
            p.rules.push_back({(std::int32_t)a_false, {do_neg}, {}, axiom(10), false});
            p.rules.push_back({(std::int32_t)a_false, {}, {a_true}, axiom(11), false});
            p.rules.push_back({(std::int32_t)a_true, {}, {}, axiom(12), true});
        }
    }

    // ab universe: (3)-(5) plus defeasibility default (6) per instance.
    std::set<std::pair<std::string, int>> guards;
    for (const auto& m : concrete.mechanisms) guards.insert({m.label, m.step});
    for (const auto& [label, step] : guards) {
        emit_term_axioms("ab", {label}, step, bools, false);
        std::uint32_t ab_true = p.atoms.value_atom("ab", {label}, step, false, "true");
        std::uint32_t ab_false = p.atoms.value_atom("ab", {label}, step, false, "false");
        p.rules.push_back({(std::int32_t)ab_false, {}, {ab_true}, axiom(6), false});
    }

    // (13): a deliberate action with the opposite value defeats the trigger.
    for (const auto& m : concrete.mechanisms) {
        const GroundAtom& head = p.atoms.at(m.head);
        const FunctionSymbol* f = sig.find_symbol(head.symbol);
        if (!f || f->kind != SymbolKind::Action || head.neq) continue;
        GroundAtom d;
        d.kind = GroundAtom::Kind::Do;
        d.symbol = head.symbol;
        d.args = head.args;
        d.step = head.step;
        d.do_positive = head.value == "false";  // opposite of the head value
        std::uint32_t do_id = p.atoms.intern(std::move(d));
        std::uint32_t ab_true = p.atoms.value_atom("ab", {m.label}, m.step, false, "true");
        p.rules.push_back({(std::int32_t)ab_true, {do_id}, {}, axiom(13), false});
    }

    // (7): initial values.
    for (auto init_id : concrete.scenario.init_facts) {
        const GroundAtom& i = p.atoms.at(init_id);
        std::uint32_t at0 = p.atoms.value_atom(i.symbol, i.args, 0, false, i.value);
        p.rules.push_back({(std::int32_t)at0, {init_id}, {}, axiom(7), false});
    }

    // (15): observations hold in the model.
    for (auto obs_id : concrete.scenario.obs_facts) {
        const GroundAtom& o = p.atoms.at(obs_id);
        const FunctionSymbol* f = sig.find_symbol(o.symbol);
        int step = (f && f->time_dependent()) ? o.step : -1;
        std::uint32_t val = p.atoms.value_atom(o.symbol, o.args, step, false, o.value);
        p.rules.push_back({-1, {obs_id}, {val}, axiom(15), false});
    }

    // Proof axioms: the scenario's do-atoms and statics.
    for (auto a : concrete.scenario.do_facts) p.axiom_atoms.push_back(a);
    for (auto a : concrete.scenario.static_facts) p.axiom_atoms.push_back(a);

    if (p.atoms.size() > bounds.atom_cap)
        throw ResourceLimitError("ground atom universe (" + std::to_string(p.atoms.size()) +
                                 ") exceeds the resource cap (" +
                                 std::to_string(bounds.atom_cap) + ")");
    return p;
}

std::string dump_ground(const GroundProgram& program) {
    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(program.rules.size());
    for (const auto& r : program.rules)
        lines.push_back({r.prov.str(), r.text(program.atoms)});
    std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::string out;
    for (const auto& [prov, text] : lines) {
        out += text;
        out += "  % ";
        out += prov;
        out += '\n';
    }
    return out;
}

}  // namespace wcausal

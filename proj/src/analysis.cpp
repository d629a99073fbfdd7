#include "wcausal/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace wcausal {

TheoryGamma solve_gamma(const CausalTheory& theory, const Interpretation& gamma,
                        const Bounds& bounds) {
    TheoryGamma tg;
    tg.gamma = gamma;
    tg.concrete = reduce(theory, gamma, bounds);
    tg.program = build_program(theory, tg.concrete, bounds);
    std::vector<AnswerSet> models = answer_sets(tg.program, 2);
    if (models.empty())
        throw NotDeterministicError("no answer set under " + gamma.str());
    if (models.size() > 1)
        throw NotDeterministicError("several answer sets under " + gamma.str());
    tg.model = std::move(models.front());
    return tg;
}

// ---------------------------------------------------------------------------
// Changes
// ---------------------------------------------------------------------------

namespace {

std::string term_key(const GroundAtom& a, int step) {
    std::string out = a.symbol;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i];
    }
    out += ';';
    out += std::to_string(step);
    out += ')';
    return out;
}

}  // namespace

std::vector<Change> changes(const TheoryGamma& tg, const Signature& sig) {
    const AtomTable& atoms = tg.program.atoms;
    std::map<std::string, std::string> value_at;  // term@step -> value in the model
    for (auto id : tg.model.atoms) {
        const GroundAtom& a = atoms.at(id);
        if (a.kind == GroundAtom::Kind::Value && !a.neq) value_at[term_key(a, a.step)] = a.value;
    }
    std::vector<Change> out;
    for (auto id : tg.model.atoms) {
        const GroundAtom& a = atoms.at(id);
        if (a.kind != GroundAtom::Kind::Value || a.neq) continue;
        const FunctionSymbol* f = sig.find_symbol(a.symbol);
        if (!f) continue;  // ab guards and other machinery
        switch (f->kind) {
            case SymbolKind::Static: continue;
            case SymbolKind::Action:
            case SymbolKind::TransientFluent:
            case SymbolKind::TimelessFluent: out.push_back({id, f->kind}); continue;
            case SymbolKind::InertialFluent: {
                if (a.step <= 0) continue;  // no prior state exists at step 0
                auto it = value_at.find(term_key(a, a.step - 1));
                if (it == value_at.end() || it->second != a.value)
                    out.push_back({id, f->kind});
                continue;
            }
        }
    }
    std::sort(out.begin(), out.end(), [&](const Change& x, const Change& y) {
        const GroundAtom& ax = atoms.at(x.atom);
        const GroundAtom& ay = atoms.at(y.atom);
        if (ax.step != ay.step) return ax.step < ay.step;
        return ax.text < ay.text;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Proof search
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kProofCandidateCap = 200000;

// Elements are encoded as 64-bit keys: rules get the high bit.
inline std::uint64_t atom_key(std::uint32_t id) { return id; }
inline std::uint64_t rule_key(std::size_t idx) {
    return (1ULL << 32) | static_cast<std::uint64_t>(idx);
}
inline bool key_is_rule(std::uint64_t k) { return (k >> 32) != 0; }
inline std::uint32_t key_id(std::uint64_t k) { return static_cast<std::uint32_t>(k & 0xffffffffu); }

struct ProofSpace {
    const TheoryGamma& tg;
    std::vector<std::vector<std::size_t>> supports;  // usable rules per head atom
    std::vector<char> axiom;                         // do-atoms / statics of the scenario
    std::vector<char> in_model;

    explicit ProofSpace(const TheoryGamma& t) : tg(t) {
        std::size_t n = tg.program.atoms.size();
        supports.resize(n);
        axiom.assign(n, 0);
        in_model.assign(n, 0);
        for (auto a : tg.model.atoms) in_model[a] = 1;
        for (auto a : tg.program.axiom_atoms)
            if (in_model[a]) axiom[a] = 1;
        for (std::size_t i = 0; i < tg.program.rules.size(); ++i) {
            const GroundRule& r = tg.program.rules[i];
            if (r.cr || r.head < 0) continue;
            if (!in_model[static_cast<std::uint32_t>(r.head)]) continue;
            bool usable = true;
            for (auto p : r.pos)
                if (!in_model[p]) usable = false;
            for (auto nn : r.neg)
                if (in_model[nn]) usable = false;
            if (usable && !axiom[static_cast<std::uint32_t>(r.head)])
                supports[static_cast<std::uint32_t>(r.head)].push_back(i);
        }
    }

    // Greedy justified-ordering test over an element set; true iff every
    // element can be emitted with its justification in the prefix.
    bool orderable(const std::set<std::uint64_t>& elements) const {
        std::set<std::uint64_t> remaining = elements;
        std::set<std::uint32_t> avail_atoms;
        std::set<std::uint32_t> emitted_heads;
        bool progress = true;
        while (progress && !remaining.empty()) {
            progress = false;
            for (auto it = remaining.begin(); it != remaining.end();) {
                std::uint64_t k = *it;
                bool ok = false;
                if (key_is_rule(k)) {
                    const GroundRule& r = tg.program.rules[key_id(k)];
                    ok = true;
                    for (auto p : r.pos)
                        if (!avail_atoms.count(p)) ok = false;
                } else {
                    std::uint32_t a = key_id(k);
                    ok = axiom[a] || emitted_heads.count(a);
                }
                if (ok) {
                    if (key_is_rule(k)) {
                        const GroundRule& r = tg.program.rules[key_id(k)];
                        emitted_heads.insert(static_cast<std::uint32_t>(r.head));
                    } else {
                        avail_atoms.insert(key_id(k));
                    }
                    it = remaining.erase(it);
                    progress = true;
                } else {
                    ++it;
                }
            }
        }
        return remaining.empty();
    }

    bool valid_set(const std::set<std::uint64_t>& elements,
                   const std::vector<std::uint32_t>& targets) const {
        for (auto t : targets)
            if (!elements.count(atom_key(t))) return false;
        return orderable(elements);
    }
};

struct CandidateEnumerator {
    const ProofSpace& space;
    std::vector<std::set<std::uint64_t>> candidates;

    void run(const std::vector<std::uint32_t>& targets) {
        std::vector<int> choice(space.tg.program.atoms.size(), -2);  // -2 undecided, -1 axiom
        std::vector<std::uint32_t> pending(targets.begin(), targets.end());
        dfs(choice, pending);
    }

    void dfs(std::vector<int>& choice, std::vector<std::uint32_t> pending) {
        while (!pending.empty()) {
            std::uint32_t a = pending.back();
            pending.pop_back();
            if (choice[a] != -2) continue;
            if (space.axiom[a]) {
                choice[a] = -1;
                continue;
            }
            const auto& sup = space.supports[a];
            if (sup.empty()) return;  // underivable: dead branch
            if (sup.size() == 1) {
                choice[a] = 0;
                for (auto p : space.tg.program.rules[sup[0]].pos) pending.push_back(p);
                continue;
            }
            for (std::size_t i = 0; i < sup.size(); ++i) {
                std::vector<int> branch_choice = choice;
                std::vector<std::uint32_t> branch_pending = pending;
                branch_choice[a] = static_cast<int>(i);
                for (auto p : space.tg.program.rules[sup[i]].pos) branch_pending.push_back(p);
                dfs(branch_choice, std::move(branch_pending));
            }
            return;
        }
        // Collect the closure as an element set.
        std::set<std::uint64_t> elements;
        for (std::uint32_t a = 0; a < choice.size(); ++a) {
            if (choice[a] == -2) continue;
            elements.insert(atom_key(a));
            if (choice[a] >= 0) elements.insert(rule_key(space.supports[a][choice[a]]));
        }
        if (candidates.size() >= kProofCandidateCap)
            throw ResourceLimitError("proof search exceeded the candidate cap");
        candidates.push_back(std::move(elements));
    }
};

std::optional<int> rule_head_step(const GroundProgram& p, std::size_t rule) {
    const GroundRule& r = p.rules[rule];
    if (r.head < 0) return std::nullopt;
    int s = p.atoms.at(static_cast<std::uint32_t>(r.head)).step;
    if (s < 0) return std::nullopt;
    return s;
}

Proof proof_from_set(const TheoryGamma& tg, const ProofSpace& space,
                     const std::set<std::uint64_t>& elements) {
    Proof proof;
    for (auto k : elements) {
        if (key_is_rule(k)) {
            std::size_t idx = key_id(k);
            proof.rule_elements.push_back(idx);
            const GroundRule& r = tg.program.rules[idx];
            if (r.prov.kind == Provenance::Kind::Mechanism) {
                MechanismUse use;
                use.label = r.prov.label;
                use.step = r.prov.step;
                use.key = r.prov.label + "@" + std::to_string(r.prov.step);
                use.head_step = rule_head_step(tg.program, idx);
                proof.mechanisms.push_back(std::move(use));
            }
        } else {
            std::uint32_t a = key_id(k);
            proof.atom_elements.push_back(a);
            if (tg.program.atoms.at(a).kind == GroundAtom::Kind::Do) proof.do_atoms.push_back(a);
        }
    }
    std::sort(proof.atom_elements.begin(), proof.atom_elements.end());
    std::sort(proof.rule_elements.begin(), proof.rule_elements.end());
    std::sort(proof.do_atoms.begin(), proof.do_atoms.end());
    std::sort(proof.mechanisms.begin(), proof.mechanisms.end(),
              [](const MechanismUse& a, const MechanismUse& b) { return a.key < b.key; });
    for (const auto& m : proof.mechanisms) proof.mechanism_keys.push_back(m.key);

    // Canonical justified order: repeatedly emit the smallest-keyed element
    // whose justification is already in the prefix.
    struct Item {
        std::uint64_t key;
        int step;
        std::string text;
        bool emitted = false;
    };
    std::vector<Item> items;
    for (auto k : elements) {
        Item it;
        it.key = k;
        if (key_is_rule(k)) {
            const GroundRule& r = tg.program.rules[key_id(k)];
            auto hs = rule_head_step(tg.program, key_id(k));
            it.step = hs ? *hs : -1;
            it.text = r.text(tg.program.atoms) + "   [" + r.prov.str() + "]";
        } else {
            const GroundAtom& a = tg.program.atoms.at(key_id(k));
            it.step = a.step;
            it.text = a.text;
        }
        items.push_back(std::move(it));
    }
    std::set<std::uint32_t> avail, heads;
    for (std::size_t done = 0; done < items.size(); ++done) {
        std::size_t best = items.size();
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i].emitted) continue;
            bool ok;
            if (key_is_rule(items[i].key)) {
                const GroundRule& r = tg.program.rules[key_id(items[i].key)];
                ok = true;
                for (auto p : r.pos)
                    if (!avail.count(p)) ok = false;
            } else {
                std::uint32_t a = key_id(items[i].key);
                ok = space.axiom[a] || heads.count(a);
            }
            if (!ok) continue;
            if (best == items.size() || items[i].step < items[best].step ||
                (items[i].step == items[best].step && items[i].text < items[best].text))
                best = i;
        }
        if (best == items.size()) break;  // unreachable for valid sets
        items[best].emitted = true;
        if (key_is_rule(items[best].key)) {
            const GroundRule& r = tg.program.rules[key_id(items[best].key)];
            heads.insert(static_cast<std::uint32_t>(r.head));
        } else {
            avail.insert(key_id(items[best].key));
        }
        proof.elements.push_back(items[best].text);
    }
    return proof;
}

std::vector<Proof> enumerate_proofs(const TheoryGamma& tg,
                                    const std::vector<std::uint32_t>& targets) {
    ProofSpace space(tg);
    for (auto t : targets)
        if (!space.in_model[t])
            throw TargetNotInModelError("target atom '" + tg.program.atoms.at(t).text +
                                        "' is not in the answer set");
    CandidateEnumerator en{space, {}};
    en.run(targets);

    // Reject unorderable closures (cyclic support choices) and deduplicate.
    std::vector<std::set<std::uint64_t>> valid;
    std::set<std::vector<std::uint64_t>> seen;
    for (auto& c : en.candidates) {
        if (!space.valid_set(c, targets)) continue;
        std::vector<std::uint64_t> key(c.begin(), c.end());
        if (seen.insert(key).second) valid.push_back(std::move(c));
    }
    // One representative per (do-atom set, mechanism set) class: proofs that
    // differ only in inertia and other axiom plumbing are the same
    // derivation for every downstream notion.
    std::sort(valid.begin(), valid.end());
    std::map<std::string, std::set<std::uint64_t>> classes;
    for (const auto& c : valid) {
        std::string sig;
        for (auto k : c) {
            if (key_is_rule(k)) {
                const GroundRule& r = tg.program.rules[key_id(k)];
                if (r.prov.kind == Provenance::Kind::Mechanism)
                    sig += "m:" + r.prov.label + "@" + std::to_string(r.prov.step) + ";";
            } else if (tg.program.atoms.at(key_id(k)).kind == GroundAtom::Kind::Do) {
                sig += "d:" + tg.program.atoms.at(key_id(k)).text + ";";
            }
        }
        if (!classes.count(sig)) classes.emplace(std::move(sig), c);
    }
    std::vector<Proof> out;
    for (const auto& [sig, c] : classes) out.push_back(proof_from_set(tg, space, c));
    return out;
}

}  // namespace

std::vector<Proof> proofs(const TheoryGamma& tg, const std::vector<std::uint32_t>& targets) {
    return enumerate_proofs(tg, targets);
}

std::vector<Proof> tight_proofs(const std::vector<Proof>& all) {
    std::vector<Proof> out;
    for (const auto& p : all) {
        bool tighter_exists = false;
        for (const auto& q : all) {
            if (&q == &p) continue;
            bool subset = std::includes(p.mechanism_keys.begin(), p.mechanism_keys.end(),
                                        q.mechanism_keys.begin(), q.mechanism_keys.end());
            bool strict = subset && q.mechanism_keys.size() < p.mechanism_keys.size();
            if (strict) tighter_exists = true;
        }
        if (!tighter_exists) out.push_back(p);
    }
    return out;
}

bool proof_is_minimal(const TheoryGamma& tg, const Proof& proof,
                      const std::vector<std::uint32_t>& targets) {
    ProofSpace space(tg);
    std::set<std::uint64_t> elements;
    for (auto a : proof.atom_elements) elements.insert(atom_key(a));
    for (auto r : proof.rule_elements) elements.insert(rule_key(r));
    if (!space.valid_set(elements, targets)) return false;
    for (auto k : elements) {
        std::set<std::uint64_t> reduced = elements;
        reduced.erase(k);
        if (space.valid_set(reduced, targets)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

std::string CausalChain::render(const AtomTable& atoms) const {
    std::vector<std::pair<int, std::string>> dos;
    for (auto d : do_atoms) dos.push_back({atoms.at(d).step, atoms.at(d).text});
    std::sort(dos.begin(), dos.end());
    std::vector<std::pair<std::pair<int, std::string>, std::string>> mechs;
    for (const auto& m : mechanisms) mechs.push_back({{m.step, m.label}, m.label});
    std::sort(mechs.begin(), mechs.end());
    std::string out;
    for (const auto& [s, t] : dos) {
        if (!out.empty()) out += ", ";
        out += t;
    }
    for (const auto& [k, label] : mechs) {
        if (!out.empty()) out += ", ";
        out += label;
    }
    if (!out.empty()) out += ", ";
    out += atoms.at(terminal).text;
    return out;
}

namespace {

std::vector<CausalChain> chains_from_tights(const TheoryGamma& tg,
                                            const std::vector<Proof>& tights, int start,
                                            std::uint32_t atom) {
    std::vector<CausalChain> out;
    std::set<std::string> seen;
    for (const auto& p : tights) {
        bool at_start = false;
        CausalChain ch;
        ch.start = start;
        ch.terminal = atom;
        for (auto d : p.do_atoms) {
            int s = tg.program.atoms.at(d).step;
            if (s == start) at_start = true;
            if (s >= start) ch.do_atoms.push_back(d);
        }
        if (!at_start) continue;
        for (const auto& m : p.mechanisms)
            if (!m.head_step || *m.head_step > start) ch.mechanisms.push_back(m);
        std::string key;
        for (auto d : ch.do_atoms) key += std::to_string(d) + ",";
        key += "|";
        for (const auto& m : ch.mechanisms) key += m.key + ",";
        if (seen.insert(key).second) out.push_back(std::move(ch));
    }
    return out;
}

}  // namespace

std::vector<CausalChain> causal_chains(const TheoryGamma& tg, int start, std::uint32_t atom) {
    std::vector<Proof> tights = tight_proofs(proofs(tg, {atom}));
    return chains_from_tights(tg, tights, start, atom);
}

bool more_informative(const CausalChain& a, const CausalChain& b) {
    if (a.start >= b.start) return false;
    for (auto d : b.do_atoms)
        if (!std::binary_search(a.do_atoms.begin(), a.do_atoms.end(), d)) return false;
    std::set<std::string> a_mechs;
    for (const auto& m : a.mechanisms) a_mechs.insert(m.key);
    for (const auto& m : b.mechanisms)
        if (!a_mechs.count(m.key)) return false;
    return a.terminal == b.terminal;
}

// ---------------------------------------------------------------------------
// Inflection points and causes
// ---------------------------------------------------------------------------

namespace {

CausalTheory truncate_scenario(const CausalTheory& theory, const Interpretation& gamma, int i) {
    CausalTheory out = theory;
    out.scenario.dos.clear();
    for (const auto& d : theory.scenario.dos) {
        auto s = eval_scenario_term(d.step, theory.scenario, gamma);
        if (s && *s <= i) out.scenario.dos.push_back(d);
    }
    return out;
}

std::vector<int> do_steps(const TheoryGamma& tg) {
    std::set<int> steps;
    for (auto d : tg.concrete.scenario.do_facts) steps.insert(tg.program.atoms.at(d).step);
    return {steps.begin(), steps.end()};
}

struct ChangeAnalysis {
    const CausalTheory& theory;
    const Bounds& bounds;
    const TheoryGamma& tg;
    std::uint32_t change_atom;
    std::vector<std::string>* notes;
    std::vector<Proof> tights;

    ChangeAnalysis(const CausalTheory& th, const Bounds& b, const TheoryGamma& t,
                   std::uint32_t atom, std::vector<std::string>* n)
        : theory(th), bounds(b), tg(t), change_atom(atom), notes(n) {
        tights = tight_proofs(proofs(tg, {change_atom}));
    }

    void note(std::string msg) {
        if (notes) notes->push_back(std::move(msg));
    }

    // Condition (a): a chain from i exists after dropping the later do-atoms.
    bool chain_in_truncated(int i) {
        CausalTheory trunc = truncate_scenario(theory, tg.gamma, i);
        TheoryGamma sub;
        sub.gamma = tg.gamma;
        sub.concrete = reduce(trunc, tg.gamma, bounds);
        sub.program = build_program(trunc, sub.concrete, bounds);
        std::vector<AnswerSet> models = answer_sets(sub.program, 2);
        if (models.empty()) {
            note("candidate " + std::to_string(i) + ": truncated theory has no answer set");
            return false;
        }
        if (models.size() > 1) {
            note("candidate " + std::to_string(i) +
                 ": truncated theory is not deterministic; candidate skipped");
            return false;
        }
        sub.model = std::move(models.front());
        auto id = sub.program.atoms.find(tg.program.atoms.at(change_atom).text);
        if (!id || !sub.model.contains(*id)) return false;
        std::vector<Proof> sub_tights = tight_proofs(proofs(sub, {*id}));
        return !chains_from_tights(sub, sub_tights, i, *id).empty();
    }

    std::vector<int> candidates() {
        std::vector<int> out;
        for (int i : do_steps(tg)) {
            if (chains_from_tights(tg, tights, i, change_atom).empty()) continue;  // (b)
            if (!chain_in_truncated(i)) continue;                                  // (a)
            out.push_back(i);
        }
        return out;
    }

    std::vector<int> inflections() {
        std::vector<int> cands = candidates();
        std::map<int, std::vector<CausalChain>> chains;
        for (int i : cands) chains[i] = chains_from_tights(tg, tights, i, change_atom);
        std::vector<int> out;
        for (int i : cands) {
            bool keep = false;
            for (const auto& ch : chains[i]) {
                bool dominated = false;
                for (int j : cands)
                    for (const auto& cj : chains[j])
                        if (more_informative(cj, ch)) dominated = true;
                if (!dominated) keep = true;
            }
            if (keep) out.push_back(i);
        }
        return out;
    }

    std::vector<CauseWitness> causes() {
        std::vector<CauseWitness> out;
        std::set<std::vector<std::uint32_t>> seen;
        for (int i : inflections()) {
            for (auto& ch : chains_from_tights(tg, tights, i, change_atom)) {
                std::vector<std::uint32_t> alpha = ch.do_atoms;
                if (alpha.empty()) continue;
                if (!seen.insert(alpha).second) continue;
                out.push_back({std::move(alpha), i, std::move(ch)});
            }
        }
        return out;
    }
};

}  // namespace

std::vector<int> candidate_inflection_points(const CausalTheory& theory, const Bounds& bounds,
                                             const TheoryGamma& tg, std::uint32_t change_atom,
                                             std::vector<std::string>* notes) {
    ChangeAnalysis ca(theory, bounds, tg, change_atom, notes);
    return ca.candidates();
}

std::vector<int> inflection_points(const CausalTheory& theory, const Bounds& bounds,
                                   const TheoryGamma& tg, std::uint32_t change_atom,
                                   std::vector<std::string>* notes) {
    ChangeAnalysis ca(theory, bounds, tg, change_atom, notes);
    return ca.inflections();
}

std::vector<CauseWitness> causes_in_gamma(const CausalTheory& theory, const Bounds& bounds,
                                          const TheoryGamma& tg, std::uint32_t change_atom,
                                          std::vector<std::string>* notes) {
    ChangeAnalysis ca(theory, bounds, tg, change_atom, notes);
    return ca.causes();
}

// ---------------------------------------------------------------------------
// Cross-interpretation cause reports
// ---------------------------------------------------------------------------

namespace {

std::string step_term_render(const Term& t) {
    if (t.kind == Term::Kind::AbstractConst) return t.name;
    return t.str();
}

std::string instance_render_of(const Term& action) {
    if (action.kind != Term::Kind::Func) return action.str();
    std::string out = action.name;
    if (!action.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < action.args.size(); ++i) {
            if (i) out += ',';
            out += action.args[i].str();
        }
        out += ')';
    }
    return out;
}

// Renders a ground do-atom symbolically through its scenario counterpart,
// e.g. do(a1,t1); falls back to the concrete text.
std::string symbolic_do(const CausalTheory& theory, const Interpretation& gamma,
                        const GroundAtom& d) {
    std::string inst = d.symbol;
    if (!d.args.empty()) {
        inst += '(';
        for (std::size_t i = 0; i < d.args.size(); ++i) {
            if (i) inst += ',';
            inst += d.args[i];
        }
        inst += ')';
    }
    for (const auto& sd : theory.scenario.dos) {
        if (sd.positive != d.do_positive) continue;
        if (instance_render_of(sd.action) != inst) continue;
        auto s = eval_scenario_term(sd.step, theory.scenario, gamma);
        if (!s || *s != d.step) continue;
        return "do(" + std::string(d.do_positive ? "" : "neg ") + inst + "," +
               step_term_render(sd.step) + ")";
    }
    return d.text;
}

std::string change_shape(const GroundAtom& a) {
    GroundAtom shape = a;
    shape.step = -1;
    return render_ground_atom(shape);
}

SymbolicCause symbolic_cause(const CausalTheory& theory, const TheoryGamma& tg,
                             const CauseWitness& w) {
    SymbolicCause out;
    for (auto d : w.do_atoms)
        out.do_atoms.push_back(symbolic_do(theory, tg.gamma, tg.program.atoms.at(d)));
    std::sort(out.do_atoms.begin(), out.do_atoms.end());
    // Inflection step, symbolically when a chain do-atom sits on it.
    out.inflection = std::to_string(w.inflection);
    for (auto d : w.chain.do_atoms) {
        const GroundAtom& ga = tg.program.atoms.at(d);
        if (ga.step != w.inflection) continue;
        std::string sym = symbolic_do(theory, tg.gamma, ga);
        auto comma = sym.rfind(',');
        auto paren = sym.rfind(')');
        if (comma != std::string::npos && paren != std::string::npos && comma < paren)
            out.inflection = sym.substr(comma + 1, paren - comma - 1);
        break;
    }
    // Chain: symbolic do-atoms, mechanism labels in firing order, terminal
    // without its step.
    std::vector<std::pair<int, std::string>> dos;
    for (auto d : w.chain.do_atoms)
        dos.push_back({tg.program.atoms.at(d).step,
                       symbolic_do(theory, tg.gamma, tg.program.atoms.at(d))});
    std::sort(dos.begin(), dos.end());
    std::vector<std::pair<std::pair<int, std::string>, std::string>> mechs;
    for (const auto& m : w.chain.mechanisms) mechs.push_back({{m.step, m.label}, m.label});
    std::sort(mechs.begin(), mechs.end());
    std::string chain;
    for (const auto& [s, t] : dos) {
        if (!chain.empty()) chain += ", ";
        chain += t;
    }
    for (const auto& [k, label] : mechs) {
        if (!chain.empty()) chain += ", ";
        chain += label;
    }
    chain += ", " + change_shape(tg.program.atoms.at(w.chain.terminal));
    out.chain = chain;
    return out;
}

bool pattern_matches(const ChangePattern& pat, const GroundAtom& a) {
    if (a.symbol != pat.symbol) return false;
    if (pat.args && a.args != *pat.args) return false;
    if (pat.step && a.step != *pat.step) return false;
    if (pat.value && a.value != *pat.value) return false;
    return true;
}

}  // namespace

std::string SymbolicCause::key() const {
    std::string out = "{";
    for (std::size_t i = 0; i < do_atoms.size(); ++i) {
        if (i) out += ", ";
        out += do_atoms[i];
    }
    out += "}";
    return out;
}

CauseReport causes(const CausalTheory& theory, const ChangePattern& pattern, const Bounds& bounds,
                   const std::map<std::string, long>& pinned) {
    CauseReport report;
    std::vector<Interpretation> gammas = enumerate_interpretations(theory, bounds, pinned);
    std::map<std::string, ChangeGroup> groups;
    std::map<std::string, std::vector<std::set<std::string>>> group_keys;  // per-gamma cause keys

    for (const auto& gamma : gammas) {
        TheoryGamma tg;
        tg.gamma = gamma;
        tg.concrete = reduce(theory, gamma, bounds);
        tg.program = build_program(theory, tg.concrete, bounds);
        std::vector<AnswerSet> models = answer_sets(tg.program, 2);
        if (models.empty()) {
            ++report.unsatisfiable;
            continue;
        }
        if (models.size() > 1)
            throw NotDeterministicError("theory is not deterministic under " + gamma.str());
        tg.model = std::move(models.front());
        ++report.interpretations;

        for (const auto& ch : changes(tg, theory.signature)) {
            const GroundAtom& atom = tg.program.atoms.at(ch.atom);
            if (!pattern_matches(pattern, atom)) continue;
            std::string shape = change_shape(atom);
            ChangeGroup& group = groups[shape];
            group.shape = shape;
            ++group.matched;

            std::vector<CauseWitness> ws =
                causes_in_gamma(theory, bounds, tg, ch.atom, &report.notes);
            std::vector<SymbolicCause> sym;
            for (const auto& w : ws) sym.push_back(symbolic_cause(theory, tg, w));
            std::sort(sym.begin(), sym.end(),
                      [](const SymbolicCause& a, const SymbolicCause& b) {
                          return a.key() < b.key();
                      });
            std::set<std::string> keys;
            for (const auto& s : sym) keys.insert(s.key());
            group_keys[shape].push_back(std::move(keys));
            if (group.per_gamma.empty()) group.causes = sym;
            ChangeGroup::PerGamma pg;
            pg.gamma = gamma.str();
            pg.atom = atom.text;
            pg.causes = std::move(sym);
            group.per_gamma.push_back(std::move(pg));
        }
    }
    if (report.interpretations == 0)
        throw NoInterpretationError("no interpretation within bounds yields an answer set");

    for (auto& [shape, group] : groups) {
        const auto& keysets = group_keys[shape];
        group.uniform = true;
        for (const auto& ks : keysets)
            if (ks != keysets.front()) group.uniform = false;
        if (!group.uniform) group.causes.clear();
        report.groups.push_back(std::move(group));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Causal explanation
// ---------------------------------------------------------------------------

namespace {

bool strongly_consistent(const CausalTheory& theory, const Bounds& bounds,
                         const std::map<std::string, long>& pinned) {
    std::vector<Interpretation> gammas = enumerate_interpretations(theory, bounds, pinned);
    for (const auto& gamma : gammas) {
        ConcreteTheory concrete = reduce(theory, gamma, bounds);
        GroundProgram program = build_program(theory, concrete, bounds);
        if (!answer_sets(program, 1).empty()) return true;
    }
    return false;
}

}  // namespace

ExplainReport explain_observation(const CausalTheory& theory, const ObsAtom& obs,
                                  const Bounds& bounds,
                                  const std::map<std::string, long>& pinned) {
    ExplainReport report;
    if (obs.step.kind == Term::Kind::Number && obs.step.number > bounds.horizon)
        throw WError("observation step " + std::to_string(obs.step.number) +
                     " exceeds the horizon " + std::to_string(bounds.horizon));
    if (!strongly_consistent(theory, bounds, pinned))
        throw NoInterpretationError("the theory is not strongly consistent within bounds");

    CausalTheory with_obs = theory;
    with_obs.scenario.observations.push_back(obs);
    if (obs.step.kind == Term::Kind::AbstractConst &&
        !with_obs.scenario.find_abstract(obs.step.name))
        with_obs.scenario.abstracts.push_back({obs.step.name, true, obs.span});

    if (strongly_consistent(with_obs, bounds, pinned)) {
        report.unexpected = false;
        return report;
    }

    std::vector<Interpretation> gammas = enumerate_interpretations(with_obs, bounds, pinned);
    std::set<std::string> seen;
    std::map<std::string, std::set<int>> singleton_cause_steps;  // instance -> steps
    for (const auto& gamma : gammas) {
        ConcreteTheory concrete = reduce(with_obs, gamma, bounds);
        GroundProgram program = build_program(with_obs, concrete, bounds);
        std::vector<AbductiveSupport> supports = abductive_supports(program, bounds);
        for (const auto& support : supports) {
            if (support.cr_rules.empty()) continue;  // consistent already; nothing to explain
            CausalTheory su = with_obs;
            std::vector<std::string> support_render;
            for (auto idx : support.cr_rules) {
                const GroundAtom& head =
                    program.atoms.at(static_cast<std::uint32_t>(program.rules[idx].head));
                DoAtom d;
                std::vector<Term> args;
                for (const auto& a : head.args) args.push_back(Term::make_const(a));
                d.action = Term::make_func(head.symbol, std::move(args));
                d.positive = true;
                d.step = Term::make_number(head.step);
                su.scenario.dos.push_back(d);
                GroundAtom as_do;
                as_do.kind = GroundAtom::Kind::Do;
                as_do.symbol = head.symbol;
                as_do.args = head.args;
                as_do.step = head.step;
                support_render.push_back(render_ground_atom(as_do));
            }
            std::sort(support_render.begin(), support_render.end());

            TheoryGamma tg;
            tg.gamma = gamma;
            tg.concrete = reduce(su, gamma, bounds);
            tg.program = build_program(su, tg.concrete, bounds);
            std::vector<AnswerSet> models = answer_sets(tg.program, 2);
            if (models.size() != 1)
                throw AssumptionViolatedError(
                    "support-augmented scenario does not have exactly one answer set");
            tg.model = std::move(models.front());

            // Last change of the observed fluent to the observed value that
            // precedes step i+1.
            const FunctionSymbol* f = theory.signature.find_symbol(obs.symbol);
            std::optional<std::uint32_t> target;
            int best_step = -2;
            auto obs_step = eval_scenario_term(obs.step, su.scenario, gamma);
            std::vector<std::string> obs_args;
            for (const auto& a : obs.args) obs_args.push_back(a.str());
            for (const auto& ch : changes(tg, theory.signature)) {
                const GroundAtom& a = tg.program.atoms.at(ch.atom);
                if (a.symbol != obs.symbol || a.args != obs_args) continue;
                if (a.value != obs.value.str()) continue;
                if (f && f->time_dependent()) {
                    if (!obs_step || a.step > *obs_step) continue;
                }
                if (a.step > best_step) {
                    best_step = a.step;
                    target = ch.atom;
                }
            }
            if (!target) {
                report.notes.push_back("support {" +
                                       [&] {
                                           std::string s;
                                           for (const auto& r : support_render) {
                                               if (!s.empty()) s += ", ";
                                               s += r;
                                           }
                                           return s;
                                       }() +
                                       "}: no matching change found");
                continue;
            }

            Explanation ex;
            ex.support = support_render;
            ex.change = tg.program.atoms.at(*target).text;
            std::vector<CauseWitness> ws =
                causes_in_gamma(su, bounds, tg, *target, &report.notes);
            for (const auto& w : ws) ex.causes.push_back(symbolic_cause(su, tg, w));
            std::sort(ex.causes.begin(), ex.causes.end(),
                      [](const SymbolicCause& a, const SymbolicCause& b) {
                          return a.key() < b.key();
                      });

            std::string dedupe_key = ex.change + "|";
            for (const auto& s : ex.support) dedupe_key += s + ";";
            for (const auto& c : ex.causes) dedupe_key += c.key() + ";";
            if (!seen.insert(dedupe_key).second) continue;

            for (const auto& c : ex.causes) {
                if (c.do_atoms.size() != 1) continue;
                const std::string& d = c.do_atoms[0];
                // parse "do(inst,step)" with a concrete step
                auto comma = d.rfind(',');
                auto paren = d.rfind(')');
                if (d.rfind("do(", 0) != 0 || comma == std::string::npos || paren <= comma)
                    continue;
                std::string inst = d.substr(3, comma - 3);
                std::string step = d.substr(comma + 1, paren - comma - 1);
                if (!step.empty() &&
                    std::all_of(step.begin(), step.end(),
                                [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                    singleton_cause_steps[inst].insert(std::stoi(step));
            }
            report.explanations.push_back(std::move(ex));
        }
    }

    // Compact range rendering over consecutive steps of the same action.
    for (const auto& [inst, steps] : singleton_cause_steps) {
        std::vector<int> sorted(steps.begin(), steps.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[j] + 1) ++j;
            if (j > i)
                report.compact.push_back("do(" + inst + ",t), " + std::to_string(sorted[i]) +
                                         " <= t < " + std::to_string(sorted[j] + 1));
            i = j + 1;
        }
    }
    return report;
}

}  // namespace wcausal

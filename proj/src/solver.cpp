#include "wcausal/solver.hpp"

#include <algorithm>

namespace wcausal {

bool AnswerSet::contains(std::uint32_t id) const {
    return std::binary_search(atoms.begin(), atoms.end(), id);
}

std::vector<std::string> AnswerSet::literals(const AtomTable& table) const {
    std::vector<std::string> out;
    for (auto a : atoms)
        if (table.at(a).kind != GroundAtom::Kind::Def) out.push_back(table.at(a).text);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Three-valued propagation to a fixpoint, chronological branching on the
// first unassigned atom, and a Gelfond-Lifschitz reduct check at every full
// assignment. Complete but deliberately simple; the brute-force oracle in
// the test suite cross-checks it.
class StableSearch {
public:
    StableSearch(const GroundProgram& program, const std::vector<std::uint32_t>& extra_facts)
        : program_(program) {
        n_atoms_ = program.atoms.size();
        for (std::size_t i = 0; i < program.rules.size(); ++i) {
            const GroundRule& r = program.rules[i];
            if (r.cr) continue;
            add_rule(r.head, r.pos, r.neg);
        }
        for (auto f : extra_facts) add_rule(static_cast<std::int32_t>(f), {}, {});
        occ_pos_.resize(n_atoms_);
        occ_neg_.resize(n_atoms_);
        support_.assign(n_atoms_, 0);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            for (auto a : rules_[i].pos) occ_pos_[a].push_back(i);
            for (auto a : rules_[i].neg) occ_neg_[a].push_back(i);
            if (rules_[i].head >= 0) ++support_[rules_[i].head];
        }
    }

    std::vector<AnswerSet> run(std::size_t max_models) {
        State s;
        s.value.assign(n_atoms_, -1);
        s.pos_left.resize(rules_.size());
        s.neg_left.resize(rules_.size());
        s.dead.assign(rules_.size(), 0);
        s.support = support_;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            s.pos_left[i] = rules_[i].pos.size();
            s.neg_left[i] = rules_[i].neg.size();
        }
        // Atoms without any potentially supporting rule are false.
        bool conflict = false;
        for (std::uint32_t a = 0; a < n_atoms_; ++a)
            if (s.support[a] == 0 && !set(s, a, 0)) conflict = true;
        for (std::size_t i = 0; i < rules_.size() && !conflict; ++i)
            if (!s.dead[i] && s.pos_left[i] == 0 && s.neg_left[i] == 0 && !fire(s, i))
                conflict = true;
        if (!conflict) conflict = !flush(s);
        std::vector<AnswerSet> models;
        if (!conflict) search(std::move(s), models, max_models);
        return models;
    }

private:
    struct Rule {
        std::int32_t head;
        std::vector<std::uint32_t> pos;
        std::vector<std::uint32_t> neg;
    };

    struct State {
        std::vector<signed char> value;       // -1 unknown, 0 false, 1 true
        std::vector<std::uint32_t> pos_left;  // positive body atoms not yet true
        std::vector<std::uint32_t> neg_left;  // negated atoms not yet false
        std::vector<signed char> dead;        // body definitely falsified
        std::vector<std::uint32_t> support;   // live rules per head atom
        std::vector<std::uint32_t> queue;     // pending propagations (atom ids)
    };

    void add_rule(std::int32_t head, std::vector<std::uint32_t> pos,
                  std::vector<std::uint32_t> neg) {
        rules_.push_back({head, std::move(pos), std::move(neg)});
    }

    bool set(State& s, std::uint32_t atom, signed char val) {
        if (s.value[atom] == val) return true;
        if (s.value[atom] != -1) return false;
        s.value[atom] = val;
        s.queue.push_back(atom);
        return true;
    }

    bool kill(State& s, std::size_t rule) {
        if (s.dead[rule]) return true;
        s.dead[rule] = 1;
        std::int32_t h = rules_[rule].head;
        if (h >= 0) {
            if (--s.support[h] == 0 && s.value[h] == 1) return false;  // true but unsupported
            if (s.support[h] == 0 && s.value[h] == -1) {
                if (!set(s, static_cast<std::uint32_t>(h), 0)) return false;
            }
        }
        return true;
    }

    bool fire(State& s, std::size_t rule) {
        if (s.dead[rule]) return true;
        std::int32_t h = rules_[rule].head;
        if (h < 0) return false;  // satisfied constraint body
        return set(s, static_cast<std::uint32_t>(h), 1);
    }

    bool flush(State& s) {
        while (!s.queue.empty()) {
            std::uint32_t a = s.queue.back();
            s.queue.pop_back();
            signed char v = s.value[a];
            if (v == 1) {
                for (auto r : occ_neg_[a])
                    if (!kill(s, r)) return false;
                for (auto r : occ_pos_[a]) {
                    if (s.dead[r]) continue;
                    if (--s.pos_left[r] == 0 && s.neg_left[r] == 0 && !fire(s, r)) return false;
                }
                if (s.support[a] == 0) return false;
            } else {
                for (auto r : occ_pos_[a])
                    if (!kill(s, r)) return false;
                for (auto r : occ_neg_[a]) {
                    if (s.dead[r]) continue;
                    if (--s.neg_left[r] == 0 && s.pos_left[r] == 0 && !fire(s, r)) return false;
                }
            }
        }
        return true;
    }

    // Stability: M equals the least model of the reduct and violates no
    // constraint.
    bool stable(const std::vector<signed char>& value) const {
        std::vector<signed char> derived(n_atoms_, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : rules_) {
                bool neg_ok = true;
                for (auto a : r.neg)
                    if (value[a] == 1) neg_ok = false;
                if (!neg_ok) continue;
                bool pos_ok = true;
                for (auto a : r.pos)
                    if (!derived[a]) pos_ok = false;
                if (!pos_ok) continue;
                if (r.head < 0) {
                    // constraint with satisfied body: check against M directly
                    bool sat = true;
                    for (auto a : r.pos)
                        if (value[a] != 1) sat = false;
                    if (sat) return false;
                    continue;
                }
                if (!derived[r.head]) {
                    derived[r.head] = 1;
                    changed = true;
                }
            }
        }
        for (std::uint32_t a = 0; a < n_atoms_; ++a)
            if ((value[a] == 1) != (derived[a] == 1)) return false;
        // Constraints once more against the full assignment.
        for (const auto& r : rules_) {
            if (r.head >= 0) continue;
            bool sat = true;
            for (auto a : r.pos)
                if (value[a] != 1) sat = false;
            for (auto a : r.neg)
                if (value[a] == 1) sat = false;
            if (sat) return false;
        }
        return true;
    }

    void search(State s, std::vector<AnswerSet>& models, std::size_t max_models) {
        if (max_models && models.size() >= max_models) return;
        std::uint32_t pick = n_atoms_;
        for (std::uint32_t a = 0; a < n_atoms_; ++a)
            if (s.value[a] == -1) {
                pick = a;
                break;
            }
        if (pick == n_atoms_) {
            if (stable(s.value)) {
                AnswerSet m;
                for (std::uint32_t a = 0; a < n_atoms_; ++a)
                    if (s.value[a] == 1) m.atoms.push_back(a);
                models.push_back(std::move(m));
            }
            return;
        }
        for (signed char v : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
            if (max_models && models.size() >= max_models) return;
            State branch = s;
            if (set(branch, pick, v) && flush(branch))
                search(std::move(branch), models, max_models);
        }
    }

    const GroundProgram& program_;
    std::vector<Rule> rules_;
    std::vector<std::vector<std::size_t>> occ_pos_, occ_neg_;
    std::vector<std::uint32_t> support_;
    std::size_t n_atoms_ = 0;
};

}  // namespace

std::vector<AnswerSet> answer_sets(const GroundProgram& program, std::size_t max_models,
                                   const std::vector<std::uint32_t>& extra_facts) {
    StableSearch search(program, extra_facts);
    std::vector<AnswerSet> models = search.run(max_models);
    std::sort(models.begin(), models.end(),
              [](const AnswerSet& a, const AnswerSet& b) { return a.atoms < b.atoms; });
    return models;
}

AnswerSet unique_answer_set(const GroundProgram& program) {
    std::vector<AnswerSet> models = answer_sets(program, 2);
    if (models.empty()) throw NotDeterministicError("program has no answer set");
    if (models.size() > 1) throw NotDeterministicError("program has more than one answer set");
    return std::move(models.front());
}

std::vector<AbductiveSupport> abductive_supports(const GroundProgram& program,
                                                 const Bounds& bounds) {
    if (!answer_sets(program, 1).empty()) return {AbductiveSupport{}};

    std::vector<std::size_t> cr;
    for (std::size_t i = 0; i < program.rules.size(); ++i)
        if (program.rules[i].cr) cr.push_back(i);

    std::vector<AbductiveSupport> found;
    auto is_superset_of_found = [&](const std::vector<std::size_t>& set) {
        for (const auto& f : found) {
            bool contained = true;
            for (auto r : f.cr_rules)
                if (!std::binary_search(set.begin(), set.end(), r)) contained = false;
            if (contained) return true;
        }
        return false;
    };

    std::vector<std::size_t> combo;
    auto try_combo = [&]() {
        if (is_superset_of_found(combo)) return;
        std::vector<std::uint32_t> facts;
        for (auto r : combo) facts.push_back(static_cast<std::uint32_t>(program.rules[r].head));
        std::vector<AnswerSet> models = answer_sets(program, 2, facts);
        if (models.empty()) return;
        if (models.size() > 1)
            throw AssumptionViolatedError(
                "abductive support yields more than one answer set");
        found.push_back(AbductiveSupport{combo});
    };
    std::size_t max_k = std::min(bounds.support_cap, cr.size());
    for (std::size_t k = 1; k <= max_k; ++k) {
        auto rec = [&](auto&& self, std::size_t start, std::size_t left) -> void {
            if (left == 0) {
                try_combo();
                return;
            }
            for (std::size_t i = start; i + left <= cr.size(); ++i) {
                combo.push_back(cr[i]);
                self(self, i + 1, left - 1);
                combo.pop_back();
            }
        };
        rec(rec, 0, k);
    }
    return found;
}

DeterminismReport is_deterministic(const CausalTheory& theory, const Bounds& bounds,
                                   const std::map<std::string, long>& pinned,
                                   const ProgramMutator& mutator) {
    DeterminismReport report;
    std::vector<Interpretation> gammas = enumerate_interpretations(theory, bounds, pinned);
    for (const auto& gamma : gammas) {
        ConcreteTheory concrete = reduce(theory, gamma, bounds);
        GroundProgram program = build_program(theory, concrete, bounds);
        if (mutator) mutator(program);
        std::vector<AnswerSet> models = answer_sets(program, 2);
        if (models.empty()) {
            ++report.unsatisfiable;
        } else if (models.size() == 1) {
            ++report.interpretations;
        } else {
            report.deterministic = false;
            report.offending = gamma;
            report.offending_models = models.size();
            return report;
        }
    }
    if (report.interpretations == 0)
        throw NoInterpretationError("no interpretation within bounds yields an answer set");
    return report;
}

}  // namespace wcausal

#ifndef WCAUSAL_ANALYSIS_HPP
#define WCAUSAL_ANALYSIS_HPP

#include "wcausal/parser.hpp"
#include "wcausal/solver.hpp"

namespace wcausal {

// One interpretation's concrete program together with its unique answer set.
struct TheoryGamma {
    Interpretation gamma;
    ConcreteTheory concrete;
    GroundProgram program;
    AnswerSet model;
};

// Reduces, builds and solves; NotDeterministicError unless exactly one
// answer set exists.
TheoryGamma solve_gamma(const CausalTheory& theory, const Interpretation& gamma,
                        const Bounds& bounds);

// ---------------------------------------------------------------------------
// Changes
// ---------------------------------------------------------------------------

struct Change {
    std::uint32_t atom = 0;  // '='-atom of the model
    SymbolKind kind = SymbolKind::InertialFluent;
};

// Atoms newly holding in the unique answer set: every action, transient and
// time-independent atom of the model, and the inertial-fluent atoms whose
// predecessor value is absent or different. Sorted by step, then text.
std::vector<Change> changes(const TheoryGamma& tg, const Signature& sig);

// ---------------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------------

struct MechanismUse {
    std::string key;    // instance identity: label@step
    std::string label;  // concrete label, e.g. "m0(a1)"
    int step = 0;       // firing step
    std::optional<int> head_step;  // empty for time-independent heads
};

// A minimal derivation: ground rules, axiom atoms (do-atoms and statics of
// the reduced scenario) and derived atoms, in an order where every element
// is justified by its prefix. Proofs that differ only in non-mechanism
// plumbing are identified; one representative per (do-atom set, mechanism
// set) class is kept.
struct Proof {
    std::vector<std::string> elements;          // canonical justified order, rendered
    std::vector<std::uint32_t> atom_elements;   // sorted atom ids
    std::vector<std::size_t> rule_elements;     // sorted rule indices
    std::vector<std::uint32_t> do_atoms;        // sorted
    std::vector<MechanismUse> mechanisms;       // sorted by key
    std::vector<std::string> mechanism_keys;    // sorted
};

// All minimal proofs of the target atoms, deduplicated as above, in a
// canonical order. TargetNotInModelError when a target is not in the model.
std::vector<Proof> proofs(const TheoryGamma& tg, const std::vector<std::uint32_t>& targets);

// Keeps the proofs whose mechanism set is not a strict superset of another
// proof's mechanism set.
std::vector<Proof> tight_proofs(const std::vector<Proof>& all);

// Verifies minimality directly: every single-element deletion breaks the
// derivation conditions. Used by the test suites.
bool proof_is_minimal(const TheoryGamma& tg, const Proof& proof,
                      const std::vector<std::uint32_t>& targets);

// ---------------------------------------------------------------------------
// Causal chains and inflection points
// ---------------------------------------------------------------------------

struct CausalChain {
    int start = 0;
    std::vector<std::uint32_t> do_atoms;   // sorted; steps >= start, one at start
    std::vector<MechanismUse> mechanisms;  // head step after start, or timeless
    std::uint32_t terminal = 0;

    std::string render(const AtomTable& atoms) const;
};

// One chain per tight proof holding a do-atom at `start`; equivalent chains
// are identified.
std::vector<CausalChain> causal_chains(const TheoryGamma& tg, int start, std::uint32_t atom);

// True iff `a` starts earlier and contains every element of `b`.
bool more_informative(const CausalChain& a, const CausalChain& b);

// Steps with a chain to the change both in the full theory and in the
// theory truncated at the step (do-atoms after it removed).
std::vector<int> candidate_inflection_points(const CausalTheory& theory, const Bounds& bounds,
                                             const TheoryGamma& tg, std::uint32_t change_atom,
                                             std::vector<std::string>* notes = nullptr);

// Candidates with a chain no other candidate dominates.
std::vector<int> inflection_points(const CausalTheory& theory, const Bounds& bounds,
                                   const TheoryGamma& tg, std::uint32_t change_atom,
                                   std::vector<std::string>* notes = nullptr);

struct CauseWitness {
    std::vector<std::uint32_t> do_atoms;  // the deliberate cause, sorted
    int inflection = 0;
    CausalChain chain;
};

// Every do-atom set initiating a chain from an inflection point to the
// change.
std::vector<CauseWitness> causes_in_gamma(const CausalTheory& theory, const Bounds& bounds,
                                          const TheoryGamma& tg, std::uint32_t change_atom,
                                          std::vector<std::string>* notes = nullptr);

// ---------------------------------------------------------------------------
// Cross-interpretation reports
// ---------------------------------------------------------------------------

struct SymbolicCause {
    std::vector<std::string> do_atoms;  // e.g. {"do(a1,t1)"}, sorted
    std::string inflection;             // step render, symbolic when possible
    std::string chain;                  // e.g. "do(a1,t1), m0(a1), broken"

    std::string key() const;
};

struct ChangeGroup {
    std::string shape;  // change without its step, e.g. "broken" or "switch=right"
    bool uniform = true;
    std::vector<SymbolicCause> causes;  // causes shared by all matched interpretations
    std::size_t matched = 0;            // interpretations where the change occurs

    struct PerGamma {
        std::string gamma;
        std::string atom;
        std::vector<SymbolicCause> causes;
    };
    std::vector<PerGamma> per_gamma;
};

struct CauseReport {
    std::vector<ChangeGroup> groups;
    std::size_t interpretations = 0;  // assignments with a unique answer set
    std::size_t unsatisfiable = 0;    // assignments with no answer set
    std::vector<std::string> notes;
};

// Per-interpretation causes of every change matching the pattern, with the
// bounded-universal verdict: a cause is uniform when its instance is a cause
// under every interpretation where the change occurs.
CauseReport causes(const CausalTheory& theory, const ChangePattern& pattern, const Bounds& bounds,
                   const std::map<std::string, long>& pinned = {});

// ---------------------------------------------------------------------------
// Causal explanation of unexpected observations
// ---------------------------------------------------------------------------

struct Explanation {
    std::vector<std::string> support;   // added do-atoms, e.g. {"do(a1,0)"}
    std::vector<SymbolicCause> causes;  // causes of the last matching change
    std::string change;                 // the explained change atom
};

struct ExplainReport {
    bool unexpected = true;  // false: the observation already holds
    std::vector<Explanation> explanations;
    std::vector<std::string> compact;  // range renderings over consecutive steps
    std::vector<std::string> notes;
};

// Gate: the theory without the observation must be strongly consistent and
// become inconsistent with it; otherwise the report says not-unexpected.
// Each abductive support yields the cause of the last change of the observed
// fluent to the observed value before the observation step.
ExplainReport explain_observation(const CausalTheory& theory, const ObsAtom& obs,
                                  const Bounds& bounds,
                                  const std::map<std::string, long>& pinned = {});

}  // namespace wcausal

#endif

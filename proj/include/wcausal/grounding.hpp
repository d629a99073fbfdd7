#ifndef WCAUSAL_GROUNDING_HPP
#define WCAUSAL_GROUNDING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wcausal/model.hpp"

namespace wcausal {

struct WError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotDeterministicError : WError {
    using WError::WError;
};
struct NoInterpretationError : WError {
    using WError::WError;
};
struct AssumptionViolatedError : WError {
    using WError::WError;
};
struct ResourceLimitError : WError {
    using WError::WError;
};
struct TargetNotInModelError : WError {
    using WError::WError;
};

struct Bounds {
    int horizon = 10;
    int duration_cap = 4;
    std::size_t atom_cap = 50000;
    std::size_t support_cap = 2;  // max abductive-support cardinality searched
};

// Total map from the scenario's abstract constants to naturals under which
// every scenario arithmetic atom holds.
struct Interpretation {
    std::map<std::string, long> values;

    long at(const std::string& name) const;
    std::string str() const;
};

// All constraint-satisfying maps within bounds: time-valued constants range
// over [0, horizon], all others over [0, duration_cap]; pinned assignments
// are fixed verbatim (and may exceed the caps). Deterministic ascending
// order over constants sorted by name.
std::vector<Interpretation> enumerate_interpretations(
    const CausalTheory& theory, const Bounds& bounds,
    const std::map<std::string, long>& pinned = {});

// Evaluates a scenario arithmetic term under an interpretation; functional
// static terms resolve through their scenario value bindings. Empty result
// when no binding exists.
std::optional<long> eval_scenario_term(const Term& t, const Scenario& sc,
                                       const Interpretation& gamma);

// ---------------------------------------------------------------------------
// Ground atoms and rules
// ---------------------------------------------------------------------------

struct GroundAtom {
    enum class Kind { Value, Def, Do, Obs, Init };
    Kind kind = Kind::Value;
    std::string symbol;             // function or action name; "ab" for guards
    std::vector<std::string> args;  // rendered ground arguments
    int step = -1;                  // -1 for statics / time-independent
    bool neq = false;               // Value: relation is '!='
    std::string value;              // Value/Obs/Init value, rendered
    bool do_positive = true;        // Do polarity
    std::string text;               // canonical rendering, set at intern time
};

std::string render_ground_atom(const GroundAtom& a);

class AtomTable {
public:
    std::uint32_t intern(GroundAtom a);
    std::uint32_t value_atom(const std::string& symbol, std::vector<std::string> args, int step,
                             bool neq, const std::string& value);
    const GroundAtom& at(std::uint32_t id) const { return atoms_[id]; }
    std::optional<std::uint32_t> find(const std::string& text) const;
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<GroundAtom> atoms_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct Provenance {
    enum class Kind { Mechanism, Axiom, Fact };
    Kind kind = Kind::Fact;
    std::string label;  // mechanism instance label
    int step = -1;      // mechanism firing step
    int axiom = 0;      // axiom id in {3..13, 15}

    std::string str() const;
};

struct GroundRule {
    std::int32_t head = -1;  // -1: integrity constraint
    std::vector<std::uint32_t> pos;
    std::vector<std::uint32_t> neg;  // default-negated
    Provenance prov;
    bool cr = false;  // consistency-restoring rule (axiom 12)

    std::string text(const AtomTable& atoms) const;
};

struct GroundProgram {
    AtomTable atoms;
    std::vector<GroundRule> rules;
    int horizon = 0;
    // Atoms usable as proof axioms: scenario do-atoms and static facts.
    std::vector<std::uint32_t> axiom_atoms;
};

// ---------------------------------------------------------------------------
// gamma-reduction
// ---------------------------------------------------------------------------

struct GroundMechanism {
    std::string label;  // concrete, e.g. "m0(a1)"
    int step = 0;       // guard step
    std::uint32_t head = 0;
    std::vector<std::uint32_t> body;  // positive atoms, guard included
    std::optional<int> head_step;     // empty for time-independent heads
};

struct ConcreteScenario {
    std::vector<std::uint32_t> static_facts;
    std::vector<std::uint32_t> init_facts;
    std::vector<std::uint32_t> do_facts;
    std::vector<std::uint32_t> obs_facts;
};

struct ConcreteTheory {
    AtomTable atoms;
    std::vector<GroundMechanism> mechanisms;
    ConcreteScenario scenario;
    int horizon = 0;
    int duration_cap = 0;
    // Facts discarded during reduction, with reasons.
    std::vector<std::string> dropped;
    // Instances discarded for negative/out-of-horizon steps or causality.
    std::size_t dropped_out_of_range = 0;
    std::size_t dropped_causality = 0;
};

// Grounds mechanism variables over their sorts, substitutes the
// interpretation, evaluates arithmetic, and drops instances with false
// arithmetic atoms, causality violations, or steps outside [0, horizon].
ConcreteTheory reduce(const CausalTheory& theory, const Interpretation& gamma,
                      const Bounds& bounds);

// Emits the general axioms over the ground atom universe plus all scenario
// facts and mechanism instances.
GroundProgram build_program(const CausalTheory& theory, const ConcreteTheory& concrete,
                            const Bounds& bounds);

// One rule per line with provenance comments, sorted by provenance then rule
// text; stable across runs for diff-based testing.
std::string dump_ground(const GroundProgram& program);

// Declared action instances (symbol plus ground arguments), rendered.
std::vector<std::string> action_instances(const Signature& sig, const Bounds& bounds);

}  // namespace wcausal

#endif

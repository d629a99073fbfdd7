#ifndef WCAUSAL_SOLVER_HPP
#define WCAUSAL_SOLVER_HPP

#include <functional>
#include <optional>

#include "wcausal/grounding.hpp"

namespace wcausal {

struct AnswerSet {
    std::vector<std::uint32_t> atoms;  // true atoms, sorted by id

    bool contains(std::uint32_t id) const;
    // literal texts sorted alphabetically; Def atoms are bookkeeping and are
    // skipped
    std::vector<std::string> literals(const AtomTable& table) const;
};

// All stable models of the program's regular part (cr-rules are ignored
// here; they only participate in abductive support search). `extra_facts`
// are added as facts, used for regularized cr-rules and for monotone sanity
// checks. With max_models > 0 the search stops early, deterministically.
std::vector<AnswerSet> answer_sets(const GroundProgram& program, std::size_t max_models = 0,
                                   const std::vector<std::uint32_t>& extra_facts = {});

// The unique stable model; NotDeterministicError when there are zero or
// several.
AnswerSet unique_answer_set(const GroundProgram& program);

// A subset-minimal set of cr-rules whose regularization restores
// consistency. Indices refer to program.rules.
struct AbductiveSupport {
    std::vector<std::size_t> cr_rules;
};

// All subset-minimal supports, by increasing cardinality up to
// bounds.support_cap, ties broken by rule index. Returns a single empty
// support when the regular part is already consistent. AssumptionViolatedError
// when a support yields more than one answer set.
std::vector<AbductiveSupport> abductive_supports(const GroundProgram& program,
                                                 const Bounds& bounds);

using ProgramMutator = std::function<void(GroundProgram&)>;

struct DeterminismReport {
    bool deterministic = true;
    std::optional<Interpretation> offending;
    std::size_t offending_models = 0;
    std::size_t interpretations = 0;  // enumerated assignments with exactly one answer set
    std::size_t unsatisfiable = 0;    // enumerated assignments with no answer set
};

// True iff the reduced program has exactly one answer set for every
// interpretation within bounds; reports the first offending assignment
// otherwise. NoInterpretationError when no enumerated assignment yields an
// answer set. The mutator, when given, edits each ground program before
// solving; it exists for fault injection in tests.
DeterminismReport is_deterministic(const CausalTheory& theory, const Bounds& bounds,
                                   const std::map<std::string, long>& pinned = {},
                                   const ProgramMutator& mutator = nullptr);

}  // namespace wcausal

#endif

#ifndef WCAUSAL_PARSER_HPP
#define WCAUSAL_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>

#include "wcausal/model.hpp"

namespace wcausal {

// Parse errors are Diagnostics carrying the offending span and, where
// useful, the expected-token set.
using ParseError = Diagnostic;

struct ParseResult {
    CausalTheory theory;
    Diagnostics errors;
    bool ok() const { return errors.empty(); }
};

// Parses a full .w file: declarations followed by an optional scenario
// section. On a clean parse the theory is also validated and scenario
// shorthands are expanded, so a returned error-free theory is ready for
// grounding.
ParseResult parse_theory(std::string_view text, const std::string& filename = "<input>");

struct ScenarioParseResult {
    Scenario scenario;
    Diagnostics errors;
    bool ok() const { return errors.empty(); }
};

// Parses scenario statements against an existing signature; shorthands are
// expanded on success.
ScenarioParseResult parse_scenario(std::string_view text, const Signature& sig,
                                   const std::string& filename = "<input>");

// Single extended observation atom, e.g. "obs(broken, true, 2)"; used by the
// command line.
struct ObsParseResult {
    std::optional<ObsAtom> obs;
    Diagnostics errors;
};
ObsParseResult parse_obs_atom(std::string_view text, const Signature& sig);

// Change pattern: bare fluent name, or a ground atom like "broken(2)" or
// "switch(3) = right" or "arrived(dest)".
struct ChangePattern {
    std::string symbol;
    std::optional<std::vector<std::string>> args;  // rendered ground arguments
    std::optional<int> step;
    std::optional<std::string> value;
    std::string text;
};
struct PatternParseResult {
    std::optional<ChangePattern> pattern;
    Diagnostics errors;
};
PatternParseResult parse_change_pattern(std::string_view text, const Signature& sig);

}  // namespace wcausal

#endif

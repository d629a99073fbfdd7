#ifndef WCAUSAL_CLI_HPP
#define WCAUSAL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "wcausal/analysis.hpp"

namespace wcausal {

struct RunConfig {
    std::vector<std::string> inputs;
    std::string command;
    Bounds bounds;
    std::map<std::string, long> pinned;
    std::string format = "text";  // text | structured
    bool dump_ground = false;
    bool dump_models = false;
    std::string pattern;  // causes: change pattern
    std::string obs;      // explain: observation atom
};

// Exit codes: 0 success (including a not-unexpected observation),
// 1 validation failure, 2 I/O error, 3 semantic error (no models, not
// deterministic, no matching change), 4 resource cap exceeded.
enum ExitCode {
    kExitOk = 0,
    kExitValidation = 1,
    kExitIo = 2,
    kExitSemantic = 3,
    kExitResource = 4,
};

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Report renderers, shared by the CLI and the golden-file tests. Structured
// output is line-oriented with a versioned header and is byte-stable across
// runs.
std::string render_causes(const CauseReport& report, const RunConfig& config,
                          bool per_gamma_detail);
std::string render_explanations(const ExplainReport& report, const RunConfig& config);

struct ModelListing {
    std::string gamma;
    std::vector<std::vector<std::string>> models;  // sorted literal lists
};
std::string render_models(const std::vector<ModelListing>& listings, const RunConfig& config);

}  // namespace wcausal

#endif

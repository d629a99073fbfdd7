#include "wcausal/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wcausal/printer.hpp"

namespace wcausal {

namespace {

bool read_file(const std::string& path, std::string& out, std::string& error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        error = "cannot open '" + path + "'";
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool parse_gamma_option(const std::string& text, std::map<std::string, long>& out,
                        std::string& error) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            error = "gamma assignment '" + item + "' is not of the form name=value";
            return false;
        }
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        try {
            out[key] = std::stol(val);
        } catch (...) {
            error = "gamma assignment '" + item + "' has a non-numeric value";
            return false;
        }
    }
    return true;
}

struct LoadedTheory {
    CausalTheory theory;
    Diagnostics errors;
};

int load_theory(const RunConfig& config, LoadedTheory& loaded, std::ostream& err) {
    std::string text;
    for (const auto& path : config.inputs) {
        std::string chunk, io_error;
        if (!read_file(path, chunk, io_error)) {
            err << "error: " << io_error << "\n";
            return kExitIo;
        }
        text += chunk;
        if (!text.empty() && text.back() != '\n') text += '\n';
    }
    std::string label = config.inputs.size() == 1 ? config.inputs[0] : "<combined>";
    ParseResult parsed = parse_theory(text, label);
    loaded.theory = std::move(parsed.theory);
    loaded.errors = std::move(parsed.errors);
    return kExitOk;
}

void maybe_dump(const RunConfig& config, const CausalTheory& theory, std::ostream& out) {
    if (!config.dump_ground && !config.dump_models) return;
    std::vector<Interpretation> gammas =
        enumerate_interpretations(theory, config.bounds, config.pinned);
    for (const auto& gamma : gammas) {
        ConcreteTheory concrete = reduce(theory, gamma, config.bounds);
        GroundProgram program = build_program(theory, concrete, config.bounds);
        if (config.dump_ground) {
            out << "% ground program for gamma " << gamma.str() << "\n";
            out << dump_ground(program);
        }
        if (config.dump_models) {
            out << "% models for gamma " << gamma.str() << "\n";
            for (const auto& m : answer_sets(program))
                for (const auto& lit : m.literals(program.atoms)) out << lit << "\n";
        }
    }
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
    LoadedTheory loaded;
    int rc = load_theory(config, loaded, err);
    if (rc != kExitOk) return rc;
    if (!loaded.errors.empty()) {
        out << format_diagnostics(loaded.errors);
        return kExitValidation;
    }
    out << "ok: " << loaded.theory.mechanisms.size() << " mechanism(s), "
        << loaded.theory.scenario.dos.size() << " do-atom(s), "
        << loaded.theory.scenario.abstracts.size() << " abstract constant(s)\n";
    return kExitOk;
}

int cmd_models(const RunConfig& config, std::ostream& out, std::ostream& err) {
    LoadedTheory loaded;
    int rc = load_theory(config, loaded, err);
    if (rc != kExitOk) return rc;
    if (!loaded.errors.empty()) {
        err << format_diagnostics(loaded.errors);
        return kExitValidation;
    }
    maybe_dump(config, loaded.theory, out);
    std::vector<Interpretation> gammas =
        enumerate_interpretations(loaded.theory, config.bounds, config.pinned);
    std::vector<ModelListing> listings;
    bool any_model = false;
    for (const auto& gamma : gammas) {
        ConcreteTheory concrete = reduce(loaded.theory, gamma, config.bounds);
        GroundProgram program = build_program(loaded.theory, concrete, config.bounds);
        ModelListing listing;
        listing.gamma = gamma.str();
        for (const auto& m : answer_sets(program)) {
            listing.models.push_back(m.literals(program.atoms));
            any_model = true;
        }
        listings.push_back(std::move(listing));
    }
    out << render_models(listings, config);
    if (!any_model) {
        out << "no answer sets\n";
        return kExitSemantic;
    }
    return kExitOk;
}

int cmd_causes(const RunConfig& config, std::ostream& out, std::ostream& err) {
    LoadedTheory loaded;
    int rc = load_theory(config, loaded, err);
    if (rc != kExitOk) return rc;
    if (!loaded.errors.empty()) {
        err << format_diagnostics(loaded.errors);
        return kExitValidation;
    }
    PatternParseResult pat = parse_change_pattern(config.pattern, loaded.theory.signature);
    if (!pat.pattern) {
        err << format_diagnostics(pat.errors);
        return kExitValidation;
    }
    maybe_dump(config, loaded.theory, out);
    CauseReport report = causes(loaded.theory, *pat.pattern, config.bounds, config.pinned);
    out << render_causes(report, config, !config.pinned.empty());
    if (report.groups.empty()) {
        err << "error: pattern '" << config.pattern << "' matches no change\n";
        return kExitSemantic;
    }
    return kExitOk;
}

int cmd_explain(const RunConfig& config, std::ostream& out, std::ostream& err) {
    LoadedTheory loaded;
    int rc = load_theory(config, loaded, err);
    if (rc != kExitOk) return rc;
    if (!loaded.errors.empty()) {
        err << format_diagnostics(loaded.errors);
        return kExitValidation;
    }
    ObsParseResult obs = parse_obs_atom(config.obs, loaded.theory.signature);
    if (!obs.obs) {
        err << format_diagnostics(obs.errors);
        return kExitValidation;
    }
    maybe_dump(config, loaded.theory, out);
    ExplainReport report =
        explain_observation(loaded.theory, *obs.obs, config.bounds, config.pinned);
    out << render_explanations(report, config);
    return kExitOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"wcausal: causal theories, stable models and deliberate causes"};
    app.require_subcommand(1);

    RunConfig config;
    if (const char* cap = std::getenv("W_RESOURCE_CAP")) {
        try {
            config.bounds.atom_cap = static_cast<std::size_t>(std::stol(cap));
        } catch (...) {
        }
    }
    std::string gamma_text;
    std::vector<std::string> positionals;

    auto add_common = [&](CLI::App* cmd, const char* tail) {
        std::string desc = std::string("input .w file(s)") + (tail[0] ? " followed by " : "") + tail;
        cmd->add_option("args", positionals, desc)->required()->expected(-1);
        cmd->add_option("--horizon", config.bounds.horizon, "time-step bound")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--duration-cap", config.bounds.duration_cap,
                        "bound for non-time abstract constants");
        cmd->add_option("--support-cap", config.bounds.support_cap,
                        "abductive support cardinality bound");
        cmd->add_option("--gamma", gamma_text, "pinned assignments, name=value[,name=value...]");
        cmd->add_option("--format", config.format, "output format")
            ->check(CLI::IsMember({"text", "structured"}));
        cmd->add_flag("--dump-ground", config.dump_ground, "dump the ground program per gamma");
        cmd->add_flag("--dump-models", config.dump_models, "dump answer sets per gamma");
    };

    CLI::App* check = app.add_subcommand("check", "parse and validate");
    add_common(check, "");
    CLI::App* models = app.add_subcommand("models", "answer sets per interpretation");
    add_common(models, "");
    CLI::App* causes_cmd = app.add_subcommand("causes", "deliberate causes of a change");
    add_common(causes_cmd, "a change pattern");
    CLI::App* explain = app.add_subcommand("explain", "causal explanation of an observation");
    add_common(explain, "an observation, e.g. \"obs(broken,true,2)\"");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    bool needs_tail = causes_cmd->parsed() || explain->parsed();
    if (needs_tail) {
        if (positionals.size() < 2) {
            err << "error: expected input file(s) followed by "
                << (causes_cmd->parsed() ? "a change pattern" : "an observation") << "\n";
            return kExitValidation;
        }
        std::string tail = positionals.back();
        positionals.pop_back();
        if (causes_cmd->parsed())
            config.pattern = tail;
        else
            config.obs = tail;
    }
    config.inputs = positionals;

    std::string gamma_error;
    if (!parse_gamma_option(gamma_text, config.pinned, gamma_error)) {
        err << "error: " << gamma_error << "\n";
        return kExitValidation;
    }

    try {
        if (check->parsed()) {
            config.command = "check";
            return cmd_check(config, out, err);
        }
        if (models->parsed()) {
            config.command = "models";
            return cmd_models(config, out, err);
        }
        if (causes_cmd->parsed()) {
            config.command = "causes";
            return cmd_causes(config, out, err);
        }
        if (explain->parsed()) {
            config.command = "explain";
            return cmd_explain(config, out, err);
        }
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const WError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitValidation;
}

}  // namespace wcausal

#include <sstream>

#include "wcausal/cli.hpp"

namespace wcausal {

namespace {

std::string header(const RunConfig& config) {
    std::ostringstream os;
    os << "wcausal 1\n";
    os << "command: " << config.command << "\n";
    for (const auto& in : config.inputs) os << "input: " << in << "\n";
    if (!config.pattern.empty()) os << "pattern: " << config.pattern << "\n";
    if (!config.obs.empty()) os << "obs: " << config.obs << "\n";
    os << "horizon: " << config.bounds.horizon << "\n";
    os << "duration-cap: " << config.bounds.duration_cap << "\n";
    if (!config.pinned.empty()) {
        os << "gamma:";
        bool first = true;
        for (const auto& [k, v] : config.pinned) {
            os << (first ? " " : ", ") << k << "=" << v;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

void render_cause_block(std::ostringstream& os, const SymbolicCause& c,
                        const std::string& indent) {
    os << indent << "cause: " << c.key() << "\n";
    os << indent << "  inflection: " << c.inflection << "\n";
    os << indent << "  chain: " << c.chain << "\n";
}

}  // namespace

std::string render_causes(const CauseReport& report, const RunConfig& config,
                          bool per_gamma_detail) {
    std::ostringstream os;
    bool structured = config.format == "structured";
    if (structured) {
        os << header(config);
        os << "interpretations: " << report.interpretations << "\n";
        os << "unsatisfiable: " << report.unsatisfiable << "\n";
        for (const auto& g : report.groups) {
            os << "change: " << g.shape << "\n";
            os << "  matched: " << g.matched << "\n";
            os << "  verdict: " << (g.uniform ? "uniform" : "varies") << "\n";
            if (g.uniform)
                for (const auto& c : g.causes) render_cause_block(os, c, "  ");
            if (per_gamma_detail || !g.uniform) {
                for (const auto& pg : g.per_gamma) {
                    os << "  at: " << pg.gamma << "\n";
                    os << "    atom: " << pg.atom << "\n";
                    for (const auto& c : pg.causes) render_cause_block(os, c, "    ");
                }
            }
        }
        for (const auto& n : report.notes) os << "note: " << n << "\n";
        os << "end\n";
        return os.str();
    }

    os << "interpretations within horizon=" << config.bounds.horizon
       << ", duration-cap=" << config.bounds.duration_cap << ": " << report.interpretations;
    if (report.unsatisfiable) os << " (" << report.unsatisfiable << " without answer set)";
    os << "\n";
    if (report.groups.empty()) {
        os << "no change matches pattern '" << config.pattern << "'\n";
        return os.str();
    }
    for (const auto& g : report.groups) {
        os << "change " << g.shape << " (in " << g.matched << " of " << report.interpretations
           << " interpretations):\n";
        if (!g.uniform) {
            os << "  causes vary across interpretations:\n";
            for (const auto& pg : g.per_gamma) {
                os << "  at " << pg.gamma << " (" << pg.atom << "):\n";
                if (pg.causes.empty()) os << "    no deliberate cause\n";
                for (const auto& c : pg.causes) render_cause_block(os, c, "    ");
            }
            continue;
        }
        if (g.causes.empty()) {
            os << "  no deliberate cause\n";
        } else {
            for (const auto& c : g.causes) {
                os << "  cause " << c.key() << " for every interpretation with this change\n";
                os << "    inflection point: " << c.inflection << "\n";
                os << "    chain: " << c.chain << "\n";
            }
        }
        if (per_gamma_detail) {
            for (const auto& pg : g.per_gamma) {
                os << "  at " << pg.gamma << " (" << pg.atom << "):\n";
                if (pg.causes.empty()) os << "    no deliberate cause\n";
                for (const auto& c : pg.causes) render_cause_block(os, c, "    ");
            }
        }
    }
    for (const auto& n : report.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string render_explanations(const ExplainReport& report, const RunConfig& config) {
    std::ostringstream os;
    bool structured = config.format == "structured";
    if (structured) {
        os << header(config);
        os << "unexpected: " << (report.unexpected ? "yes" : "no") << "\n";
        for (const auto& ex : report.explanations) {
            os << "explanation:\n";
            os << "  support:";
            for (const auto& s : ex.support) os << " " << s;
            os << "\n";
            os << "  change: " << ex.change << "\n";
            for (const auto& c : ex.causes) render_cause_block(os, c, "  ");
        }
        for (const auto& c : report.compact) os << "compact: " << c << "\n";
        for (const auto& n : report.notes) os << "note: " << n << "\n";
        os << "end\n";
        return os.str();
    }

    if (!report.unexpected) {
        os << "observation is not unexpected: the scenario already accounts for it\n";
        return os.str();
    }
    if (report.explanations.empty()) {
        os << "no explanation found within bounds\n";
    }
    for (const auto& ex : report.explanations) {
        os << "explanation";
        for (const auto& s : ex.support) os << " " << s;
        os << " (change " << ex.change << ")\n";
        for (const auto& c : ex.causes) {
            os << "  cause " << c.key() << "\n";
            os << "    inflection point: " << c.inflection << "\n";
            os << "    chain: " << c.chain << "\n";
        }
    }
    for (const auto& c : report.compact) os << "compactly: " << c << "\n";
    for (const auto& n : report.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string render_models(const std::vector<ModelListing>& listings, const RunConfig& config) {
    std::ostringstream os;
    bool structured = config.format == "structured";
    if (structured) os << header(config);
    for (const auto& listing : listings) {
        if (structured) {
            os << "gamma: " << listing.gamma << "\n";
            os << "models: " << listing.models.size() << "\n";
            for (std::size_t i = 0; i < listing.models.size(); ++i) {
                os << "model: " << (i + 1) << "\n";
                for (const auto& lit : listing.models[i]) os << "  " << lit << "\n";
            }
        } else {
            os << "gamma " << listing.gamma << "\n";
            if (listing.models.empty()) os << "  no answer sets\n";
            for (std::size_t i = 0; i < listing.models.size(); ++i) {
                if (listing.models.size() > 1) os << "  answer set " << (i + 1) << ":\n";
                for (const auto& lit : listing.models[i]) os << "  " << lit << "\n";
            }
        }
    }
    if (structured) os << "end\n";
    return os.str();
}

}  // namespace wcausal

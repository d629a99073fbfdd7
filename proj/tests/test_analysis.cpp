#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wcausal/analysis.hpp"
#include "wcausal/printer.hpp"

using namespace wcausal;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CausalTheory load(const std::string& path) {
    ParseResult r = parse_theory(slurp(path), path);
    CAPTURE(format_diagnostics(r.errors));
    REQUIRE(r.ok());
    return std::move(r.theory);
}

Interpretation gamma_of(std::initializer_list<std::pair<const char*, long>> vals) {
    Interpretation g;
    for (const auto& [k, v] : vals) g.values[k] = v;
    return g;
}

std::uint32_t atom_id(const TheoryGamma& tg, const std::string& text) {
    auto id = tg.program.atoms.find(text);
    REQUIRE_MESSAGE(id, text);
    return *id;
}

ChangePattern pattern_for(const CausalTheory& th, const std::string& text) {
    PatternParseResult r = parse_change_pattern(text, th.signature);
    REQUIRE(r.pattern);
    return *r.pattern;
}

}  // namespace

TEST_CASE("suzy: broken becomes a change at the arrival step") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 1}, {"t2", 0}, {"d1", 1}, {"d2", 4}}), b);
    std::vector<Change> chs = changes(tg, th.signature);
    bool broken_change = false;
    for (const auto& c : chs) {
        const GroundAtom& a = tg.program.atoms.at(c.atom);
        if (a.symbol == "broken" && a.value == "true") {
            CHECK(a.step == 2);  // t1 + d1
            broken_change = true;
        }
        // the initial value set by init is not a change
        bool initial_broken = a.symbol == "broken" && a.step == 0;
        CHECK_FALSE(initial_broken);
    }
    CHECK(broken_change);
    // action atoms are changes by kind
    bool action_change = false;
    for (const auto& c : chs)
        if (c.kind == SymbolKind::Action) action_change = true;
    CHECK(action_change);
}

TEST_CASE("engineer: arrived(dest) is a change (time-independent fluent)") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    Interpretation g = gamma_of(
        {{"t3", 0}, {"t4", 1}, {"time2fork", 3}, {"time2dest.left", 5}, {"time2dest.right", 5}});
    TheoryGamma tg = solve_gamma(th, g, b);
    bool found = false;
    for (const auto& c : changes(tg, th.signature))
        if (tg.program.atoms.at(c.atom).text == "arrived(dest)") {
            found = true;
            CHECK(c.kind == SymbolKind::TimelessFluent);
        }
    CHECK(found);
}

TEST_CASE("scenario without actions or initial values has no fluent changes") {
    const char* text =
        "sorts person = {suzy};\n"
        "statics agent(action) : person;\n"
        "fluents inertial broken : boolean;\n"
        "actions a1;\n"
        "scenario\n"
        "agent(a1) = suzy;\n";
    ParseResult r = parse_theory(text);
    REQUIRE(r.ok());
    Bounds b;
    b.horizon = 3;
    TheoryGamma tg = solve_gamma(r.theory, {}, b);
    for (const auto& c : changes(tg, r.theory.signature)) {
        // closed-world action atoms are the only changes here
        const GroundAtom& a = tg.program.atoms.at(c.atom);
        CHECK(a.symbol == "a1");
        CHECK(a.value == "false");
    }
}

TEST_CASE("order2: both refuse, broken never changes within the horizon") {
    CausalTheory th = load("corpus/suzy_order2.w");
    Bounds b;
    b.horizon = 5;
    b.duration_cap = 3;
    for (const auto& g : enumerate_interpretations(th, b)) {
        TheoryGamma tg = solve_gamma(th, g, b);
        for (const auto& c : changes(tg, th.signature))
            CHECK(tg.program.atoms.at(c.atom).symbol != "broken");
    }
}

TEST_CASE("engineer proofs: two before the fork, one tight") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    b.horizon = 6;
    b.duration_cap = 3;
    // flip lands before the train reaches the fork
    Interpretation g = gamma_of(
        {{"t3", 0}, {"t4", 1}, {"time2fork", 3}, {"time2dest.left", 2}, {"time2dest.right", 2}});
    TheoryGamma tg = solve_gamma(th, g, b);
    std::uint32_t dest = atom_id(tg, "arrived(dest)");
    std::vector<Proof> all = proofs(tg, {dest});
    REQUIRE(all.size() == 2);
    std::vector<Proof> tight = tight_proofs(all);
    REQUIRE(tight.size() == 1);
    std::vector<std::string> labels;
    for (const auto& m : tight[0].mechanisms) labels.push_back(m.label);
    std::sort(labels.begin(), labels.end());
    CHECK(labels == std::vector<std::string>{"m1", "m2", "m4"});
    bool other_has_flip = false;
    for (const auto& p : all)
        for (const auto& m : p.mechanisms)
            if (m.label == "m3(right)") other_has_flip = true;
    CHECK(other_has_flip);
    // reported proofs are delete-one minimal
    for (const auto& p : all) CHECK(proof_is_minimal(tg, p, {dest}));
}

TEST_CASE("engineer proofs: only the inertia route after the fork") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    b.horizon = 6;
    b.duration_cap = 3;
    Interpretation g = gamma_of(
        {{"t3", 0}, {"t4", 4}, {"time2fork", 3}, {"time2dest.left", 2}, {"time2dest.right", 2}});
    TheoryGamma tg = solve_gamma(th, g, b);
    std::uint32_t dest = atom_id(tg, "arrived(dest)");
    std::vector<Proof> all = proofs(tg, {dest});
    REQUIRE(all.size() == 1);
    std::vector<std::string> labels;
    for (const auto& m : all[0].mechanisms) labels.push_back(m.label);
    std::sort(labels.begin(), labels.end());
    CHECK(labels == std::vector<std::string>{"m1", "m2", "m4"});
}

TEST_CASE("a do-atom target has the single one-element axiom proof") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 3;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 0}, {"t2", 0}, {"d1", 1}, {"d2", 2}}), b);
    std::uint32_t d = atom_id(tg, "do(a1,0)");
    std::vector<Proof> all = proofs(tg, {d});
    REQUIRE(all.size() == 1);
    CHECK(all[0].elements.size() == 1);
    CHECK(all[0].elements[0] == "do(a1,0)");
    CHECK(all[0].rule_elements.empty());
}

TEST_CASE("suzy has a single proof and chain through the throw") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 3;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 0}, {"t2", 0}, {"d1", 1}, {"d2", 2}}), b);
    std::uint32_t broken1 = atom_id(tg, "broken(1)");
    std::vector<Proof> all = proofs(tg, {broken1});
    REQUIRE(all.size() == 1);
    REQUIRE(all[0].mechanisms.size() == 1);
    CHECK(all[0].mechanisms[0].label == "m0(a1)");
    CHECK(proof_is_minimal(tg, all[0], {broken1}));
    std::vector<CausalChain> chains = causal_chains(tg, 0, broken1);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].render(tg.program.atoms) == "do(a1,0), m0(a1), broken(1)");
}

TEST_CASE("targets outside the model are rejected") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 3;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 0}, {"t2", 0}, {"d1", 1}, {"d2", 2}}), b);
    std::uint32_t not_held = atom_id(tg, "broken(0)");
    CHECK_THROWS_AS(proofs(tg, {not_held}), TargetNotInModelError);
}

TEST_CASE("incomparable mechanism sets are both tight") {
    const char* text =
        "fluents inertial f : boolean;\n"
        "actions x, y;\n"
        "mechanism ma: f(I) <- occurs(x, I - 1);\n"
        "mechanism mb: f(I) <- occurs(y, I - 1);\n"
        "scenario\n"
        "init(neg f);\n"
        "do(x, 0);\n"
        "do(y, 0);\n";
    ParseResult r = parse_theory(text);
    CAPTURE(format_diagnostics(r.errors));
    REQUIRE(r.ok());
    Bounds b;
    b.horizon = 2;
    TheoryGamma tg = solve_gamma(r.theory, {}, b);
    std::uint32_t f1 = atom_id(tg, "f(1)");
    std::vector<Proof> all = proofs(tg, {f1});
    REQUIRE(all.size() == 2);
    CHECK(tight_proofs(all).size() == 2);
    // singleton input stays put
    std::vector<Proof> one = {all[0]};
    CHECK(tight_proofs(one).size() == 1);
}

TEST_CASE("engineer chains: from the approach step, not from the flip") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    b.horizon = 6;
    b.duration_cap = 3;
    Interpretation g = gamma_of(
        {{"t3", 0}, {"t4", 1}, {"time2fork", 3}, {"time2dest.left", 2}, {"time2dest.right", 2}});
    TheoryGamma tg = solve_gamma(th, g, b);
    std::uint32_t dest = atom_id(tg, "arrived(dest)");
    std::vector<CausalChain> from_approach = causal_chains(tg, 0, dest);
    REQUIRE(from_approach.size() == 1);
    CHECK(from_approach[0].render(tg.program.atoms) ==
          "do(approach,0), m1, m2, m4, arrived(dest)");
    CHECK(causal_chains(tg, 1, dest).empty());  // the flip proof is not tight
}

TEST_CASE("order chain runs through the order and the throw") {
    CausalTheory th = load("corpus/suzy_order.w");
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 1}, {"t2", 1}, {"d1", 1}, {"d2", 2}}), b);
    std::uint32_t broken2 = atom_id(tg, "broken(2)");
    std::vector<CausalChain> chains = causal_chains(tg, 0, broken2);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].render(tg.program.atoms) == "do(b1,0), m6(a1,0,b1), m0(a1), broken(2)");
}

TEST_CASE("more informative: strict start and element containment") {
    CausalTheory th = load("corpus/suzy_order.w");
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 1}, {"t2", 1}, {"d1", 1}, {"d2", 2}}), b);
    std::uint32_t broken2 = atom_id(tg, "broken(2)");
    std::vector<CausalChain> chains = causal_chains(tg, 0, broken2);
    REQUIRE(chains.size() == 1);
    const CausalChain& full = chains[0];
    // identical chains: irreflexive
    CHECK_FALSE(more_informative(full, full));
    // hand-built later chain holding only the throw-level suffix
    CausalChain suffix;
    suffix.start = 1;
    suffix.terminal = full.terminal;
    for (auto d : full.do_atoms)
        if (tg.program.atoms.at(d).step >= 1) suffix.do_atoms.push_back(d);
    for (const auto& m : full.mechanisms)
        if (m.label == "m0(a1)") suffix.mechanisms.push_back(m);
    CHECK(more_informative(full, suffix));
    // chains with disjoint mechanisms are incomparable
    CausalChain other = suffix;
    other.mechanisms.clear();
    MechanismUse mu;
    mu.key = "m9@9";
    mu.label = "m9";
    other.mechanisms.push_back(mu);
    CHECK_FALSE(more_informative(full, other));
}

TEST_CASE("engineer: the approach step is the unique candidate and inflection point") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    b.horizon = 6;
    b.duration_cap = 3;
    Interpretation g = gamma_of(
        {{"t3", 0}, {"t4", 1}, {"time2fork", 3}, {"time2dest.left", 2}, {"time2dest.right", 2}});
    TheoryGamma tg = solve_gamma(th, g, b);
    std::uint32_t dest = atom_id(tg, "arrived(dest)");
    CHECK(candidate_inflection_points(th, b, tg, dest) == std::vector<int>{0});
    CHECK(inflection_points(th, b, tg, dest) == std::vector<int>{0});
}

TEST_CASE("aim: the throw is a candidate, the aiming step is not") {
    CausalTheory th = load("corpus/suzy_aim.w");
    Bounds b;
    b.horizon = 6;
    b.duration_cap = 2;
    // t5=0 aim, duration 1; t1=2 throw, duration 1 -> broken at 3
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 2}, {"t5", 0}, {"d1", 1}, {"dc", 1}}), b);
    std::uint32_t broken3 = atom_id(tg, "broken(3)");
    std::vector<int> cands = candidate_inflection_points(th, b, tg, broken3);
    CHECK(cands == std::vector<int>{2});
    std::vector<CauseWitness> ws = causes_in_gamma(th, b, tg, broken3);
    REQUIRE(ws.size() == 1);
    REQUIRE(ws[0].do_atoms.size() == 1);
    CHECK(tg.program.atoms.at(ws[0].do_atoms[0]).text == "do(a1,2)");
}

TEST_CASE("same-time story: both throw steps are inflection points") {
    CausalTheory th = load("corpus/suzy_same.w");
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 3;
    // distinct steps: t1=0 d1=3, t2=1 d2=2 -> both arrive at 3
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 0}, {"t2", 1}, {"d1", 3}, {"d2", 2}}), b);
    std::uint32_t broken3 = atom_id(tg, "broken(3)");
    CHECK(candidate_inflection_points(th, b, tg, broken3) == std::vector<int>{0, 1});
    CHECK(inflection_points(th, b, tg, broken3) == std::vector<int>{0, 1});
    std::vector<CauseWitness> ws = causes_in_gamma(th, b, tg, broken3);
    REQUIRE(ws.size() == 2);
    // same step for both throws: still two causes through one inflection point
    TheoryGamma tg2 = solve_gamma(th, gamma_of({{"t1", 1}, {"t2", 1}, {"d1", 2}, {"d2", 2}}), b);
    std::uint32_t broken3b = atom_id(tg2, "broken(3)");
    CHECK(inflection_points(th, b, tg2, broken3b) == std::vector<int>{1});
    std::vector<CauseWitness> ws2 = causes_in_gamma(th, b, tg2, broken3b);
    REQUIRE(ws2.size() == 2);
}

TEST_CASE("order: the order time dominates the throw time") {
    CausalTheory th = load("corpus/suzy_order.w");
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 1}, {"t2", 1}, {"d1", 1}, {"d2", 2}}), b);
    std::uint32_t broken2 = atom_id(tg, "broken(2)");
    CHECK(inflection_points(th, b, tg, broken2) == std::vector<int>{0});
    std::vector<CauseWitness> ws = causes_in_gamma(th, b, tg, broken2);
    REQUIRE(ws.size() == 1);
    REQUIRE(ws[0].do_atoms.size() == 1);
    CHECK(tg.program.atoms.at(ws[0].do_atoms[0]).text == "do(b1,0)");
    // witness invariants: the chain starts at the inflection point and the
    // cause equals the chain's do-atoms
    CHECK(ws[0].chain.start == ws[0].inflection);
    CHECK(ws[0].do_atoms == ws[0].chain.do_atoms);
}

TEST_CASE("cross-interpretation cause reports match the stories") {
    Bounds b;
    b.horizon = 5;
    b.duration_cap = 3;
    struct Case {
        const char* file;
        const char* pattern;
        std::vector<std::string> causes;
    };
    for (const Case& c : {Case{"corpus/suzy_first.w", "broken", {"{do(a1,t1)}"}},
                          Case{"corpus/suzy_billy_first.w", "broken", {"{do(a2,t2)}"}},
                          Case{"corpus/suzy_same.w", "broken", {"{do(a1,t1)}", "{do(a2,t2)}"}},
                          Case{"corpus/suzy_order.w", "broken", {"{do(b1,0)}"}},
                          Case{"corpus/suzy_order3.w", "broken", {"{do(b2,0)}"}}}) {
        CAPTURE(c.file);
        CausalTheory th = load(c.file);
        CauseReport report = causes(th, pattern_for(th, c.pattern), b);
        REQUIRE(report.groups.size() == 1);
        const ChangeGroup& g = report.groups[0];
        CHECK(g.uniform);
        std::vector<std::string> keys;
        for (const auto& sc : g.causes) keys.push_back(sc.key());
        CHECK(keys == c.causes);
    }
}

TEST_CASE("engineer cause is the approach under both orderings") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    b.horizon = 6;
    b.duration_cap = 2;
    CauseReport report = causes(th, pattern_for(th, "arrived(dest)"), b);
    REQUIRE(report.groups.size() == 1);
    CHECK(report.groups[0].uniform);
    REQUIRE(report.groups[0].causes.size() == 1);
    CHECK(report.groups[0].causes[0].key() == "{do(approach,t3)}");
    CHECK(report.groups[0].causes[0].chain == "do(approach,t3), m1, m2, m4, arrived(dest)");
}

TEST_CASE("elaboration tolerance: identical background, flipped constraint") {
    std::string first = slurp("corpus/suzy_first.w");
    std::string billy = slurp("corpus/suzy_billy_first.w");
    auto split = [](const std::string& text) {
        auto pos = text.find("scenario");
        REQUIRE(pos != std::string::npos);
        return text.substr(0, pos);
    };
    CHECK(split(first) == split(billy));
    CHECK(first != billy);
}

TEST_CASE("explanations: observation at 2, then at 3 with the compact range") {
    CausalTheory th = load("corpus/suzy_obs.w");
    Bounds b;
    b.horizon = 5;
    ObsParseResult obs2 = parse_obs_atom("obs(broken,true,2)", th.signature);
    REQUIRE(obs2.obs);
    ExplainReport r2 = explain_observation(th, *obs2.obs, b);
    CHECK(r2.unexpected);
    REQUIRE(r2.explanations.size() == 1);
    CHECK(r2.explanations[0].support == std::vector<std::string>{"do(a1,0)"});
    REQUIRE(r2.explanations[0].causes.size() == 1);
    CHECK(r2.explanations[0].causes[0].key() == "{do(a1,0)}");
    CHECK(r2.compact.empty());

    ObsParseResult obs3 = parse_obs_atom("obs(broken,true,3)", th.signature);
    REQUIRE(obs3.obs);
    ExplainReport r3 = explain_observation(th, *obs3.obs, b);
    CHECK(r3.unexpected);
    REQUIRE(r3.explanations.size() == 2);
    std::vector<std::string> supports;
    for (const auto& ex : r3.explanations) {
        REQUIRE(ex.support.size() == 1);
        supports.push_back(ex.support[0]);
    }
    std::sort(supports.begin(), supports.end());
    CHECK(supports == std::vector<std::string>{"do(a1,0)", "do(a1,1)"});
    REQUIRE(r3.compact.size() == 1);
    CHECK(r3.compact[0] == "do(a1,t), 0 <= t < 2");
}

TEST_CASE("an observation the theory already satisfies is not unexpected") {
    CausalTheory th = load("corpus/suzy_obs.w");
    Bounds b;
    b.horizon = 5;
    ObsParseResult obs = parse_obs_atom("obs(broken,false,2)", th.signature);
    REQUIRE(obs.obs);
    ExplainReport r = explain_observation(th, *obs.obs, b);
    CHECK_FALSE(r.unexpected);
    CHECK(r.explanations.empty());
}

TEST_CASE("per-interpretation cause sets agree across the corpus sweep") {
    Bounds b;
    b.horizon = 5;
    b.duration_cap = 3;
    CausalTheory th = load("corpus/suzy_first.w");
    CauseReport report = causes(th, pattern_for(th, "broken"), b);
    REQUIRE(report.groups.size() == 1);
    for (const auto& pg : report.groups[0].per_gamma) {
        REQUIRE(pg.causes.size() == 1);
        CHECK(pg.causes[0].key() == "{do(a1,t1)}");
    }
}

TEST_CASE("suzy: the throw step is the only inflection point") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    TheoryGamma tg = solve_gamma(th, gamma_of({{"t1", 1}, {"t2", 0}, {"d1", 1}, {"d2", 4}}), b);
    std::uint32_t broken2 = atom_id(tg, "broken(2)");
    CHECK(inflection_points(th, b, tg, broken2) == std::vector<int>{1});
}

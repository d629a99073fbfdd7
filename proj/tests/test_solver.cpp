#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "wcausal/parser.hpp"
#include "wcausal/solver.hpp"

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

bool model_has(const GroundProgram& p, const AnswerSet& m, const std::string& text) {
    auto id = p.atoms.find(text);
    return id && m.contains(*id);
}

}  // namespace

TEST_CASE("canonical even loop has two answer sets") {
    GroundProgram p;
    std::uint32_t a = p.atoms.value_atom("a", {}, -1, false, "true");
    std::uint32_t b = p.atoms.value_atom("b", {}, -1, false, "true");
    p.rules.push_back({static_cast<std::int32_t>(a), {}, {b}, {}, false});
    p.rules.push_back({static_cast<std::int32_t>(b), {}, {a}, {}, false});
    std::vector<AnswerSet> models = answer_sets(p);
    REQUIRE(models.size() == 2);
    CHECK(models[0].atoms == std::vector<std::uint32_t>{a});
    CHECK(models[1].atoms == std::vector<std::uint32_t>{b});
    std::vector<std::vector<std::uint32_t>> expected = testing::brute_force_answer_sets(p);
    REQUIRE(expected.size() == 2);
    CHECK(models[0].atoms == expected[0]);
    CHECK(models[1].atoms == expected[1]);
}

TEST_CASE("unsupported positive loops are not stable") {
    GroundProgram p;
    std::uint32_t a = p.atoms.value_atom("a", {}, -1, false, "true");
    p.rules.push_back({static_cast<std::int32_t>(a), {a}, {}, {}, false});
    std::vector<AnswerSet> models = answer_sets(p);
    REQUIRE(models.size() == 1);  // only the empty model; {a} is unfounded
    CHECK(models[0].atoms.empty());
}

TEST_CASE("suzy program has the expected unique answer set") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 3;
    b.duration_cap = 2;
    Interpretation g = gamma_of({{"t1", 0}, {"t2", 0}, {"d1", 1}, {"d2", 2}});
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    std::vector<AnswerSet> models = answer_sets(p);
    REQUIRE(models.size() == 1);
    const AnswerSet& m = models[0];
    CHECK(model_has(p, m, "neg broken(0)"));
    CHECK(model_has(p, m, "broken(1)"));
    CHECK(model_has(p, m, "broken(2)"));
    CHECK(model_has(p, m, "broken(3)"));
    CHECK_FALSE(model_has(p, m, "broken(0)"));
    // independent audit of the solver's model
    CHECK(testing::verify_stable(p, m.atoms));
}

TEST_CASE("engineer model matches the worked interpretation") {
    CausalTheory th = load("corpus/engineer.w");
    Bounds b;
    b.horizon = 10;
    b.duration_cap = 4;
    Interpretation g = gamma_of({{"t3", 0},
                                 {"t4", 1},
                                 {"time2fork", 3},
                                 {"time2dest.left", 5},
                                 {"time2dest.right", 5}});
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    std::vector<AnswerSet> models = answer_sets(p);
    REQUIRE(models.size() == 1);
    const AnswerSet& m = models[0];
    for (int i = 0; i <= 3; ++i)
        CHECK(model_has(p, m, "switch(" + std::to_string(i) + ")!=neutral"));
    CHECK(model_has(p, m, "arrivTime(fork)=3"));
    CHECK(model_has(p, m, "arrived(dest)"));
    CHECK(model_has(p, m, "arrivTime(dest)=8"));
    CHECK(model_has(p, m, "switch(2)=right"));
    CHECK(testing::verify_stable(p, m.atoms));
}

TEST_CASE("solver equals the brute-force oracle on small random programs") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        GroundProgram p = testing::random_program(rng, 10, 14);
        std::vector<std::vector<std::uint32_t>> expected = testing::brute_force_answer_sets(p);
        std::vector<AnswerSet> got = answer_sets(p);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].atoms == expected[i]);
    }
}

TEST_CASE("monotone sanity: adding a derived fact keeps the unique model") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 3;
    b.duration_cap = 2;
    Interpretation g = gamma_of({{"t1", 0}, {"t2", 0}, {"d1", 1}, {"d2", 2}});
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    AnswerSet m = unique_answer_set(p);
    auto id = p.atoms.find("broken(2)");
    REQUIRE(id);
    REQUIRE(m.contains(*id));
    std::vector<AnswerSet> again = answer_sets(p, 0, {*id});
    REQUIRE(again.size() == 1);
    CHECK(again[0].atoms == m.atoms);
}

TEST_CASE("abductive supports: broken observed at 2") {
    CausalTheory th = load("corpus/suzy_obs.w");
    ScenarioParseResult sc = parse_scenario("obs(broken, true, 2);", th.signature);
    REQUIRE(sc.ok());
    th.scenario.observations = sc.scenario.observations;
    Bounds b;
    b.horizon = 5;
    Interpretation g;
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    CHECK(answer_sets(p, 1).empty());  // regular part is inconsistent
    std::vector<AbductiveSupport> supports = abductive_supports(p, b);
    REQUIRE(supports.size() == 1);
    REQUIRE(supports[0].cr_rules.size() == 1);
    const GroundRule& cr = p.rules[supports[0].cr_rules[0]];
    CHECK(p.atoms.at(static_cast<std::uint32_t>(cr.head)).text == "a1(0)");
}

TEST_CASE("abductive supports: consistent program needs nothing") {
    CausalTheory th = load("corpus/suzy_obs.w");
    Bounds b;
    b.horizon = 3;
    Interpretation g;
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    std::vector<AbductiveSupport> supports = abductive_supports(p, b);
    REQUIRE(supports.size() == 1);
    CHECK(supports[0].cr_rules.empty());
}

TEST_CASE("abductive supports: broken observed at 3 has two minimal supports") {
    CausalTheory th = load("corpus/suzy_obs.w");
    ScenarioParseResult sc = parse_scenario("obs(broken, true, 3);", th.signature);
    REQUIRE(sc.ok());
    th.scenario.observations = sc.scenario.observations;
    Bounds b;
    b.horizon = 5;
    Interpretation g;
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    std::vector<AbductiveSupport> supports = abductive_supports(p, b);
    REQUIRE(supports.size() == 2);
    std::vector<std::string> heads;
    for (const auto& s : supports) {
        REQUIRE(s.cr_rules.size() == 1);
        heads.push_back(
            p.atoms.at(static_cast<std::uint32_t>(p.rules[s.cr_rules[0]].head)).text);
    }
    std::sort(heads.begin(), heads.end());
    CHECK(heads == std::vector<std::string>{"a1(0)", "a1(1)"});
}

TEST_CASE("support minimality is strict for every returned support") {
    CausalTheory th = load("corpus/suzy_obs.w");
    ScenarioParseResult sc = parse_scenario("obs(broken, true, 3);", th.signature);
    REQUIRE(sc.ok());
    th.scenario.observations = sc.scenario.observations;
    Bounds b;
    b.horizon = 4;
    Interpretation g;
    ConcreteTheory ct = reduce(th, g, b);
    GroundProgram p = build_program(th, ct, b);
    for (const auto& support : abductive_supports(p, b)) {
        for (std::size_t skip = 0; skip < support.cr_rules.size(); ++skip) {
            std::vector<std::uint32_t> facts;
            for (std::size_t i = 0; i < support.cr_rules.size(); ++i)
                if (i != skip)
                    facts.push_back(
                        static_cast<std::uint32_t>(p.rules[support.cr_rules[i]].head));
            CHECK(answer_sets(p, 1, facts).empty());
        }
    }
}

TEST_CASE("corpus theories are deterministic within bounds") {
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    for (const char* name :
         {"corpus/suzy_first.w", "corpus/suzy_billy_first.w", "corpus/suzy_same.w",
          "corpus/suzy_order.w", "corpus/suzy_order2.w", "corpus/suzy_order3.w",
          "corpus/suzy_aim.w", "corpus/suzy_obs.w"}) {
        CAPTURE(name);
        DeterminismReport r = is_deterministic(load(name), b);
        CHECK(r.deterministic);
        CHECK(r.interpretations > 0);
    }
    Bounds eb;
    eb.horizon = 5;
    eb.duration_cap = 2;
    DeterminismReport r = is_deterministic(load("corpus/engineer.w"), eb);
    CHECK(r.deterministic);
}

TEST_CASE("no interpretation raises the dedicated error") {
    const char* text =
        "actions a1;\n"
        "scenario\n"
        "do(a1, #t1);\n"
        "#t1 > #t1;\n";
    ParseResult r = parse_theory(text);
    REQUIRE(r.ok());
    Bounds b;
    CHECK_THROWS_AS(is_deterministic(r.theory, b), NoInterpretationError);
}

TEST_CASE("injected even loop is reported with the offending assignment") {
    CausalTheory th = load("corpus/suzy_first.w");
    Bounds b;
    b.horizon = 3;
    b.duration_cap = 2;
    ProgramMutator inject = [](GroundProgram& p) {
        std::uint32_t x = p.atoms.value_atom("loop_x", {}, -1, false, "true");
        std::uint32_t y = p.atoms.value_atom("loop_y", {}, -1, false, "true");
        p.rules.push_back({static_cast<std::int32_t>(x), {}, {y}, {}, false});
        p.rules.push_back({static_cast<std::int32_t>(y), {}, {x}, {}, false});
    };
    DeterminismReport r = is_deterministic(th, b, {}, inject);
    CHECK_FALSE(r.deterministic);
    REQUIRE(r.offending);
    CHECK(r.offending_models == 2);
    // first enumerated assignment is the offender
    std::vector<Interpretation> gammas = enumerate_interpretations(th, b);
    REQUIRE_FALSE(gammas.empty());
    CHECK(r.offending->str() == gammas[0].str());
}

TEST_CASE("reduct check holds for every corpus answer set") {
    Bounds b;
    b.horizon = 4;
    b.duration_cap = 2;
    for (const char* name : {"corpus/suzy_first.w", "corpus/suzy_order.w",
                             "corpus/suzy_order3.w", "corpus/suzy_aim.w"}) {
        CAPTURE(name);
        CausalTheory th = load(name);
        for (const auto& g : enumerate_interpretations(th, b)) {
            ConcreteTheory ct = reduce(th, g, b);
            GroundProgram p = build_program(th, ct, b);
            for (const auto& m : answer_sets(p)) CHECK(testing::verify_stable(p, m.atoms));
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wcausal/parser.hpp"
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

}  // namespace

TEST_CASE("corpus theories validate cleanly") {
    for (const char* name :
         {"corpus/suzy_first.w", "corpus/suzy_billy_first.w", "corpus/suzy_same.w",
          "corpus/suzy_order.w", "corpus/suzy_order2.w", "corpus/suzy_order3.w",
          "corpus/suzy_aim.w", "corpus/suzy_obs.w", "corpus/engineer.w",
          "corpus/engineer_fast_right.w"}) {
        CAPTURE(name);
        CausalTheory th = load(name);
        CHECK(validate(th).empty());
    }
}

TEST_CASE("mechanism with a static head is rejected") {
    const char* text =
        "statics weight : natural;\n"
        "fluents inertial broken : boolean;\n"
        "mechanism mx at I: weight = 3 <- broken(I);\n";
    ParseResult r = parse_theory(text);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& d : r.errors)
        if (d.message.find("must be non-static") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("init on an action is rejected") {
    const char* text =
        "actions a1;\n"
        "scenario\n"
        "init(a1);\n";
    ParseResult r = parse_theory(text);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& d : r.errors)
        if (d.message.find("init applies only to inertial fluents") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("init on a transient fluent is rejected") {
    const char* text =
        "fluents transient pressure : natural;\n"
        "scenario\n"
        "init(pressure = 3);\n";
    ParseResult r = parse_theory(text);
    CHECK_FALSE(r.ok());
}

TEST_CASE("ground causality check") {
    // action atom strictly precedes the head step
    CHECK(check_causality_ground({0}, {}, 1).ok);
    CHECK_FALSE(check_causality_ground({1}, {}, 1).ok);
    // non-action atoms may share the head step
    CHECK(check_causality_ground({}, {1}, 1).ok);
    CHECK_FALSE(check_causality_ground({}, {2}, 1).ok);
    // time-independent heads are unconstrained
    CHECK(check_causality_ground({5}, {7}, std::nullopt).ok);
}

TEST_CASE("statically decidable causality violation is a diagnostic") {
    const char* text =
        "actions a1, b1;\n"
        "mechanism mt: occurs(a1, I) <- occurs(b1, I);\n";
    ParseResult r = parse_theory(text);
    REQUIRE_FALSE(r.ok());
    bool found = false;
    for (const auto& d : r.errors)
        if (d.message.find("strictly precede") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("shorthand expansion introduces a binding and a constraint") {
    const char* text =
        "statics duration(action) : natural;\n"
        "actions a1;\n"
        "scenario\n"
        "duration(a1) >= 1;\n";
    ParseResult r = parse_theory(text);
    REQUIRE(r.ok());
    const Scenario& sc = r.theory.scenario;
    REQUIRE(sc.statics.size() == 1);
    CHECK(sc.statics[0].symbol == "duration");
    CHECK(sc.statics[0].value.kind == Term::Kind::AbstractConst);
    REQUIRE(sc.constraints.size() == 1);
    CHECK(sc.constraints[0].lhs.kind == Term::Kind::AbstractConst);
    CHECK(sc.constraints[0].rel == Rel::Ge);
    // idempotence
    Scenario again = expand_shorthands(sc, r.theory.signature);
    CHECK(structurally_equal(again, sc));
}

TEST_CASE("equality between two functional terms expands both sides") {
    const char* text =
        "sorts track = {left, right};\n"
        "statics time2dest(track) : natural;\n"
        "scenario\n"
        "time2dest(left) = time2dest(right);\n";
    ParseResult r = parse_theory(text);
    REQUIRE(r.ok());
    const Scenario& sc = r.theory.scenario;
    CHECK(sc.statics.size() == 2);  // two fresh bindings
    REQUIRE(sc.constraints.size() == 1);
    CHECK(sc.constraints[0].lhs.kind == Term::Kind::AbstractConst);
    CHECK(sc.constraints[0].rhs.kind == Term::Kind::AbstractConst);
    CHECK(sc.constraints[0].lhs.name != sc.constraints[0].rhs.name);
    Scenario again = expand_shorthands(sc, r.theory.signature);
    CHECK(structurally_equal(again, sc));
}

TEST_CASE("explicit bindings are reused by expansion") {
    const char* text =
        "statics duration(action) : natural;\n"
        "actions a1;\n"
        "scenario\n"
        "duration(a1) = #d1;\n"
        "duration(a1) >= 1;\n";
    ParseResult r = parse_theory(text);
    REQUIRE(r.ok());
    const Scenario& sc = r.theory.scenario;
    CHECK(sc.statics.size() == 1);
    REQUIRE(sc.constraints.size() == 1);
    CHECK(sc.constraints[0].lhs.name == "d1");
}

TEST_CASE("abstract constants are classified from their positions") {
    CausalTheory th = load("corpus/suzy_order.w");
    const Scenario& sc = th.scenario;
    REQUIRE(sc.find_abstract("t1"));
    CHECK(sc.find_abstract("t1")->time_valued);  // value of the time-valued static `when`
    REQUIRE(sc.find_abstract("d1"));
    CHECK_FALSE(sc.find_abstract("d1")->time_valued);
    CausalTheory suzy = load("corpus/suzy_first.w");
    CHECK(suzy.scenario.find_abstract("t1")->time_valued);  // do-atom step
}

TEST_CASE("duplicate mechanism labels are rejected") {
    const char* text =
        "fluents inertial f : boolean;\n"
        "actions a1;\n"
        "mechanism m(A): f(I) <- occurs(A, I - 1);\n"
        "mechanism m(A): f(I) <- occurs(A, I - 1);\n";
    ParseResult r = parse_theory(text);
    CHECK_FALSE(r.ok());
}

TEST_CASE("abstract constants are not allowed in mechanisms") {
    const char* text =
        "fluents inertial f : boolean;\n"
        "actions a1;\n"
        "mechanism m: f(I) <- occurs(a1, I - 1), I > #t1;\n";
    ParseResult r = parse_theory(text);
    CHECK_FALSE(r.ok());
}

TEST_CASE("mechanism guard carries the implicit ab atom") {
    CausalTheory th = load("corpus/suzy_first.w");
    REQUIRE(th.mechanisms.size() == 1);
    const CausalMechanism& m = th.mechanisms[0];
    CHECK(m.label == "m0");
    CHECK(m.guard_var == "I");
    CHECK(m.body.size() == 5);
    CHECK(m.body_size_with_guard() == 6);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wcausal/cli.hpp"

using namespace wcausal;

namespace {

struct RunOutcome {
    int code;
    std::string out;
    std::string err;
};

RunOutcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check: shipped corpus is valid, exit 0") {
    for (const char* name :
         {"corpus/suzy_first.w", "corpus/suzy_billy_first.w", "corpus/suzy_same.w",
          "corpus/suzy_order.w", "corpus/suzy_order2.w", "corpus/suzy_order3.w",
          "corpus/suzy_aim.w", "corpus/suzy_obs.w", "corpus/engineer.w",
          "corpus/engineer_fast_right.w"}) {
        CAPTURE(name);
        RunOutcome r = run({"check", name});
        CHECK(r.code == kExitOk);
    }
}

TEST_CASE("check: validation failure exits 1 with a located diagnostic") {
    RunOutcome r = run({"check", "tests/data/static_head.w"});
    CHECK(r.code == kExitValidation);
    CHECK(r.out.find("must be non-static") != std::string::npos);
    CHECK(r.out.find("static_head.w:") != std::string::npos);
}

TEST_CASE("missing file exits 2") {
    RunOutcome r = run({"check", "corpus/missing.w"});
    CHECK(r.code == kExitIo);
}

TEST_CASE("models: pinned engineer interpretation matches the story") {
    RunOutcome r = run({"models", "corpus/engineer.w", "--gamma",
                        "t3=0,t4=1,time2fork=3,time2dest.left=5,time2dest.right=5"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("arrivTime(fork)=3") != std::string::npos);
    CHECK(r.out.find("arrived(dest)") != std::string::npos);
}

TEST_CASE("models: pinned suzy interpretation includes broken(1)") {
    RunOutcome r =
        run({"models", "corpus/suzy_first.w", "--horizon", "3", "--gamma", "t1=0,t2=0,d1=1,d2=2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("broken(1)") != std::string::npos);
}

TEST_CASE("models: inconsistent scenario exits 3 with a notice") {
    RunOutcome r = run({"models", "tests/data/inconsistent.w", "--horizon", "3"});
    CHECK(r.code == kExitSemantic);
    CHECK(r.out.find("no answer sets") != std::string::npos);
}

TEST_CASE("causes: unknown pattern exits with a semantic error") {
    RunOutcome r = run({"causes", "corpus/suzy_order2.w", "broken", "--horizon", "4",
                        "--duration-cap", "2"});
    CHECK(r.code == kExitSemantic);
    CHECK(r.err.find("matches no change") != std::string::npos);
}

TEST_CASE("causes: structured output is byte-stable across runs") {
    std::vector<std::string> args = {"causes",    "corpus/suzy_first.w", "broken",
                                     "--horizon", "4",                   "--duration-cap",
                                     "2",         "--format",            "structured"};
    RunOutcome a = run(args);
    RunOutcome b = run(args);
    RunOutcome c = run(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(a.out.find("wcausal 1") == 0);
    CHECK(a.out.find("cause: {do(a1,t1)}") != std::string::npos);
}

TEST_CASE("explain: entailed observation reports not-unexpected with exit 0") {
    RunOutcome r =
        run({"explain", "corpus/suzy_obs.w", "obs(broken,false,2)", "--horizon", "4"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("not unexpected") != std::string::npos);
}

TEST_CASE("explain: compact range appears for the step-3 observation") {
    RunOutcome r = run({"explain", "corpus/suzy_obs.w", "obs(broken,true,3)", "--horizon", "5"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("do(a1,t), 0 <= t < 2") != std::string::npos);
}

TEST_CASE("dump-ground output is stable and tagged") {
    std::vector<std::string> args = {"models",  "corpus/suzy_obs.w", "--horizon", "2",
                                     "--dump-ground"};
    RunOutcome a = run(args);
    RunOutcome b = run(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("% axiom(") != std::string::npos);
    CHECK(a.out.find("% mechanism m0(a1)@") != std::string::npos);
}

TEST_CASE("resource cap from the environment exits 4") {
    struct EnvGuard {
        EnvGuard() { setenv("W_RESOURCE_CAP", "10", 1); }
        ~EnvGuard() { unsetenv("W_RESOURCE_CAP"); }
    } guard;
    RunOutcome r = run({"models", "corpus/suzy_first.w", "--horizon", "3"});
    CHECK(r.code == kExitResource);
}

namespace {

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("corpus completeness: every entry reproduces its golden output") {
    struct Entry {
        const char* name;
        std::vector<std::string> args;
    };
    const std::vector<Entry> entries = {
        {"suzy_first",
         {"causes", "corpus/suzy_first.w", "broken", "--horizon", "5", "--duration-cap", "3",
          "--format", "structured"}},
        {"suzy_billy_first",
         {"causes", "corpus/suzy_billy_first.w", "broken", "--horizon", "5", "--duration-cap",
          "3", "--format", "structured"}},
        {"suzy_same",
         {"causes", "corpus/suzy_same.w", "broken", "--horizon", "5", "--duration-cap", "3",
          "--format", "structured"}},
        {"suzy_order",
         {"causes", "corpus/suzy_order.w", "broken", "--horizon", "5", "--duration-cap", "3",
          "--format", "structured"}},
        {"suzy_order2",
         {"causes", "corpus/suzy_order2.w", "broken", "--horizon", "5", "--duration-cap", "3",
          "--format", "structured"}},
        {"suzy_order3",
         {"causes", "corpus/suzy_order3.w", "broken", "--horizon", "5", "--duration-cap", "3",
          "--format", "structured"}},
        {"suzy_aim",
         {"causes", "corpus/suzy_aim.w", "broken", "--horizon", "6", "--duration-cap", "2",
          "--format", "structured"}},
        {"suzy_obs",
         {"explain", "corpus/suzy_obs.w", "obs(broken,true,3)", "--horizon", "5", "--format",
          "structured"}},
        {"engineer",
         {"causes", "corpus/engineer.w", "arrived(dest)", "--horizon", "6", "--duration-cap",
          "3", "--format", "structured"}},
        {"engineer_fast_right",
         {"causes", "corpus/engineer_fast_right.w", "arrived(dest)", "--horizon", "6",
          "--duration-cap", "3", "--format", "structured"}},
    };
    for (const auto& e : entries) {
        CAPTURE(e.name);
        RunOutcome r = run(e.args);
        std::string golden = slurp_file(std::string("corpus/expected/") + e.name + ".golden");
        CHECK(r.out == golden);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "torsor/problem.hpp"

using namespace torsor;

namespace {

std::vector<std::string> report_lines(const std::string& output) {
    std::vector<std::string> out;
    std::istringstream is(output);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("check ", 0) == 0) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("example catalog ids") {
    auto ids = example_ids();
    REQUIRE(ids.size() == 7);
    for (const auto& id : {"A1", "A2", "A3", "A3-failure", "A4", "E2.5", "P2.6"})
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    CHECK_THROWS_AS(example_problem("nope"), ProblemError);
}

TEST_CASE("examples run deterministically with the right exit codes") {
    for (const auto& id : example_ids()) {
        CAPTURE(id);
        RunOutcome a = run_problem(parse_problem(example_problem(id)));
        RunOutcome b = run_problem(parse_problem(example_problem(id)));
        CHECK(a.output == b.output);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.exit_code == (id == "A3-failure" ? 2 : 0));
    }
}

TEST_CASE("result documents embed a re-verifiable problem") {
    for (const auto& id : example_ids()) {
        CAPTURE(id);
        RunOutcome first = run_problem(parse_problem(example_problem(id)));
        auto embedded = embedded_problem(first.output);
        if (id == "A3-failure") {
            CHECK(!embedded);
            continue;
        }
        REQUIRE(embedded);
        RunOutcome second = run_problem(parse_problem(*embedded));
        CHECK(second.exit_code == 0);
        // the re-verified reports match the original run's check lines
        CHECK(report_lines(second.output) == report_lines(first.output));
        // and the embedded document itself is reproduced verbatim
        auto twice = embedded_problem(second.output);
        REQUIRE(twice);
        CHECK(*twice == *embedded);
    }
}

TEST_CASE("serialize_verify_problem round-trips a presentation") {
    ProblemDocument doc = parse_problem(example_problem("P2.6"));
    const TorsorPresentation& T = doc.torsors.at("T");
    TorsorReport direct = verify_torsor(T);
    ProblemDocument doc2 = parse_problem(serialize_verify_problem(T, doc.p));
    TorsorReport reparsed = verify_torsor(doc2.torsors.at("T"));
    REQUIRE(direct.lines.size() == reparsed.lines.size());
    for (size_t i = 0; i < direct.lines.size(); ++i) {
        CHECK(direct.lines[i].axiom == reparsed.lines[i].axiom);
        CHECK(direct.lines[i].pass == reparsed.lines[i].pass);
    }
    CHECK(ideal_equal(doc2.torsors.at("T").total.ideal(), T.total.ideal()));
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_problem(""), ProblemError);
    CHECK_THROWS_AS(parse_problem("not-a-header\n"), ProblemError);
    CHECK_THROWS_AS(parse_problem("torsor-problem v1\nkey = 1\n"), ProblemError);
    CHECK_THROWS_AS(parse_problem("torsor-problem v1\n[scheme X]\nvars = y\n"), ProblemError);
    CHECK_THROWS_AS(
        parse_problem("torsor-problem v1\n[command]\nop = dance\n"), ProblemError);
    CHECK_THROWS_AS(parse_problem("torsor-problem v1\n[command]\nop = verify\ntorsor = T\n"),
                    ProblemError);
    CHECK_THROWS_AS(parse_problem("torsor-problem v1\n[weird]\n[command]\nop = verify\n"),
                    ProblemError);
    // relation using an undeclared variable
    CHECK_THROWS_AS(parse_problem("torsor-problem v1\n[scheme X]\nvars = y\nrel = w^2\n"
                                  "[command]\nop = flat-closure\nscheme = X\n"),
                    ProblemError);
}

TEST_CASE("verification failures exit 1, guard failures exit 2") {
    // corrupt P2.6's coaction: the trivial coaction is well-defined but
    // is not a torsor structure
    std::string doc = example_problem("P2.6");
    size_t at = doc.find("coaction y = yL + yR");
    REQUIRE(at != std::string::npos);
    doc.replace(at, std::string("coaction y = yL + yR").size(), "coaction y = yR");
    RunOutcome out = run_problem(parse_problem(doc));
    CHECK(out.exit_code == 1);
    CHECK(out.output.find("status = failed") != std::string::npos);
    CHECK(out.output.find("FAIL") != std::string::npos);

    RunOutcome guard = run_problem(parse_problem(example_problem("A3-failure")));
    CHECK(guard.exit_code == 2);
    CHECK(guard.output.find("status = guard") != std::string::npos);
    CHECK(guard.output.find("FinitenessGuardFailed") != std::string::npos);
}

TEST_CASE("flat-closure and scheme/group blow-up commands") {
    std::string doc = R"(torsor-problem v1
[config]
p = 2
[scheme X]
ring = R
vars = y t
rel = pi*t - y
[command]
op = flat-closure
scheme = X
)";
    RunOutcome out = run_problem(parse_problem(doc));
    CHECK(out.exit_code == 0);
    CHECK(out.output.find("rel = pi*t + y") != std::string::npos);

    std::string blow = R"(torsor-problem v1
[config]
p = 2
[scheme X]
ring = R
vars = y
[command]
op = blowup
scheme = X
times = 1
section y = 0
)";
    RunOutcome b = run_problem(parse_problem(blow));
    CHECK(b.exit_code == 0);
    CHECK(b.output.find("vars = y y'") != std::string::npos);
    CHECK(b.output.find("rel = y + pi*y'") != std::string::npos);

    std::string grp = R"(torsor-problem v1
[config]
p = 2
[group G]
builtin = constant-Z/p
ring = R
var = x
[command]
op = blowup
group = G
times = 1
)";
    RunOutcome g = run_problem(parse_problem(grp));
    CHECK(g.exit_code == 0);
    CHECK(g.output.find("rel = pi*x'^2 + x'") != std::string::npos);
}

TEST_CASE("Groebner caps in the config section are honored and restored") {
    GroebnerLimits before = groebner_limits();
    std::string doc = example_problem("A4");
    size_t at = doc.find("[config]\np = 2");
    REQUIRE(at != std::string::npos);
    doc.insert(doc.find("\n", at + 9) + 1, "gb-degree-cap = 1\n");
    RunOutcome out = run_problem(parse_problem(doc));
    CHECK(out.exit_code == 1);
    CHECK(out.output.find("status = error") != std::string::npos);
    CHECK(groebner_limits().degree_cap == before.degree_cap);
    CHECK(groebner_limits().basis_cap == before.basis_cap);
}

TEST_CASE("command-level max-blowups overrides the config") {
    // a torsor that needs one blow-up but is given a budget of zero
    std::string doc = example_problem("A4");
    doc += "max-blowups = 0\n";
    RunOutcome out = run_problem(parse_problem(doc));
    CHECK(out.exit_code == 2);
    CHECK(out.output.find("MaxBlowupsExceeded") != std::string::npos);
}

TEST_CASE("trace output records substitutions and basis sizes") {
    RunOutcome out = run_problem(parse_problem(example_problem("A4")), /*trace=*/true);
    CHECK(out.exit_code == 0);
    CHECK(out.output.find("[trace]") != std::string::npos);
    CHECK(out.output.find("substitute") != std::string::npos);
    CHECK(out.output.find("gb-size total") != std::string::npos);
}

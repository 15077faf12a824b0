#pragma once

// The "torsor-problem v1" document format: a line-oriented sectioned
// text format holding scheme, group and torsor presentations plus one
// command, and the runner that executes the command and renders a
// "torsor-result v1" document.  Tensor legs are written with the
// suffixes L and R in documents (x12L, zR, ...) and converted to the
// internal #L/#R tags on parse.

#include "torsor/torsor.hpp"

namespace torsor {

struct ProblemError : std::runtime_error {
    ProblemError(const std::string& what, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    int line;
};

struct Command {
    std::string op;  // extend | verify | blowup | flat-closure
    std::string scheme, group, torsor;
    int times = 1;
    std::optional<int> max_blowups;
    Section section;                        // scalar center / section assignments
    std::map<std::string, MultiPoly> lifts;  // torsor blow-up section lifts
};

struct ProblemDocument {
    uint32_t p = 2;
    int max_blowups = 32;
    std::optional<int> gb_degree_cap;
    std::optional<int> gb_size_cap;
    std::map<std::string, AffineAlgebra> schemes;
    std::map<std::string, HopfAlgebra> groups;
    std::map<std::string, TorsorPresentation> torsors;
    Command command;
};

ProblemDocument parse_problem(const std::string& text);

struct RunOutcome {
    int exit_code = 0;  // 0 success, 2 guard failure, 1 input / math error
    std::string output;
};

// executes the document's command; never throws on domain errors (they
// are rendered into the outcome)
RunOutcome run_problem(const ProblemDocument& doc, bool trace = false);

// a complete re-parseable problem document that verifies T
std::string serialize_verify_problem(const TorsorPresentation& T, uint32_t p,
                                     std::optional<int> max_blowups = std::nullopt);
// the problem document embedded in a result document, if any
std::optional<std::string> embedded_problem(const std::string& result_text);

// ----------------------------------------------------------- catalog
std::vector<std::string> example_ids();
std::string example_problem(const std::string& id);  // throws ProblemError on unknown id

}  // namespace torsor

// torsor: command-line front end for the torsor-problem v1 document
// format.  Subcommands read a document, check that its [command] op
// matches the subcommand, run it and print a torsor-result v1 document.
// Exit codes: 0 success, 1 input or verification error, 2 guard failure
// (finiteness guard, blow-up budget).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "torsor/problem.hpp"

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

std::optional<int> env_int(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    try {
        return std::stoi(v);
    } catch (...) {
        throw std::runtime_error(std::string(name) + " must be an integer, got '" + v + "'");
    }
}

struct DocOptions {
    std::string input = "-";
    std::string output;
    bool trace = false;
    std::optional<int> max_blowups, gb_degree_cap, gb_size_cap;
};

int run_document(const std::string& op, const DocOptions& opt) {
    torsor::ProblemDocument doc = torsor::parse_problem(slurp(opt.input));
    if (doc.command.op != op)
        throw std::runtime_error("document command is '" + doc.command.op +
                                 "' but the subcommand is '" + op + "'");
    // precedence: command-line flag > document > environment > default
    if (auto v = env_int("TORSOR_MAX_BLOWUPS"); v && !doc.command.max_blowups)
        doc.max_blowups = *v;
    if (auto v = env_int("TORSOR_GB_DEGREE_CAP"); v && !doc.gb_degree_cap) doc.gb_degree_cap = v;
    if (auto v = env_int("TORSOR_GB_SIZE_CAP"); v && !doc.gb_size_cap) doc.gb_size_cap = v;
    if (opt.max_blowups) {
        doc.max_blowups = *opt.max_blowups;
        doc.command.max_blowups = std::nullopt;
    }
    if (opt.gb_degree_cap) doc.gb_degree_cap = opt.gb_degree_cap;
    if (opt.gb_size_cap) doc.gb_size_cap = opt.gb_size_cap;
    torsor::RunOutcome out = torsor::run_problem(doc, opt.trace);
    emit(out.output, opt.output);
    return out.exit_code;
}

void add_doc_subcommand(CLI::App& app, const std::string& op, const std::string& help,
                        DocOptions& opt, std::string& chosen) {
    CLI::App* sub = app.add_subcommand(op, help);
    sub->add_option("--input,-i", opt.input, "problem document, or - for stdin");
    sub->add_option("--output,-o", opt.output, "write the result document here");
    sub->add_flag("--trace", opt.trace, "include substitution / Groebner trace");
    sub->add_option("--max-blowups", opt.max_blowups, "blow-up budget override");
    sub->add_option("--gb-degree-cap", opt.gb_degree_cap, "Groebner degree cap override");
    sub->add_option("--gb-size-cap", opt.gb_size_cap, "Groebner basis size cap override");
    sub->callback([&chosen, op] { chosen = op; });
}

int run_examples(const std::string& id, const std::string& output) {
    std::string doc_text = torsor::example_problem(id);
    torsor::RunOutcome out = torsor::run_problem(torsor::parse_problem(doc_text));
    emit(doc_text + "\n" + out.output, output);
    return out.exit_code;
}

int run_fuzz(int count, uint32_t p, int degree, uint64_t seed) {
    torsor::AffineAlgebra A(torsor::BaseRing::over_R, p, {"x"}, {});
    uint64_t s = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto next = [&s] {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    int failures = 0;
    for (int i = 0; i < count; ++i) {
        torsor::MultiPoly a(p);
        for (int t = 0; t < 3; ++t) {
            int e = static_cast<int>(next() % (degree + 1));
            torsor::CoeffScalar c =
                torsor::CoeffScalar::integer(p, 1 + next() % (p > 1 ? p - 1 : 1)) *
                torsor::CoeffScalar::pi_power(p, static_cast<int>(next() % 4));
            a = a + torsor::MultiPoly::var(p, "x", e) * c;
        }
        bool ok = torsor::m_torsor_roundtrip(A, a, p);
        std::cout << "roundtrip " << i << " a = " << a.str() << " : "
                  << (ok ? "pass" : "FAIL") << "\n";
        if (!ok) ++failures;
    }
    std::cout << "fuzz-roundtrip: " << (count - failures) << "/" << count << " passed\n";
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flat models of torsors over a discrete valuation ring"};
    app.require_subcommand(1);

    std::string chosen;
    DocOptions doc_opt;
    add_doc_subcommand(app, "extend", "extend a pointed torsor to a flat model", doc_opt, chosen);
    add_doc_subcommand(app, "verify", "verify the torsor axioms of a presentation", doc_opt,
                       chosen);
    add_doc_subcommand(app, "blowup", "Neron blow-up of a scheme, group or torsor", doc_opt,
                       chosen);
    add_doc_subcommand(app, "flat-closure", "flat closure of a scheme over R", doc_opt, chosen);

    std::string example_id, example_output;
    CLI::App* ex = app.add_subcommand("examples", "run a built-in example document");
    ex->add_option("--id", example_id, "one of: A1 A2 A3 A3-failure A4 E2.5 P2.6")->required();
    ex->add_option("--output,-o", example_output, "write document + result here");
    ex->callback([&chosen] { chosen = "examples"; });

    int fz_count = 20, fz_degree = 4;
    uint32_t fz_p = 2;
    uint64_t fz_seed = 1;
    CLI::App* fz = app.add_subcommand("fuzz-roundtrip",
                                      "random Z/pZ -> M(p) blow-up round-trip checks");
    fz->add_option("--count", fz_count, "number of random torsors");
    fz->add_option("--p", fz_p, "characteristic");
    fz->add_option("--degree", fz_degree, "max degree of the defining function");
    fz->add_option("--seed", fz_seed, "RNG seed");
    fz->callback([&chosen] { chosen = "fuzz-roundtrip"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (chosen == "examples") return run_examples(example_id, example_output);
        if (chosen == "fuzz-roundtrip") return run_fuzz(fz_count, fz_p, fz_degree, fz_seed);
        return run_document(chosen, doc_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

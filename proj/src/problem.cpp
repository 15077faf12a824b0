#include "torsor/problem.hpp"

#include <algorithm>
#include <sstream>

namespace torsor {

// ------------------------------------------------------------- scanning

namespace {

struct Entry {
    std::string key, sub, value;
    int line = 0;
};

struct Block {
    std::string kind, name;
    int line = 0;
    std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::vector<Block> scan(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int no = 0;
    bool header_seen = false;
    std::vector<Block> blocks;
    while (std::getline(is, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!header_seen) {
            if (t != "torsor-problem v1")
                throw ProblemError("expected header 'torsor-problem v1', got '" + t + "'", no);
            header_seen = true;
            continue;
        }
        if (t.front() == '[') {
            if (t.back() != ']') throw ProblemError("unterminated section header", no);
            auto parts = split_ws(t.substr(1, t.size() - 2));
            if (parts.empty() || parts.size() > 2)
                throw ProblemError("malformed section header", no);
            Block b;
            b.kind = parts[0];
            if (parts.size() == 2) b.name = parts[1];
            b.line = no;
            blocks.push_back(std::move(b));
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw ProblemError("expected 'key = value'", no);
        if (blocks.empty()) throw ProblemError("entry outside any section", no);
        auto keys = split_ws(trim(t.substr(0, eq)));
        if (keys.empty() || keys.size() > 2) throw ProblemError("malformed key", no);
        Entry e;
        e.key = keys[0];
        if (keys.size() == 2) e.sub = keys[1];
        e.value = trim(t.substr(eq + 1));
        e.line = no;
        blocks.back().entries.push_back(std::move(e));
    }
    if (!header_seen) throw ProblemError("empty document", 0);
    return blocks;
}

const Entry* find_entry(const Block& b, const std::string& key) {
    for (const auto& e : b.entries)
        if (e.key == key && e.sub.empty()) return &e;
    return nullptr;
}

std::string require_entry(const Block& b, const std::string& key) {
    const Entry* e = find_entry(b, key);
    if (!e) throw ProblemError("section [" + b.kind + " " + b.name + "] needs '" + key + "'",
                               b.line);
    return e->value;
}

int parse_int(const std::string& s, int line) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ProblemError("expected an integer, got '" + s + "'", line);
    }
}

BaseRing ring_of(const std::string& s, int line) {
    if (s == "R") return BaseRing::over_R;
    if (s == "K") return BaseRing::over_K;
    if (s == "k") return BaseRing::over_k;
    throw ProblemError("ring must be R, K or k, got '" + s + "'", line);
}

std::string ring_name(BaseRing b) {
    switch (b) {
        case BaseRing::over_R: return "R";
        case BaseRing::over_K: return "K";
        default: return "k";
    }
}

// documents write tensor legs as the suffixes L / R; convert to #L / #R
MultiPoly parse_tagged(const std::string& text, const std::vector<std::string>& left_vars,
                       const std::vector<std::string>& right_vars, uint32_t p, int line) {
    std::vector<std::string> declared;
    for (const auto& g : left_vars) declared.push_back(g + "L");
    for (const auto& v : right_vars) declared.push_back(v + "R");
    try {
        MultiPoly f = parse_poly(text, declared, p);
        return retag(retag(f, "L", kTagL), "R", kTagR);
    } catch (const std::exception& e) {
        throw ProblemError(std::string(e.what()), line);
    }
}

MultiPoly parse_plain(const std::string& text, const std::vector<std::string>& vars, uint32_t p,
                      int line) {
    try {
        return parse_poly(text, vars, p);
    } catch (const std::exception& e) {
        throw ProblemError(std::string(e.what()), line);
    }
}

CoeffScalar parse_scalar(const std::string& text, uint32_t p, int line) {
    MultiPoly f = parse_plain(text, {}, p, line);
    return f.constant_value();
}

MultiPoly untag_for_print(const MultiPoly& f) {
    return retag(retag(f, kTagL, "L"), kTagR, "R");
}

// ------------------------------------------------------------- builders

AffineAlgebra build_scheme(const Block& b, uint32_t p) {
    BaseRing ring = BaseRing::over_R;
    if (const Entry* e = find_entry(b, "ring")) ring = ring_of(e->value, e->line);
    std::vector<std::string> vars = split_ws(require_entry(b, "vars"));
    std::vector<MultiPoly> rels;
    for (const auto& e : b.entries)
        if (e.key == "rel") rels.push_back(parse_plain(e.value, vars, p, e.line));
    try {
        return AffineAlgebra(ring, p, std::move(vars), std::move(rels));
    } catch (const std::exception& e) {
        throw ProblemError(std::string(e.what()), b.line);
    }
}

HopfAlgebra build_group(const Block& b, uint32_t p) {
    if (const Entry* bi = find_entry(b, "builtin")) {
        BaseRing ring = BaseRing::over_R;
        if (const Entry* e = find_entry(b, "ring")) ring = ring_of(e->value, e->line);
        int param = 0;
        if (const Entry* e = find_entry(b, "param")) param = parse_int(e->value, e->line);
        const Entry* var = find_entry(b, "var");
        try {
            if (bi->value == "constant-Z/p")
                return var ? constant_group(p, ring, var->value) : constant_group(p, ring);
            if (bi->value == "M") return var ? m_group(p, var->value) : m_group(p);
            return builtin(bi->value, p, param, ring);
        } catch (const std::exception& e) {
            throw ProblemError(std::string(e.what()), bi->line);
        }
    }
    BaseRing ring = BaseRing::over_R;
    if (const Entry* e = find_entry(b, "ring")) ring = ring_of(e->value, e->line);
    std::vector<std::string> vars = split_ws(require_entry(b, "vars"));
    std::vector<MultiPoly> rels;
    std::map<std::string, MultiPoly> comult, antipode;
    std::map<std::string, CoeffScalar> counit;
    for (const auto& e : b.entries) {
        if (e.key == "rel") rels.push_back(parse_plain(e.value, vars, p, e.line));
        else if (e.key == "comult") comult[e.sub] = parse_tagged(e.value, vars, vars, p, e.line);
        else if (e.key == "counit") counit[e.sub] = parse_scalar(e.value, p, e.line);
        else if (e.key == "antipode") antipode[e.sub] = parse_plain(e.value, vars, p, e.line);
    }
    for (const auto& v : vars)
        if (!comult.count(v) || !counit.count(v) || !antipode.count(v))
            throw ProblemError("group [" + b.name + "] lacks structure maps for " + v, b.line);
    try {
        return HopfAlgebra(AffineAlgebra(ring, p, vars, std::move(rels)), std::move(comult),
                           std::move(counit), std::move(antipode));
    } catch (const std::exception& e) {
        throw ProblemError(std::string(e.what()), b.line);
    }
}

TorsorPresentation build_torsor(const Block& b, const ProblemDocument& doc) {
    uint32_t p = doc.p;
    auto bit = doc.schemes.find(require_entry(b, "base"));
    if (bit == doc.schemes.end())
        throw ProblemError("unknown base scheme '" + require_entry(b, "base") + "'", b.line);
    auto git = doc.groups.find(require_entry(b, "group"));
    if (git == doc.groups.end())
        throw ProblemError("unknown group '" + require_entry(b, "group") + "'", b.line);
    const AffineAlgebra& base = bit->second;
    const HopfAlgebra& group = git->second;

    BaseRing ring = base.base();
    if (const Entry* e = find_entry(b, "ring")) ring = ring_of(e->value, e->line);
    std::vector<std::string> vars = split_ws(require_entry(b, "vars"));
    for (const auto& v : base.vars())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw ProblemError("torsor vars must contain base variable " + v, b.line);
    std::vector<MultiPoly> rels = base.relations();
    for (const auto& e : b.entries)
        if (e.key == "rel") {
            MultiPoly r = parse_plain(e.value, vars, p, e.line);
            if (std::find(rels.begin(), rels.end(), r) == rels.end()) rels.push_back(std::move(r));
        }
    AffineAlgebra total = [&] {
        try {
            return AffineAlgebra(ring, p, vars, rels);
        } catch (const std::exception& e) {
            throw ProblemError(std::string(e.what()), b.line);
        }
    }();

    std::map<std::string, MultiPoly> coaction;
    std::optional<Section> point;
    std::optional<GroupEmbedding> embedding;
    std::map<std::string, MultiPoly> timg;
    const Entry* matrix_var = nullptr;
    for (const auto& e : b.entries) {
        if (e.key == "coaction")
            coaction[e.sub] = parse_tagged(e.value, group.algebra().vars(), vars, p, e.line);
        else if (e.key == "point") {
            if (!point) point = Section{};
            point->assignments[e.sub] = parse_scalar(e.value, p, e.line);
        } else if (e.key == "image")
            timg[e.sub] = parse_plain(e.value, vars, p, e.line);
        else if (e.key == "matrix-var")
            matrix_var = &e;
    }
    if (const Entry* e = find_entry(b, "basis")) {
        std::vector<MultiPoly> basis;
        std::istringstream is(e->value);
        std::string part;
        while (std::getline(is, part, ';'))
            basis.push_back(parse_plain(trim(part), group.algebra().vars(), p, e->line));
        try {
            embedding = regular_embedding(group, basis);
        } catch (const std::exception& ex) {
            throw ProblemError(std::string(ex.what()), e->line);
        }
    } else if (const Entry* e = find_entry(b, "dim")) {
        GroupEmbedding E;
        E.d = parse_int(e->value, e->line);
        for (const auto& en : b.entries)
            if (en.key == "embed")
                E.images[en.sub] =
                    parse_plain(en.value, group.algebra().vars(), p, en.line);
        embedding = std::move(E);
    }
    if (matrix_var) {
        if (!embedding)
            throw ProblemError("matrix-var needs an embedding (basis or embed lines)",
                               matrix_var->line);
        if (group.algebra().vars().size() != 1)
            throw ProblemError("matrix-var requires a single-generator group", matrix_var->line);
        if (std::find(vars.begin(), vars.end(), matrix_var->value) == vars.end())
            throw ProblemError("matrix-var '" + matrix_var->value + "' is not a torsor variable",
                               matrix_var->line);
        std::map<std::string, MultiPoly> g2v;
        g2v[group.algebra().vars()[0]] = MultiPoly::var(p, matrix_var->value);
        for (const auto& [n, img] : embedding->images) {
            // embedding keys are x11..xdd / D; torsor matrix keys z11..zdd / D
            std::string key = (n == "D") ? n : "z" + n.substr(1);
            timg[key] = img.substitute(g2v);
        }
    }
    return TorsorPresentation{base,  group,           std::move(total), std::move(coaction),
                              point, std::move(embedding), std::move(timg)};
}

Command build_command(const Block& b, const ProblemDocument& doc) {
    Command c;
    c.op = require_entry(b, "op");
    if (c.op != "extend" && c.op != "verify" && c.op != "blowup" && c.op != "flat-closure")
        throw ProblemError("unknown op '" + c.op + "'", b.line);
    if (const Entry* e = find_entry(b, "scheme")) c.scheme = e->value;
    if (const Entry* e = find_entry(b, "group")) c.group = e->value;
    if (const Entry* e = find_entry(b, "torsor")) c.torsor = e->value;
    if (const Entry* e = find_entry(b, "times")) c.times = parse_int(e->value, e->line);
    if (const Entry* e = find_entry(b, "max-blowups"))
        c.max_blowups = parse_int(e->value, e->line);
    for (const auto& e : b.entries) {
        if (e.key == "section")
            c.section.assignments[e.sub] = parse_scalar(e.value, doc.p, e.line);
        else if (e.key == "lift") {
            if (c.torsor.empty() || !doc.torsors.count(c.torsor))
                throw ProblemError("lift lines need a resolvable torsor reference", e.line);
            c.lifts[e.sub] = parse_plain(
                e.value, doc.torsors.at(c.torsor).base.vars(), doc.p, e.line);
        }
    }
    auto check_ref = [&](const std::string& what, const std::string& name, bool known) {
        if (!name.empty() && !known)
            throw ProblemError("unknown " + what + " '" + name + "'", b.line);
    };
    check_ref("scheme", c.scheme, doc.schemes.count(c.scheme) > 0);
    check_ref("group", c.group, doc.groups.count(c.group) > 0);
    check_ref("torsor", c.torsor, doc.torsors.count(c.torsor) > 0);
    return c;
}

}  // namespace

ProblemDocument parse_problem(const std::string& text) {
    std::vector<Block> blocks = scan(text);
    ProblemDocument doc;
    // config first so p is known before any polynomial is parsed
    for (const auto& b : blocks) {
        if (b.kind != "config") continue;
        if (const Entry* e = find_entry(b, "p")) {
            int v = parse_int(e->value, e->line);
            if (v < 2) throw ProblemError("p must be a prime >= 2", e->line);
            doc.p = static_cast<uint32_t>(v);
        }
        if (const Entry* e = find_entry(b, "max-blowups"))
            doc.max_blowups = parse_int(e->value, e->line);
        if (const Entry* e = find_entry(b, "gb-degree-cap"))
            doc.gb_degree_cap = parse_int(e->value, e->line);
        if (const Entry* e = find_entry(b, "gb-size-cap"))
            doc.gb_size_cap = parse_int(e->value, e->line);
    }
    const Block* command = nullptr;
    for (const auto& b : blocks) {
        if (b.kind == "config") continue;
        if (b.kind == "scheme") {
            if (b.name.empty()) throw ProblemError("scheme section needs a name", b.line);
            doc.schemes.emplace(b.name, build_scheme(b, doc.p));
        } else if (b.kind == "group") {
            if (b.name.empty()) throw ProblemError("group section needs a name", b.line);
            doc.groups.emplace(b.name, build_group(b, doc.p));
        } else if (b.kind == "torsor") {
            if (b.name.empty()) throw ProblemError("torsor section needs a name", b.line);
            doc.torsors.emplace(b.name, build_torsor(b, doc));
        } else if (b.kind == "command") {
            if (command) throw ProblemError("exactly one [command] section is allowed", b.line);
            command = &b;
        } else {
            throw ProblemError("unknown section kind '" + b.kind + "'", b.line);
        }
    }
    if (!command) throw ProblemError("missing [command] section", 0);
    doc.command = build_command(*command, doc);
    return doc;
}

// ---------------------------------------------------------- serializers

namespace {

void write_scheme(std::ostream& os, const std::string& name, const AffineAlgebra& A) {
    os << "[scheme " << name << "]\n";
    os << "ring = " << ring_name(A.base()) << "\n";
    os << "vars =";
    for (const auto& v : A.vars()) os << " " << v;
    os << "\n";
    for (const auto& r : A.relations()) os << "rel = " << r.str() << "\n";
    os << "\n";
}

void write_group(std::ostream& os, const std::string& name, const HopfAlgebra& G) {
    const AffineAlgebra& A = G.algebra();
    os << "[group " << name << "]\n";
    os << "ring = " << ring_name(A.base()) << "\n";
    os << "vars =";
    for (const auto& v : A.vars()) os << " " << v;
    os << "\n";
    for (const auto& r : A.relations()) os << "rel = " << r.str() << "\n";
    for (const auto& v : A.vars()) {
        os << "comult " << v << " = " << untag_for_print(G.comult().at(v)).str() << "\n";
        os << "counit " << v << " = " << G.counit().at(v).str() << "\n";
        os << "antipode " << v << " = " << G.antipode().at(v).str() << "\n";
    }
    os << "\n";
}

void write_torsor_block(std::ostream& os, const TorsorPresentation& T) {
    os << "[torsor T]\n";
    os << "base = X\n";
    os << "group = G\n";
    os << "ring = " << ring_name(T.total.base()) << "\n";
    os << "vars =";
    for (const auto& v : T.total.vars()) os << " " << v;
    os << "\n";
    for (const auto& r : T.total.relations()) os << "rel = " << r.str() << "\n";
    for (const auto& v : T.total.vars()) {
        auto it = T.coaction.find(v);
        if (it != T.coaction.end())
            os << "coaction " << v << " = " << untag_for_print(it->second).str() << "\n";
    }
    if (T.point)
        for (const auto& [v, c] : T.point->assignments)
            os << "point " << v << " = " << c.str() << "\n";
    if (T.embedding) {
        os << "dim = " << T.embedding->d << "\n";
        for (const auto& [n, img] : T.embedding->images)
            os << "embed " << n << " = " << img.str() << "\n";
    }
    for (const auto& [n, img] : T.torsor_images)
        os << "image " << n << " = " << img.str() << "\n";
    os << "\n";
}

}  // namespace

std::string serialize_verify_problem(const TorsorPresentation& T, uint32_t p,
                                     std::optional<int> max_blowups) {
    std::ostringstream os;
    os << "torsor-problem v1\n\n";
    os << "[config]\n";
    os << "p = " << p << "\n";
    if (max_blowups) os << "max-blowups = " << *max_blowups << "\n";
    os << "\n";
    write_scheme(os, "X", T.base);
    write_group(os, "G", T.group);
    write_torsor_block(os, T);
    os << "[command]\n";
    os << "op = verify\n";
    os << "torsor = T\n";
    return os.str();
}

std::optional<std::string> embedded_problem(const std::string& result_text) {
    size_t at = result_text.find("torsor-problem v1");
    if (at == std::string::npos) return std::nullopt;
    return result_text.substr(at);
}

// --------------------------------------------------------------- runner

namespace {

void write_report(std::ostream& os, const TorsorReport& rep) {
    for (const auto& l : rep.lines)
        os << "check " << l.axiom << " = " << (l.pass ? "pass" : "FAIL") << "\n";
}

void write_trace(std::ostream& os, const BlowupTrace& trace) {
    os << "[trace]\n";
    os << "steps = " << trace.steps << "\n";
    for (const auto& [from, to] : trace.substitutions)
        os << "substitute " << from << " = pi^" << trace.steps << "*" << to << " + center\n";
    for (size_t i = 0; i < trace.normalization_exponents.size(); ++i)
        os << "normalize rel" << i << " = pi^-" << trace.normalization_exponents[i] << "\n";
    os << "\n";
}

}  // namespace

RunOutcome run_problem(const ProblemDocument& doc, bool trace) {
    GroebnerLimits saved = groebner_limits();
    if (doc.gb_degree_cap) groebner_limits().degree_cap = *doc.gb_degree_cap;
    if (doc.gb_size_cap) groebner_limits().basis_cap = static_cast<size_t>(*doc.gb_size_cap);
    std::ostringstream os;
    int code = 0;
    os << "torsor-result v1\n\n[result]\nop = " << doc.command.op << "\n";
    try {
        const Command& c = doc.command;
        if (c.op == "flat-closure") {
            if (c.scheme.empty()) throw ProblemError("flat-closure needs scheme =", 0);
            AffineAlgebra F = flat_closure(doc.schemes.at(c.scheme));
            os << "status = ok\n\n";
            write_scheme(os, c.scheme, F);
        } else if (c.op == "verify") {
            if (c.torsor.empty()) throw ProblemError("verify needs torsor =", 0);
            const TorsorPresentation& T = doc.torsors.at(c.torsor);
            TorsorReport rep = verify_torsor(T);
            code = rep.pass() ? 0 : 1;
            os << "status = " << (rep.pass() ? "ok" : "failed") << "\n";
            write_report(os, rep);
            os << "\n" << serialize_verify_problem(T, doc.p);
        } else if (c.op == "blowup") {
            int targets = (!c.scheme.empty()) + (!c.group.empty()) + (!c.torsor.empty());
            if (targets != 1)
                throw ProblemError("blowup needs exactly one of scheme/group/torsor", 0);
            if (!c.scheme.empty()) {
                BlowupResult B = neron_blowup(doc.schemes.at(c.scheme), c.section, c.times);
                os << "status = ok\n\n";
                if (trace) write_trace(os, B.trace);
                write_scheme(os, c.scheme, B.algebra);
            } else if (!c.group.empty()) {
                HopfAlgebra G = blowup_group(doc.groups.at(c.group), c.times);
                os << "status = ok\n\n";
                write_group(os, c.group, G);
            } else {
                TorsorPresentation B =
                    blowup_torsor(doc.torsors.at(c.torsor), c.lifts, c.times);
                os << "status = ok\n\n";
                if (B.embedding && !B.torsor_images.empty()) {
                    write_report(os, verify_torsor(B));
                    os << "\n";
                }
                os << serialize_verify_problem(B, doc.p);
            }
        } else {  // extend
            if (c.scheme.empty() || c.torsor.empty())
                throw ProblemError("extend needs scheme = and torsor =", 0);
            int cap = c.max_blowups ? *c.max_blowups : doc.max_blowups;
            ExtensionResult R =
                extend_torsor(doc.schemes.at(c.scheme), c.section, doc.torsors.at(c.torsor), cap);
            code = R.verification.pass() ? 0 : 1;
            os << "status = " << (code == 0 ? "ok" : "failed") << "\n";
            os << "blowups = " << R.blowups.steps << "\n";
            write_report(os, R.verification);
            os << "\n";
            if (trace) {
                write_trace(os, R.blowups);
                os << "[groebner]\n";
                os << "gb-size total = " << R.model_total.ideal().groebner_basis().size() << "\n";
                os << "gb-size group = "
                   << R.model_group.algebra().ideal().groebner_basis().size() << "\n\n";
            }
            os << serialize_verify_problem(R.model, doc.p);
        }
    } catch (const FinitenessGuardFailed& e) {
        os << "status = guard\nerror = FinitenessGuardFailed: " << e.what() << "\n";
        code = 2;
    } catch (const MaxBlowupsExceeded& e) {
        os << "status = guard\nerror = MaxBlowupsExceeded: " << e.what() << "\n";
        code = 2;
    } catch (const std::exception& e) {
        os << "status = error\nerror = " << e.what() << "\n";
        code = 1;
    }
    groebner_limits() = saved;
    return {code, os.str()};
}

}  // namespace torsor

#include <set>
#include <sstream>

#include "hypersynth/error.hpp"
#include "hypersynth/reductions.hpp"

namespace hypersynth {

namespace {

struct Header {
    std::size_t vars = 0, clauses = 0;
};

Header read_header(std::istringstream& ls) {
    std::string p, fmt;
    Header h;
    long long v = -1, c = -1;
    ls >> p >> fmt >> v >> c;
    if (fmt != "cnf" || v < 0 || c < 0) throw FormatError("malformed problem line");
    h.vars = static_cast<std::size_t>(v);
    h.clauses = static_cast<std::size_t>(c);
    return h;
}

int read_literal(const std::string& tok, std::size_t vars) {
    std::size_t used = 0;
    long long v;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw FormatError("bad token '" + tok + "'");
    }
    if (used != tok.size()) throw FormatError("bad token '" + tok + "'");
    if (static_cast<std::size_t>(v < 0 ? -v : v) > vars) throw FormatError("literal " + tok + " out of range");
    return static_cast<int>(v);
}

// Shared reader; quantifier lines are only accepted when prefix is non-null.
CnfInput read(const std::string& text, std::vector<std::pair<Quant, int>>* prefix) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false, in_matrix = false;
    Header h;
    CnfInput out;
    std::vector<int> cur;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "%") break;
        if (first == "p") {
            if (have_header) throw FormatError("duplicate problem line");
            std::istringstream again(line);
            h = read_header(again);
            have_header = true;
            continue;
        }
        if (!have_header) throw FormatError("clause before problem line");
        if (first == "a" || first == "e") {
            if (!prefix) throw FormatError("quantifier line in plain DIMACS");
            if (in_matrix) throw FormatError("quantifier line after clauses");
            std::string tok;
            bool closed = false;
            while (ls >> tok) {
                int v = read_literal(tok, h.vars);
                if (v == 0) {
                    closed = true;
                    break;
                }
                if (v < 0) throw FormatError("negative variable in quantifier line");
                prefix->emplace_back(first == "a" ? Quant::Forall : Quant::Exists, v);
            }
            if (!closed) throw FormatError("quantifier line not terminated by 0");
            continue;
        }
        in_matrix = true;
        std::istringstream toks(line);
        std::string tok;
        while (toks >> tok) {
            int v = read_literal(tok, h.vars);
            if (v == 0) {
                out.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(v);
            }
        }
    }
    if (!have_header) throw FormatError("missing problem line");
    if (!cur.empty()) throw FormatError("last clause not terminated by 0");
    if (out.clauses.size() != h.clauses)
        throw FormatError("expected " + std::to_string(h.clauses) + " clauses, found " + std::to_string(out.clauses.size()));
    out.num_vars = h.vars;
    return out;
}

}  // namespace

CnfInput parse_dimacs(const std::string& text) { return read(text, nullptr); }

QbfInput parse_qdimacs(const std::string& text) {
    QbfInput q;
    CnfInput c = read(text, &q.prefix);
    q.num_vars = c.num_vars;
    q.clauses = std::move(c.clauses);
    // free variables are existential and outermost
    std::set<int> bound;
    for (const auto& [qq, v] : q.prefix)
        if (!bound.insert(v).second) throw FormatError("variable " + std::to_string(v) + " quantified twice");
    std::set<int> free;
    for (const auto& cl : q.clauses)
        for (int l : cl)
            if (!bound.count(l < 0 ? -l : l)) free.insert(l < 0 ? -l : l);
    std::vector<std::pair<Quant, int>> pre;
    for (int v : free) pre.emplace_back(Quant::Exists, v);
    q.prefix.insert(q.prefix.begin(), pre.begin(), pre.end());
    return q;
}

std::string to_dimacs(const CnfInput& in) {
    std::ostringstream os;
    os << "p cnf " << in.num_vars << " " << in.clauses.size() << "\n";
    for (const auto& c : in.clauses) {
        for (int l : c) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

std::string to_qdimacs(const QbfInput& in) {
    std::ostringstream os;
    os << "p cnf " << in.num_vars << " " << in.clauses.size() << "\n";
    for (std::size_t i = 0; i < in.prefix.size();) {
        Quant q = in.prefix[i].first;
        os << (q == Quant::Forall ? "a" : "e");
        for (; i < in.prefix.size() && in.prefix[i].first == q; ++i) os << " " << in.prefix[i].second;
        os << " 0\n";
    }
    for (const auto& c : in.clauses) {
        for (int l : c) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

}  // namespace hypersynth

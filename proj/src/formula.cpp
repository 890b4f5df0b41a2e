#include "hypersynth/formula.hpp"

#include <functional>
#include <map>

#include "hypersynth/error.hpp"

namespace hypersynth {

namespace {

Body make(Op op, Body l = nullptr, Body r = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

}  // namespace

Body tt() {
    static const Body t = make(Op::True);
    return t;
}
Body ff() { return lnot(tt()); }
Body atom(std::string prop, std::string var) {
    auto n = std::make_shared<Node>();
    n->op = Op::Atom;
    n->prop = std::move(prop);
    n->var = std::move(var);
    return n;
}
Body lnot(Body a) { return make(Op::Not, std::move(a)); }
Body lor(Body a, Body b) { return make(Op::Or, std::move(a), std::move(b)); }
Body land(Body a, Body b) { return make(Op::And, std::move(a), std::move(b)); }
Body implies(Body a, Body b) { return make(Op::Implies, std::move(a), std::move(b)); }
Body iff(Body a, Body b) { return make(Op::Iff, std::move(a), std::move(b)); }
Body next(Body a) { return make(Op::Next, std::move(a)); }
Body until(Body a, Body b) { return make(Op::Until, std::move(a), std::move(b)); }
Body release(Body a, Body b) { return make(Op::Release, std::move(a), std::move(b)); }
Body eventually(Body a) { return make(Op::Eventually, std::move(a)); }
Body globally(Body a) { return make(Op::Globally, std::move(a)); }

Body conj(const std::vector<Body>& parts) {
    if (parts.empty()) return tt();
    Body r = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) r = land(r, parts[i]);
    return r;
}

Body disj(const std::vector<Body>& parts) {
    if (parts.empty()) return ff();
    Body r = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) r = lor(r, parts[i]);
    return r;
}

bool equal(const Body& a, const Body& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    if (a->op == Op::Atom) return a->prop == b->prop && a->var == b->var;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

bool equal(const Formula& a, const Formula& b) { return a.prefix == b.prefix && equal(a.body, b.body); }

Body desugar(const Body& b) {
    switch (b->op) {
        case Op::True:
        case Op::Atom: return b;
        case Op::Not: return lnot(desugar(b->lhs));
        case Op::Or: return lor(desugar(b->lhs), desugar(b->rhs));
        case Op::And: return lnot(lor(lnot(desugar(b->lhs)), lnot(desugar(b->rhs))));
        case Op::Implies: return lor(lnot(desugar(b->lhs)), desugar(b->rhs));
        case Op::Iff: {
            Body x = desugar(b->lhs), y = desugar(b->rhs);
            Body both = lnot(lor(lnot(x), lnot(y)));
            Body neither = lnot(lor(x, y));
            return lor(both, neither);
        }
        case Op::Next: return next(desugar(b->lhs));
        case Op::Until: return until(desugar(b->lhs), desugar(b->rhs));
        case Op::Release: return lnot(until(lnot(desugar(b->lhs)), lnot(desugar(b->rhs))));
        case Op::Eventually: return until(tt(), desugar(b->lhs));
        case Op::Globally: return lnot(until(tt(), lnot(desugar(b->lhs))));
    }
    return b;
}

namespace {

Body nnf(const Body& b, bool neg) {
    switch (b->op) {
        case Op::True:
        case Op::Atom: return neg ? lnot(b) : b;
        case Op::Not: return nnf(b->lhs, !neg);
        case Op::Or:
            return neg ? land(nnf(b->lhs, true), nnf(b->rhs, true)) : lor(nnf(b->lhs, false), nnf(b->rhs, false));
        case Op::And:
            return neg ? lor(nnf(b->lhs, true), nnf(b->rhs, true)) : land(nnf(b->lhs, false), nnf(b->rhs, false));
        case Op::Implies:
            return neg ? land(nnf(b->lhs, false), nnf(b->rhs, true)) : lor(nnf(b->lhs, true), nnf(b->rhs, false));
        case Op::Iff: {
            Body pa = nnf(b->lhs, false), na = nnf(b->lhs, true);
            Body pb = nnf(b->rhs, false), nb = nnf(b->rhs, true);
            return neg ? lor(land(pa, nb), land(na, pb)) : lor(land(pa, pb), land(na, nb));
        }
        case Op::Next: return next(nnf(b->lhs, neg));
        case Op::Until:
            return neg ? release(nnf(b->lhs, true), nnf(b->rhs, true)) : until(nnf(b->lhs, false), nnf(b->rhs, false));
        case Op::Release:
            return neg ? until(nnf(b->lhs, true), nnf(b->rhs, true)) : release(nnf(b->lhs, false), nnf(b->rhs, false));
        case Op::Eventually: return neg ? release(ff(), nnf(b->lhs, true)) : until(tt(), nnf(b->lhs, false));
        case Op::Globally: return neg ? until(tt(), nnf(b->lhs, true)) : release(ff(), nnf(b->lhs, false));
    }
    return b;
}

bool is_primary(const Body& b) { return b->op == Op::True || b->op == Op::Atom; }

bool is_unary(const Body& b) {
    return b->op == Op::Not || b->op == Op::Next || b->op == Op::Eventually || b->op == Op::Globally;
}

std::string operand(const Body& b);

std::string print_node(const Body& b) {
    switch (b->op) {
        case Op::True: return "true";
        case Op::Atom: return b->prop + "[" + b->var + "]";
        case Op::Not:
            if (b->lhs->op == Op::True) return "false";
            return "!" + operand(b->lhs);
        case Op::Next: return "X " + operand(b->lhs);
        case Op::Eventually: return "F " + operand(b->lhs);
        case Op::Globally: return "G " + operand(b->lhs);
        case Op::Or: return operand(b->lhs) + " | " + operand(b->rhs);
        case Op::And: return operand(b->lhs) + " & " + operand(b->rhs);
        case Op::Implies: return operand(b->lhs) + " -> " + operand(b->rhs);
        case Op::Iff: return operand(b->lhs) + " <-> " + operand(b->rhs);
        case Op::Until: return operand(b->lhs) + " U " + operand(b->rhs);
        case Op::Release: return print_node(lnot(until(lnot(b->lhs), lnot(b->rhs))));
    }
    return "?";
}

std::string operand(const Body& b) {
    if (is_primary(b) || is_unary(b)) return print_node(b);
    return "(" + print_node(b) + ")";
}

}  // namespace

Body negate_nnf(const Body& b) { return nnf(b, true); }

std::string print(const Body& b) { return print_node(b); }

std::string print(const Formula& f) {
    std::string s;
    for (const auto& [q, v] : f.prefix) s += (q == Quant::Forall ? "forall " : "exists ") + v + ". ";
    return s + print(f.body);
}

std::set<std::string> free_vars(const Body& b) {
    std::set<std::string> out;
    std::function<void(const Body&)> go = [&](const Body& n) {
        if (!n) return;
        if (n->op == Op::Atom) out.insert(n->var);
        go(n->lhs);
        go(n->rhs);
    };
    go(b);
    return out;
}

std::set<std::string> props(const Body& b) {
    std::set<std::string> out;
    std::function<void(const Body&)> go = [&](const Body& n) {
        if (!n) return;
        if (n->op == Op::Atom) out.insert(n->prop);
        go(n->lhs);
        go(n->rhs);
    };
    go(b);
    return out;
}

std::size_t node_count(const Body& b) {
    if (!b) return 0;
    return 1 + node_count(b->lhs) + node_count(b->rhs);
}

void check_closed(const Formula& f) {
    std::set<std::string> bound;
    for (const auto& [q, v] : f.prefix)
        if (!bound.insert(v).second) throw DuplicateQuantifier(v);
    for (const auto& v : free_vars(f.body))
        if (!bound.count(v)) throw UnboundVariable(v);
}

std::string Fragment::name() const {
    switch (kind) {
        case EStar: return "E*";
        case AStar: return "A*";
        case EStarA: return "E*A";
        case AEStar: return "AE*";
        case EA: return "EA(" + std::to_string(alternations) + ")";
        case AE: return "AE(" + std::to_string(alternations) + ")";
    }
    return "?";
}

std::size_t alternation_count(const Formula& f) {
    std::size_t n = 0;
    for (std::size_t i = 1; i < f.prefix.size(); ++i)
        if (f.prefix[i].first != f.prefix[i - 1].first) ++n;
    return n;
}

Fragment classify_fragment(const Formula& f) {
    Fragment r;
    r.alternations = alternation_count(f);
    const auto& p = f.prefix;
    auto count = [&](Quant q) {
        std::size_t c = 0;
        for (const auto& e : p) c += e.first == q;
        return c;
    };
    if (count(Quant::Forall) == 0) {
        r.kind = Fragment::EStar;
    } else if (count(Quant::Exists) == 0) {
        r.kind = Fragment::AStar;
    } else if (r.alternations == 1 && p.back().first == Quant::Forall && count(Quant::Forall) == 1) {
        r.kind = Fragment::EStarA;
    } else if (r.alternations == 1 && p.front().first == Quant::Forall && count(Quant::Forall) == 1) {
        r.kind = Fragment::AEStar;
    } else {
        r.kind = p.front().first == Quant::Exists ? Fragment::EA : Fragment::AE;
    }
    return r;
}

namespace {

Body rename(const Body& b, const std::map<std::string, std::string>& m) {
    if (!b) return b;
    if (b->op == Op::Atom) {
        auto it = m.find(b->var);
        return it == m.end() ? b : atom(b->prop, it->second);
    }
    auto n = std::make_shared<Node>(*b);
    n->lhs = rename(b->lhs, m);
    n->rhs = rename(b->rhs, m);
    return n;
}

}  // namespace

Formula conjoin(const Formula& a, const Formula& b) {
    std::set<std::string> mine, used;
    for (const auto& [q, v] : a.prefix) mine.insert(v);
    used = mine;
    for (const auto& [q, v] : b.prefix) used.insert(v);
    std::map<std::string, std::string> m;
    Formula r = a;
    for (const auto& [q, v] : b.prefix) {
        std::string nv = v;
        if (mine.count(v)) {
            for (int i = 1; used.count(nv); ++i) nv = v + std::to_string(i);
            used.insert(nv);
            m[v] = nv;
        }
        r.prefix.emplace_back(q, nv);
    }
    r.body = land(a.body, rename(b.body, m));
    return r;
}

}  // namespace hypersynth

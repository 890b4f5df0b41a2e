#include "hypersynth/semantics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "hypersynth/error.hpp"

namespace hypersynth {

namespace {

struct TraceData {
    std::size_t stem = 0;
    std::size_t loop = 1;
    std::vector<std::uint64_t> masks;  // stem letters then loop letters

    std::uint64_t at(std::size_t pos) const {
        return pos < stem ? masks[pos] : masks[stem + (pos - stem) % loop];
    }
};

using PropIndex = std::map<std::string, int>;

int intern(PropIndex& idx, const std::string& prop) {
    auto it = idx.find(prop);
    if (it != idx.end()) return it->second;
    if (idx.size() >= 64) throw Error("more than 64 distinct propositions in one formula");
    int id = static_cast<int>(idx.size());
    idx.emplace(prop, id);
    return id;
}

TraceData make_trace(const Lasso& l, const PropIndex& idx) {
    if (l.loop.empty()) throw Error("lasso with empty loop");
    TraceData t;
    t.stem = l.stem.size();
    t.loop = l.loop.size();
    auto mask = [&](const Letter& letter) {
        std::uint64_t m = 0;
        for (const auto& a : letter) {
            auto it = idx.find(a);
            if (it != idx.end()) m |= std::uint64_t{1} << it->second;
        }
        return m;
    };
    for (const auto& x : l.stem) t.masks.push_back(mask(x));
    for (const auto& x : l.loop) t.masks.push_back(mask(x));
    return t;
}

enum class POp : std::uint8_t { True, Atom, Not, Or, And, Implies, Iff, Next, Until, Release };

struct PNode {
    POp op = POp::True;
    int a = -1, b = -1;
    int prop = 0;
    int slot = 0;  // local
};

// Quantifier-free body compiled to a postorder array.
struct Program {
    std::vector<PNode> nodes;
    std::vector<std::size_t> slots;  // global slot of each local slot, ascending

    int emit(PNode n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int build(const Body& b, const std::map<std::size_t, int>& local, const std::map<std::string, std::size_t>& slot_of,
              PropIndex& props) {
        auto un = [&](POp op) {
            int x = build(b->lhs, local, slot_of, props);
            return emit({op, x});
        };
        auto bin = [&](POp op) {
            int x = build(b->lhs, local, slot_of, props);
            int y = build(b->rhs, local, slot_of, props);
            return emit({op, x, y});
        };
        switch (b->op) {
            case Op::True: return emit({POp::True});
            case Op::Atom: {
                auto it = slot_of.find(b->var);
                if (it == slot_of.end()) throw UnboundVariable(b->var);
                PNode n{POp::Atom};
                n.prop = intern(props, b->prop);
                n.slot = local.at(it->second);
                return emit(n);
            }
            case Op::Not: return un(POp::Not);
            case Op::Next: return un(POp::Next);
            case Op::Or: return bin(POp::Or);
            case Op::And: return bin(POp::And);
            case Op::Implies: return bin(POp::Implies);
            case Op::Iff: return bin(POp::Iff);
            case Op::Until: return bin(POp::Until);
            case Op::Release: return bin(POp::Release);
            case Op::Eventually: {
                int t = emit({POp::True});
                int x = build(b->lhs, local, slot_of, props);
                return emit({POp::Until, t, x});
            }
            case Op::Globally: {
                int t = emit({POp::True});
                int f = emit({POp::Not, t});
                int x = build(b->lhs, local, slot_of, props);
                return emit({POp::Release, f, x});
            }
        }
        throw Error("bad node");
    }

    static Program compile(const Body& b, const std::map<std::string, std::size_t>& slot_of, PropIndex& props) {
        Program p;
        std::set<std::size_t> used;
        for (const auto& v : free_vars(b)) {
            auto it = slot_of.find(v);
            if (it == slot_of.end()) throw UnboundVariable(v);
            used.insert(it->second);
        }
        std::map<std::size_t, int> local;
        for (auto s : used) {
            local[s] = static_cast<int>(p.slots.size());
            p.slots.push_back(s);
        }
        p.build(b, local, slot_of, props);
        return p;
    }

    bool eval(const TraceData* const* tr, std::size_t limit, std::vector<std::uint8_t>& buf) const {
        std::size_t S = 0, P = 1;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            S = std::max(S, tr[i]->stem);
            P = std::lcm(P, tr[i]->loop);
            if (P > limit) throw HorizonExceeded(P, limit);
        }
        const std::size_t H = S + P;
        if (H > limit) throw HorizonExceeded(H, limit);
        buf.assign(nodes.size() * H, 0);
        auto succ = [&](std::size_t p) { return p + 1 < H ? p + 1 : S; };
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const PNode& n = nodes[k];
            std::uint8_t* v = &buf[k * H];
            const std::uint8_t* A = n.a >= 0 ? &buf[static_cast<std::size_t>(n.a) * H] : nullptr;
            const std::uint8_t* B = n.b >= 0 ? &buf[static_cast<std::size_t>(n.b) * H] : nullptr;
            switch (n.op) {
                case POp::True: std::fill(v, v + H, 1); break;
                case POp::Atom: {
                    const TraceData& t = *tr[n.slot];
                    for (std::size_t p = 0; p < H; ++p) v[p] = (t.at(p) >> n.prop) & 1;
                    break;
                }
                case POp::Not:
                    for (std::size_t p = 0; p < H; ++p) v[p] = !A[p];
                    break;
                case POp::Or:
                    for (std::size_t p = 0; p < H; ++p) v[p] = A[p] | B[p];
                    break;
                case POp::And:
                    for (std::size_t p = 0; p < H; ++p) v[p] = A[p] & B[p];
                    break;
                case POp::Implies:
                    for (std::size_t p = 0; p < H; ++p) v[p] = static_cast<std::uint8_t>(!A[p]) | B[p];
                    break;
                case POp::Iff:
                    for (std::size_t p = 0; p < H; ++p) v[p] = A[p] == B[p];
                    break;
                case POp::Next:
                    for (std::size_t p = 0; p < H; ++p) v[p] = A[succ(p)];
                    break;
                case POp::Until:
                case POp::Release: {
                    const bool until = n.op == POp::Until;
                    auto step = [&](std::size_t p, std::uint8_t nxt) -> std::uint8_t {
                        return until ? (B[p] | (A[p] & nxt)) : (B[p] & (A[p] | nxt));
                    };
                    // least (Until) or greatest (Release) fixpoint on the loop
                    for (std::size_t p = S; p < H; ++p) v[p] = B[p];
                    for (std::size_t sweep = 0; sweep <= P; ++sweep) {
                        bool changed = false;
                        for (std::size_t p = H; p-- > S;) {
                            std::uint8_t nv = step(p, v[succ(p)]);
                            if (nv != v[p]) {
                                v[p] = nv;
                                changed = true;
                            }
                        }
                        if (!changed) break;
                    }
                    for (std::size_t p = S; p-- > 0;) v[p] = step(p, v[p + 1]);
                    break;
                }
            }
        }
        return buf[(nodes.size() - 1) * H] != 0;
    }
};

}  // namespace

bool eval_body(const Body& b, const Assignment& asg, std::size_t horizon_limit) {
    std::map<std::string, std::size_t> slot_of;
    std::vector<const Lasso*> by_slot;
    for (const auto& [v, l] : asg) {
        slot_of[v] = by_slot.size();
        by_slot.push_back(&l);
    }
    PropIndex props;
    Program prog = Program::compile(b, slot_of, props);
    std::vector<TraceData> data;
    for (auto s : prog.slots) data.push_back(make_trace(*by_slot[s], props));
    std::vector<const TraceData*> ptr;
    for (const auto& d : data) ptr.push_back(&d);
    std::vector<std::uint8_t> buf;
    return prog.eval(ptr.data(), horizon_limit, buf);
}

// ---------------------------------------------------------------------------

struct Checker::Impl {
    struct Leaf {
        Program prog;
        std::uint64_t vars = 0;
        bool dense = false;
        bool cacheable = true;
        std::vector<std::int8_t> dense_cache;
        std::unordered_map<std::uint64_t, std::uint8_t> sparse_cache;
    };
    enum class Kind { Leaf, And, Or, Exists, Forall };
    struct QNode {
        Kind kind = Kind::Leaf;
        std::vector<int> kids;
        int leaf = -1;
        bool neg = false;
        std::size_t var = 0;
        std::uint64_t vars = 0;
    };

    Formula f;
    std::vector<Lasso> universe;
    std::size_t limit;
    PropIndex props;
    std::map<std::string, std::size_t> slot_of;
    std::vector<TraceData> traces;
    std::vector<Leaf> leaves;
    std::map<std::string, int> leaf_ids;
    std::vector<QNode> nodes;
    int skeleton = -1;
    std::map<std::size_t, int> roots;
    std::vector<std::uint32_t> asg;
    const std::vector<std::uint32_t>* domain = nullptr;
    std::vector<std::uint8_t> buf;
    std::vector<const TraceData*> ptrs;
    std::size_t evals = 0;

    int add(QNode n) {
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    int leaf_node(const Body& b, bool neg) {
        std::string key = print(b);
        auto it = leaf_ids.find(key);
        int id;
        if (it != leaf_ids.end()) {
            id = it->second;
        } else {
            Leaf l;
            l.prog = Program::compile(b, slot_of, props);
            for (auto s : l.prog.slots) l.vars |= std::uint64_t{1} << s;
            id = static_cast<int>(leaves.size());
            leaves.push_back(std::move(l));
            leaf_ids.emplace(key, id);
        }
        QNode n;
        n.kind = Kind::Leaf;
        n.leaf = id;
        n.neg = neg;
        n.vars = leaves[id].vars;
        return add(n);
    }

    int junction(Kind k, std::vector<int> kids) {
        std::vector<int> flat;
        for (int c : kids) {
            if (nodes[c].kind == k) {
                auto inner = nodes[c].kids;
                flat.insert(flat.end(), inner.begin(), inner.end());
            } else {
                flat.push_back(c);
            }
        }
        if (flat.size() == 1) return flat[0];
        std::stable_sort(flat.begin(), flat.end(), [&](int x, int y) {
            auto rank = [&](int i) {
                bool q = nodes[i].kind == Kind::Exists || nodes[i].kind == Kind::Forall;
                return std::pair<int, int>(q, std::popcount(nodes[i].vars));
            };
            return rank(x) < rank(y);
        });
        QNode n;
        n.kind = k;
        for (int c : flat) n.vars |= nodes[c].vars;
        n.kids = std::move(flat);
        return add(n);
    }

    // Boolean skeleton over temporal leaves, negations pushed to the leaves.
    int skel(const Body& b, bool neg) {
        switch (b->op) {
            case Op::Not: return skel(b->lhs, !neg);
            case Op::Or:
                return junction(neg ? Kind::And : Kind::Or, {skel(b->lhs, neg), skel(b->rhs, neg)});
            case Op::And:
                return junction(neg ? Kind::Or : Kind::And, {skel(b->lhs, neg), skel(b->rhs, neg)});
            case Op::Implies:
                return junction(neg ? Kind::And : Kind::Or, {skel(b->lhs, !neg), skel(b->rhs, neg)});
            case Op::Iff: {
                int l = skel(b->lhs, false), nl = skel(b->lhs, true);
                int r = skel(b->rhs, false), nr = skel(b->rhs, true);
                if (neg) return junction(Kind::Or, {junction(Kind::And, {l, nr}), junction(Kind::And, {nl, r})});
                return junction(Kind::Or, {junction(Kind::And, {l, r}), junction(Kind::And, {nl, nr})});
            }
            case Op::Eventually:
                if (b->lhs->op == Op::Or)
                    return junction(neg ? Kind::And : Kind::Or,
                                    {skel(eventually(b->lhs->lhs), neg), skel(eventually(b->lhs->rhs), neg)});
                return leaf_node(b, neg);
            case Op::Globally:
                if (b->lhs->op == Op::And)
                    return junction(neg ? Kind::Or : Kind::And,
                                    {skel(globally(b->lhs->lhs), neg), skel(globally(b->lhs->rhs), neg)});
                return leaf_node(b, neg);
            default: return leaf_node(b, neg);
        }
    }

    int quantify(Quant q, std::size_t v, int node) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (!(nodes[node].vars & bit)) return node;
        Kind k = nodes[node].kind;
        Kind same = q == Quant::Exists ? Kind::Or : Kind::And;
        Kind other = q == Quant::Exists ? Kind::And : Kind::Or;
        if (k == same) {
            std::vector<int> kids;
            for (int c : std::vector<int>(nodes[node].kids)) kids.push_back(quantify(q, v, c));
            return junction(same, kids);
        }
        if (k == other) {
            std::vector<int> with, without;
            for (int c : nodes[node].kids) (nodes[c].vars & bit ? with : without).push_back(c);
            if (!without.empty()) {
                int inner = with.size() == 1 ? with[0] : junction(other, with);
                without.push_back(quantify(q, v, inner));
                return junction(other, without);
            }
        }
        QNode n;
        n.kind = q == Quant::Exists ? Kind::Exists : Kind::Forall;
        n.var = v;
        n.kids = {node};
        n.vars = nodes[node].vars & ~bit;
        return add(n);
    }

    bool leaf_value(Leaf& l) {
        const std::size_t N = universe.size();
        std::uint64_t key = 0;
        if (l.cacheable) {
            std::uint64_t mul = 1;
            for (auto s : l.prog.slots) {
                key += asg[s] * mul;
                mul *= N;
            }
            if (l.dense) {
                std::int8_t c = l.dense_cache[key];
                if (c >= 0) return c;
            } else {
                auto it = l.sparse_cache.find(key);
                if (it != l.sparse_cache.end()) return it->second;
            }
        }
        ptrs.clear();
        for (auto s : l.prog.slots) ptrs.push_back(&traces[asg[s]]);
        ++evals;
        bool r = l.prog.eval(ptrs.data(), limit, buf);
        if (l.cacheable) {
            if (l.dense)
                l.dense_cache[key] = r;
            else
                l.sparse_cache.emplace(key, r);
        }
        return r;
    }

    bool eval(int id) {
        const QNode& n = nodes[id];
        switch (n.kind) {
            case Kind::Leaf: return leaf_value(leaves[n.leaf]) != n.neg;
            case Kind::And:
                for (int c : n.kids)
                    if (!eval(c)) return false;
                return true;
            case Kind::Or:
                for (int c : n.kids)
                    if (eval(c)) return true;
                return false;
            case Kind::Exists:
                for (auto t : *domain) {
                    asg[n.var] = t;
                    if (eval(n.kids[0])) return true;
                }
                return false;
            case Kind::Forall:
                for (auto t : *domain) {
                    asg[n.var] = t;
                    if (!eval(n.kids[0])) return false;
                }
                return true;
        }
        return false;
    }

    int root_from(std::size_t first) {
        auto it = roots.find(first);
        if (it != roots.end()) return it->second;
        int node = skeleton;
        for (std::size_t i = f.prefix.size(); i-- > first;) node = quantify(f.prefix[i].first, i, node);
        roots.emplace(first, node);
        return node;
    }
};

Checker::Checker(const Formula& f, std::vector<Lasso> universe, std::size_t horizon_limit)
    : impl_(std::make_unique<Impl>()) {
    auto& m = *impl_;
    check_closed(f);
    if (f.prefix.size() > 64) throw Error("more than 64 quantified trace variables");
    m.f = f;
    m.universe = std::move(universe);
    m.limit = horizon_limit;
    for (std::size_t i = 0; i < f.prefix.size(); ++i) m.slot_of[f.prefix[i].second] = i;
    m.skeleton = m.skel(f.body, false);
    for (const auto& l : m.universe) m.traces.push_back(make_trace(l, m.props));
    m.asg.assign(f.prefix.size(), 0);
    const double N = static_cast<double>(std::max<std::size_t>(m.universe.size(), 1));
    for (auto& l : m.leaves) {
        double space = std::pow(N, static_cast<double>(l.prog.slots.size()));
        if (space <= double(1 << 24)) {
            l.dense = true;
            l.dense_cache.assign(static_cast<std::size_t>(space), -1);
        } else {
            l.cacheable = space < 9.0e18;
        }
    }
}

Checker::~Checker() = default;
Checker::Checker(Checker&&) noexcept = default;
Checker& Checker::operator=(Checker&&) noexcept = default;

const Formula& Checker::formula() const { return impl_->f; }
const std::vector<Lasso>& Checker::universe() const { return impl_->universe; }
std::size_t Checker::body_evaluations() const { return impl_->evals; }

bool Checker::holds(const std::vector<std::uint32_t>& domain) { return holds_from(0, {}, domain); }

bool Checker::holds_from(std::size_t first, const std::vector<std::uint32_t>& fixed,
                         const std::vector<std::uint32_t>& domain) {
    auto& m = *impl_;
    if (first > m.f.prefix.size() || fixed.size() < first) throw Error("holds_from: bad fixed prefix");
    for (std::size_t i = 0; i < first; ++i) {
        if (fixed[i] >= m.universe.size()) throw Error("holds_from: trace index out of range");
        m.asg[i] = fixed[i];
    }
    if (first == m.f.prefix.size()) return m.eval(m.skeleton);
    if (domain.empty()) return m.f.prefix[first].first == Quant::Forall;
    for (auto t : domain)
        if (t >= m.universe.size()) throw Error("holds_from: trace index out of range");
    m.domain = &domain;
    return m.eval(m.root_from(first));
}

bool Checker::body(const std::vector<std::uint32_t>& assignment) {
    if (assignment.size() != impl_->f.prefix.size()) throw Error("body: assignment size mismatch");
    return holds_from(assignment.size(), assignment, {});
}

bool eval_quantified(const Formula& f, const std::vector<Lasso>& traces, std::size_t horizon_limit) {
    Checker c(f, traces, horizon_limit);
    std::vector<std::uint32_t> all(traces.size());
    std::iota(all.begin(), all.end(), 0u);
    return c.holds(all);
}

Bounds default_bounds(const Plant& p) { return {p.size(), p.size()}; }

std::vector<Lasso> plant_traces(const Plant& p, const std::optional<Bounds>& bounds, bool& exact) {
    FrameKind k = classify_frame(p);
    if (k != FrameKind::General) {
        exact = true;
        return enumerate_traces(p);
    }
    exact = false;
    Bounds b = bounds.value_or(default_bounds(p));
    return enumerate_lassos(p, b.stem, b.loop);
}

CheckResult check(const Plant& p, const Formula& f, const std::optional<Bounds>& bounds, std::size_t horizon_limit) {
    CheckResult r;
    r.frame = classify_frame(p);
    auto traces = plant_traces(p, bounds, r.exact);
    r.traces = traces.size();
    r.holds = eval_quantified(f, traces, horizon_limit);
    auto frag = classify_fragment(f).kind;
    r.definitive = r.exact || (frag == Fragment::EStar && r.holds) || (frag == Fragment::AStar && !r.holds);
    return r;
}

}  // namespace hypersynth

#include <algorithm>
#include <map>
#include <numeric>

#include "hypersynth/error.hpp"
#include "hypersynth/synthesis.hpp"

namespace hypersynth {

namespace {

struct Tree {
    std::vector<std::vector<StateId>> c_kids, u_kids;
    std::vector<char> leaf;
    std::vector<StateId> leaves;
    std::vector<std::uint32_t> word;  // universe index, leaves only
    std::vector<Lasso> universe;
};

Tree make_tree(const Plant& p) {
    if (classify_frame(p) != FrameKind::Tree) throw FrameMismatch("plant frame is not a tree");
    Tree t;
    const std::size_t n = p.size();
    t.c_kids.resize(n);
    t.u_kids.resize(n);
    t.leaf.assign(n, 0);
    t.word.assign(n, 0);
    auto term = terminal_states(p);
    for (auto e : p.controllable())
        if (e.from != e.to) t.c_kids[e.from].push_back(e.to);
    for (auto e : p.uncontrollable())
        if (e.from != e.to) t.u_kids[e.from].push_back(e.to);
    std::map<Lasso, std::uint32_t> index;
    std::vector<Letter> stem;
    auto dfs = [&](auto&& self, StateId s) -> void {
        if (term[s]) {
            t.leaf[s] = 1;
            t.leaves.push_back(s);
            Lasso w = canonical(Lasso{stem, {p.label(s)}});
            auto [it, fresh] = index.emplace(w, static_cast<std::uint32_t>(t.universe.size()));
            if (fresh) t.universe.push_back(w);
            t.word[s] = it->second;
            return;
        }
        stem.push_back(p.label(s));
        for (StateId c : t.c_kids[s]) self(self, c);
        for (StateId c : t.u_kids[s]) self(self, c);
        stem.pop_back();
    };
    dfs(dfs, p.init());
    return t;
}

// Largest realizable subset of the allowed leaves: a node with uncontrollable
// children survives iff all of them do; otherwise iff some controllable child does.
struct Viability {
    const Tree& t;
    std::vector<std::int8_t> memo;

    template <class Allowed>
    bool viable(StateId s, Allowed& allowed) {
        if (memo[s] >= 0) return memo[s];
        bool v;
        if (t.leaf[s]) {
            v = allowed(s);
        } else if (!t.u_kids[s].empty()) {
            v = true;
            for (StateId c : t.u_kids[s])
                if (!viable(c, allowed)) {
                    v = false;
                    break;
                }
            if (v)
                for (StateId c : t.c_kids[s]) viable(c, allowed);
        } else {
            v = false;
            for (StateId c : t.c_kids[s]) v = viable(c, allowed) | v;
        }
        memo[s] = v;
        return v;
    }
};

struct Kept {
    std::vector<char> node;
    std::vector<StateId> leaves;
};

Kept kept_nodes(const Plant& p, const Tree& t, const std::vector<std::int8_t>& viable) {
    Kept k;
    k.node.assign(p.size(), 0);
    std::vector<StateId> stack{p.init()};
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        k.node[s] = 1;
        if (t.leaf[s]) {
            k.leaves.push_back(s);
            continue;
        }
        for (StateId c : t.u_kids[s]) stack.push_back(c);
        for (StateId c : t.c_kids[s])
            if (viable[c] == 1) stack.push_back(c);
    }
    return k;
}

ControllerSolution witness(const Plant& p, const std::vector<std::int8_t>& viable, const Kept& k) {
    ControllerSolution sol;
    for (auto e : p.controllable()) {
        if (!k.node[e.from] || e.from == e.to || viable[e.to] == 1) sol.retained.insert(e);
    }
    return sol;
}

std::vector<std::uint32_t> kept_words(const Tree& t, const Kept& k) {
    std::vector<char> seen(t.universe.size(), 0);
    std::vector<std::uint32_t> out;
    for (StateId s : k.leaves)
        if (!seen[t.word[s]]) {
            seen[t.word[s]] = 1;
            out.push_back(t.word[s]);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SynthesisResult synth_tree_marking(const Plant& p, const Formula& f, const SynthOptions& opt) {
    check_closed(f);
    if (!is_forall_exists_prefix(f)) throw FragmentMismatch("marking needs a prefix forall exists+");
    Tree t = make_tree(p);
    SynthesisResult res;
    res.algorithm = "tree-marking";
    Checker chk(f, t.universe, opt.horizon_limit);

    std::vector<char> marked(t.universe.size(), 1);
    while (true) {
        Viability v{t, std::vector<std::int8_t>(p.size(), -1)};
        auto allowed = [&](StateId s) { return marked[t.word[s]] != 0; };
        if (!v.viable(p.init(), allowed)) {
            res.verdict = Verdict::Unrealizable;
            return res;
        }
        Kept k = kept_nodes(p, t, v.memo);
        auto words = kept_words(t, k);
        std::vector<char> next(t.universe.size(), 0);
        bool changed = false;
        for (auto w : words) {
            ++res.candidates_checked;
            if (chk.holds_from(1, {w}, words))
                next[w] = 1;
            else
                changed = true;
        }
        if (!changed) {
            res.verdict = Verdict::Realizable;
            res.solution = witness(p, v.memo, k);
            return res;
        }
        marked = std::move(next);
    }
}

SynthesisResult synth_tree_exists_forall(const Plant& p, const Formula& f, const SynthOptions& opt) {
    check_closed(f);
    if (!is_exists_forall_prefix(f)) throw FragmentMismatch("bottom-up evaluation needs a prefix exists* forall");
    Tree t = make_tree(p);
    SynthesisResult res;
    res.algorithm = "tree-exists-forall";
    Checker chk(f, t.universe, opt.horizon_limit);
    const std::size_t e = f.prefix.size() - 1;
    const std::size_t N = t.universe.size();

    std::vector<std::uint32_t> asg(e + 1, 0);
    std::vector<std::uint32_t> inst(e, 0);
    while (true) {
        ++res.candidates_checked;
        std::copy(inst.begin(), inst.end(), asg.begin());
        bool plausible = true;
        for (std::size_t i = 0; i < e && plausible; ++i) {
            asg[e] = inst[i];
            plausible = chk.body(asg);
        }
        if (plausible) {
            std::vector<std::int8_t> good(N, -1);
            auto allowed = [&](StateId s) {
                auto w = t.word[s];
                if (good[w] < 0) {
                    asg[e] = w;
                    good[w] = chk.body(asg);
                }
                return good[w] != 0;
            };
            Viability v{t, std::vector<std::int8_t>(p.size(), -1)};
            if (v.viable(p.init(), allowed)) {
                Kept k = kept_nodes(p, t, v.memo);
                auto words = kept_words(t, k);
                bool witnesses_kept = true;
                for (auto w : inst) witnesses_kept &= std::binary_search(words.begin(), words.end(), w);
                if (witnesses_kept) {
                    res.verdict = Verdict::Realizable;
                    res.solution = witness(p, v.memo, k);
                    return res;
                }
            }
        }
        // next instantiation in lexicographic order
        bool more = false;
        for (std::size_t i = e; i-- > 0;) {
            if (++inst[i] < N) {
                more = true;
                break;
            }
            inst[i] = 0;
        }
        if (!more) break;
    }
    res.verdict = Verdict::Unrealizable;
    return res;
}

}  // namespace hypersynth

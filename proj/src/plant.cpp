#include "hypersynth/plant.hpp"

#include <algorithm>
#include <numeric>

#include "hypersynth/error.hpp"

namespace hypersynth {

std::string to_string(FrameKind k) {
    switch (k) {
        case FrameKind::Tree: return "tree";
        case FrameKind::Acyclic: return "acyclic";
        case FrameKind::General: return "general";
    }
    return "?";
}

StateId Plant::add_state(const std::string& name, Letter label) {
    if (index_.count(name)) throw FormatError("duplicate state id: " + name);
    StateId id = names_.size();
    names_.push_back(name);
    labels_.push_back(std::move(label));
    index_.emplace(name, id);
    return id;
}

std::optional<StateId> Plant::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<StateId>> Plant::successors() const {
    std::vector<std::vector<StateId>> out(size());
    for (const auto* set : {&c_, &u_})
        for (auto e : *set) out[e.from].push_back(e.to);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

std::vector<std::vector<StateId>> Plant::predecessors() const {
    std::vector<std::vector<StateId>> in(size());
    for (const auto* set : {&c_, &u_})
        for (auto e : *set) in[e.to].push_back(e.from);
    for (auto& v : in) std::sort(v.begin(), v.end());
    return in;
}

void validate(const Plant& p) {
    if (p.size() == 0) throw DanglingReference("plant has no states");
    if (p.init() >= p.size()) throw DanglingReference("init");
    for (const auto* set : {&p.controllable(), &p.uncontrollable()})
        for (auto e : *set)
            if (e.from >= p.size() || e.to >= p.size())
                throw DanglingReference("edge endpoint " + std::to_string(std::max(e.from, e.to)));
    for (auto e : p.controllable())
        if (p.uncontrollable().count(e)) throw OverlappingEdge(p.name(e.from), p.name(e.to));
    std::vector<bool> has_out(p.size(), false);
    for (const auto* set : {&p.controllable(), &p.uncontrollable()})
        for (auto e : *set) has_out[e.from] = true;
    for (StateId s = 0; s < p.size(); ++s)
        if (!has_out[s]) throw DeadlockState(p.name(s));
}

std::vector<bool> terminal_states(const Plant& p) {
    auto succ = p.successors();
    std::vector<bool> t(p.size(), false);
    for (StateId s = 0; s < p.size(); ++s) t[s] = succ[s].size() == 1 && succ[s][0] == s;
    return t;
}

std::vector<bool> reachable_states(const Plant& p) {
    if (p.size() == 0) return {};
    auto succ = p.successors();
    std::vector<bool> seen(p.size(), false);
    std::vector<StateId> stack{p.init()};
    seen[p.init()] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId t : succ[s])
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
    }
    return seen;
}

FrameKind classify_frame(const Plant& p) {
    // only the part reachable from init matters, as for traces
    auto succ = p.successors();
    auto term = terminal_states(p);
    auto reach = reachable_states(p);
    std::vector<std::size_t> indeg(p.size(), 0);
    std::size_t live = 0;
    for (StateId s = 0; s < p.size(); ++s) {
        if (!reach[s]) continue;
        ++live;
        for (StateId t : succ[s]) {
            if (t == s) {
                if (!term[s]) return FrameKind::General;
                continue;
            }
            ++indeg[t];
        }
    }
    // Kahn's algorithm on the graph without terminal self-loops
    std::vector<std::size_t> deg = indeg;
    std::vector<StateId> queue;
    for (StateId s = 0; s < p.size(); ++s)
        if (reach[s] && deg[s] == 0) queue.push_back(s);
    std::size_t done = 0;
    while (!queue.empty()) {
        StateId s = queue.back();
        queue.pop_back();
        ++done;
        for (StateId t : succ[s])
            if (t != s && --deg[t] == 0) queue.push_back(t);
    }
    if (done != live) return FrameKind::General;
    for (StateId s = 0; s < p.size(); ++s) {
        std::size_t want = s == p.init() ? 0 : 1;
        if (reach[s] && indeg[s] != want) return FrameKind::Acyclic;
    }
    return FrameKind::Tree;
}

std::vector<Edge> path_edges(const LassoPath& path) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < path.states.size(); ++i) out.push_back({path.states[i], path.states[i + 1]});
    out.push_back({path.states.back(), path.states[path.loop_start]});
    return out;
}

Lasso path_word(const Plant& p, const LassoPath& path) {
    Lasso w;
    for (std::size_t i = 0; i < path.states.size(); ++i)
        (i < path.loop_start ? w.stem : w.loop).push_back(p.label(path.states[i]));
    return w;
}

std::vector<LassoPath> enumerate_paths(const Plant& p) {
    if (classify_frame(p) == FrameKind::General) throw NotAcyclic();
    auto succ = p.successors();
    auto term = terminal_states(p);
    std::vector<LassoPath> out;
    std::vector<StateId> cur{p.init()};
    auto dfs = [&](auto&& self) -> void {
        StateId s = cur.back();
        if (term[s]) {
            out.push_back({cur, cur.size() - 1});
            return;
        }
        for (StateId t : succ[s]) {
            cur.push_back(t);
            self(self);
            cur.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

std::vector<LassoPath> enumerate_lasso_paths(const Plant& p, std::size_t stem_bound, std::size_t loop_bound) {
    auto succ = p.successors();
    std::vector<LassoPath> out;
    std::vector<StateId> stem;
    std::vector<StateId> loop;

    auto loops_from = [&](StateId start) {
        loop.assign(1, start);
        auto dfs = [&](auto&& self) -> void {
            StateId s = loop.back();
            for (StateId t : succ[s]) {
                if (t == start) {
                    LassoPath lp;
                    lp.states = stem;
                    lp.loop_start = stem.size();
                    lp.states.insert(lp.states.end(), loop.begin(), loop.end());
                    out.push_back(std::move(lp));
                }
                if (loop.size() < loop_bound) {
                    loop.push_back(t);
                    self(self);
                    loop.pop_back();
                }
            }
        };
        dfs(dfs);
    };

    if (loop_bound == 0) return out;
    auto stems = [&](auto&& self) -> void {
        if (stem.empty()) {
            loops_from(p.init());
        } else {
            for (StateId t : succ[stem.back()]) loops_from(t);
        }
        if (stem.size() >= stem_bound) return;
        if (stem.empty()) {
            stem.push_back(p.init());
            self(self);
            stem.pop_back();
            return;
        }
        for (StateId t : succ[stem.back()]) {
            stem.push_back(t);
            self(self);
            stem.pop_back();
        }
    };
    stems(stems);
    return out;
}

namespace {

std::vector<Lasso> distinct_words(const Plant& p, const std::vector<LassoPath>& paths) {
    std::set<Lasso> seen;
    for (const auto& path : paths) seen.insert(canonical(path_word(p, path)));
    return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<Lasso> enumerate_traces(const Plant& p) { return distinct_words(p, enumerate_paths(p)); }

std::vector<Lasso> enumerate_lassos(const Plant& p, std::size_t stem_bound, std::size_t loop_bound) {
    return distinct_words(p, enumerate_lasso_paths(p, stem_bound, loop_bound));
}

const Letter& letter_at(const Lasso& x, std::size_t pos) {
    if (pos < x.stem.size()) return x.stem[pos];
    return x.loop[(pos - x.stem.size()) % x.loop.size()];
}

bool lasso_equal(const Lasso& x, const Lasso& y) {
    std::size_t horizon = std::max(x.stem.size(), y.stem.size()) + std::lcm(x.loop.size(), y.loop.size());
    for (std::size_t i = 0; i < horizon; ++i)
        if (letter_at(x, i) != letter_at(y, i)) return false;
    return true;
}

Lasso canonical(const Lasso& x) {
    Lasso r = x;
    std::size_t n = r.loop.size();
    for (std::size_t per = 1; per < n; ++per) {
        if (n % per) continue;
        bool periodic = true;
        for (std::size_t i = per; i < n && periodic; ++i) periodic = r.loop[i] == r.loop[i - per];
        if (periodic) {
            r.loop.resize(per);
            break;
        }
    }
    while (!r.stem.empty() && r.stem.back() == r.loop.back()) {
        r.stem.pop_back();
        std::rotate(r.loop.begin(), r.loop.end() - 1, r.loop.end());
    }
    return r;
}

std::string to_string(const Letter& l) {
    std::string s = "{";
    bool first = true;
    for (const auto& a : l) {
        if (!first) s += ",";
        s += a;
        first = false;
    }
    return s + "}";
}

std::string to_string(const Lasso& x) {
    std::string s;
    for (const auto& l : x.stem) s += to_string(l);
    s += "(";
    for (const auto& l : x.loop) s += to_string(l);
    return s + ")^w";
}

}  // namespace hypersynth

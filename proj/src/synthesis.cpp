#include "hypersynth/synthesis.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <numeric>
#include <thread>

#include "hypersynth/error.hpp"

namespace hypersynth {

using Bits = boost::dynamic_bitset<std::uint64_t>;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Realizable: return "realizable";
        case Verdict::Unrealizable: return "unrealizable";
        case Verdict::BoundedUnknown: return "bounded-unknown";
    }
    return "?";
}

ControllerSolution full_solution(const Plant& p) { return {p.controllable()}; }

Plant apply_solution(const Plant& p, const ControllerSolution& sol) {
    for (auto e : sol.retained)
        if (!p.is_controllable(e))
            throw DanglingReference("retained edge is not controllable: " +
                                    (e.from < p.size() ? p.name(e.from) : std::to_string(e.from)) + " -> " +
                                    (e.to < p.size() ? p.name(e.to) : std::to_string(e.to)));
    Plant q = p;
    q.set_controllable(sol.retained);
    std::vector<bool> has_out(q.size(), false);
    for (const auto* set : {&q.controllable(), &q.uncontrollable()})
        for (auto e : *set) has_out[e.from] = true;
    for (StateId s = 0; s < q.size(); ++s)
        if (!has_out[s]) throw DeadlockIntroduced(q.name(s));
    return q;
}

std::size_t removable_controllable_edges(const Plant& p) {
    std::vector<std::size_t> outdeg(p.size(), 0);
    for (const auto* set : {&p.controllable(), &p.uncontrollable()})
        for (auto e : *set) ++outdeg[e.from];
    std::size_t n = 0;
    for (auto e : p.controllable()) n += outdeg[e.from] >= 2;
    return n;
}

bool is_forall_exists_prefix(const Formula& f) {
    const auto& p = f.prefix;
    if (p.size() < 2 || p[0].first != Quant::Forall) return false;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i].first != Quant::Exists) return false;
    return true;
}

bool is_exists_forall_prefix(const Formula& f) {
    const auto& p = f.prefix;
    if (p.empty() || p.back().first != Quant::Forall) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i].first != Quant::Exists) return false;
    return true;
}

namespace {

struct Universe {
    std::vector<Lasso> words;
    std::vector<std::uint32_t> path_word;
    std::vector<Bits> path_req;  // controllable edges the path needs
    bool exact = true;
};

Universe build_universe(const Plant& p, const std::vector<Edge>& cedges, const std::optional<Bounds>& bounds) {
    Universe u;
    std::vector<LassoPath> paths;
    if (classify_frame(p) == FrameKind::General) {
        u.exact = false;
        Bounds b = bounds.value_or(default_bounds(p));
        paths = enumerate_lasso_paths(p, b.stem, b.loop);
    } else {
        paths = enumerate_paths(p);
    }
    std::map<Lasso, std::uint32_t> index;
    for (const auto& path : paths) {
        Lasso w = canonical(path_word(p, path));
        auto [it, fresh] = index.emplace(w, static_cast<std::uint32_t>(u.words.size()));
        if (fresh) u.words.push_back(w);
        u.path_word.push_back(it->second);
        Bits req(cedges.size());
        for (auto e : path_edges(path)) {
            auto pos = std::lower_bound(cedges.begin(), cedges.end(), e);
            if (pos != cedges.end() && *pos == e) req.set(static_cast<std::size_t>(pos - cedges.begin()));
        }
        u.path_req.push_back(std::move(req));
    }
    return u;
}

// Candidates keep every controllable edge out of states they make unreachable,
// so each distinct reachable pruning appears once, with its largest edge set.
std::vector<Bits> canonical_candidates(const Plant& p, const std::vector<Edge>& cedges) {
    const std::size_t n = p.size();
    std::vector<std::vector<std::size_t>> cout(n);
    std::vector<std::vector<StateId>> uout(n);
    for (std::size_t i = 0; i < cedges.size(); ++i) cout[cedges[i].from].push_back(i);
    for (auto e : p.uncontrollable()) uout[e.from].push_back(e.to);

    std::vector<Bits> out;
    Bits retained(cedges.size());
    std::vector<char> reach(n, 0), decided(n, 0);
    reach[p.init()] = 1;

    auto rec = [&](auto&& self) -> void {
        StateId s = n;
        for (StateId i = 0; i < n; ++i)
            if (reach[i] && !decided[i]) {
                s = i;
                break;
            }
        if (s == n) {
            Bits cand = retained;
            for (StateId i = 0; i < n; ++i)
                if (!reach[i])
                    for (auto k : cout[i]) cand.set(k);
            out.push_back(std::move(cand));
            return;
        }
        const auto& ks = cout[s];
        const std::size_t k = ks.size();
        if (k > 20) throw CandidateSpaceTooLarge(k, 20);
        auto saved_reach = reach;
        decided[s] = 1;
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            if (mask == 0 && uout[s].empty() && k > 0) continue;
            for (auto t : uout[s]) reach[t] = 1;
            for (std::size_t j = 0; j < k; ++j)
                if (mask >> j & 1) {
                    retained.set(ks[j]);
                    reach[cedges[ks[j]].to] = 1;
                }
            self(self);
            for (std::size_t j = 0; j < k; ++j) retained.reset(ks[j]);
            reach = saved_reach;
        }
        decided[s] = 0;
    };
    rec(rec);

    // most edges first, then the lexicographically smallest retained list
    std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) {
        auto ca = a.count(), cb = b.count();
        if (ca != cb) return ca > cb;
        Bits d = a ^ b;
        auto first = d.find_first();
        if (first == Bits::npos) return false;
        return a.test(first);
    });
    return out;
}

ControllerSolution to_solution(const Bits& cand, const std::vector<Edge>& cedges) {
    ControllerSolution s;
    for (std::size_t i = 0; i < cedges.size(); ++i)
        if (cand.test(i)) s.retained.insert(cedges[i]);
    return s;
}

bool universal_prefix(const Formula& f) {
    for (const auto& q : f.prefix)
        if (q.first != Quant::Forall) return false;
    return true;
}

}  // namespace

SynthesisResult synth_generic(const Plant& p, const Formula& f, const SynthOptions& opt) {
    check_closed(f);
    SynthesisResult res;
    res.algorithm = "generic";
    std::size_t removable = removable_controllable_edges(p);
    if (removable > opt.max_removable && !opt.force) throw CandidateSpaceTooLarge(removable, opt.max_removable);

    const std::vector<Edge> cedges(p.controllable().begin(), p.controllable().end());
    Universe u = build_universe(p, cedges, opt.bounds);
    res.exact = u.exact;
    const auto frag = classify_fragment(f).kind;
    const bool dominance = universal_prefix(f);
    // a failed universal check on a subset of the traces is a real failure
    const bool failures_definitive = u.exact || frag == Fragment::AStar;

    std::vector<Bits> cands = canonical_candidates(p, cedges);

    auto trace_set = [&](const Bits& cand) {
        Bits t(u.words.size());
        for (std::size_t i = 0; i < u.path_req.size(); ++i)
            if (u.path_req[i].is_subset_of(cand)) t.set(u.path_word[i]);
        return t;
    };
    auto domain_of = [](const Bits& t) {
        std::vector<std::uint32_t> d;
        for (auto i = t.find_first(); i != Bits::npos; i = t.find_next(i)) d.push_back(static_cast<std::uint32_t>(i));
        return d;
    };

    auto found = [&](std::size_t idx) {
        res.verdict = Verdict::Realizable;
        res.solution = to_solution(cands[idx], cedges);
        return res;
    };

    const unsigned threads = std::max(1u, opt.threads);
    if (threads == 1 || cands.size() < 2) {
        Checker chk(f, u.words, opt.horizon_limit);
        std::map<Bits, bool> memo;
        std::vector<Bits> failed;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            Bits t = trace_set(cands[i]);
            auto it = memo.find(t);
            bool ok;
            if (it != memo.end()) {
                ok = it->second;
            } else {
                bool dominated = false;
                if (dominance)
                    for (const auto& fset : failed)
                        if (fset.is_subset_of(t)) {
                            dominated = true;
                            break;
                        }
                if (dominated) {
                    ok = false;
                } else {
                    ++res.candidates_checked;
                    ok = chk.holds(domain_of(t));
                    if (!ok && dominance) failed.push_back(t);
                }
                memo.emplace(std::move(t), ok);
            }
            if (ok) return found(i);
        }
    } else {
        // Blocks are checked in parallel; the lowest passing index wins, as in the sequential order.
        std::vector<Checker> checkers;
        for (unsigned k = 0; k < threads; ++k) checkers.emplace_back(f, u.words, opt.horizon_limit);
        const std::size_t block = 64 * threads;
        std::vector<char> ok(block);
        for (std::size_t start = 0; start < cands.size(); start += block) {
            std::size_t end = std::min(cands.size(), start + block);
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errs(threads);
            for (unsigned k = 0; k < threads; ++k)
                pool.emplace_back([&, k] {
                    try {
                        for (std::size_t i = start + k; i < end; i += threads)
                            ok[i - start] = checkers[k].holds(domain_of(trace_set(cands[i])));
                    } catch (...) {
                        errs[k] = std::current_exception();
                    }
                });
            for (auto& t : pool) t.join();
            for (auto& e : errs)
                if (e) std::rethrow_exception(e);
            res.candidates_checked += end - start;
            for (std::size_t i = start; i < end; ++i)
                if (ok[i - start]) return found(i);
        }
    }
    res.verdict = failures_definitive ? Verdict::Unrealizable : Verdict::BoundedUnknown;
    return res;
}

SynthesisResult dispatch(const Plant& p, const Formula& f, const SynthOptions& opt) {
    check_closed(f);
    validate(p);
    const FrameKind frame = classify_frame(p);
    const auto frag = classify_fragment(f).kind;
    if (!p.controllable().empty()) {
        if (frag == Fragment::EStar) {
            // the full plant has the most traces, so it is the best witness
            SynthesisResult res;
            res.algorithm = "model-check";
            CheckResult c = check(p, f, opt.bounds, opt.horizon_limit);
            res.exact = c.exact;
            res.candidates_checked = 1;
            if (c.holds) {
                res.verdict = Verdict::Realizable;
                res.solution = full_solution(p);
            } else {
                res.verdict = c.exact ? Verdict::Unrealizable : Verdict::BoundedUnknown;
            }
            return res;
        }
        if (frame == FrameKind::Tree) {
            if (is_forall_exists_prefix(f)) return synth_tree_marking(p, f, opt);
            if (is_exists_forall_prefix(f)) return synth_tree_exists_forall(p, f, opt);
        }
    }
    return synth_generic(p, f, opt);
}

}  // namespace hypersynth

#include "hypersynth/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "hypersynth/error.hpp"

namespace hypersynth {

using nlohmann::json;

namespace {

std::size_t var_of(int lit) { return static_cast<std::size_t>(std::abs(lit)); }

void check_literals(const std::vector<std::vector<int>>& clauses, std::size_t n) {
    for (const auto& c : clauses)
        for (int l : c)
            if (l == 0 || var_of(l) > n) throw FormatError("literal " + std::to_string(l) + " out of range");
}

std::size_t bit_width(std::size_t n) {
    std::size_t w = 1;
    while ((std::size_t{1} << w) < n) ++w;
    return w;
}

}  // namespace

std::string NormalizedHorn::name(std::size_t x) const {
    if (x == bottom()) return "bot";
    if (x == top()) return "top";
    if (x <= num_vars) return "x" + std::to_string(x);
    if (num_fresh == 1) return "f";
    return "f" + std::to_string(x - num_vars);
}

std::string NormalizedHorn::to_string() const {
    std::string s;
    for (const auto& c : clauses) {
        if (!s.empty()) s += " & ";
        s += "(!" + name(c.neg1) + " | !" + name(c.neg2) + " | " + name(c.pos) + ")";
    }
    return s;
}

NormalizedHorn normalize_horn(const CnfInput& in) {
    check_literals(in.clauses, in.num_vars);
    NormalizedHorn h;
    h.num_vars = in.num_vars;
    // fresh variables are numbered after the originals; top is fixed up at the end
    struct Raw {
        std::vector<std::size_t> negs;
        std::size_t pos;
    };
    const std::size_t TOP = static_cast<std::size_t>(-1);
    std::vector<HornClause> out;
    std::size_t fresh = 0;
    for (std::size_t j = 0; j < in.clauses.size(); ++j) {
        std::vector<std::size_t> negs;
        std::size_t pos = 0;
        int positives = 0;
        for (int l : in.clauses[j]) {
            if (l > 0) {
                ++positives;
                pos = var_of(l);
            } else {
                negs.push_back(var_of(l));
            }
        }
        if (positives > 1) throw NotHorn(j);
        if (negs.empty()) negs.push_back(TOP);
        if (negs.size() == 1) negs.push_back(negs[0]);
        while (negs.size() > 2) {
            std::size_t f = in.num_vars + ++fresh;
            out.push_back({negs[0], negs[1], f});
            negs.erase(negs.begin(), negs.begin() + 2);
            negs.push_back(f);
        }
        out.push_back({negs[0], negs[1], pos});
    }
    h.num_fresh = fresh;
    for (auto& c : out) {
        for (auto* x : {&c.neg1, &c.neg2, &c.pos})
            if (*x == TOP) *x = h.top();
    }
    h.clauses = std::move(out);
    return h;
}

SynthesisInstance horn_to_instance(const CnfInput& in) {
    check_literals(in.clauses, in.num_vars);
    NormalizedHorn h;
    h.num_vars = in.num_vars;
    for (std::size_t j = 0; j < in.clauses.size(); ++j) {
        const auto& c = in.clauses[j];
        std::vector<std::size_t> negs, poss;
        for (int l : c) (l > 0 ? poss : negs).push_back(var_of(l));
        if (c.size() != 3 || negs.size() != 2 || poss.size() != 1)
            throw NotNormalized("clause " + std::to_string(j) + " is not of the form (!a | !b | c)");
        h.clauses.push_back({negs[0], negs[1], poss[0]});
    }
    return horn_to_instance(h);
}

SynthesisInstance horn_to_instance(const NormalizedHorn& h) {
    const std::size_t X = h.size();
    for (const auto& c : h.clauses)
        for (auto x : {c.neg1, c.neg2, c.pos})
            if (x >= X) throw NotNormalized("variable index out of range");
    for (const auto& c : h.clauses)
        if (c.pos == h.top()) throw NotNormalized("top cannot be a clause head");
    const std::size_t w = bit_width(X);

    SynthesisInstance inst;
    Plant& p = inst.plant;
    StateId init = p.add_state("init");
    p.set_init(init);

    std::vector<std::vector<std::size_t>> by_head(X);
    for (std::size_t j = 0; j < h.clauses.size(); ++j) by_head[h.clauses[j].pos].push_back(j);

    auto branch = [&](const std::string& tag, const HornClause& c, StateId from) {
        StateId prev = from;
        for (std::size_t i = 0; i < w; ++i) {
            Letter l;
            if (c.neg1 >> i & 1) l.insert("neg1");
            if (c.neg2 >> i & 1) l.insert("neg2");
            if (c.pos >> i & 1) l.insert("pos");
            StateId b = p.add_state("b" + tag + "_" + std::to_string(i), l);
            if (i == 0)
                p.add_uncontrollable(prev, b);
            else
                p.add_controllable(prev, b);
            prev = b;
        }
        p.add_controllable(prev, prev);
    };

    json vstates = json::object();
    for (std::size_t x = 0; x < X; ++x) {
        if (x == h.top()) continue;
        StateId v = p.add_state("v_" + h.name(x));
        p.add_controllable(init, v);
        if (x >= 1 && x <= h.num_vars) vstates[std::to_string(x)] = p.name(v);
        if (by_head[x].empty()) {
            // a variable heading no clause may still be false: identity branch
            branch("id_" + h.name(x), HornClause{x, x, x}, v);
        } else {
            for (auto j : by_head[x]) branch(std::to_string(j + 1), h.clauses[j], v);
        }
    }
    validate(p);

    inst.formula.prefix = {{Quant::Forall, "p1"}, {Quant::Exists, "p2"}, {Quant::Exists, "p3"}};
    Body bot = globally(lnot(atom("pos", "p3")));
    Body top = eventually(lnot(atom("pos", "p1")));
    Body clause = lor(globally(iff(atom("neg1", "p1"), atom("pos", "p2"))),
                      globally(iff(atom("neg2", "p1"), atom("pos", "p2"))));
    inst.formula.body = land(land(bot, top), clause);
    inst.decoder = {{"kind", "horn"}, {"num_vars", h.num_vars}, {"v_states", vstates}};
    return inst;
}

SynthesisInstance threesat_to_instance(const CnfInput& in) {
    check_literals(in.clauses, in.num_vars);
    for (std::size_t j = 0; j < in.clauses.size(); ++j)
        if (in.clauses[j].size() != 3)
            throw ArityMismatch("clause " + std::to_string(j + 1) + " has " + std::to_string(in.clauses[j].size()) +
                                " literals, expected 3");
    const std::size_t n = std::max<std::size_t>(in.num_vars, 1);
    SynthesisInstance inst;
    Plant& p = inst.plant;
    p.set_init(p.add_state("init"));
    json chains = json::array();
    static const char* prime[] = {"", "'", "''"};
    for (std::size_t j = 0; j < in.clauses.size(); ++j) {
        StateId r = p.add_state("r" + std::to_string(j + 1));
        p.add_uncontrollable(p.init(), r);
        for (std::size_t l = 0; l < 3; ++l) {
            int lit = in.clauses[j][l];
            StateId prev = r;
            StateId first = 0;
            for (std::size_t i = 1; i <= n; ++i) {
                Letter lab;
                if (i == var_of(lit)) lab.insert(lit > 0 ? "pos" : "neg");
                StateId v = p.add_state("v" + std::string(prime[l]) + "_" + std::to_string(j + 1) + "_" + std::to_string(i), lab);
                p.add_controllable(prev, v);
                if (i == 1) first = v;
                prev = v;
            }
            p.add_controllable(prev, prev);
            chains.push_back({{"from", p.name(r)}, {"to", p.name(first)}, {"var", var_of(lit)}, {"value", lit > 0}});
        }
    }
    validate(p);
    inst.formula.prefix = {{Quant::Forall, "p1"}, {Quant::Forall, "p2"}};
    inst.formula.body = globally(lor(lnot(atom("pos", "p1")), lnot(atom("neg", "p2"))));
    inst.decoder = {{"kind", "3sat"}, {"num_vars", in.num_vars}, {"chains", chains}};
    return inst;
}

SynthesisInstance qbf_to_instance(const QbfInput& in) {
    check_literals(in.clauses, in.num_vars);
    if (in.prefix.empty() || in.prefix.front().first != Quant::Exists) throw PrefixNotExistsLeading();
    // variable order and depth follow the prefix, depth 1 being the outer existential block
    std::vector<std::size_t> depth(in.num_vars + 1, 0);
    std::vector<int> order;
    std::size_t d = 0;
    for (std::size_t i = 0; i < in.prefix.size(); ++i) {
        int x = in.prefix[i].second;
        if (x <= 0 || static_cast<std::size_t>(x) > in.num_vars) throw FormatError("prefix variable out of range");
        if (depth[x]) throw FormatError("variable " + std::to_string(x) + " quantified twice");
        if (i == 0 || in.prefix[i].first != in.prefix[i - 1].first) ++d;
        depth[x] = d;
        order.push_back(x);
    }
    const std::size_t blocks = d;
    for (std::size_t j = 0; j < in.clauses.size(); ++j) {
        const auto& c = in.clauses[j];
        if (c.empty() || c.size() > 3)
            throw ArityMismatch("clause " + std::to_string(j + 1) + " must have 1 to 3 literals");
        std::set<std::size_t> vars;
        for (int l : c) {
            if (!depth[var_of(l)]) throw FormatError("variable " + std::to_string(var_of(l)) + " is not quantified");
            if (!vars.insert(var_of(l)).second)
                throw ArityMismatch("clause " + std::to_string(j + 1) + " repeats variable " + std::to_string(var_of(l)));
        }
    }
    const std::size_t n = order.size();
    auto q = [](std::size_t dd) { return "q" + std::to_string(dd); };

    SynthesisInstance inst;
    Plant& p = inst.plant;
    p.set_init(p.add_state("init"));
    StateId r0 = p.add_state("r0");
    p.add_uncontrollable(p.init(), r0);

    for (std::size_t j = 0; j < in.clauses.size(); ++j) {
        StateId r = p.add_state("r" + std::to_string(j + 1), {"c"});
        p.add_uncontrollable(p.init(), r);
        StateId prev = r;
        for (std::size_t i = 0; i < n; ++i) {
            int x = order[i];
            Letter lab{q(depth[x])};
            for (int l : in.clauses[j])
                if (var_of(l) == static_cast<std::size_t>(x)) lab.insert(l > 0 ? "p" : "pbar");
            std::string suffix = std::to_string(j + 1) + "_" + std::to_string(i + 1);
            StateId v = p.add_state("v" + suffix, lab);
            StateId u = p.add_state("u" + suffix);
            p.add_controllable(prev, v);
            p.add_controllable(v, u);
            prev = u;
        }
        p.add_controllable(prev, prev);
    }

    json outer = json::array();
    StateId prev = r0;
    for (std::size_t i = 0; i < n; ++i) {
        int x = order[i];
        std::string k = std::to_string(i + 1);
        StateId s = p.add_state("s" + k, {"p", q(depth[x])});
        StateId sb = p.add_state("sb" + k, {"pbar", q(depth[x])});
        StateId sh = p.add_state("sh" + k);
        if (depth[x] == 1) {
            p.add_controllable(prev, s);
            p.add_controllable(prev, sb);
            outer.push_back({{"var", x}, {"true", p.name(s)}, {"false", p.name(sb)}});
        } else {
            p.add_uncontrollable(prev, s);
            p.add_uncontrollable(prev, sb);
        }
        p.add_uncontrollable(s, sh);
        p.add_uncontrollable(sb, sh);
        prev = sh;
    }
    p.add_controllable(prev, prev);
    validate(p);

    // t1 is universal: the outer existential block is resolved by pruning
    auto tv = [](std::size_t dd) { return "t" + std::to_string(dd); };
    std::vector<Body> ante, cons, match;
    Formula& f = inst.formula;
    for (std::size_t dd = 1; dd <= blocks; ++dd) {
        bool universal = dd == 1 || dd % 2 == 0;
        f.prefix.emplace_back(universal ? Quant::Forall : Quant::Exists, tv(dd));
        (universal ? ante : cons).push_back(next(lnot(atom("c", tv(dd)))));
        match.push_back(land(atom(q(dd), "cl"), lor(land(atom("p", "cl"), atom("p", tv(dd))),
                                                    land(atom("pbar", "cl"), atom("pbar", tv(dd))))));
    }
    f.prefix.emplace_back(Quant::Forall, "cl");
    ante.push_back(next(atom("c", "cl")));
    cons.push_back(eventually(disj(match)));
    f.body = implies(conj(ante), conj(cons));
    inst.decoder = {{"kind", "qbf"}, {"num_vars", in.num_vars}, {"outer", outer}};
    return inst;
}

std::map<int, bool> decode_assignment(const SynthesisInstance& inst, const ControllerSolution& sol) {
    return decode_assignment(inst.plant, inst.decoder, sol);
}

std::map<int, bool> decode_assignment(const Plant& plant, const json& decoder, const ControllerSolution& sol) {
    if (!decoder.is_object() || !decoder.contains("kind")) throw DecoderMismatch("decoder metadata without kind");
    const std::string kind = decoder["kind"];
    auto state = [&](const json& name) {
        auto id = plant.find(name.get<std::string>());
        if (!id) throw DecoderMismatch("decoder names unknown state " + name.get<std::string>());
        return *id;
    };
    Plant pruned = apply_solution(plant, sol);
    auto reach = reachable_states(pruned);
    std::map<int, bool> out;
    if (kind == "3sat") {
        int n = decoder["num_vars"];
        for (int i = 1; i <= n; ++i) out[i] = false;
        for (const auto& ch : decoder["chains"]) {
            Edge e{state(ch["from"]), state(ch["to"])};
            if (reach[e.from] && sol.retained.count(e) && ch["value"].get<bool>()) out[ch["var"].get<int>()] = true;
        }
    } else if (kind == "horn") {
        int n = decoder["num_vars"];
        for (int i = 1; i <= n; ++i) {
            auto key = std::to_string(i);
            out[i] = !decoder["v_states"].contains(key) || !reach[state(decoder["v_states"][key])];
        }
    } else if (kind == "qbf") {
        for (const auto& o : decoder["outer"]) out[o["var"].get<int>()] = reach[state(o["true"])] != 0;
    } else {
        throw DecoderMismatch("unknown decoder kind " + kind);
    }
    return out;
}

}  // namespace hypersynth

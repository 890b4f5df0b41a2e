#include "hypersynth/nrp.hpp"

#include <algorithm>
#include <set>

#include "hypersynth/error.hpp"

namespace hypersynth::nrp {

using nlohmann::json;

const std::vector<std::string>& actions(Role r) {
    static const std::vector<std::string> a{"A_B_m", "A_T_m", "A_B_NRO", "A_T_NRO", "A_skip"};
    static const std::vector<std::string> t{"T_A_NRR", "T_B_NRO", "T_B_m", "T_skip"};
    static const std::vector<std::string> b{"B_A_NRR", "B_T_NRR", "B_skip"};
    return r == Role::A ? a : r == Role::T ? t : b;
}

const std::vector<std::string>& observations_of_t() {
    static const std::vector<std::string> o{"A_T_m", "A_T_NRO", "B_T_NRR"};
    return o;
}

namespace {

const char* role_name(Role r) { return r == Role::A ? "A" : r == Role::T ? "T" : "B"; }

const std::vector<std::vector<std::string>>& sets(const ProtocolConfig& c, Role r) {
    return r == Role::A ? c.a : r == Role::T ? c.t : c.b;
}

// status proposition set by an action, if any
const char* delivers(const std::string& a) {
    if (a == "A_B_m" || a == "T_B_m") return "m";
    if (a == "A_B_NRO" || a == "T_B_NRO") return "NRO";
    if (a == "B_A_NRR" || a == "T_A_NRR") return "NRR";
    return nullptr;
}

}  // namespace

void validate(const ProtocolConfig& cfg) {
    if (cfg.rounds == 0) throw ConfigInvalid("rounds must be positive");
    for (Role r : {Role::A, Role::T, Role::B}) {
        const auto& per = sets(cfg, r);
        if (per.size() != cfg.rounds)
            throw ConfigInvalid(std::string("role ") + role_name(r) + " needs one action set per round");
        const auto& known = actions(r);
        for (std::size_t k = 0; k < per.size(); ++k) {
            if (per[k].empty()) throw ConfigInvalid(std::string("empty action set for ") + role_name(r));
            std::set<std::string> seen;
            for (const auto& a : per[k]) {
                if (std::find(known.begin(), known.end(), a) == known.end())
                    throw ConfigInvalid("action " + a + " does not belong to role " + role_name(r));
                if (!seen.insert(a).second) throw ConfigInvalid("duplicate action " + a);
            }
            if (!seen.count(std::string(role_name(r)) + "_skip"))
                throw ConfigInvalid(std::string("skip must be allowed for ") + role_name(r));
        }
    }
}

ProtocolConfig uniform_config(std::size_t rounds, const std::vector<std::string>& a, const std::vector<std::string>& t,
                              const std::vector<std::string>& b) {
    ProtocolConfig c;
    c.rounds = rounds;
    c.a.assign(rounds, a);
    c.t.assign(rounds, t);
    c.b.assign(rounds, b);
    return c;
}

ProtocolConfig full_config(std::size_t rounds) {
    return uniform_config(rounds, actions(Role::A), actions(Role::T), actions(Role::B));
}

ProtocolConfig curated_config() {
    ProtocolConfig c;
    c.rounds = 4;
    c.a = {{"A_T_m", "A_B_m", "A_skip"}, {"A_T_NRO", "A_skip"}, {"A_skip"}, {"A_skip"}};
    c.t.assign(4, actions(Role::T));
    c.b = {{"B_skip"}, {"B_T_NRR", "B_skip"}, {"B_skip"}, {"B_skip"}};
    return c;
}

ProtocolConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigInvalid("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "rounds" && it.key() != "A" && it.key() != "T" && it.key() != "B")
            throw ConfigInvalid("unknown config key: " + it.key());
    if (!j.contains("rounds") || !j["rounds"].is_number_unsigned()) throw ConfigInvalid("rounds must be a positive integer");
    ProtocolConfig c;
    c.rounds = j["rounds"].get<std::size_t>();
    for (Role r : {Role::A, Role::T, Role::B}) {
        auto& per = r == Role::A ? c.a : r == Role::T ? c.t : c.b;
        const char* key = role_name(r);
        if (!j.contains(key)) {
            per.assign(c.rounds, actions(r));
            continue;
        }
        const json& v = j[key];
        if (!v.is_array()) throw ConfigInvalid(std::string(key) + " must be an array");
        auto strings = [&](const json& arr) {
            std::vector<std::string> out;
            if (!arr.is_array()) throw ConfigInvalid(std::string(key) + " entries must be arrays of strings");
            for (const auto& s : arr) {
                if (!s.is_string()) throw ConfigInvalid(std::string(key) + " actions must be strings");
                out.push_back(s.get<std::string>());
            }
            return out;
        };
        if (!v.empty() && v[0].is_string()) {
            per.assign(c.rounds, strings(v));
        } else {
            for (const auto& round : v) per.push_back(strings(round));
        }
    }
    validate(c);
    return c;
}

json config_to_json(const ProtocolConfig& cfg) { return {{"rounds", cfg.rounds}, {"A", cfg.a}, {"T", cfg.t}, {"B", cfg.b}}; }

Plant build_plant(const ProtocolConfig& cfg) {
    validate(cfg);
    Plant p;
    p.set_init(p.add_state("s"));
    const Role order[] = {Role::A, Role::T, Role::B};
    const std::size_t turns = 3 * cfg.rounds;

    auto grow = [&](auto&& self, StateId s, std::size_t turn, const std::string& name, const std::set<std::string>& status) -> void {
        if (turn == turns) {
            p.add_controllable(s, s);
            return;
        }
        Role r = order[turn % 3];
        const auto& allowed = sets(cfg, r)[turn / 3];
        const auto& all = actions(r);
        for (const auto& a : allowed) {
            std::set<std::string> st = status;
            if (const char* d = delivers(a)) st.insert(d);
            Letter l = st;
            l.insert(a);
            auto idx = std::find(all.begin(), all.end(), a) - all.begin();
            std::string child_name = name + "." + std::to_string(idx);
            StateId c = p.add_state(child_name, l);
            if (r == Role::T)
                p.add_controllable(s, c);
            else
                p.add_uncontrollable(s, c);
            self(self, c, turn + 1, child_name, st);
        }
    };
    grow(grow, p.init(), 0, "s", {});
    return p;
}

bool is_t_turn(const Plant& p, StateId s) {
    // a T turn follows an A action
    for (const auto& a : actions(Role::A))
        if (p.label(s).count(a)) return true;
    return false;
}

namespace {

Body all_equal(const std::vector<std::string>& props, const std::string& x, const std::string& y) {
    std::vector<Body> parts;
    for (const auto& a : props) parts.push_back(iff(atom(a, x), atom(a, y)));
    return globally(conj(parts));
}

}  // namespace

Formula effectiveness_fairness_formula() {
    Formula f;
    f.prefix = {{Quant::Exists, "p"}, {Quant::Forall, "q"}};
    Body effective = land(land(eventually(atom("m", "p")), eventually(atom("NRR", "p"))), eventually(atom("NRO", "p")));
    Body balanced = iff(eventually(atom("NRR", "q")), eventually(atom("NRO", "q")));
    Body fair_a = implies(all_equal(actions(Role::A), "p", "q"), balanced);
    Body fair_b = implies(all_equal(actions(Role::B), "p", "q"), balanced);
    f.body = land(land(effective, fair_a), fair_b);
    return f;
}

Formula consistency_formula() {
    Formula f;
    f.prefix = {{Quant::Forall, "p"}, {Quant::Forall, "q"}};
    f.body = implies(all_equal(observations_of_t(), "p", "q"), all_equal(actions(Role::T), "p", "q"));
    return f;
}

Strategy t_correct() {
    return {{true, "A_T_m"}, {true, "A_T_NRO"}, {false, "T_B_m"}, {true, "B_T_NRR"}, {false, "T_B_NRO"}, {false, "T_A_NRR"}};
}

Strategy t_incorrect() {
    return {{true, "A_T_m"}, {true, "A_T_NRO"}, {false, "T_B_m"}, {false, "T_B_NRO"}, {true, "B_T_NRR"}, {false, "T_A_NRR"}};
}

Strategy t_strange() { return {{true, "A_B_m"}, {false, "T_B_NRO"}, {false, "T_A_NRR"}}; }

ControllerSolution encode_strategy(const Plant& p, const Strategy& strat) {
    auto succ = p.successors();
    ControllerSolution sol;
    for (auto e : p.controllable())
        if (e.from == e.to) sol.retained.insert(e);
    std::set<std::string> seen;
    auto walk = [&](auto&& self, StateId s, std::size_t step) -> void {
        for (const auto& a : p.label(s))
            if (a.find('_') != std::string::npos) seen.insert(a);
        if (is_t_turn(p, s)) {
            while (step < strat.size() && strat[step].wait && seen.count(strat[step].action)) ++step;
            std::string act = "T_skip";
            if (step < strat.size() && !strat[step].wait) act = strat[step++].action;
            StateId pick = s;
            for (StateId c : succ[s])
                if (c != s && p.label(c).count(act)) pick = c;
            if (pick == s) throw PartialStrategy(p.name(s));
            sol.retained.insert({s, pick});
            self(self, pick, step);
            return;
        }
        for (StateId c : succ[s])
            if (c != s) {
                auto saved = seen;
                self(self, c, step);
                seen = std::move(saved);
            }
    };
    walk(walk, p.init(), 0);
    // T turns the strategy never reaches keep all their edges
    std::set<StateId> decided;
    for (auto e : sol.retained) decided.insert(e.from);
    for (auto e : p.controllable())
        if (!decided.count(e.from)) sol.retained.insert(e);
    return sol;
}

}  // namespace hypersynth::nrp

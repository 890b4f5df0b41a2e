#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "hypersynth/plant.hpp"
#include "hypersynth/reductions.hpp"
#include "hypersynth/synthesis.hpp"

namespace fixture {

using namespace hypersynth;

// s_init{a} -u-> s1{a}; s_init -> s3, s1 -> s2, s1 -> s3 and the two leaf loops are controllable
inline Plant small_acyclic() {
    Plant p;
    auto i = p.add_state("s_init", {"a"});
    auto s1 = p.add_state("s1", {"a"});
    auto s2 = p.add_state("s2", {"b"});
    auto s3 = p.add_state("s3", {"b"});
    p.set_init(i);
    p.add_uncontrollable(i, s1);
    p.add_controllable(i, s3);
    p.add_controllable(s1, s2);
    p.add_controllable(s1, s3);
    p.add_controllable(s2, s2);
    p.add_controllable(s3, s3);
    return p;
}

inline Plant single(Letter l = {"a"}, bool controllable = true) {
    Plant p;
    auto s = p.add_state("s0", std::move(l));
    p.set_init(s);
    if (controllable)
        p.add_controllable(s, s);
    else
        p.add_uncontrollable(s, s);
    return p;
}

inline Plant two_cycle() {
    Plant p;
    auto a = p.add_state("s0", {"a"});
    auto b = p.add_state("s1", {"b"});
    p.set_init(a);
    p.add_controllable(a, b);
    p.add_uncontrollable(b, a);
    return p;
}

// (!x1 | !x2 | x3) & (x1 | x2 | !x4)
inline CnfInput two_clause_cnf() { return {4, {{-1, -2, 3}, {1, 2, -4}}}; }

// exists x1. forall x2. exists x3. (x1 | !x2 | x3) & (!x1 | x2 | !x3)
inline QbfInput three_var_qbf() {
    return {3, {{Quant::Exists, 1}, {Quant::Forall, 2}, {Quant::Exists, 3}}, {{1, -2, 3}, {-1, 2, -3}}};
}

// (!x1 | !x2 | !x3 | x4) & (!x2 | x4) & (!x1)
inline CnfInput horn_example() { return {4, {{-1, -2, -3, 4}, {-2, 4}, {-1}}}; }

inline std::filesystem::path temp_dir(const std::string& tag) {
    auto d = std::filesystem::temp_directory_path() / ("hypersynth_test_" + tag);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace fixture

namespace fixture {

// Keeps exactly the clause chains whose literal is true under `a`.
inline ControllerSolution threesat_pruning(const SynthesisInstance& inst, const std::map<int, bool>& a) {
    ControllerSolution sol{inst.plant.controllable()};
    for (const auto& ch : inst.decoder["chains"]) {
        int var = ch["var"];
        bool value = ch["value"];
        auto it = a.find(var);
        bool v = it != a.end() && it->second;
        if (v != value)
            sol.retained.erase({*inst.plant.find(ch["from"].get<std::string>()), *inst.plant.find(ch["to"].get<std::string>())});
    }
    return sol;
}

}  // namespace fixture

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "hypersynth/formula.hpp"
#include "hypersynth/plant.hpp"
#include "hypersynth/synthesis.hpp"

namespace hypersynth::nrp {

enum class Role { A, T, B };

// Action propositions; skip is spelled <role>_skip.
const std::vector<std::string>& actions(Role r);
const std::vector<std::string>& observations_of_t();

// Allowed actions per round for each role; turn order within a round is A, T, B.
struct ProtocolConfig {
    std::size_t rounds = 0;
    std::vector<std::vector<std::string>> a, t, b;
};

void validate(const ProtocolConfig& cfg);
ProtocolConfig uniform_config(std::size_t rounds, const std::vector<std::string>& a, const std::vector<std::string>& t,
                              const std::vector<std::string>& b);
ProtocolConfig full_config(std::size_t rounds);
ProtocolConfig curated_config();
ProtocolConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ProtocolConfig& cfg);

Plant build_plant(const ProtocolConfig& cfg);
bool is_t_turn(const Plant& p, StateId s);

Formula effectiveness_fairness_formula();
Formula consistency_formula();

// T's program: wait until an action has happened, or send one.
struct Step {
    bool wait = false;
    std::string action;
};
using Strategy = std::vector<Step>;

Strategy t_correct();
Strategy t_incorrect();
Strategy t_strange();

ControllerSolution encode_strategy(const Plant& p, const Strategy& s);

}  // namespace hypersynth::nrp

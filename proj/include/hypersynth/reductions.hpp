#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypersynth/formula.hpp"
#include "hypersynth/plant.hpp"
#include "hypersynth/synthesis.hpp"

namespace hypersynth {

// Literals are signed 1-based variable indices.
struct CnfInput {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

struct QbfInput {
    std::size_t num_vars = 0;
    std::vector<std::pair<Quant, int>> prefix;  // outermost first
    std::vector<std::vector<int>> clauses;
};

// Variables of a normalized Horn formula: 0 is bottom, 1..num_vars the
// original variables, then the fresh split variables, and top last.
struct HornClause {
    std::size_t neg1 = 0, neg2 = 0, pos = 0;
    bool operator==(const HornClause&) const = default;
};

struct NormalizedHorn {
    std::size_t num_vars = 0;
    std::size_t num_fresh = 0;
    std::vector<HornClause> clauses;

    std::size_t bottom() const { return 0; }
    std::size_t top() const { return num_vars + num_fresh + 1; }
    std::size_t size() const { return top() + 1; }
    std::string name(std::size_t x) const;
    std::string to_string() const;
};

struct SynthesisInstance {
    Plant plant;
    Formula formula;
    nlohmann::json decoder;  // {"kind": "horn" | "3sat" | "qbf", ...}
};

NormalizedHorn normalize_horn(const CnfInput& in);
SynthesisInstance horn_to_instance(const NormalizedHorn& h);
// Accepts only clauses already of the shape (!a | !b | c); throws NotNormalized otherwise.
SynthesisInstance horn_to_instance(const CnfInput& in);
SynthesisInstance threesat_to_instance(const CnfInput& in);
SynthesisInstance qbf_to_instance(const QbfInput& in);

// Keyed by variable index. Horn and 3SAT decode the original variables,
// QBF decodes the outermost existential block.
std::map<int, bool> decode_assignment(const SynthesisInstance& inst, const ControllerSolution& sol);
std::map<int, bool> decode_assignment(const Plant& plant, const nlohmann::json& decoder, const ControllerSolution& sol);

// DIMACS / QDIMACS
CnfInput parse_dimacs(const std::string& text);
QbfInput parse_qdimacs(const std::string& text);
std::string to_dimacs(const CnfInput& in);
std::string to_qdimacs(const QbfInput& in);

}  // namespace hypersynth

#pragma once

#include <optional>
#include <set>
#include <string>

#include "hypersynth/formula.hpp"
#include "hypersynth/plant.hpp"
#include "hypersynth/semantics.hpp"

namespace hypersynth {

struct ControllerSolution {
    std::set<Edge> retained;  // subset of the plant's controllable edges
    bool operator==(const ControllerSolution&) const = default;
};

enum class Verdict { Realizable, Unrealizable, BoundedUnknown };
std::string to_string(Verdict v);

struct SynthesisResult {
    Verdict verdict = Verdict::Unrealizable;
    std::optional<ControllerSolution> solution;
    std::string algorithm;
    bool exact = true;  // false iff bounded lasso enumeration was used
    std::size_t candidates_checked = 0;
};

inline constexpr std::size_t kDefaultMaxRemovable = 24;

struct SynthOptions {
    std::optional<Bounds> bounds;
    std::size_t max_removable = kDefaultMaxRemovable;
    bool force = false;        // lift the candidate-space guard
    unsigned threads = 1;
    std::size_t horizon_limit = kDefaultHorizonLimit;
};

ControllerSolution full_solution(const Plant& p);

// Throws DanglingReference if a retained edge is not controllable, DeadlockIntroduced on a dead end.
Plant apply_solution(const Plant& p, const ControllerSolution& sol);

// Controllable edges whose source has another outgoing edge; these are the
// only edges a candidate can drop, so they size the candidate space.
std::size_t removable_controllable_edges(const Plant& p);

SynthesisResult synth_generic(const Plant& p, const Formula& f, const SynthOptions& opt = {});
SynthesisResult synth_tree_marking(const Plant& p, const Formula& f, const SynthOptions& opt = {});
SynthesisResult synth_tree_exists_forall(const Plant& p, const Formula& f, const SynthOptions& opt = {});
SynthesisResult dispatch(const Plant& p, const Formula& f, const SynthOptions& opt = {});

bool is_forall_exists_prefix(const Formula& f);   // A E+
bool is_exists_forall_prefix(const Formula& f);   // E* A

}  // namespace hypersynth

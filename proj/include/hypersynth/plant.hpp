#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace hypersynth {

using Letter = std::set<std::string>;
using StateId = std::size_t;

struct Edge {
    StateId from = 0;
    StateId to = 0;
    auto operator<=>(const Edge&) const = default;
};

// Ultimately periodic word stem . loop^omega. Structural equality only;
// use lasso_equal for word equality.
struct Lasso {
    std::vector<Letter> stem;
    std::vector<Letter> loop;
    bool operator==(const Lasso&) const = default;
    auto operator<=>(const Lasso&) const = default;
};

enum class FrameKind { Tree, Acyclic, General };

std::string to_string(FrameKind k);

class Plant {
public:
    StateId add_state(const std::string& name, Letter label = {});
    void set_init(StateId s) { init_ = s; }
    void add_controllable(StateId from, StateId to) { c_.insert({from, to}); }
    void add_uncontrollable(StateId from, StateId to) { u_.insert({from, to}); }
    void set_controllable(std::set<Edge> edges) { c_ = std::move(edges); }

    std::size_t size() const { return names_.size(); }
    StateId init() const { return init_; }
    const std::string& name(StateId s) const { return names_.at(s); }
    const Letter& label(StateId s) const { return labels_.at(s); }
    std::optional<StateId> find(const std::string& name) const;

    const std::set<Edge>& controllable() const { return c_; }
    const std::set<Edge>& uncontrollable() const { return u_; }
    bool is_controllable(Edge e) const { return c_.count(e) != 0; }

    // Successor lists over c and u combined, sorted by target.
    std::vector<std::vector<StateId>> successors() const;
    std::vector<std::vector<StateId>> predecessors() const;

private:
    std::vector<std::string> names_;
    std::vector<Letter> labels_;
    std::unordered_map<std::string, StateId> index_;
    StateId init_ = 0;
    std::set<Edge> c_, u_;
};

void validate(const Plant& p);
FrameKind classify_frame(const Plant& p);

// A state whose only outgoing edge is its own self-loop.
std::vector<bool> terminal_states(const Plant& p);
std::vector<bool> reachable_states(const Plant& p);

// A concrete path: states[0] is init, the loop is states[loop_start..] closed
// by an edge back to states[loop_start].
struct LassoPath {
    std::vector<StateId> states;
    std::size_t loop_start = 0;
};

std::vector<Edge> path_edges(const LassoPath& path);
Lasso path_word(const Plant& p, const LassoPath& path);

// Maximal paths of a tree/acyclic plant, ending in a terminal state.
std::vector<LassoPath> enumerate_paths(const Plant& p);
std::vector<LassoPath> enumerate_lasso_paths(const Plant& p, std::size_t stem_bound, std::size_t loop_bound);

// Sorted by canonical form, one entry per distinct word.
std::vector<Lasso> enumerate_traces(const Plant& p);
std::vector<Lasso> enumerate_lassos(const Plant& p, std::size_t stem_bound, std::size_t loop_bound);

bool lasso_equal(const Lasso& x, const Lasso& y);
Lasso canonical(const Lasso& x);
const Letter& letter_at(const Lasso& x, std::size_t pos);
std::string to_string(const Letter& l);
std::string to_string(const Lasso& x);

}  // namespace hypersynth

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypersynth/formula.hpp"
#include "hypersynth/plant.hpp"

namespace hypersynth {

inline constexpr std::size_t kDefaultHorizonLimit = 1'000'000;

using Assignment = std::map<std::string, Lasso>;

// Truth of the body at position 0 of the joint word.
bool eval_body(const Body& b, const Assignment& asg, std::size_t horizon_limit = kDefaultHorizonLimit);

// Quantified evaluation over a fixed universe of lassos. Quantifiers may be
// restricted to a subset of the universe (indices). Caches body evaluations,
// so an instance must not be shared between threads.
class Checker {
public:
    Checker(const Formula& f, std::vector<Lasso> universe, std::size_t horizon_limit = kDefaultHorizonLimit);
    ~Checker();
    Checker(Checker&&) noexcept;
    Checker& operator=(Checker&&) noexcept;

    const Formula& formula() const;
    const std::vector<Lasso>& universe() const;

    // All quantifiers range over domain.
    bool holds(const std::vector<std::uint32_t>& domain);
    // Quantifiers prefix[0..first) are bound to fixed[i]; the rest range over domain.
    bool holds_from(std::size_t first, const std::vector<std::uint32_t>& fixed,
                    const std::vector<std::uint32_t>& domain);
    // Body under a complete assignment, one universe index per prefix entry.
    bool body(const std::vector<std::uint32_t>& assignment);

    std::size_t body_evaluations() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool eval_quantified(const Formula& f, const std::vector<Lasso>& traces,
                     std::size_t horizon_limit = kDefaultHorizonLimit);

struct Bounds {
    std::size_t stem = 0;
    std::size_t loop = 0;
};

Bounds default_bounds(const Plant& p);

// Trace universe of a plant: exact for tree/acyclic frames, bounded lassos otherwise.
std::vector<Lasso> plant_traces(const Plant& p, const std::optional<Bounds>& bounds, bool& exact);

struct CheckResult {
    bool holds = false;
    bool exact = true;        // false iff bounded lasso enumeration was used
    bool definitive = true;   // verdict transfers to the unbounded trace set
    FrameKind frame = FrameKind::Tree;
    std::size_t traces = 0;
};

CheckResult check(const Plant& p, const Formula& f, const std::optional<Bounds>& bounds = std::nullopt,
                  std::size_t horizon_limit = kDefaultHorizonLimit);

}  // namespace hypersynth

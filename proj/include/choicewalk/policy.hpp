#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "choicewalk/function.hpp"
#include "choicewalk/rng.hpp"

namespace choicewalk {

class GraphTracker;

// What an agent may look at when choosing.
struct TrialView {
    const MonotoneFunction& function;
    const IncrementalTracker& tracker;
    std::size_t step;  // bits flipped so far

    // Unknown usefulness counts as useful.
    bool is_useful(std::size_t i) const { return tracker.is_useful(i).value_or(true); }
};

/// An agent of the r-choice walk.
///
/// Policies are described by a preference class: given the proposal, the
/// subset of proposed bits the agent is willing to pick. The walk picks
/// uniformly inside that class, and the exact oracle spreads probability
/// mass uniformly over it, so both see the same randomized agent.
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string name() const = 0;

    // UsageError when the policy cannot drive f.
    virtual void check_compatible(const MonotoneFunction& f) const;

    // Appends the preference class to `out` (which arrives empty). The
    // proposal is sorted and non-empty.
    virtual void preferred(const TrialView& view, std::span<const std::size_t> proposal,
                           std::vector<std::size_t>& out) const = 0;
};

using PolicyHandle = std::shared_ptr<const Policy>;

class UniformPolicy final : public Policy {
public:
    std::string name() const override { return "uniform"; }
    void preferred(const TrialView&, std::span<const std::size_t> proposal, std::vector<std::size_t>& out) const override;
};

// Proposed bits that are still useful, else the whole proposal.
class GreedyUsefulPolicy final : public Policy {
public:
    std::string name() const override { return "greedy_useful"; }
    void preferred(const TrialView& view, std::span<const std::size_t> proposal,
                   std::vector<std::size_t>& out) const override;
};

enum class PhaseSwitch {
    adaptive,    // phase 2 once at most v^(2/3) vertices are outside the largest component
    step_count,  // phase 2 after v * ln ln v steps
};

/// Two-phase connectivity strategy. Phase 1 takes a uniformly random
/// proposed edge, so the phase-1 graph is a uniform random graph; phase 2
/// prefers proposed edges with at most one endpoint in the largest
/// component and falls back to a uniformly random proposed edge.
class ConnectivityTwoPhasePolicy final : public Policy {
public:
    explicit ConnectivityTwoPhasePolicy(PhaseSwitch rule = PhaseSwitch::adaptive) : rule_(rule) {}

    std::string name() const override;
    void check_compatible(const MonotoneFunction& f) const override;
    void preferred(const TrialView& view, std::span<const std::size_t> proposal,
                   std::vector<std::size_t>& out) const override;

    bool in_phase_two(const GraphTracker& tracker, std::size_t step) const;
    PhaseSwitch rule() const noexcept { return rule_; }

private:
    PhaseSwitch rule_;
};

// Proposed edges touching a vertex of current minimum degree, else the whole proposal.
class MinDegreePolicy final : public Policy {
public:
    std::string name() const override { return "min_degree"; }
    void check_compatible(const MonotoneFunction& f) const override;
    void preferred(const TrialView& view, std::span<const std::size_t> proposal,
                   std::vector<std::size_t>& out) const override;
};

struct PolicyOptions {
    PhaseSwitch phase_switch = PhaseSwitch::adaptive;
};

// Names accepted by make_policy.
const std::vector<std::string>& builtin_policies();

// UsageError on an unknown name.
PolicyHandle make_policy(std::string_view name, PolicyOptions options = {});

// The policy's preference class, checked to be a non-empty set of proposed
// bits (IntegrityError otherwise). `out` is cleared first and left sorted.
void preference_class(const Policy& policy, const TrialView& view, std::span<const std::size_t> proposal,
                      std::vector<std::size_t>& out);

// One uniform pick from the preference class. A class of size one consumes
// no randomness.
std::size_t choose(const Policy& policy, const TrialView& view, std::span<const std::size_t> proposal, Rng& rng,
                   std::vector<std::size_t>& scratch);

} // namespace choicewalk

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "choicewalk/bit_state.hpp"

namespace choicewalk {

// Coordinates are 0-based throughout: the textbook coordinate j in [n]
// is index j-1 here.

enum class Activation : std::uint8_t { still_zero, now_one };

class MonotoneFunction;

/// Per-trial evaluation state for one function.
///
/// The tracker owns the walk's BitState, so a walk samples zeros from
/// state() and feeds its choices back through activate(). Status is
/// monotone: once now_one, it stays now_one.
class IncrementalTracker {
public:
    virtual ~IncrementalTracker() = default;
    IncrementalTracker(const IncrementalTracker&) = delete;
    IncrementalTracker& operator=(const IncrementalTracker&) = delete;

    // UsageError when i is out of range or already active.
    Activation activate(std::size_t i);

    bool active() const noexcept { return active_; }
    Activation status() const noexcept { return active_ ? Activation::now_one : Activation::still_zero; }
    const BitState& state() const noexcept { return state_; }
    std::size_t arity() const noexcept { return state_.arity(); }

    // Back to the all-zeros state.
    void reset();

    // Whether flipping the zero coordinate i can still change the value for
    // some completion of the current state. Always false once active.
    // nullopt means the function has no structural knowledge to offer.
    virtual std::optional<bool> is_useful(std::size_t i) const;

protected:
    explicit IncrementalTracker(std::size_t arity) : state_(arity) {}

    // Derived constructors call this once their own members are ready.
    void initialize() { active_ = on_reset(); }

    // Called after state() already contains i. Returns the value of f.
    virtual bool on_activate(std::size_t i) = 0;
    // Resets derived state; returns the value of f at the all-zeros state.
    virtual bool on_reset() = 0;

private:
    BitState state_;
    bool active_ = false;
};

/// A monotone Boolean function of fixed arity.
///
/// Implementations are immutable after construction and safe to share
/// across threads; trackers are not. A tracker refers to its function, so
/// the function must outlive every tracker it hands out.
class MonotoneFunction {
public:
    MonotoneFunction(std::size_t arity, std::string name) : arity_(arity), name_(std::move(name)) {}
    virtual ~MonotoneFunction() = default;

    std::size_t arity() const noexcept { return arity_; }
    const std::string& name() const noexcept { return name_; }

    // x.size() == arity() is the caller's responsibility; the free
    // evaluate() below checks it.
    virtual bool evaluate(BitView x) const = 0;

    // Default: a tracker that re-evaluates the whole input after each step.
    virtual std::unique_ptr<IncrementalTracker> fresh_tracker() const;

    // R(f) when the construction determines it, ascending.
    virtual std::optional<std::vector<std::size_t>> known_relevant() const { return std::nullopt; }

    // Currently-0 coordinates that can still affect f at s, ascending, or
    // nullopt when the tracker offers no is_useful(). UsageError when f(s)=1.
    std::optional<std::vector<std::size_t>> useful_bits(const BitState& s) const;

    // f(all ones), memoized. Walks require it to be 1.
    bool top_value() const;
    // f(all zeros), memoized.
    bool bottom_value() const;

private:
    std::size_t arity_;
    std::string name_;
    mutable std::once_flag extremes_once_;
    mutable bool top_ = false;
    mutable bool bottom_ = false;
};

using FunctionHandle = std::shared_ptr<const MonotoneFunction>;

// Evaluates with an arity check (UsageError on mismatch).
bool evaluate(const MonotoneFunction& f, const BitState& s);

// UsageError unless f(all ones) = 1.
void require_walkable(const MonotoneFunction& f);

} // namespace choicewalk

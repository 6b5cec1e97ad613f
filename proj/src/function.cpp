#include "choicewalk/function.hpp"

#include <string>

#include "choicewalk/errors.hpp"

namespace choicewalk {

Activation IncrementalTracker::activate(std::size_t i) {
    state_.set(i);
    const bool now = on_activate(i);
    active_ = active_ || now;
    return status();
}

void IncrementalTracker::reset() {
    state_.reset();
    active_ = on_reset();
}

std::optional<bool> IncrementalTracker::is_useful(std::size_t) const { return std::nullopt; }

namespace {

class ReevaluatingTracker final : public IncrementalTracker {
public:
    explicit ReevaluatingTracker(const MonotoneFunction& f) : IncrementalTracker(f.arity()), f_(f) {
        initialize();
    }

private:
    bool on_activate(std::size_t) override { return f_.evaluate(state().view()); }
    bool on_reset() override { return f_.bottom_value(); }

    const MonotoneFunction& f_;
};

} // namespace

std::unique_ptr<IncrementalTracker> MonotoneFunction::fresh_tracker() const {
    return std::make_unique<ReevaluatingTracker>(*this);
}

std::optional<std::vector<std::size_t>> MonotoneFunction::useful_bits(const BitState& s) const {
    if (s.arity() != arity_)
        throw UsageError("useful_bits: state arity " + std::to_string(s.arity()) + " != function arity " +
                         std::to_string(arity_));
    auto tracker = fresh_tracker();
    for (auto i : s.ones()) tracker->activate(i);
    if (tracker->active()) throw UsageError("useful_bits: " + name_ + " is already active at this state");

    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arity_; ++i) {
        if (s.test(i)) continue;
        const auto u = tracker->is_useful(i);
        if (!u) return std::nullopt;
        if (*u) out.push_back(i);
    }
    return out;
}

bool MonotoneFunction::top_value() const {
    std::call_once(extremes_once_, [this] {
        std::vector<std::uint64_t> zeros((arity_ + 63) / 64, 0);
        std::vector<std::uint64_t> ones((arity_ + 63) / 64, ~std::uint64_t{0});
        if (arity_ % 64 != 0) ones.back() = (std::uint64_t{1} << (arity_ % 64)) - 1;
        bottom_ = evaluate(BitView(zeros, arity_));
        top_ = evaluate(BitView(ones, arity_));
    });
    return top_;
}

bool MonotoneFunction::bottom_value() const {
    top_value();
    return bottom_;
}

bool evaluate(const MonotoneFunction& f, const BitState& s) {
    if (s.arity() != f.arity())
        throw UsageError("evaluate: state arity " + std::to_string(s.arity()) + " != arity " +
                         std::to_string(f.arity()) + " of " + f.name());
    return f.evaluate(s.view());
}

void require_walkable(const MonotoneFunction& f) {
    if (!f.top_value())
        throw UsageError(f.name() + " evaluates to 0 on the all-ones input; its hitting time is undefined");
}

} // namespace choicewalk

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "choicewalk/function.hpp"

namespace choicewalk {

/// f^s: the base function with the coordinates in `forced` pinned to 1,
/// seen as a function of the remaining n-|forced| coordinates in their
/// original relative order.
class RestrictionView final : public MonotoneFunction {
public:
    RestrictionView(FunctionHandle base, std::vector<std::size_t> forced);

    const FunctionHandle& base() const noexcept { return base_; }
    const std::vector<std::size_t>& forced() const noexcept { return forced_; }
    // Local coordinate -> base coordinate.
    const std::vector<std::size_t>& free_coordinates() const noexcept { return free_; }

    // Packs a local input into a base input with the forced ones reinserted.
    std::vector<std::uint64_t> embed(BitView local) const;

    bool evaluate(BitView x) const override;
    std::unique_ptr<IncrementalTracker> fresh_tracker() const override;

private:
    RestrictionView(FunctionHandle base, std::vector<std::size_t> sorted_forced, int);

    FunctionHandle base_;
    std::vector<std::size_t> forced_;
    std::vector<std::size_t> free_;
};

/// f restricted to a supplied coordinate list (normally R(f)); every other
/// coordinate is filled with 0.
class ContractionView final : public MonotoneFunction {
public:
    ContractionView(FunctionHandle base, std::vector<std::size_t> relevant);

    const FunctionHandle& base() const noexcept { return base_; }
    const std::vector<std::size_t>& relevant() const noexcept { return relevant_; }

    bool evaluate(BitView x) const override;
    std::unique_ptr<IncrementalTracker> fresh_tracker() const override;
    std::optional<std::vector<std::size_t>> known_relevant() const override;

    // Base input with x placed at the relevant positions and `fill` elsewhere.
    std::vector<std::uint64_t> embed(BitView x, const std::vector<std::uint64_t>* fill = nullptr) const;

private:
    FunctionHandle base_;
    std::vector<std::size_t> relevant_;
};

// UsageError on duplicate or out-of-range forced indices.
std::shared_ptr<const RestrictionView> restrict(FunctionHandle f, std::vector<std::size_t> forced);

// Fuzzes the contraction against random fills of the dropped coordinates and
// throws IntegrityError if any two fills disagree (the list is too small).
std::shared_ptr<const ContractionView> contract(FunctionHandle f, std::vector<std::size_t> relevant,
                                                std::size_t fuzz_samples = 256);

} // namespace choicewalk

#include "choicewalk/views.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "choicewalk/errors.hpp"

namespace choicewalk {

namespace {

std::vector<std::size_t> sorted_distinct(std::vector<std::size_t> idx, std::size_t arity, const char* what) {
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw UsageError(std::string(what) + ": duplicate index");
    if (!idx.empty() && idx.back() >= arity)
        throw UsageError(std::string(what) + ": index " + std::to_string(idx.back()) + " out of range for arity " +
                         std::to_string(arity));
    return idx;
}

void put(std::vector<std::uint64_t>& words, std::size_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }

class RestrictionTracker final : public IncrementalTracker {
public:
    explicit RestrictionTracker(const RestrictionView& view)
        : IncrementalTracker(view.arity()), view_(view), base_(view.base()->fresh_tracker()) {
        initialize();
    }

    std::optional<bool> is_useful(std::size_t i) const override {
        if (active()) return false;
        return base_->is_useful(view_.free_coordinates()[i]);
    }

private:
    bool on_activate(std::size_t i) override {
        return base_->activate(view_.free_coordinates()[i]) == Activation::now_one;
    }
    bool on_reset() override {
        base_->reset();
        for (auto j : view_.forced()) base_->activate(j);
        return base_->active();
    }

    const RestrictionView& view_;
    std::unique_ptr<IncrementalTracker> base_;
};

class ContractionTracker final : public IncrementalTracker {
public:
    explicit ContractionTracker(const ContractionView& view)
        : IncrementalTracker(view.arity()), view_(view), base_(view.base()->fresh_tracker()) {
        initialize();
    }

    std::optional<bool> is_useful(std::size_t j) const override {
        if (active()) return false;
        return base_->is_useful(view_.relevant()[j]);
    }

private:
    bool on_activate(std::size_t j) override {
        return base_->activate(view_.relevant()[j]) == Activation::now_one;
    }
    bool on_reset() override {
        base_->reset();
        return base_->active();
    }

    const ContractionView& view_;
    std::unique_ptr<IncrementalTracker> base_;
};

} // namespace

RestrictionView::RestrictionView(FunctionHandle base, std::vector<std::size_t> forced)
    : RestrictionView(base, sorted_distinct(std::move(forced), base->arity(), "restrict"), 0) {}

RestrictionView::RestrictionView(FunctionHandle base, std::vector<std::size_t> sorted_forced, int)
    : MonotoneFunction(base->arity() - sorted_forced.size(),
                       base->name() + "|forced" + std::to_string(sorted_forced.size())),
      base_(std::move(base)),
      forced_(std::move(sorted_forced)) {
    free_.reserve(arity());
    std::size_t k = 0;
    for (std::size_t i = 0; i < base_->arity(); ++i) {
        if (k < forced_.size() && forced_[k] == i) {
            ++k;
            continue;
        }
        free_.push_back(i);
    }
}

std::vector<std::uint64_t> RestrictionView::embed(BitView local) const {
    std::vector<std::uint64_t> words((base_->arity() + 63) / 64, 0);
    for (auto j : forced_) put(words, j);
    for (std::size_t i = 0; i < free_.size(); ++i)
        if (local.test(i)) put(words, free_[i]);
    return words;
}

bool RestrictionView::evaluate(BitView x) const {
    const auto words = embed(x);
    return base_->evaluate(BitView(words, base_->arity()));
}

std::unique_ptr<IncrementalTracker> RestrictionView::fresh_tracker() const {
    return std::make_unique<RestrictionTracker>(*this);
}

ContractionView::ContractionView(FunctionHandle base, std::vector<std::size_t> relevant)
    : MonotoneFunction(relevant.size(), base->name() + "|contracted"), base_(std::move(base)) {
    relevant_ = sorted_distinct(std::move(relevant), base_->arity(), "contract");
}

std::vector<std::uint64_t> ContractionView::embed(BitView x, const std::vector<std::uint64_t>* fill) const {
    std::vector<std::uint64_t> words = fill ? *fill : std::vector<std::uint64_t>((base_->arity() + 63) / 64, 0);
    for (std::size_t j = 0; j < relevant_.size(); ++j) {
        const auto i = relevant_[j];
        const auto bit = std::uint64_t{1} << (i & 63);
        if (x.test(j))
            words[i >> 6] |= bit;
        else
            words[i >> 6] &= ~bit;
    }
    return words;
}

bool ContractionView::evaluate(BitView x) const {
    const auto words = embed(x);
    return base_->evaluate(BitView(words, base_->arity()));
}

std::unique_ptr<IncrementalTracker> ContractionView::fresh_tracker() const {
    return std::make_unique<ContractionTracker>(*this);
}

std::optional<std::vector<std::size_t>> ContractionView::known_relevant() const {
    auto base_known = base_->known_relevant();
    if (!base_known) return std::nullopt;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < relevant_.size(); ++j)
        if (std::binary_search(base_known->begin(), base_known->end(), relevant_[j])) out.push_back(j);
    return out;
}

std::shared_ptr<const RestrictionView> restrict(FunctionHandle f, std::vector<std::size_t> forced) {
    if (!f) throw UsageError("restrict: null function");
    return std::make_shared<const RestrictionView>(std::move(f), std::move(forced));
}

std::shared_ptr<const ContractionView> contract(FunctionHandle f, std::vector<std::size_t> relevant,
                                                std::size_t fuzz_samples) {
    if (!f) throw UsageError("contract: null function");
    auto view = std::make_shared<const ContractionView>(std::move(f), std::move(relevant));
    const auto& base = *view->base();
    if (view->arity() == base.arity()) return view;

    std::mt19937_64 rng(0x5eedc0de5eedc0deULL);
    const std::size_t words = (base.arity() + 63) / 64;
    const std::size_t local_words = (view->arity() + 63) / 64;
    const std::vector<std::uint64_t> zero_fill(words, 0);
    for (std::size_t s = 0; s < fuzz_samples; ++s) {
        std::vector<std::uint64_t> x(std::max<std::size_t>(local_words, 1));
        for (auto& w : x) w = rng();
        std::vector<std::uint64_t> fill(words);
        for (auto& w : fill) w = rng();
        const BitView xv(x, view->arity());
        const auto a = view->embed(xv, &zero_fill);
        const auto b = view->embed(xv, &fill);
        if (base.evaluate(BitView(a, base.arity())) != base.evaluate(BitView(b, base.arity())))
            throw IntegrityError("contract: value of " + base.name() +
                                 " depends on coordinates outside the supplied relevant list");
    }
    return view;
}

} // namespace choicewalk

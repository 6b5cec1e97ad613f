#include "choicewalk/bit_state.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "choicewalk/errors.hpp"

namespace choicewalk {

BitState::BitState(std::size_t n)
    : n_(n),
      zero_count_(n),
      words_((n + 63) / 64, 0),
      zero_at_(n),
      pos_of_(n),
      zero_stamp_(n, 0),
      pos_stamp_(n, 0) {
    if (n >= std::numeric_limits<std::uint32_t>::max())
        throw UsageError("BitState: arity " + std::to_string(n) + " exceeds 32-bit index range");
}

BitState BitState::from_indices(std::size_t n, std::span<const std::size_t> ones) {
    BitState s(n);
    for (auto i : ones) s.set(i);
    return s;
}

BitState BitState::from_mask(std::size_t n, std::uint64_t mask) {
    if (n > 64) throw UsageError("BitState::from_mask: arity " + std::to_string(n) + " > 64");
    BitState s(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) s.set(i);
    return s;
}

void BitState::set(std::size_t i) {
    if (i >= n_)
        throw UsageError("index " + std::to_string(i) + " out of range for arity " + std::to_string(n_));
    if (test(i)) throw UsageError("coordinate " + std::to_string(i) + " is already 1");

    words_[i >> 6] |= std::uint64_t{1} << (i & 63);

    const std::size_t p = pos_of(i);
    const std::size_t last = zero_count_ - 1;
    const std::size_t moved = zero_at(last);
    zero_at_[p] = static_cast<std::uint32_t>(moved);
    zero_stamp_[p] = epoch_;
    pos_of_[moved] = static_cast<std::uint32_t>(p);
    pos_stamp_[moved] = epoch_;
    --zero_count_;
}

std::vector<std::size_t> BitState::ones() const {
    std::vector<std::size_t> out;
    out.reserve(weight());
    for (std::size_t i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

std::vector<std::size_t> BitState::zeros() const {
    std::vector<std::size_t> out;
    out.reserve(zero_count_);
    for (std::size_t i = 0; i < n_; ++i)
        if (!test(i)) out.push_back(i);
    return out;
}

std::uint64_t BitState::mask() const {
    if (n_ > 64) throw UsageError("BitState::mask: arity " + std::to_string(n_) + " > 64");
    return n_ == 0 ? 0 : words_[0];
}

void BitState::reset() {
    std::fill(words_.begin(), words_.end(), 0);
    zero_count_ = n_;
    if (++epoch_ == 0) {
        std::fill(zero_stamp_.begin(), zero_stamp_.end(), 0);
        std::fill(pos_stamp_.begin(), pos_stamp_.end(), 0);
        epoch_ = 1;
    }
}

bool precedes(const BitState& a, const BitState& b) {
    if (a.arity() != b.arity()) throw UsageError("precedes: arity mismatch");
    const auto wa = a.view().words();
    const auto wb = b.view().words();
    for (std::size_t w = 0; w < wa.size(); ++w)
        if (wa[w] & ~wb[w]) return false;
    return true;
}

} // namespace choicewalk

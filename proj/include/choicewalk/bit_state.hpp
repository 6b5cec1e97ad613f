#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace choicewalk {

// Read-only view of a packed bit vector. Bit i lives in word i/64 at position i%64.
class BitView {
public:
    BitView(std::span<const std::uint64_t> words, std::size_t n) noexcept : words_(words), n_(n) {}

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

private:
    std::span<const std::uint64_t> words_;
    std::size_t n_;
};

/// A point of {0,1}^n that only ever gains ones.
///
/// Besides the packed bits it keeps the current zero coordinates in a dense
/// array with swap-remove, so a uniformly random zero is one array lookup.
/// The zero array starts as the identity permutation and is materialized
/// lazily (entries carry an epoch stamp), which makes reset() cost O(n/64)
/// instead of O(n). Walks reuse one BitState per worker across trials.
class BitState {
public:
    explicit BitState(std::size_t n = 0);

    static BitState from_indices(std::size_t n, std::span<const std::size_t> ones);
    // n <= 64; bit i of mask is coordinate i.
    static BitState from_mask(std::size_t n, std::uint64_t mask);

    std::size_t arity() const noexcept { return n_; }
    std::size_t weight() const noexcept { return n_ - zero_count_; }
    std::size_t zero_count() const noexcept { return zero_count_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

    // Flips coordinate i from 0 to 1. UsageError if i is out of range or already 1.
    void set(std::size_t i);

    // The j-th entry of the zero array, j < zero_count(). The order is an
    // implementation detail but is a deterministic function of the set() history.
    std::size_t zero_at(std::size_t j) const noexcept {
        return zero_stamp_[j] == epoch_ ? zero_at_[j] : j;
    }

    std::vector<std::size_t> ones() const;   // ascending
    std::vector<std::size_t> zeros() const;  // ascending
    std::uint64_t mask() const;              // n <= 64 only

    BitView view() const noexcept { return BitView(words_, n_); }

    // Back to the all-zeros state, same arity.
    void reset();

    friend bool operator==(const BitState& a, const BitState& b) noexcept {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    std::size_t pos_of(std::size_t i) const noexcept {
        return pos_stamp_[i] == epoch_ ? pos_of_[i] : i;
    }

    std::size_t n_;
    std::size_t zero_count_;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint32_t> zero_at_;
    std::vector<std::uint32_t> pos_of_;
    std::vector<std::uint32_t> zero_stamp_;
    std::vector<std::uint32_t> pos_stamp_;
    std::uint32_t epoch_ = 1;
};

// Coordinatewise a <= b.
bool precedes(const BitState& a, const BitState& b);

} // namespace choicewalk

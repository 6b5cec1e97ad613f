#include "choicewalk/union_find.hpp"

#include <numeric>
#include <utility>

namespace choicewalk {

UnionFindState::UnionFindState(std::size_t vertices) : parent_(vertices), size_(vertices) { reset(); }

void UnionFindState::reset() {
    std::iota(parent_.begin(), parent_.end(), 0u);
    std::fill(size_.begin(), size_.end(), 1u);
    components_ = parent_.size();
    largest_size_ = parent_.empty() ? 0 : 1;
    largest_root_ = 0;
}

std::size_t UnionFindState::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

std::size_t UnionFindState::find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
}

bool UnionFindState::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = static_cast<std::uint32_t>(a);
    size_[a] += size_[b];
    --components_;
    // The old largest root can only stop being a root by merging into a, and
    // then a is at least as large.
    if (size_[a] > largest_size_ || largest_root_ == b) {
        largest_size_ = size_[a];
        largest_root_ = a;
    }
    return true;
}

} // namespace choicewalk

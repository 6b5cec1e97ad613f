#include "choicewalk/edge_index.hpp"

#include <algorithm>
#include <string>

#include "choicewalk/errors.hpp"

namespace choicewalk {

EdgeIndex::EdgeIndex(std::size_t vertices) : v_(vertices), row_start_(vertices) {
    std::size_t acc = 0;
    for (std::size_t a = 0; a < v_; ++a) {
        row_start_[a] = acc;
        acc += v_ - a - 1;
    }
}

std::pair<std::size_t, std::size_t> EdgeIndex::endpoints(std::size_t i) const noexcept {
    auto it = std::upper_bound(row_start_.begin(), row_start_.end(), i);
    const std::size_t a = static_cast<std::size_t>(it - row_start_.begin()) - 1;
    return {a, a + 1 + (i - row_start_[a])};
}

std::pair<std::size_t, std::size_t> EdgeIndex::edge_of(std::size_t i) const {
    if (i >= size())
        throw UsageError("edge index " + std::to_string(i) + " out of range for " + std::to_string(v_) + " vertices");
    return endpoints(i);
}

std::size_t EdgeIndex::index_of(std::size_t a, std::size_t b) const {
    if (a == b) throw UsageError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") is a loop");
    if (a > b) std::swap(a, b);
    if (b >= v_) throw UsageError("vertex " + std::to_string(b) + " out of range for " + std::to_string(v_) + " vertices");
    return row_start_[a] + (b - a - 1);
}

} // namespace choicewalk

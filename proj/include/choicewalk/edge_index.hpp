#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace choicewalk {

/// Lexicographic bijection between {0, ..., C(v,2)-1} and vertex pairs (a,b), a<b:
/// (0,1), (0,2), ..., (0,v-1), (1,2), ...
class EdgeIndex {
public:
    explicit EdgeIndex(std::size_t vertices);

    std::size_t vertices() const noexcept { return v_; }
    std::size_t size() const noexcept { return v_ * (v_ - (v_ > 0)) / 2; }

    // UsageError when i >= size().
    std::pair<std::size_t, std::size_t> edge_of(std::size_t i) const;
    // Accepts either order; UsageError on a loop or out-of-range vertex.
    std::size_t index_of(std::size_t a, std::size_t b) const;

    // Unchecked hot-path variant of edge_of.
    std::pair<std::size_t, std::size_t> endpoints(std::size_t i) const noexcept;

private:
    std::size_t v_;
    std::vector<std::size_t> row_start_;  // index of (a, a+1)
};

} // namespace choicewalk

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace choicewalk {

/// Disjoint sets over vertices with union by size. Also tracks the
/// component count and the current largest component.
class UnionFindState {
public:
    explicit UnionFindState(std::size_t vertices = 0);

    void reset();

    std::size_t find(std::size_t x);              // path halving
    std::size_t find(std::size_t x) const;        // no compression
    // True when a and b were in different components.
    bool unite(std::size_t a, std::size_t b);

    std::size_t vertices() const noexcept { return parent_.size(); }
    std::size_t components() const noexcept { return components_; }
    std::size_t component_size(std::size_t x) const { return size_[find(x)]; }
    std::size_t largest_size() const noexcept { return largest_size_; }
    std::size_t largest_root() const noexcept { return largest_root_; }
    bool in_largest(std::size_t x) const { return find(x) == largest_root_; }
    std::size_t non_giant() const noexcept { return parent_.size() - largest_size_; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t components_ = 0;
    std::size_t largest_size_ = 0;
    std::size_t largest_root_ = 0;
};

} // namespace choicewalk

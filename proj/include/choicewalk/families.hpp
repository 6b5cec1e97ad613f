#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "choicewalk/edge_index.hpp"
#include "choicewalk/function.hpp"
#include "choicewalk/union_find.hpp"

namespace choicewalk {

/// A family instance in its textual form `kind:key=value,...`, e.g.
/// `tribes:n=8,s=2` or `prefix_threshold:n=50000,m=1000,k=25`.
struct FamilySpec {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> params;  // in written order

    // UsageError on malformed text. Does not validate kind or keys.
    static FamilySpec parse(std::string_view text);
    std::string to_string() const;

    bool has(std::string_view key) const;
    const std::string* find(std::string_view key) const;
    FamilySpec with(std::string_view key, std::string value) const;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct FamilyInfo {
    std::string kind;
    std::string parameters;
    std::string description;
};

// Every kind build_function() accepts.
const std::vector<FamilyInfo>& family_catalog();

// The parameter that scales an instance: "v" for graph kinds, "t" for
// recursive_majority, "n" otherwise.
std::string size_key(std::string_view kind);

// UsageError on unknown kind, unknown or missing keys, or invalid values.
FunctionHandle build_function(const FamilySpec& spec);
FunctionHandle build_function(std::string_view text);

FunctionHandle make_dictator(std::size_t n, std::size_t i);
FunctionHandle make_and(std::size_t n);
FunctionHandle make_or(std::size_t n);
FunctionHandle make_majority(std::size_t n);
// At least k ones among coordinates 0..m-1.
FunctionHandle make_prefix_threshold(std::size_t n, std::size_t m, std::size_t k);
// At least k ones among the listed coordinates.
FunctionHandle make_threshold_on(std::size_t n, std::vector<std::size_t> set, std::size_t k, std::string name);
// Random monotone function of coordinates 0..m-1 (m <= 16), tabulated.
FunctionHandle make_junta(std::size_t n, std::size_t m, std::uint64_t seed);
FunctionHandle make_tribes(std::size_t n, std::size_t s);
FunctionHandle make_recursive_majority(std::size_t k, std::size_t t);
FunctionHandle make_connectivity(std::size_t vertices);
FunctionHandle make_k_connectivity(std::size_t vertices, std::size_t k);
FunctionHandle make_dnf(std::size_t n, std::vector<std::vector<std::size_t>> clauses, std::string name);
FunctionHandle make_random_monotone_dnf(std::size_t n, std::size_t clauses, std::size_t width, std::uint64_t seed);
FunctionHandle make_constant(std::size_t n, bool value);

// Tribe blocks of make_tribes(n, s): the first n % s blocks get s+1 coordinates.
std::vector<std::vector<std::size_t>> tribe_partition(std::size_t n, std::size_t s);

/// Functions of a simple graph on `vertices()` vertices, one coordinate per
/// vertex pair in EdgeIndex order.
class GraphFunction : public MonotoneFunction {
public:
    GraphFunction(std::size_t vertices, std::string name);

    std::size_t vertices() const noexcept { return edges_.vertices(); }
    const EdgeIndex& edges() const noexcept { return edges_; }

private:
    EdgeIndex edges_;
};

/// Tracker of a GraphFunction. Maintains components and degrees of the
/// accumulated graph for the graph-aware policies.
class GraphTracker : public IncrementalTracker {
public:
    const GraphFunction& graph() const noexcept { return graph_; }
    const UnionFindState& components() const noexcept { return uf_; }
    std::size_t degree(std::size_t vertex) const { return degree_[vertex]; }
    std::size_t min_degree() const noexcept { return min_degree_; }

protected:
    explicit GraphTracker(const GraphFunction& g);

    bool on_activate(std::size_t edge) final;
    bool on_reset() final;

    // Value of f after the accumulated graph gained the edge (a,b).
    virtual bool edge_added(std::size_t a, std::size_t b) = 0;
    virtual bool graph_reset() = 0;

    UnionFindState uf_;

private:
    const GraphFunction& graph_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint32_t> degree_count_;  // vertices per degree
    std::size_t min_degree_ = 0;
};

} // namespace choicewalk

#pragma once

// Shared fixtures: the small-arity function matrix and independent
// reference implementations the tests compare against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "choicewalk/bit_state.hpp"
#include "choicewalk/families.hpp"
#include "choicewalk/function.hpp"
#include "choicewalk/rng.hpp"

namespace testing {

using namespace choicewalk;

// Not monotone; used to check that the checkers catch it.
class Xor2 final : public MonotoneFunction {
public:
    Xor2() : MonotoneFunction(2, "xor2") {}
    bool evaluate(BitView x) const override { return x.test(0) != x.test(1); }
};

inline bool eval_mask(const MonotoneFunction& f, std::uint64_t mask) {
    return evaluate(f, BitState::from_mask(f.arity(), mask));
}

// Instances with arity <= 12 covering every family kind that fits.
inline std::vector<FunctionHandle> fuzz_matrix() {
    std::vector<FunctionHandle> out = {
        build_function("dictator:n=6,i=2"),
        build_function("and:n=5"),
        build_function("or:n=6"),
        build_function("majority:n=7"),
        build_function("prefix_threshold:n=10,m=5,k=2"),
        build_function("junta:n=9,m=4,seed=3"),
        build_function("tribes:n=8,s=2"),
        build_function("tribes:n=7,s=2"),
        build_function("recursive_majority:k=3,t=2"),
        build_function("connectivity:v=4"),
        build_function("k_connectivity:v=5,k=2"),
    };
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        out.push_back(make_random_monotone_dnf(10 + seed % 3, 3 + seed % 3, 2 + seed % 3, seed));
    return out;
}

// Random a <= b over n coordinates.
inline std::pair<BitState, BitState> random_pair(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double pa = u(rng), pb = u(rng);
    BitState a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool xa = u(rng) < pa;
        if (xa) a.set(i);
        if (xa || u(rng) < pb) b.set(i);
    }
    return {std::move(a), std::move(b)};
}

inline std::vector<std::size_t> random_order(std::size_t n, Rng& rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

// Connectedness of the graph on v vertices with the given edges, by DFS.
inline bool dfs_connected(std::size_t v, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(v);
    for (auto [a, b] : edges) adj[a].push_back(b), adj[b].push_back(a);
    std::vector<bool> seen(v, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        for (auto y : adj[x])
            if (!seen[y]) seen[y] = true, ++count, stack.push_back(y);
    }
    return count == v;
}

// One RFC-4180 record (no embedded newlines) split into fields.
inline std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"')
                out.back() += '"', ++i;
            else if (ch == '"')
                quoted = false;
            else
                out.back() += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.emplace_back();
        } else if (ch != '\r') {
            out.back() += ch;
        }
    }
    return out;
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

} // namespace testing

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "choicewalk/function.hpp"
#include "choicewalk/policy.hpp"
#include "choicewalk/rng.hpp"

namespace choicewalk {

// Exact small-arity ground truth. Every routine here enumerates subsets of
// the coordinates, so each has an arity cap (CapacityError above it).

using Rational = mpq_class;

inline constexpr std::size_t kMaxSoloArity = 24;
inline constexpr std::size_t kMaxDpArity = 14;
inline constexpr std::size_t kMaxRelevantArity = 20;
inline constexpr std::size_t kMaxExactMonotoneArity = 20;
inline constexpr std::size_t kMaxLevelArity = 24;
// The DPs run in exact rational arithmetic up to this arity, in double above.
inline constexpr std::size_t kExactRationalArity = 10;

/// Activation probability by step: values[t] = Pr[f(state after t steps) = 1].
struct ExactCurve {
    std::size_t arity = 0;
    std::vector<double> values;
    std::vector<Rational> exact;  // same length as values when exact, else empty
    // Absolute error bound on every values[t]; 0 when exact. For the double
    // DPs this is the a priori bound n * C(n,r) * 2^n * DBL_EPSILON.
    double error_bound = 0.0;

    bool is_exact() const noexcept { return !exact.empty(); }
    // Smallest t with value >= 1/2, compared exactly when possible.
    std::size_t threshold() const;
};

// Level-set counting over all 2^n inputs; always exact. arity <= 24.
ExactCurve exact_solo_curve(const MonotoneFunction& f);

// Forward DP over the distribution of the walk state under `policy`,
// averaging over every proposal of min(r, zeros) bits and spreading each
// proposal's mass uniformly over the policy's preference class. arity <= 14.
ExactCurve exact_policy_curve(const MonotoneFunction& f, const Policy& policy, std::size_t r);

// Best activation probability over all adaptive agents:
//   W_0(S) = f(S),  W_k(S) = 1 if f(S) else E_C[ max_{c in C} W_{k-1}(S + c) ],
// returned as t -> W_t(empty). arity <= 14.
ExactCurve optimal_rchoice_curve(const MonotoneFunction& f, std::size_t r);

// R(f) by checking every pair of inputs that differ in one coordinate. arity <= 20.
std::vector<std::size_t> relevant_set_bruteforce(const MonotoneFunction& f);

struct MonotonicityReport {
    bool monotone = true;
    bool exhaustive = false;
    // On failure: low <= high coordinatewise but f(low) = 1 > f(high) = 0.
    std::vector<std::size_t> witness_low;
    std::vector<std::size_t> witness_high;
};

// Exhaustive for arity <= 20, otherwise `samples` random pairs a <= b.
MonotonicityReport monotonicity_check(const MonotoneFunction& f, std::size_t samples = 10000,
                                      std::uint64_t seed = kDefaultSeed);

struct LevelProbability {
    double value = 0.0;
    std::optional<Rational> exact;  // set for arity <= 24
    std::size_t samples = 0;        // Monte Carlo samples otherwise
};

// Pr[f(X) = 1 | X has exactly `weight` ones].
LevelProbability level_probability(const MonotoneFunction& f, std::size_t weight, std::size_t samples = 100000,
                                   std::uint64_t seed = kDefaultSeed);

} // namespace choicewalk

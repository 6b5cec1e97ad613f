#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "choicewalk/function.hpp"
#include "choicewalk/process.hpp"
#include "choicewalk/rng.hpp"

namespace choicewalk {

inline constexpr double kConfidence = 0.99;

struct RunOptions {
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;  // 0: all hardware threads
    // Called with (done, total) from worker threads, serialized.
    std::function<void(std::size_t, std::size_t)> progress;
};

unsigned resolve_workers(unsigned requested);

// Runs fn(worker, index) for index in [0, count) on `workers` threads.
// Each index runs exactly once; fn must only write state keyed by index
// or owned by its worker.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(unsigned, std::size_t)>& fn);

// Trial i uses RNG stream (options.seed, i); output is in trial order and
// does not depend on the worker count.
std::vector<HittingSample> sample_hitting_times(const MonotoneFunction& f, const ProcessConfig& config,
                                                std::size_t trials, const RunOptions& options = {});

// Two-sided Clopper-Pearson interval for a binomial proportion.
std::pair<double, double> clopper_pearson(std::size_t successes, std::size_t trials, double confidence = kConfidence);

// 1-based ranks (lo, hi) such that [X_(lo), X_(hi)] covers the median of a
// continuous distribution with probability at least `confidence`.
std::pair<std::size_t, std::size_t> median_rank_interval(std::size_t samples, double confidence = kConfidence);

struct CurvePoint {
    std::size_t t = 0;
    std::size_t hits = 0;  // trials with H <= t
    double p = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

struct CurveEstimate {
    std::vector<CurvePoint> points;
    std::size_t trials = 0;
    std::string process;
};

// Empirical Pr[H <= t] on the grid, which equals Pr[f(X_t) = 1] for a
// monotone f on an increasing walk.
CurveEstimate curve_from_samples(std::span<const HittingSample> samples, std::span<const std::size_t> grid,
                                 double confidence = kConfidence);
CurveEstimate estimate_curve(const MonotoneFunction& f, const ProcessConfig& config, std::size_t trials,
                             std::span<const std::size_t> grid, const RunOptions& options = {});

struct ThresholdEstimate {
    std::size_t point = 0;  // lower median of H
    std::size_t ci_low = 0;
    std::size_t ci_high = 0;
    std::size_t trials = 0;
    std::string process;
};

ThresholdEstimate threshold_from_samples(std::span<const HittingSample> samples, double confidence = kConfidence);
// UsageError when trials < 100.
ThresholdEstimate estimate_threshold(const MonotoneFunction& f, const ProcessConfig& config, std::size_t trials,
                                     const RunOptions& options = {});

struct RatioRow {
    std::string family;
    std::size_t n = 0;  // the size parameter the row was built from
    std::size_t r = 0;
    std::string policy;
    ThresholdEstimate t1;
    ThresholdEstimate tr;
    double rho = 0.0;  // r * T_r / T_1
    double rho_lo = 0.0;
    double rho_hi = 0.0;
};

using FamilyGenerator = std::function<FunctionHandle(std::size_t)>;

// One row per size. Row k estimates T_1 with seed stream_seed(seed, 2k)
// and T_r with stream_seed(seed, 2k+1).
std::vector<RatioRow> ratio_table(const FamilyGenerator& family, std::span<const std::size_t> sizes, std::size_t r,
                                  const PolicyHandle& policy, std::size_t trials, const RunOptions& options = {});

struct TightPrediction {
    double value = 0.0;
    // The bracketing regime 1 << T_1(f~) << |R| << n is visibly not met
    // (T_1(f~) <= 1, T_1(f~) == |R| or |R| == n).
    bool degenerate = false;
};

// T_1(f~) * n / (r * |R(f)|). UsageError unless 1 <= T_1(f~) <= |R| <= n and r >= 1.
TightPrediction predict_threshold_tight(std::size_t contraction_threshold, std::size_t relevant_size, std::size_t n,
                                        std::size_t r);

struct RestrictionSnapshot {
    std::size_t relevant = 0;      // |R(f^s)|
    bool exact = false;            // brute force rather than the useful_bits proxy
    bool active = false;           // f^s is already constant 1
    std::size_t contraction_threshold = 0;  // estimated T_1 of the contraction of f^s (0 when active)
};

// f^s for the given forced set. Relevance is brute force for arity <= 20
// and the family's useful_bits otherwise (UsageError when it has none).
// T_1 of the contraction comes from `inner_trials` solo walks on it.
RestrictionSnapshot restriction_snapshot(const FunctionHandle& f, std::vector<std::size_t> forced,
                                         std::size_t inner_trials, const RunOptions& options = {});

struct DiagnosticRow {
    std::size_t prefix = 0;
    std::size_t trajectories = 0;
    std::size_t active = 0;  // trajectories where f^s was already 1
    double mean_relevant = 0.0;
    double mean_contraction_threshold = 0.0;
    bool exact = false;
};

// Along `trajectories` uniformly random activation orders, the restriction
// quantities at each prefix length s. Descriptive only.
std::vector<DiagnosticRow> restriction_diagnostics(const FunctionHandle& f, std::span<const std::size_t> prefixes,
                                                   std::size_t trajectories, std::size_t inner_trials,
                                                   const RunOptions& options = {});

} // namespace choicewalk

#include "choicewalk/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>

#include "choicewalk/errors.hpp"
#include "choicewalk/oracle.hpp"
#include "choicewalk/views.hpp"

namespace choicewalk {

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(unsigned, std::size_t)>& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(0, i);
        return;
    }
    constexpr std::size_t chunk = 64;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t begin = next.fetch_add(chunk);
                    if (begin >= count) return;
                    const std::size_t end = std::min(count, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) fn(w, i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<HittingSample> sample_hitting_times(const MonotoneFunction& f, const ProcessConfig& config,
                                                std::size_t trials, const RunOptions& options) {
    const unsigned workers = resolve_workers(options.workers);
    std::vector<std::unique_ptr<Walker>> walkers(workers);
    for (auto& w : walkers) w = std::make_unique<Walker>(f);

    std::vector<HittingSample> out(trials);
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    const std::size_t report_every = std::max<std::size_t>(1, trials / 100);

    parallel_for(trials, workers, [&](unsigned w, std::size_t i) {
        const std::uint64_t seed = stream_seed(options.seed, i);
        Rng rng(seed);
        out[i] = walkers[w]->run(config, rng);
        out[i].seed = seed;
        if (options.progress) {
            const std::size_t d = ++done;
            if (d % report_every == 0 || d == trials) {
                std::lock_guard lock(progress_mutex);
                options.progress(d, trials);
            }
        }
    });
    return out;
}

std::pair<double, double> clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0) throw UsageError("clopper_pearson: no trials");
    if (successes > trials) throw UsageError("clopper_pearson: successes exceed trials");
    const double alpha = 1.0 - confidence;
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    const double lo = successes == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1), alpha / 2);
    const double hi =
        successes == trials ? 1.0 : boost::math::quantile(boost::math::beta_distribution<>(k + 1, n - k), 1 - alpha / 2);
    return {lo, hi};
}

std::pair<std::size_t, std::size_t> median_rank_interval(std::size_t samples, double confidence) {
    if (samples == 0) throw UsageError("median_rank_interval: no samples");
    const double alpha = 1.0 - confidence;
    const boost::math::binomial_distribution<> b(static_cast<double>(samples), 0.5);
    // Largest lo with Pr[B <= lo-1] <= alpha/2.
    std::size_t good = 0;
    std::size_t bad = samples / 2 + 1;
    while (bad - good > 1) {
        const std::size_t mid = (good + bad) / 2;
        if (boost::math::cdf(b, static_cast<double>(mid - 1)) <= alpha / 2)
            good = mid;
        else
            bad = mid;
    }
    const std::size_t lo = std::max<std::size_t>(good, 1);
    return {lo, samples - lo + 1};
}

CurveEstimate curve_from_samples(std::span<const HittingSample> samples, std::span<const std::size_t> grid,
                                 double confidence) {
    if (samples.empty()) throw UsageError("estimate_curve: needs at least one trial");
    std::vector<std::size_t> h;
    h.reserve(samples.size());
    for (const auto& s : samples) h.push_back(s.hitting_time);
    std::sort(h.begin(), h.end());

    CurveEstimate out;
    out.trials = samples.size();
    for (auto t : grid) {
        CurvePoint p;
        p.t = t;
        p.hits = static_cast<std::size_t>(std::upper_bound(h.begin(), h.end(), t) - h.begin());
        p.p = static_cast<double>(p.hits) / static_cast<double>(h.size());
        std::tie(p.ci_lo, p.ci_hi) = clopper_pearson(p.hits, h.size(), confidence);
        out.points.push_back(p);
    }
    return out;
}

CurveEstimate estimate_curve(const MonotoneFunction& f, const ProcessConfig& config, std::size_t trials,
                             std::span<const std::size_t> grid, const RunOptions& options) {
    for (auto t : grid)
        if (t > f.arity())
            throw UsageError("estimate_curve: grid point " + std::to_string(t) + " exceeds arity " +
                             std::to_string(f.arity()));
    const auto samples = sample_hitting_times(f, config, trials, options);
    auto out = curve_from_samples(samples, grid);
    out.process = config.describe();
    return out;
}

ThresholdEstimate threshold_from_samples(std::span<const HittingSample> samples, double confidence) {
    if (samples.empty()) throw UsageError("estimate_threshold: needs at least one trial");
    std::vector<std::size_t> h;
    h.reserve(samples.size());
    for (const auto& s : samples) h.push_back(s.hitting_time);
    std::sort(h.begin(), h.end());

    ThresholdEstimate out;
    out.trials = h.size();
    out.point = h[(h.size() + 1) / 2 - 1];
    const auto [lo, hi] = median_rank_interval(h.size(), confidence);
    out.ci_low = h[lo - 1];
    out.ci_high = h[hi - 1];
    return out;
}

ThresholdEstimate estimate_threshold(const MonotoneFunction& f, const ProcessConfig& config, std::size_t trials,
                                     const RunOptions& options) {
    if (trials < 100) throw UsageError("estimate_threshold: needs at least 100 trials, got " + std::to_string(trials));
    const auto samples = sample_hitting_times(f, config, trials, options);
    auto out = threshold_from_samples(samples);
    out.process = config.describe();
    return out;
}

std::vector<RatioRow> ratio_table(const FamilyGenerator& family, std::span<const std::size_t> sizes, std::size_t r,
                                  const PolicyHandle& policy, std::size_t trials, const RunOptions& options) {
    if (r == 0) throw UsageError("ratio_table: r must be at least 1");
    std::vector<RatioRow> rows;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const FunctionHandle f = family(sizes[k]);
        const auto config = ProcessConfig::rchoice(r, policy);
        // Fail fast, before spending the solo trials.
        if (config.policy) config.policy->check_compatible(*f);

        RunOptions solo_options = options;
        solo_options.seed = stream_seed(options.seed, 2 * k);
        RunOptions choice_options = options;
        choice_options.seed = stream_seed(options.seed, 2 * k + 1);

        RatioRow row;
        row.family = f->name();
        row.n = sizes[k];
        row.r = r;
        row.policy = config.policy_name();
        row.t1 = estimate_threshold(*f, ProcessConfig::solo(), trials, solo_options);
        row.tr = estimate_threshold(*f, config, trials, choice_options);
        if (row.t1.point == 0 || row.t1.ci_low == 0)
            throw UsageError("ratio_table: " + row.family + " has zero solo threshold");
        const double rr = static_cast<double>(r);
        row.rho = rr * static_cast<double>(row.tr.point) / static_cast<double>(row.t1.point);
        row.rho_lo = rr * static_cast<double>(row.tr.ci_low) / static_cast<double>(row.t1.ci_high);
        row.rho_hi = rr * static_cast<double>(row.tr.ci_high) / static_cast<double>(row.t1.ci_low);
        rows.push_back(std::move(row));
    }
    return rows;
}

TightPrediction predict_threshold_tight(std::size_t contraction_threshold, std::size_t relevant_size, std::size_t n,
                                        std::size_t r) {
    if (r == 0) throw UsageError("predict_threshold_tight: r must be at least 1");
    if (!(1 <= contraction_threshold && contraction_threshold <= relevant_size && relevant_size <= n))
        throw UsageError("predict_threshold_tight: need 1 <= T1(contraction) <= |R| <= n, got " +
                         std::to_string(contraction_threshold) + ", " + std::to_string(relevant_size) + ", " +
                         std::to_string(n));
    TightPrediction out;
    out.value = static_cast<double>(contraction_threshold) * static_cast<double>(n) /
                (static_cast<double>(r) * static_cast<double>(relevant_size));
    out.degenerate = contraction_threshold <= 1 || contraction_threshold == relevant_size || relevant_size == n;
    return out;
}

RestrictionSnapshot restriction_snapshot(const FunctionHandle& f, std::vector<std::size_t> forced,
                                         std::size_t inner_trials, const RunOptions& options) {
    const auto restricted = restrict(f, forced);
    RestrictionSnapshot out;
    {
        const BitState zero(restricted->arity());
        if (evaluate(*restricted, zero)) {
            out.active = true;
            out.exact = true;
            return out;
        }
    }

    std::vector<std::size_t> relevant;
    if (restricted->arity() <= kMaxRelevantArity) {
        relevant = relevant_set_bruteforce(*restricted);
        out.exact = true;
    } else {
        const auto base_state = BitState::from_indices(f->arity(), restricted->forced());
        const auto useful = f->useful_bits(base_state);
        if (!useful)
            throw UsageError("restriction diagnostics: " + f->name() +
                             " is too large for brute force and has no useful_bits");
        const auto& free = restricted->free_coordinates();
        for (auto i : *useful)
            relevant.push_back(static_cast<std::size_t>(std::lower_bound(free.begin(), free.end(), i) - free.begin()));
    }
    out.relevant = relevant.size();

    const auto contracted = contract(restricted, relevant);
    const auto samples =
        sample_hitting_times(*contracted, ProcessConfig::solo(), std::max<std::size_t>(inner_trials, 1), options);
    out.contraction_threshold = threshold_from_samples(samples).point;
    return out;
}

std::vector<DiagnosticRow> restriction_diagnostics(const FunctionHandle& f, std::span<const std::size_t> prefixes,
                                                   std::size_t trajectories, std::size_t inner_trials,
                                                   const RunOptions& options) {
    if (trajectories == 0) throw UsageError("restriction_diagnostics: needs at least one trajectory");
    std::size_t longest = 0;
    for (auto s : prefixes) {
        if (s > f->arity())
            throw UsageError("restriction_diagnostics: prefix " + std::to_string(s) + " exceeds arity");
        longest = std::max(longest, s);
    }

    std::vector<DiagnosticRow> rows(prefixes.size());
    for (std::size_t k = 0; k < prefixes.size(); ++k) {
        rows[k].prefix = prefixes[k];
        rows[k].exact = true;
    }
    std::vector<double> relevant_sum(prefixes.size(), 0.0);
    std::vector<double> threshold_sum(prefixes.size(), 0.0);

    for (std::size_t traj = 0; traj < trajectories; ++traj) {
        // A solo activation order: each step a uniform remaining zero.
        Rng rng = make_stream(options.seed, traj);
        BitState state(f->arity());
        std::vector<std::size_t> order;
        for (std::size_t s = 0; s < longest; ++s) {
            const auto i = state.zero_at(uniform_below(rng, state.zero_count()));
            state.set(i);
            order.push_back(i);
        }
        for (std::size_t k = 0; k < prefixes.size(); ++k) {
            RunOptions inner = options;
            inner.seed = stream_seed(stream_seed(options.seed, traj), prefixes[k] + 1);
            inner.progress = nullptr;
            const std::vector<std::size_t> forced(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(prefixes[k]));
            const auto snap = restriction_snapshot(f, forced, inner_trials, inner);
            auto& row = rows[k];
            ++row.trajectories;
            if (snap.active) {
                ++row.active;
                continue;
            }
            row.exact = row.exact && snap.exact;
            relevant_sum[k] += static_cast<double>(snap.relevant);
            threshold_sum[k] += static_cast<double>(snap.contraction_threshold);
        }
        if (options.progress) options.progress(traj + 1, trajectories);
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto live = rows[k].trajectories - rows[k].active;
        if (live > 0) {
            rows[k].mean_relevant = relevant_sum[k] / static_cast<double>(live);
            rows[k].mean_contraction_threshold = threshold_sum[k] / static_cast<double>(live);
        }
    }
    return rows;
}

} // namespace choicewalk

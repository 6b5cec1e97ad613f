#include "choicewalk/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <map>
#include <string>

#include "choicewalk/errors.hpp"

namespace choicewalk {

namespace {

void require_arity(const MonotoneFunction& f, std::size_t cap, const char* what) {
    if (f.arity() > cap)
        throw CapacityError(std::string(what) + ": arity " + std::to_string(f.arity()) + " of " + f.name() +
                            " exceeds the exact limit " + std::to_string(cap));
}

bool eval_mask(const MonotoneFunction& f, std::uint64_t mask) {
    const std::uint64_t w[1] = {mask};
    return f.evaluate(BitView(w, f.arity()));
}

std::vector<std::uint8_t> truth_table(const MonotoneFunction& f) {
    std::vector<std::uint8_t> table(std::size_t{1} << f.arity());
    for (std::uint64_t m = 0; m < table.size(); ++m) table[m] = eval_mask(f, m);
    return table;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

std::vector<std::size_t> bits_of(std::uint64_t mask) {
    std::vector<std::size_t> out;
    while (mask) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

// Calls fn(proposal) for every size-min(r, |zeros|) subset of zeros, in
// lexicographic order. Returns the number of subsets.
template <class Fn>
std::uint64_t for_each_proposal(const std::vector<std::size_t>& zeros, std::size_t r, Fn&& fn) {
    const std::size_t z = zeros.size();
    const std::size_t k = std::min(r, z);
    std::vector<std::size_t> pos(k);
    for (std::size_t j = 0; j < k; ++j) pos[j] = j;
    std::vector<std::size_t> proposal(k);
    std::uint64_t count = 0;
    for (;;) {
        for (std::size_t j = 0; j < k; ++j) proposal[j] = zeros[pos[j]];
        fn(proposal);
        ++count;
        std::size_t j = k;
        while (j > 0 && pos[j - 1] == z - k + (j - 1)) --j;
        if (j == 0) return count;
        ++pos[j - 1];
        for (std::size_t q = j; q < k; ++q) pos[q] = pos[q - 1] + 1;
    }
}

double to_double(double x) { return x; }
double to_double(const Rational& x) { return x.get_d(); }

double dp_error_bound(std::size_t n, std::size_t r) {
    return static_cast<double>(n) * static_cast<double>(binomial(n, std::min(r, n))) *
           static_cast<double>(std::uint64_t{1} << n) * DBL_EPSILON;
}

template <class Num>
ExactCurve finish_curve(std::size_t n, const std::vector<Num>& values, double bound) {
    ExactCurve out;
    out.arity = n;
    for (const auto& v : values) out.values.push_back(to_double(v));
    if constexpr (std::is_same_v<Num, Rational>)
        out.exact = values;
    else
        out.error_bound = bound;
    return out;
}

template <class Num>
ExactCurve policy_dp(const MonotoneFunction& f, const Policy& policy, std::size_t r) {
    const std::size_t n = f.arity();
    const auto table = truth_table(f);
    auto tracker = f.fresh_tracker();

    std::vector<Num> values(n + 1, Num(0));
    if (table[0]) {
        std::fill(values.begin(), values.end(), Num(1));
        return finish_curve(n, values, 0.0);
    }

    std::map<std::uint64_t, Num> slice{{0, Num(1)}};
    Num absorbed(0);
    std::vector<std::size_t> klass;
    for (std::size_t t = 0; t < n; ++t) {
        std::map<std::uint64_t, Num> next;
        for (const auto& [mask, mass] : slice) {
            tracker->reset();
            for (auto i : bits_of(mask)) tracker->activate(i);
            std::vector<std::size_t> zeros;
            for (std::size_t i = 0; i < n; ++i)
                if (!((mask >> i) & 1u)) zeros.push_back(i);
            const std::size_t k = std::min(r, zeros.size());
            const Num proposal_mass = mass / Num(static_cast<long>(binomial(zeros.size(), k)));
            const TrialView view{f, *tracker, t};
            for_each_proposal(zeros, r, [&](const std::vector<std::size_t>& proposal) {
                preference_class(policy, view, proposal, klass);
                const Num share = proposal_mass / Num(static_cast<long>(klass.size()));
                for (auto c : klass) {
                    const std::uint64_t grown = mask | (std::uint64_t{1} << c);
                    if (table[grown])
                        absorbed += share;
                    else
                        next[grown] += share;
                }
            });
        }
        slice = std::move(next);
        values[t + 1] = absorbed;
    }
    return finish_curve(n, values, dp_error_bound(n, r));
}

template <class Num>
ExactCurve optimal_dp(const MonotoneFunction& f, std::size_t r) {
    const std::size_t n = f.arity();
    const auto table = truth_table(f);
    const std::size_t states = table.size();

    std::vector<Num> prev(states), cur(states);
    for (std::size_t m = 0; m < states; ++m) prev[m] = Num(table[m] ? 1 : 0);
    std::vector<Num> values(n + 1, Num(0));
    values[0] = prev[0];

    std::vector<std::size_t> zeros;
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t m = 0; m < states; ++m) {
            const auto weight = static_cast<std::size_t>(std::popcount(m));
            if (table[m]) {
                cur[m] = Num(1);
                continue;
            }
            // W_k at weight w only feeds W_t(empty) when w + k <= n.
            if (weight + k > n) {
                cur[m] = Num(0);
                continue;
            }
            zeros.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (!((m >> i) & 1u)) zeros.push_back(i);
            Num total(0);
            const auto count = for_each_proposal(zeros, r, [&](const std::vector<std::size_t>& proposal) {
                const Num* best = &prev[m | (std::size_t{1} << proposal[0])];
                for (std::size_t j = 1; j < proposal.size(); ++j) {
                    const Num& cand = prev[m | (std::size_t{1} << proposal[j])];
                    if (cand > *best) best = &cand;
                }
                total += *best;
            });
            cur[m] = total / Num(static_cast<long>(count));
        }
        values[k] = cur[0];
        std::swap(prev, cur);
    }
    return finish_curve(n, values, dp_error_bound(n, r));
}

} // namespace

std::size_t ExactCurve::threshold() const {
    if (is_exact()) {
        const Rational half(1, 2);
        for (std::size_t t = 0; t < exact.size(); ++t)
            if (exact[t] >= half) return t;
    } else {
        for (std::size_t t = 0; t < values.size(); ++t)
            if (values[t] >= 0.5) return t;
    }
    return values.size();
}

ExactCurve exact_solo_curve(const MonotoneFunction& f) {
    require_arity(f, kMaxSoloArity, "exact_solo_curve");
    const std::size_t n = f.arity();
    std::vector<std::uint64_t> accepted(n + 1, 0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        if (eval_mask(f, m)) ++accepted[static_cast<std::size_t>(std::popcount(m))];

    std::vector<Rational> values;
    for (std::size_t t = 0; t <= n; ++t) {
        Rational v(static_cast<unsigned long>(accepted[t]), static_cast<unsigned long>(binomial(n, t)));
        v.canonicalize();
        values.push_back(v);
    }
    return finish_curve(n, values, 0.0);
}

ExactCurve exact_policy_curve(const MonotoneFunction& f, const Policy& policy, std::size_t r) {
    require_arity(f, kMaxDpArity, "exact_policy_curve");
    if (r == 0) throw UsageError("exact_policy_curve: r must be at least 1");
    require_walkable(f);
    policy.check_compatible(f);
    if (f.arity() <= kExactRationalArity) return policy_dp<Rational>(f, policy, r);
    return policy_dp<double>(f, policy, r);
}

ExactCurve optimal_rchoice_curve(const MonotoneFunction& f, std::size_t r) {
    require_arity(f, kMaxDpArity, "optimal_rchoice_curve");
    if (r == 0) throw UsageError("optimal_rchoice_curve: r must be at least 1");
    require_walkable(f);
    if (f.arity() <= kExactRationalArity) return optimal_dp<Rational>(f, r);
    return optimal_dp<double>(f, r);
}

std::vector<std::size_t> relevant_set_bruteforce(const MonotoneFunction& f) {
    require_arity(f, kMaxRelevantArity, "relevant_set_bruteforce");
    const auto table = truth_table(f);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t m = 0; m < table.size(); ++m) {
            if (m & bit) continue;
            if (table[m] != table[m | bit]) {
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

MonotonicityReport monotonicity_check(const MonotoneFunction& f, std::size_t samples, std::uint64_t seed) {
    MonotonicityReport out;
    if (f.arity() <= kMaxExactMonotoneArity) {
        out.exhaustive = true;
        const auto table = truth_table(f);
        for (std::uint64_t m = 0; m < table.size(); ++m) {
            if (!table[m]) continue;
            for (std::size_t i = 0; i < f.arity(); ++i) {
                const std::uint64_t up = m | (std::uint64_t{1} << i);
                if (up != m && !table[up]) {
                    out.monotone = false;
                    out.witness_low = bits_of(m);
                    out.witness_high = bits_of(up);
                    return out;
                }
            }
        }
        return out;
    }

    Rng rng(seed);
    const std::size_t n = f.arity();
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < samples; ++s) {
        // Random a, then b = a plus a random extra set.
        const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        std::bernoulli_distribution in_a(density);
        BitState a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool xa = in_a(rng);
            const bool xb = xa || coin(rng);
            if (xa) a.set(i);
            if (xb) b.set(i);
        }
        if (evaluate(f, a) && !evaluate(f, b)) {
            out.monotone = false;
            out.witness_low = a.ones();
            out.witness_high = b.ones();
            return out;
        }
    }
    return out;
}

LevelProbability level_probability(const MonotoneFunction& f, std::size_t weight, std::size_t samples,
                                   std::uint64_t seed) {
    const std::size_t n = f.arity();
    if (weight > n)
        throw UsageError("level_probability: weight " + std::to_string(weight) + " exceeds arity " + std::to_string(n));
    LevelProbability out;
    if (n <= kMaxLevelArity) {
        std::uint64_t accepted = 0;
        if (weight == 0) {
            accepted = eval_mask(f, 0);
        } else {
            // Gosper's hack over all weight-s masks.
            std::uint64_t m = (std::uint64_t{1} << weight) - 1;
            const std::uint64_t end = std::uint64_t{1} << n;
            while (m < end) {
                accepted += eval_mask(f, m);
                const std::uint64_t low = m & (~m + 1);
                const std::uint64_t ripple = m + low;
                m = (((ripple ^ m) >> 2) / low) | ripple;
            }
        }
        Rational v(static_cast<unsigned long>(accepted), static_cast<unsigned long>(binomial(n, weight)));
        v.canonicalize();
        out.exact = v;
        out.value = v.get_d();
        return out;
    }

    if (samples == 0) throw UsageError("level_probability: Monte Carlo mode needs samples > 0");
    Rng rng(seed);
    std::size_t accepted = 0;
    BitState s(n);
    for (std::size_t k = 0; k < samples; ++k) {
        s.reset();
        for (std::size_t j = 0; j < weight; ++j) s.set(s.zero_at(uniform_below(rng, s.zero_count())));
        accepted += evaluate(f, s);
    }
    out.samples = samples;
    out.value = static_cast<double>(accepted) / static_cast<double>(samples);
    return out;
}

} // namespace choicewalk

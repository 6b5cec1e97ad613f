#include <doctest.h>

#include <bit>
#include <functional>
#include <map>

#include "choicewalk/errors.hpp"
#include "choicewalk/oracle.hpp"
#include "support.hpp"

using namespace choicewalk;

namespace {

Rational q(long a, long b) {
    Rational x(a, b);
    x.canonicalize();
    return x;
}

std::vector<Rational> qs(std::initializer_list<std::pair<long, long>> v) {
    std::vector<Rational> out;
    for (auto [a, b] : v) out.push_back(q(a, b));
    return out;
}

std::vector<PolicyHandle> compatible_policies(const MonotoneFunction& f) {
    std::vector<PolicyHandle> out;
    for (const auto& name : builtin_policies()) {
        auto p = make_policy(name);
        try {
            p->check_compatible(f);
        } catch (const UsageError&) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

// Pr[f active after t more steps of the uniform-agent r-choice walk from
// `mask`], by direct recursion over proposals and picks.
double uniform_reference(const MonotoneFunction& f, std::size_t r, std::uint64_t mask, std::size_t t,
                         std::map<std::pair<std::uint64_t, std::size_t>, double>& memo) {
    if (testing::eval_mask(f, mask)) return 1.0;
    if (t == 0) return 0.0;
    if (auto it = memo.find({mask, t}); it != memo.end()) return it->second;
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < f.arity(); ++i)
        if (!((mask >> i) & 1u)) zeros.push_back(i);
    const std::size_t k = std::min(r, zeros.size());
    double total = 0;
    std::size_t count = 0;
    // Every k-subset of zeros as a bitmask over zero positions.
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << zeros.size()); ++sub) {
        if (static_cast<std::size_t>(std::popcount(sub)) != k) continue;
        ++count;
        double inner = 0;
        for (std::size_t j = 0; j < zeros.size(); ++j)
            if ((sub >> j) & 1u)
                inner += uniform_reference(f, r, mask | (std::uint64_t{1} << zeros[j]), t - 1, memo);
        total += inner / static_cast<double>(k);
    }
    const double v = total / static_cast<double>(count);
    memo[{mask, t}] = v;
    return v;
}

} // namespace

TEST_CASE("exact solo curves") {
    const auto maj = exact_solo_curve(*make_majority(3));
    CHECK(maj.exact == qs({{0, 1}, {0, 1}, {1, 1}, {1, 1}}));
    CHECK(maj.threshold() == 2);

    const auto conn = exact_solo_curve(*make_connectivity(4));
    CHECK(conn.exact[3] == q(16, 20));
    CHECK(conn.exact[2] == 0);
    CHECK(conn.exact[4] == 1);
    CHECK(conn.threshold() == 3);

    const auto tribes = exact_solo_curve(*make_tribes(8, 2));
    CHECK(tribes.exact[2] == q(4, 28));
    CHECK(tribes.exact[3] == q(24, 56));
    CHECK(tribes.exact[4] == q(54, 70));
    CHECK(tribes.threshold() == 4);

    CHECK_THROWS_AS(exact_solo_curve(*make_and(25)), CapacityError);
}

TEST_CASE("exact curves are CDFs ending at 1") {
    for (const auto& f : testing::fuzz_matrix()) {
        CAPTURE(f->name());
        const auto n = f->arity();
        std::vector<ExactCurve> curves{exact_solo_curve(*f), optimal_rchoice_curve(*f, 2)};
        for (const auto& p : compatible_policies(*f)) curves.push_back(exact_policy_curve(*f, *p, 3));
        for (const auto& c : curves) {
            REQUIRE(c.values.size() == n + 1);
            CHECK(c.values[n] == doctest::Approx(1.0));
            for (std::size_t t = 0; t <= n; ++t) {
                CHECK(c.values[t] >= -c.error_bound);
                CHECK(c.values[t] <= 1.0 + c.error_bound);
                if (t) CHECK(c.values[t - 1] <= c.values[t] + c.error_bound);
            }
        }
    }
}

TEST_CASE("policy DP with r = 1 equals the solo curve exactly") {
    for (const auto& f : testing::fuzz_matrix()) {
        CAPTURE(f->name());
        const auto solo = exact_solo_curve(*f);
        for (const auto& p : compatible_policies(*f)) {
            const auto c = exact_policy_curve(*f, *p, 1);
            if (c.is_exact()) {
                CHECK(c.exact == solo.exact);
            } else {
                for (std::size_t t = 0; t < c.values.size(); ++t)
                    CHECK(std::abs(c.values[t] - solo.values[t]) <= c.error_bound);
            }
        }
    }
}

TEST_CASE("policy DP examples") {
    const auto greedy = make_policy("greedy_useful");
    const auto dict = exact_policy_curve(*make_dictator(4, 2), *greedy, 2);
    CHECK(dict.exact[1] == q(1, 2));
    CHECK(dict.exact == qs({{0, 1}, {1, 2}, {5, 6}, {1, 1}, {1, 1}}));
    for (const auto& p : {greedy, make_policy("uniform")})
        CHECK(exact_policy_curve(*make_and(3), *p, 2).exact == qs({{0, 1}, {0, 1}, {0, 1}, {1, 1}}));
    CHECK_THROWS_AS(exact_policy_curve(*make_and(15), *greedy, 2), CapacityError);
    CHECK_THROWS_AS(exact_policy_curve(*make_and(5), *make_policy("min_degree"), 2), UsageError);
}

TEST_CASE("policy DP matches a direct recursion for the uniform agent") {
    std::vector<FunctionHandle> small{build_function("tribes:n=7,s=2"), build_function("majority:n=5"),
                                      build_function("connectivity:v=4"), make_random_monotone_dnf(8, 3, 3, 4)};
    const auto uniform = make_policy("uniform");
    for (const auto& f : small)
        for (std::size_t r : {2u, 3u}) {
            CAPTURE(f->name());
            CAPTURE(r);
            const auto c = exact_policy_curve(*f, *uniform, r);
            std::map<std::pair<std::uint64_t, std::size_t>, double> memo;
            for (std::size_t t = 0; t <= f->arity(); ++t)
                CHECK(c.values[t] == doctest::Approx(uniform_reference(*f, r, 0, t, memo)).epsilon(1e-12));
        }
}

TEST_CASE("double-precision DP stays within its bound of the rational one") {
    // Arity 12 runs in double; with r = 1 the exact solo curve is the reference.
    const auto f = make_random_monotone_dnf(12, 4, 3, 99);
    const auto c = exact_policy_curve(*f, *make_policy("greedy_useful"), 1);
    CHECK_FALSE(c.is_exact());
    CHECK(c.error_bound > 0);
    CHECK(c.error_bound < 1e-6);
    const auto solo = exact_solo_curve(*f);
    for (std::size_t t = 0; t <= 12; ++t) CHECK(std::abs(c.values[t] - solo.values[t]) <= c.error_bound);
}

TEST_CASE("optimal r-choice curves") {
    const auto dict = optimal_rchoice_curve(*make_dictator(4, 1), 2);
    CHECK(dict.exact[1] == q(1, 2));
    CHECK(dict.exact == qs({{0, 1}, {1, 2}, {5, 6}, {1, 1}, {1, 1}}));
    for (std::size_t r : {1u, 2u, 4u}) CHECK(optimal_rchoice_curve(*make_or(6), r).exact[1] == 1);
    CHECK(optimal_rchoice_curve(*make_and(5), 3).threshold() == 5);
    CHECK_THROWS_AS(optimal_rchoice_curve(*make_and(15), 2), CapacityError);
}

TEST_CASE("recursive majority at N = 9 is strictly slow for the optimal agent") {
    const auto f = build_function("recursive_majority:k=3,t=2");
    const auto solo = exact_solo_curve(*f);
    CHECK(solo.exact == qs({{0, 1}, {0, 1}, {0, 1}, {0, 1}, {3, 14}, {11, 14}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}));
    CHECK(solo.threshold() == 5);
    const auto opt = optimal_rchoice_curve(*f, 2);
    CHECK(opt.exact[4] == q(543, 980));
    CHECK(opt.exact[3] == 0);
    CHECK(opt.threshold() == 4);
    CHECK(2 * opt.threshold() > solo.threshold());
}

TEST_CASE("optimal agent dominates every policy; r-complete dominates the optimal agent") {
    for (const auto& f : testing::fuzz_matrix()) {
        CAPTURE(f->name());
        const auto n = f->arity();
        const auto solo = exact_solo_curve(*f);
        for (std::size_t r : {2u, 3u}) {
            const auto opt = optimal_rchoice_curve(*f, r);
            for (const auto& p : compatible_policies(*f)) {
                const auto c = exact_policy_curve(*f, *p, r);
                for (std::size_t t = 0; t <= n; ++t) {
                    if (opt.is_exact() && c.is_exact())
                        CHECK(c.exact[t] <= opt.exact[t]);
                    else
                        CHECK(c.values[t] <= opt.values[t] + c.error_bound + opt.error_bound);
                }
            }
            for (std::size_t t = 0; t <= n; ++t) {
                const auto bits = std::min(r * t, n);
                if (opt.is_exact())
                    CHECK(opt.exact[t] <= solo.exact[bits]);
                else
                    CHECK(opt.values[t] <= solo.values[bits] + opt.error_bound);
            }
        }
    }
}

TEST_CASE("relevant sets by brute force") {
    CHECK(relevant_set_bruteforce(*make_dictator(6, 2)) == std::vector<std::size_t>{2});
    CHECK(relevant_set_bruteforce(*make_constant(5, true)).empty());
    CHECK(relevant_set_bruteforce(*make_prefix_threshold(10, 4, 2)) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(relevant_set_bruteforce(*make_and(21)), CapacityError);
}

TEST_CASE("level probabilities") {
    const auto f = build_function("recursive_majority:k=3,t=2");
    const auto four = level_probability(*f, 4);
    REQUIRE(four.exact.has_value());
    CHECK(*four.exact == q(27, 126));
    CHECK(four.value < 0.5);
    CHECK(*level_probability(*f, 9).exact == 1);
    CHECK(*level_probability(*make_majority(5), 2).exact == 0);
    // Below half the arity the level probability stays under 1/2.
    for (std::size_t s = 0; s <= 4; ++s) CHECK(*level_probability(*f, s).exact < q(1, 2));
    CHECK_THROWS_AS(level_probability(*f, 10), UsageError);

    // Above the exact cap: Monte Carlo.
    const auto big = level_probability(*make_dictator(30, 3), 15, 40000, 1);
    CHECK_FALSE(big.exact.has_value());
    CHECK(big.samples == 40000);
    CHECK(std::abs(big.value - 0.5) < 0.02);
}

namespace {

class WideXor final : public MonotoneFunction {
public:
    WideXor() : MonotoneFunction(30, "wide_xor") {}
    bool evaluate(BitView x) const override { return x.test(0) != x.test(1); }
};

} // namespace

TEST_CASE("monotonicity check: exhaustive and sampled") {
    const auto bad = monotonicity_check(testing::Xor2{});
    CHECK_FALSE(bad.monotone);
    CHECK(bad.exhaustive);
    CHECK(bad.witness_low == std::vector<std::size_t>{0});
    CHECK(bad.witness_high == std::vector<std::size_t>{0, 1});

    const auto big = monotonicity_check(*make_connectivity(8), 2000);
    CHECK(big.monotone);
    CHECK_FALSE(big.exhaustive);

    const auto wide = monotonicity_check(WideXor{}, 2000);
    CHECK_FALSE(wide.monotone);
    REQUIRE(wide.witness_low.size() <= wide.witness_high.size());
}

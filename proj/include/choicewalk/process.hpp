#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "choicewalk/function.hpp"
#include "choicewalk/policy.hpp"
#include "choicewalk/rng.hpp"

namespace choicewalk {

enum class ProcessKind {
    solo,       // one uniformly random zero per step
    rchoice,    // r zeros proposed, the policy flips one
    rcomplete,  // r random zeros flipped at once
};

struct ProcessConfig {
    ProcessKind kind = ProcessKind::solo;
    std::size_t r = 1;
    PolicyHandle policy;  // rchoice only; null means uniform

    static ProcessConfig solo() { return {}; }
    static ProcessConfig rchoice(std::size_t r, PolicyHandle policy) { return {ProcessKind::rchoice, r, std::move(policy)}; }
    static ProcessConfig rcomplete(std::size_t r) { return {ProcessKind::rcomplete, r, nullptr}; }

    // "solo", "rchoice(r=2,greedy_useful)", "rcomplete(r=3)"
    std::string describe() const;
    std::string policy_name() const;
};

struct HittingSample {
    std::size_t hitting_time = 0;  // steps until f first reads 1 (0 only if f(0)=1)
    std::uint64_t seed = 0;        // seed of the trial's RNG stream, when run through the estimator
    std::size_t useful_steps = 0;  // steps whose proposal held a useful bit (when usefulness is known)
};

/// Runs walks on one function, reusing a tracker across trials. Not
/// thread-safe; use one Walker per worker.
class Walker {
public:
    // UsageError unless f(all ones) = 1.
    explicit Walker(const MonotoneFunction& f);

    HittingSample run(const ProcessConfig& config, Rng& rng);

    const MonotoneFunction& function() const noexcept { return f_; }

private:
    HittingSample run_solo(Rng& rng);
    HittingSample run_rchoice(const Policy& policy, std::size_t r, Rng& rng);
    HittingSample run_rcomplete(std::size_t r, Rng& rng);

    const MonotoneFunction& f_;
    std::unique_ptr<IncrementalTracker> tracker_;
    std::vector<std::size_t> proposal_;
    std::vector<std::size_t> scratch_;
};

// min(r, zero_count) distinct zeros of s, uniform without replacement
// (Floyd's algorithm over the zero array), written ascending into out.
void draw_proposal(const BitState& s, std::size_t r, Rng& rng, std::vector<std::size_t>& out);

HittingSample run_solo(const MonotoneFunction& f, Rng& rng);
// IntegrityError if the policy picks a bit that was not proposed.
HittingSample run_rchoice(const MonotoneFunction& f, const Policy& policy, std::size_t r, Rng& rng);
HittingSample run_rcomplete(const MonotoneFunction& f, std::size_t r, Rng& rng);

// How often each of n elements was proposed during `steps` steps of the
// r-choice walk driven by the uniform agent.
struct CollisionCensus {
    std::size_t never = 0;
    std::size_t once = 0;
    std::size_t twice_plus = 0;
};

// UsageError if steps > n or r == 0.
CollisionCensus collision_census(std::size_t n, std::size_t r, std::size_t steps, Rng& rng);

} // namespace choicewalk

#include "choicewalk/process.hpp"

#include <algorithm>

#include "choicewalk/errors.hpp"

namespace choicewalk {

std::string ProcessConfig::policy_name() const {
    if (kind != ProcessKind::rchoice) return "";
    return policy ? policy->name() : "uniform";
}

std::string ProcessConfig::describe() const {
    switch (kind) {
    case ProcessKind::solo:
        return "solo";
    case ProcessKind::rchoice:
        return "rchoice(r=" + std::to_string(r) + "," + policy_name() + ")";
    case ProcessKind::rcomplete:
        return "rcomplete(r=" + std::to_string(r) + ")";
    }
    return "?";
}

void draw_proposal(const BitState& s, std::size_t r, Rng& rng, std::vector<std::size_t>& out) {
    out.clear();
    const std::size_t z = s.zero_count();
    if (z <= r) {
        for (std::size_t j = 0; j < z; ++j) out.push_back(s.zero_at(j));
    } else {
        // Floyd: positions in the zero array; for each j, take a fresh
        // uniform position in [0, j], or j itself on a repeat.
        for (std::size_t j = z - r; j < z; ++j) {
            const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
            const std::size_t pick = std::find(out.begin(), out.end(), t) == out.end() ? t : j;
            out.push_back(pick);
        }
        for (auto& p : out) p = s.zero_at(p);
    }
    std::sort(out.begin(), out.end());
}

Walker::Walker(const MonotoneFunction& f) : f_(f) {
    require_walkable(f);
    tracker_ = f.fresh_tracker();
}

HittingSample Walker::run(const ProcessConfig& config, Rng& rng) {
    if (config.r == 0) throw UsageError("r must be at least 1");
    switch (config.kind) {
    case ProcessKind::solo:
        return run_solo(rng);
    case ProcessKind::rchoice: {
        static const UniformPolicy uniform;
        const Policy& policy = config.policy ? *config.policy : uniform;
        policy.check_compatible(f_);
        return run_rchoice(policy, config.r, rng);
    }
    case ProcessKind::rcomplete:
        return run_rcomplete(config.r, rng);
    }
    throw UsageError("unknown process kind");
}

HittingSample Walker::run_solo(Rng& rng) {
    auto& tr = *tracker_;
    tr.reset();
    HittingSample out;
    if (tr.active()) return out;
    for (;;) {
        const std::size_t i = tr.state().zero_at(uniform_below(rng, tr.state().zero_count()));
        if (tr.is_useful(i).value_or(false)) ++out.useful_steps;
        ++out.hitting_time;
        if (tr.activate(i) == Activation::now_one) return out;
    }
}

HittingSample Walker::run_rchoice(const Policy& policy, std::size_t r, Rng& rng) {
    auto& tr = *tracker_;
    tr.reset();
    HittingSample out;
    if (tr.active()) return out;
    for (;;) {
        draw_proposal(tr.state(), r, rng, proposal_);
        for (auto i : proposal_)
            if (tr.is_useful(i).value_or(false)) {
                ++out.useful_steps;
                break;
            }
        const TrialView view{f_, tr, out.hitting_time};
        const std::size_t c = choose(policy, view, proposal_, rng, scratch_);
        ++out.hitting_time;
        if (tr.activate(c) == Activation::now_one) return out;
    }
}

HittingSample Walker::run_rcomplete(std::size_t r, Rng& rng) {
    auto& tr = *tracker_;
    tr.reset();
    HittingSample out;
    if (tr.active()) return out;
    for (;;) {
        draw_proposal(tr.state(), r, rng, proposal_);
        for (auto i : proposal_)
            if (tr.is_useful(i).value_or(false)) {
                ++out.useful_steps;
                break;
            }
        for (auto i : proposal_) tr.activate(i);
        ++out.hitting_time;
        if (tr.active()) return out;
    }
}

HittingSample run_solo(const MonotoneFunction& f, Rng& rng) { return Walker(f).run(ProcessConfig::solo(), rng); }

HittingSample run_rchoice(const MonotoneFunction& f, const Policy& policy, std::size_t r, Rng& rng) {
    // Non-owning handle: the policy outlives this call.
    PolicyHandle borrowed(std::shared_ptr<const Policy>{}, &policy);
    return Walker(f).run(ProcessConfig::rchoice(r, borrowed), rng);
}

HittingSample run_rcomplete(const MonotoneFunction& f, std::size_t r, Rng& rng) {
    return Walker(f).run(ProcessConfig::rcomplete(r), rng);
}

CollisionCensus collision_census(std::size_t n, std::size_t r, std::size_t steps, Rng& rng) {
    if (r == 0) throw UsageError("collision_census: r must be at least 1");
    if (steps > n)
        throw UsageError("collision_census: steps=" + std::to_string(steps) + " exceeds n=" + std::to_string(n));
    BitState state(n);
    std::vector<std::uint32_t> proposed(n, 0);
    std::vector<std::size_t> proposal;
    for (std::size_t step = 0; step < steps; ++step) {
        draw_proposal(state, r, rng, proposal);
        for (auto i : proposal) ++proposed[i];
        state.set(proposal[proposal.size() == 1 ? 0 : uniform_below(rng, proposal.size())]);
    }
    CollisionCensus out;
    for (auto c : proposed) {
        if (c == 0)
            ++out.never;
        else if (c == 1)
            ++out.once;
        else
            ++out.twice_plus;
    }
    return out;
}

} // namespace choicewalk

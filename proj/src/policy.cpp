#include "choicewalk/policy.hpp"

#include <algorithm>
#include <cmath>

#include "choicewalk/errors.hpp"
#include "choicewalk/families.hpp"

namespace choicewalk {

void Policy::check_compatible(const MonotoneFunction&) const {}

void UniformPolicy::preferred(const TrialView&, std::span<const std::size_t> proposal,
                              std::vector<std::size_t>& out) const {
    out.assign(proposal.begin(), proposal.end());
}

void GreedyUsefulPolicy::preferred(const TrialView& view, std::span<const std::size_t> proposal,
                                   std::vector<std::size_t>& out) const {
    for (auto i : proposal)
        if (view.is_useful(i)) out.push_back(i);
    if (out.empty()) out.assign(proposal.begin(), proposal.end());
}

namespace {

const GraphTracker& graph_tracker(const TrialView& view, const char* policy) {
    const auto* g = dynamic_cast<const GraphTracker*>(&view.tracker);
    if (!g) throw UsageError(std::string(policy) + " needs a graph-backed function, got " + view.function.name());
    return *g;
}

void require_graph(const MonotoneFunction& f, const std::string& policy) {
    if (!dynamic_cast<const GraphFunction*>(&f))
        throw UsageError(policy + " needs a graph-backed function (connectivity, k_connectivity), got " + f.name());
}

} // namespace

std::string ConnectivityTwoPhasePolicy::name() const {
    return rule_ == PhaseSwitch::adaptive ? "connectivity_two_phase" : "connectivity_two_phase_steps";
}

void ConnectivityTwoPhasePolicy::check_compatible(const MonotoneFunction& f) const { require_graph(f, name()); }

bool ConnectivityTwoPhasePolicy::in_phase_two(const GraphTracker& tracker, std::size_t step) const {
    const double v = static_cast<double>(tracker.graph().vertices());
    if (rule_ == PhaseSwitch::adaptive)
        return static_cast<double>(tracker.components().non_giant()) <= std::pow(v, 2.0 / 3.0);
    const double loglog = v > std::exp(1.0) ? std::log(std::log(v)) : 0.0;
    return static_cast<double>(step) >= v * loglog;
}

void ConnectivityTwoPhasePolicy::preferred(const TrialView& view, std::span<const std::size_t> proposal,
                                           std::vector<std::size_t>& out) const {
    const auto& g = graph_tracker(view, "connectivity_two_phase");
    if (in_phase_two(g, view.step)) {
        const auto& uf = g.components();
        const auto& edges = g.graph().edges();
        for (auto e : proposal) {
            const auto [a, b] = edges.endpoints(e);
            if (!(uf.in_largest(a) && uf.in_largest(b))) out.push_back(e);
        }
        if (!out.empty()) return;
    }
    out.assign(proposal.begin(), proposal.end());
}

void MinDegreePolicy::check_compatible(const MonotoneFunction& f) const { require_graph(f, name()); }

void MinDegreePolicy::preferred(const TrialView& view, std::span<const std::size_t> proposal,
                                std::vector<std::size_t>& out) const {
    const auto& g = graph_tracker(view, "min_degree");
    const auto& edges = g.graph().edges();
    const auto low = g.min_degree();
    for (auto e : proposal) {
        const auto [a, b] = edges.endpoints(e);
        if (g.degree(a) == low || g.degree(b) == low) out.push_back(e);
    }
    if (out.empty()) out.assign(proposal.begin(), proposal.end());
}

const std::vector<std::string>& builtin_policies() {
    static const std::vector<std::string> names = {"uniform", "greedy_useful", "connectivity_two_phase", "min_degree"};
    return names;
}

PolicyHandle make_policy(std::string_view name, PolicyOptions options) {
    if (name == "uniform") return std::make_shared<UniformPolicy>();
    if (name == "greedy_useful") return std::make_shared<GreedyUsefulPolicy>();
    if (name == "connectivity_two_phase") return std::make_shared<ConnectivityTwoPhasePolicy>(options.phase_switch);
    if (name == "connectivity_two_phase_steps")
        return std::make_shared<ConnectivityTwoPhasePolicy>(PhaseSwitch::step_count);
    if (name == "min_degree") return std::make_shared<MinDegreePolicy>();
    throw UsageError("unknown policy '" + std::string(name) +
                     "' (choose uniform, greedy_useful, connectivity_two_phase, min_degree)");
}

void preference_class(const Policy& policy, const TrialView& view, std::span<const std::size_t> proposal,
                      std::vector<std::size_t>& out) {
    out.clear();
    policy.preferred(view, proposal, out);
    if (out.empty()) throw IntegrityError("policy " + policy.name() + " returned an empty choice");
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw IntegrityError("policy " + policy.name() + " returned a repeated bit");
    for (auto i : out)
        if (!std::binary_search(proposal.begin(), proposal.end(), i))
            throw IntegrityError("policy " + policy.name() + " chose bit " + std::to_string(i) +
                                 ", which was not proposed");
}

std::size_t choose(const Policy& policy, const TrialView& view, std::span<const std::size_t> proposal, Rng& rng,
                   std::vector<std::size_t>& scratch) {
    preference_class(policy, view, proposal, scratch);
    if (scratch.size() == 1) return scratch.front();
    return scratch[uniform_below(rng, scratch.size())];
}

} // namespace choicewalk

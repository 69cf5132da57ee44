#include "ilbench/random_instances.hpp"

#include <cmath>
#include <set>

#include "ilbench/numeric.hpp"

namespace ilbench {

std::vector<double> random_distribution(Rng& rng, int n) {
    std::vector<double> v(n);
    for (double& x : v) x = -std::log(1.0 - rng.uniform());
    const double sum = kahan_sum(v);
    for (double& x : v) x /= sum;
    // Absorb the normalization residue into the largest entry so the vector
    // passes the 1e-12 validation exactly.
    double resid = 1.0 - kahan_sum(v);
    int arg = 0;
    for (int i = 1; i < n; ++i)
        if (v[i] > v[arg]) arg = i;
    v[arg] += resid;
    return v;
}

TabularMdp random_mdp(Rng& rng, int num_states, int num_actions, int horizon, bool homogeneous) {
    const int kernels = homogeneous ? 1 : std::max(horizon - 1, 0);
    std::vector<std::vector<double>> transitions;
    transitions.reserve(static_cast<std::size_t>(kernels) * num_states * num_actions);
    for (int k = 0; k < kernels; ++k)
        for (int s = 0; s < num_states; ++s)
            for (int a = 0; a < num_actions; ++a)
                transitions.push_back(random_distribution(rng, num_states));
    if (homogeneous && transitions.empty())
        for (int i = 0; i < num_states * num_actions; ++i)
            transitions.push_back(random_distribution(rng, num_states));

    std::vector<double> rewards(static_cast<std::size_t>(num_states) * num_actions);
    for (double& r : rewards) r = rng.uniform();

    // Build once to learn the tight return bound, then rebuild with it.
    TabularMdp probe = TabularMdp::dense(num_states, num_actions, horizon,
                                         random_distribution(rng, num_states), transitions,
                                         rewards, static_cast<double>(horizon), homogeneous);
    return TabularMdp::dense(num_states, num_actions, horizon,
                             std::vector<double>(probe.initial_dist().begin(),
                                                 probe.initial_dist().end()),
                             transitions, std::move(rewards), probe.max_trajectory_reward(),
                             homogeneous);
}

DetPolicy random_det_policy(Rng& rng, int num_states, int num_actions) {
    std::vector<int> actions(num_states);
    for (int& a : actions) a = rng.uniform_int(num_actions);
    return DetPolicy::stationary(std::move(actions));
}

StochPolicy random_stoch_policy(Rng& rng, int num_states, int num_actions) {
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(num_states) * num_actions);
    for (int s = 0; s < num_states; ++s) {
        const auto row = random_distribution(rng, num_actions);
        probs.insert(probs.end(), row.begin(), row.end());
    }
    return StochPolicy::stationary(std::move(probs), num_actions);
}

std::shared_ptr<const PolicyClass> random_policy_class(Rng& rng, int num_states, int num_actions,
                                                       int size, const DetPolicy& expert,
                                                       int* expert_index) {
    if (std::pow(static_cast<double>(num_actions), num_states) < size)
        throw input_error("requested class size exceeds the number of deterministic policies");
    std::set<std::vector<int>> seen;
    seen.insert({expert.actions().begin(), expert.actions().end()});
    std::vector<DetPolicy> members;
    members.reserve(size);
    while (static_cast<int>(members.size()) + 1 < size) {
        DetPolicy p = random_det_policy(rng, num_states, num_actions);
        if (seen.insert({p.actions().begin(), p.actions().end()}).second)
            members.push_back(std::move(p));
    }
    // Insert the expert at a random position for an unbiased index.
    const int pos = rng.uniform_int(static_cast<int>(members.size()) + 1);
    members.insert(members.begin() + pos, expert);
    if (expert_index) *expert_index = pos;
    return std::make_shared<const PolicyClass>(std::move(members));
}

} // namespace ilbench

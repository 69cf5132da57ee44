#include "ilbench/rollout.hpp"

namespace ilbench {

namespace {

void check_policy_dims(const TabularMdp& mdp, const Policy& policy) {
    if (policy.is_det()) {
        if (policy.det().num_states() != mdp.num_states())
            throw config_error("policy table does not match mdp state count");
        for (const int a : policy.det().actions())
            if (a < 0 || a >= mdp.num_actions())
                throw config_error("policy action outside mdp action range");
    } else if (policy.is_stoch()) {
        if (policy.stoch().num_states() != mdp.num_states() ||
            policy.stoch().num_actions() != mdp.num_actions())
            throw config_error("policy table does not match mdp dimensions");
    } else if (policy.is_each_step_mixture()) {
        for (const auto& m : policy.each_step().members->members())
            if (m.num_states() != mdp.num_states())
                throw config_error("mixture member does not match mdp state count");
    }
}

} // namespace

Trajectory rollout_with(const TabularMdp& mdp, const ActionSampler& act, Rng& rng) {
    const int H = mdp.horizon();
    Trajectory traj;
    traj.states.resize(H);
    traj.actions.resize(H);
    traj.rewards.resize(H);
    int s = rng.categorical_cdf(mdp.initial_cdf());
    for (int h = 0; h < H; ++h) {
        const int a = act(h, s, rng);
        traj.states[h] = s;
        traj.actions[h] = a;
        traj.rewards[h] = mdp.reward(s, a);
        if (h + 1 < H) s = rng.categorical_cdf(mdp.row_cdf(mdp.row_id(h, s, a)));
    }
    return traj;
}

Trajectory rollout(const TabularMdp& mdp, const Policy& policy, Rng& rng) {
    check_policy_dims(mdp, policy);
    if (policy.is_first_step_mixture()) {
        const auto& fs = policy.first_step();
        const int member = rng.categorical(fs.weights);
        return rollout(mdp, (*fs.members)[member], rng);
    }
    return rollout_with(
        mdp, [&policy](int h, int s, Rng& r) { return policy.sample_action(h, s, r); }, rng);
}

} // namespace ilbench

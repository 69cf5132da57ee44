#pragma once

#include <functional>

#include "ilbench/mdp.hpp"
#include "ilbench/policy.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

/// Action source for rollouts that is cheaper than materializing a Policy
/// (used by training loops whose policies change every round).
using ActionSampler = std::function<int(int step, int state, Rng& rng)>;

/// Sample one episode: s_1 ~ rho, a_h ~ pi(.|s_h), s_{h+1} ~ P_h(s_h, a_h).
/// First-step mixtures draw their member once per episode; each-step
/// mixtures redraw at every step. Deterministic given (mdp, policy, rng
/// state).
Trajectory rollout(const TabularMdp& mdp, const Policy& policy, Rng& rng);

/// Rollout with a custom per-step action rule.
Trajectory rollout_with(const TabularMdp& mdp, const ActionSampler& act, Rng& rng);

} // namespace ilbench

#pragma once

#include <memory>

#include "ilbench/mdp.hpp"
#include "ilbench/policy.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

/// Random dense MDP with Dirichlet-like transition rows, uniform [0,1]
/// rewards and the tight return bound from the max-reward DP.
TabularMdp random_mdp(Rng& rng, int num_states, int num_actions, int horizon,
                      bool homogeneous = true);

DetPolicy random_det_policy(Rng& rng, int num_states, int num_actions);
StochPolicy random_stoch_policy(Rng& rng, int num_states, int num_actions);

/// Class of `size` distinct random deterministic policies containing the
/// given expert; the expert's index is returned through expert_index.
std::shared_ptr<const PolicyClass> random_policy_class(Rng& rng, int num_states, int num_actions,
                                                       int size, const DetPolicy& expert,
                                                       int* expert_index = nullptr);

/// Random probability vector (normalized exponentials).
std::vector<double> random_distribution(Rng& rng, int n);

} // namespace ilbench

#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ilbench/mdp.hpp"
#include "ilbench/policy.hpp"

namespace ilbench {

/// Squared Hellinger distance sum_i (sqrt(p_i) - sqrt(q_i))^2.
double hellinger_sq(std::span<const double> p, std::span<const double> q);

/// Full trajectory law of a policy on an enumerable MDP: probability per
/// (state sequence, action sequence). Policies may be Markovian or
/// first-step mixtures of Markovian policies.
struct TrajectoryLaw {
    std::map<std::pair<std::vector<int>, std::vector<int>>, double> table;

    double mass() const;
};

TrajectoryLaw trajectory_law(const TabularMdp& mdp, const Policy& policy);

/// rho(s_1) * prod_h P_h(s_{h+1} | s_h, a_h): the causally-conditioned state
/// sequence probability given the action sequence.
double causal_state_prob(const TabularMdp& mdp, std::span<const int> states,
                         std::span<const int> actions);

/// pi(a_{1:H} || s_{1:H}): product of per-step action probabilities for
/// Markovian policies, mixture thereof for first-step mixtures.
double causal_action_prob(const Policy& policy, std::span<const int> states,
                          std::span<const int> actions);

/// Trajectory-wise L1 divergence lambda(pi || pi'): expected number of
/// steps where an action freshly drawn from pi' deviates from pi's
/// trajectory. Enumeration-exact; both policies Markovian.
double traj_l1_divergence(const TabularMdp& mdp, const Policy& pi, const Policy& pi_prime);

/// Trajectory-wise L-infinity semi-metric rho(pi || pi'): probability that
/// an action sequence drawn from pi'(. || s_{1:H}) deviates anywhere from
/// pi's trajectory. Either side may be a first-step mixture.
double traj_linf_semimetric(const TabularMdp& mdp, const Policy& pi, const Policy& pi_prime);

/// Cumulative state-wise Hellinger estimation error of a policy sequence
/// against the expert, sum_n E_{s ~ d^{pi_n}} D_H^2(pi_n(.|s), expert(.|s)),
/// computed exactly from visitation marginals.
double statewise_hellinger_error(const TabularMdp& mdp, std::span<const Policy> policies,
                                 const Policy& expert);

/// Decoupled Hellinger distance E^pi[D_H^2(pi(.||s_{1:H}), expert(.||s_{1:H}))]
/// for a deterministic expert; pi Markovian or a first-step mixture.
double decoupled_hellinger(const TabularMdp& mdp, const Policy& pi, const Policy& expert);

/// Symmetric evaluation pair (F(nu; nu'), F(nu'; nu)) where F(nu; nu') is
/// the probability, under nu's state-sequence law, that nu' disagrees with
/// the expert somewhere along the sequence. All three policies
/// deterministic.
std::pair<double, double> symmetric_F(const TabularMdp& mdp, const Policy& nu,
                                      const Policy& nu_prime, const Policy& expert);

/// First-step mixture over the each-step completion of a Markovian policy:
/// step-indexed deterministic tables weighted by the product of the chosen
/// action probabilities. Guarded at A^(S*H) <= 4096 table assignments.
Policy first_step_completion(const TabularMdp& mdp, const Policy& policy);

} // namespace ilbench

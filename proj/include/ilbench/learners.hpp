#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "ilbench/policy.hpp"

namespace ilbench {

/// Exponential weights over a finite policy class for exp-concave losses.
/// Weights satisfy u(pi) proportional to exp(-eta * cumulative loss), with
/// infinite losses hard-zeroing the member (a deterministic member caught
/// disagreeing with the expert is permanently wrong under realizability).
class ExpWeightsState {
  public:
    explicit ExpWeightsState(std::shared_ptr<const PolicyClass> members, double eta = 1.0);

    int size() const { return static_cast<int>(cumulative_losses_.size()); }
    double eta() const { return eta_; }
    const std::shared_ptr<const PolicyClass>& members() const { return class_ref_; }
    std::span<const double> cumulative_losses() const { return cumulative_losses_; }
    std::span<const double> weights() const { return weights_; }

    /// Each-step mixture with the current weights. Errors if every member
    /// has infinite cumulative loss.
    Policy propose() const;

    /// Add one loss per member (>= 0, possibly +inf; NaN rejected) and
    /// recompute weights with a log-sum-exp stable normalization.
    void update(std::span<const double> loss_per_member);

    /// log(1 / sum_i u_i exp(-loss_i)): the mixture's log loss for a round,
    /// evaluated at the pre-update weights.
    double mixture_log_loss(std::span<const double> loss_per_member) const;

  private:
    void recompute_weights();

    std::shared_ptr<const PolicyClass> class_ref_;
    double eta_;
    std::vector<double> cumulative_losses_;
    std::vector<double> weights_;
};

/// Alive subset of a finite deterministic class under (state, expert action)
/// constraints; realizes 0-1-loss learning. Shrinks monotonically and is
/// order-independent.
class VersionSpace {
  public:
    explicit VersionSpace(std::shared_ptr<const PolicyClass> members);

    int alive_count() const { return alive_count_; }
    std::span<const char> alive_mask() const { return alive_; }
    const std::shared_ptr<const PolicyClass>& members() const { return class_ref_; }
    bool alive(int i) const { return alive_[i] != 0; }

    /// Kill members disagreeing at the state (every step for stationary
    /// tables). Throws realizability_error if nothing stays alive.
    void constrain(int state, int expert_action);
    /// Step-indexed constraint.
    void constrain_at(int step, int state, int expert_action);

    /// Uniform each-step mixture over the alive members.
    Policy uniform_mixture() const;

  private:
    void finish_update();

    std::shared_ptr<const PolicyClass> class_ref_;
    std::vector<char> alive_;
    int alive_count_;
};

/// Growing map of expert annotations; unannotated states act uniformly at
/// random. Stationary (state-keyed) bookkeeping.
class AnnotatedMap {
  public:
    AnnotatedMap(int num_states, int num_actions)
        : num_actions_(num_actions), actions_(num_states, -1) {}

    int num_actions() const { return num_actions_; }
    bool annotated(int state) const { return actions_[state] >= 0; }
    int action(int state) const { return actions_[state]; }
    int annotated_count() const { return annotated_count_; }

    /// Returns true when the state was not annotated before.
    bool annotate(int state, int expert_action);

    int sample_action(int state, Rng& rng) const {
        const int a = actions_[state];
        return a >= 0 ? a : rng.uniform_int(num_actions_);
    }

  private:
    int num_actions_;
    std::vector<int> actions_;
    int annotated_count_ = 0;
};

/// Delta mass on annotated actions, uniform elsewhere.
Policy memorizing_policy(const std::map<int, int>& annotated, int num_states, int num_actions);
Policy memorizing_policy(const AnnotatedMap& map, int num_states);

} // namespace ilbench

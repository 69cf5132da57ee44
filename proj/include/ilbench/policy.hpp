#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ilbench/errors.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

class PolicyClass;

/// Deterministic tabular policy: an action table indexed by state
/// (stationary) or by (step, state).
class DetPolicy {
  public:
    static DetPolicy stationary(std::vector<int> actions);
    static DetPolicy step_indexed(std::vector<int> actions, int num_states);

    bool stationary_table() const { return stationary_; }
    int num_states() const { return num_states_; }
    int table_horizon() const { return stationary_ ? 1 : static_cast<int>(actions_.size()) / num_states_; }
    std::span<const int> actions() const { return actions_; }

    int action(int step, int state) const {
        return stationary_ ? actions_[state]
                           : actions_[static_cast<std::size_t>(step) * num_states_ + state];
    }

    bool operator==(const DetPolicy& other) const = default;

  private:
    bool stationary_ = true;
    int num_states_ = 0;
    std::vector<int> actions_;
};

/// Stochastic tabular policy: probability rows over actions per state
/// (stationary) or per (step, state).
class StochPolicy {
  public:
    static StochPolicy stationary(std::vector<double> probs, int num_actions);
    static StochPolicy step_indexed(std::vector<double> probs, int num_actions, int num_states);

    bool stationary_table() const { return stationary_; }
    int num_actions() const { return num_actions_; }
    int num_states() const { return num_states_; }
    int table_horizon() const {
        return stationary_ ? 1
                           : static_cast<int>(probs_.size()) /
                                 (static_cast<std::size_t>(num_actions_) * num_states_);
    }

    std::span<const double> action_probs(int step, int state) const {
        const std::size_t row = stationary_ ? state
                                            : static_cast<std::size_t>(step) * num_states_ + state;
        return {probs_.data() + row * num_actions_, static_cast<std::size_t>(num_actions_)};
    }

  private:
    bool stationary_ = true;
    int num_actions_ = 0;
    int num_states_ = 0;
    std::vector<double> probs_;
};

/// Policy value type covering the four variants used throughout: the two
/// tabular forms, each-step mixtures over a policy class (Markovian), and
/// first-step mixtures (draw one member per episode; generally
/// non-Markovian).
class Policy {
  public:
    struct EachStepMixture {
        std::shared_ptr<const PolicyClass> members;
        std::vector<double> weights;
    };
    struct FirstStepMixture {
        std::shared_ptr<const std::vector<Policy>> members;
        std::vector<double> weights;
    };

    Policy(DetPolicy det) : impl_(std::move(det)) {}
    Policy(StochPolicy stoch) : impl_(std::move(stoch)) {}

    static Policy each_step_mixture(std::shared_ptr<const PolicyClass> members,
                                    std::vector<double> weights);
    static Policy first_step_mixture(std::vector<Policy> members, std::vector<double> weights);
    static Policy first_step_mixture(std::shared_ptr<const std::vector<Policy>> members,
                                     std::vector<double> weights);
    static Policy uniform_first_step_mixture(std::vector<Policy> members);

    bool is_det() const { return std::holds_alternative<DetPolicy>(impl_); }
    bool is_stoch() const { return std::holds_alternative<StochPolicy>(impl_); }
    bool is_each_step_mixture() const { return std::holds_alternative<EachStepMixture>(impl_); }
    bool is_first_step_mixture() const { return std::holds_alternative<FirstStepMixture>(impl_); }
    /// Det, stoch and each-step mixture policies are Markovian.
    bool markovian() const { return !is_first_step_mixture(); }

    const DetPolicy& det() const { return std::get<DetPolicy>(impl_); }
    const StochPolicy& stoch() const { return std::get<StochPolicy>(impl_); }
    const EachStepMixture& each_step() const { return std::get<EachStepMixture>(impl_); }
    const FirstStepMixture& first_step() const { return std::get<FirstStepMixture>(impl_); }

    /// Action distribution at (step, state); Markovian policies only.
    void action_probs(int step, int state, std::span<double> out) const;
    double action_prob(int step, int state, int action) const;

    /// One action draw. Each-step mixtures redraw a member at every call;
    /// first-step mixtures must be resolved by the caller (see rollout).
    int sample_action(int step, int state, Rng& rng) const;

    std::string to_json() const;
    static Policy from_json(const std::string& text);

  private:
    std::variant<DetPolicy, StochPolicy, EachStepMixture, FirstStepMixture> impl_;
};

/// Finite ordered class of deterministic tabular policies. Indexing is
/// stable: mixture weights align with member order.
class PolicyClass {
  public:
    explicit PolicyClass(std::vector<DetPolicy> members);

    int size() const { return static_cast<int>(members_.size()); }
    const DetPolicy& member(int i) const { return members_[i]; }
    const std::vector<DetPolicy>& members() const { return members_; }

    /// Index of the first member equal to the given policy, or -1.
    int find(const DetPolicy& policy) const;

  private:
    std::vector<DetPolicy> members_;
};

/// Episode record: states, actions and rewards, each of length exactly H.
struct Trajectory {
    std::vector<int> states;
    std::vector<int> actions;
    std::vector<double> rewards;
};

} // namespace ilbench

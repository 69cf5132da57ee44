#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ilbench/learners.hpp"
#include "ilbench/mdp.hpp"
#include "ilbench/oracle.hpp"
#include "ilbench/policy.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

enum class LearnerKind { exp_weights, version_space, memorizing };

/// Online learning oracle selection. exp_weights and version_space need a
/// finite policy class; the memorizing learner keeps a growing annotation
/// map and acts uniformly at random elsewhere (the 0-1-loss realization used
/// for the cliff simulation, where the implicit class is too large to
/// enumerate).
struct LearnerConfig {
    LearnerKind kind = LearnerKind::exp_weights;
    std::shared_ptr<const PolicyClass> policy_class;
    double eta = 1.0;
};

/// One training round: which state(s) were annotated, at what cumulative
/// annotation count and ledger cost.
struct TrainRecord {
    long long round = 0;
    int snapshot_id = -1;
    long long annotations = 0;
    double cost = 0.0;
    std::vector<int> states;
    std::vector<int> answers;
};

/// First-step uniform mixture over the per-round policies.
struct MixturePolicyOutput {
    Policy mixture;
    int rounds = 0;
};

struct RunResult {
    MixturePolicyOutput output;
    std::vector<TrainRecord> records;
    /// Final learner weights over the policy class (empty for the
    /// memorizing learner).
    std::vector<double> final_weights;
};

/// Fired after every round's annotation lands, before the next proposal.
struct RoundEvent {
    long long round;
    long long annotations;
    double cost;
    std::span<const int> states;
    std::span<const int> answers;
};
using RoundObserver = std::function<void(const RoundEvent&)>;

struct RunOptions {
    /// Keep per-round policy snapshots and build the output mixture. Turn
    /// off for long runs driven through the observer.
    bool keep_snapshots = true;
    RoundObserver observer;
};

/// Behavior Cloning over revealed (state, action) pairs. version_space
/// returns the uniform mixture over consistent class members; memorizing
/// returns the annotation-map policy.
Policy run_bc(const TabularMdp& mdp, const ExpertOracle& oracle,
              std::span<const OfflinePair> pairs, const LearnerConfig& learner);

/// One state-wise annotation per round: roll the proposal, sample one step
/// uniformly, query the expert, feed the log loss back.
RunResult run_stagger(const TabularMdp& mdp, ExpertOracle& oracle, const LearnerConfig& learner,
                      long long n_int, Rng& rng, const RunOptions& opts = {});

/// Stagger warm-started by restricting to the offline-consistent class (or
/// seeding the annotation map) before the interactive loop.
RunResult run_warm_stagger(const TabularMdp& mdp, ExpertOracle& oracle,
                           const LearnerConfig& learner, std::span<const OfflinePair> offline_pairs,
                           long long n_int, Rng& rng, const RunOptions& opts = {});

/// Trajectory-wise annotation: roll a first-step mixture drawn from the
/// learner weights, query the expert on the full state sequence, update
/// with the causally-conditioned log loss.
RunResult run_tragger(const TabularMdp& mdp, ExpertOracle& oracle, const LearnerConfig& learner,
                      long long n_traj_rounds, Rng& rng, const RunOptions& opts = {});

/// Warm-started Tragger under a state-annotation budget: floor(budget / H)
/// trajectory rounds; with budget < H the loop runs zero times and the
/// offline-only (BC) policy is returned.
RunResult run_warm_tragger(const TabularMdp& mdp, ExpertOracle& oracle,
                           const LearnerConfig& learner, std::span<const OfflinePair> offline_pairs,
                           long long budget, Rng& rng, const RunOptions& opts = {});

} // namespace ilbench

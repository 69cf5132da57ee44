#pragma once

#include <span>
#include <string>
#include <vector>

#include "ilbench/mdp.hpp"
#include "ilbench/policy.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

/// One annotated state with the trajectory step it was observed at.
struct OfflinePair {
    int step;
    int state;
    int action;
};

/// Annotation-cost bookkeeping: total cost is H*N_off + C*N_int, where one
/// trajectory-wise interactive query counts as H state annotations (the
/// optional flat-fee mode bills it as a single annotation instead).
class AnnotationLedger {
  public:
    explicit AnnotationLedger(int horizon, double cost_ratio = 1.0)
        : horizon_(horizon), cost_ratio_(cost_ratio) {
        if (cost_ratio < 1.0) throw config_error("cost ratio C must be >= 1");
    }

    double cost_ratio() const { return cost_ratio_; }
    long long offline_trajectories() const { return n_off_; }
    long long interactive_annotations() const { return n_int_; }

    double cost_offline() const { return static_cast<double>(horizon_) * n_off_; }
    double cost_interactive() const { return cost_ratio_ * n_int_; }
    double total_cost() const { return cost_offline() + cost_interactive(); }

    void set_trajectory_flat_fee(bool on) { traj_flat_fee_ = on; }
    bool trajectory_flat_fee() const { return traj_flat_fee_; }

    /// Bill repeated queries on the same state only once. Off by default:
    /// every query is billed.
    void set_dedup_billing(bool on) { dedup_billing_ = on; }

    void add_offline_trajectories(long long n) { n_off_ += n; }
    void record_state_query(int state, int answer);
    void record_trajectory_query(std::span<const int> states, std::span<const int> answers);

    const std::vector<std::pair<int, int>>& interactive_log() const { return interactive_log_; }

  private:
    int horizon_;
    double cost_ratio_;
    bool traj_flat_fee_ = false;
    bool dedup_billing_ = false;
    long long n_off_ = 0;
    long long n_int_ = 0;
    std::vector<std::pair<int, int>> interactive_log_; // (state, answer)
    std::vector<char> billed_;                         // dedup mode only
};

/// Reward-free expert demonstrations, one trajectory per entry.
struct OfflineDataset {
    std::vector<std::vector<int>> states;
    std::vector<std::vector<int>> actions;

    std::size_t total_pairs() const;
    std::string to_jsonl() const;
    static OfflineDataset from_jsonl(const std::string& text);
};

/// Deterministic expert answering state-wise and trajectory-wise queries,
/// with query counters and the cost ledger. One oracle per run; the expert
/// policy itself is shared read-only.
class ExpertOracle {
  public:
    ExpertOracle(DetPolicy expert, int num_states, int horizon, double cost_ratio = 1.0)
        : expert_(std::move(expert)), num_states_(num_states),
          ledger_(horizon, cost_ratio), horizon_(horizon) {
        if (expert_.num_states() != num_states)
            throw config_error("expert table does not match state count");
    }

    const DetPolicy& expert() const { return expert_; }
    AnnotationLedger& ledger() { return ledger_; }
    const AnnotationLedger& ledger() const { return ledger_; }
    long long state_queries() const { return state_queries_; }
    long long trajectory_queries() const { return traj_queries_; }

    /// Expert action at (state, step); bills one interactive annotation.
    int query_state(int state, int step);

    /// Componentwise expert actions for a length-H state sequence; bills H
    /// interactive annotations (or one in flat-fee mode).
    std::vector<int> query_trajectory(std::span<const int> states);

  private:
    DetPolicy expert_;
    int num_states_;
    AnnotationLedger ledger_;
    int horizon_;
    long long state_queries_ = 0;
    long long traj_queries_ = 0;
};

/// n i.i.d. reward-free expert rollouts; bills n offline trajectories.
OfflineDataset generate_offline(const TabularMdp& mdp, ExpertOracle& oracle, long long n, Rng& rng);

/// First k (state, action) pairs in trajectory order, for plotting offline
/// learning against state-wise annotation counts.
std::vector<OfflinePair> prefix_reveal(const OfflineDataset& dataset, std::size_t k);

/// All pairs of a dataset in trajectory order.
std::vector<OfflinePair> all_pairs(const OfflineDataset& dataset);

} // namespace ilbench

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ilbench/errors.hpp"

namespace ilbench {

/// Finite episodic MDP with per-step or homogeneous transition kernels and a
/// deterministic reward table R(s, a) in [0, 1].
///
/// Transition rows are stored deduplicated: row_index maps (h, s, a) — or
/// (s, a) in homogeneous mode — to one of the unique probability rows. Dense
/// models keep one row per (s, a); highly structured models (the cliff MDP
/// stores 4 rows for S > 1000 states) stay small.
class TabularMdp {
  public:
    /// Build from dense kernels. `transitions` has one row per (h, s, a) with
    /// h absent in homogeneous mode; duplicate rows are shared.
    static TabularMdp dense(int num_states, int num_actions, int horizon,
                            std::vector<double> initial_dist,
                            const std::vector<std::vector<double>>& transitions,
                            std::vector<double> rewards, double return_bound,
                            bool homogeneous = true);

    /// Build from pre-deduplicated rows. row_index has S*A entries
    /// (homogeneous) or H*S*A entries (per-step).
    static TabularMdp from_rows(int num_states, int num_actions, int horizon,
                                std::vector<double> initial_dist,
                                std::vector<std::vector<double>> rows,
                                std::vector<std::int32_t> row_index,
                                std::vector<double> rewards, double return_bound,
                                bool homogeneous);

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int horizon() const { return horizon_; }
    bool homogeneous() const { return homogeneous_; }
    double return_bound() const { return return_bound_; }
    std::span<const double> initial_dist() const { return initial_dist_; }
    std::span<const double> initial_cdf() const { return initial_cdf_; }

    double reward(int state, int action) const {
        return rewards_[static_cast<std::size_t>(state) * num_actions_ + action];
    }

    /// Id of the unique transition row used at (h, s, a). Step h in [0, H-1);
    /// rows at the terminal step are never consulted.
    std::int32_t row_id(int step, int state, int action) const {
        const std::size_t base = homogeneous_ ? 0
                                              : static_cast<std::size_t>(step) * num_states_ * num_actions_;
        return row_index_[base + static_cast<std::size_t>(state) * num_actions_ + action];
    }

    std::span<const double> transition_row(int step, int state, int action) const {
        return rows_[row_id(step, state, action)];
    }
    std::span<const double> row(std::int32_t id) const { return rows_[id]; }
    std::span<const double> row_cdf(std::int32_t id) const { return row_cdfs_[id]; }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    /// Largest summed reward over realizable trajectories, by max-reward DP.
    double max_trajectory_reward() const;

    /// Checks probability vectors (tolerance 1e-12, no renormalization), the
    /// reward range and the return bound. Throws config_error listing every
    /// failing constraint.
    void validate() const;

    std::string to_json() const;
    static TabularMdp from_json(const std::string& text);

  private:
    TabularMdp() = default;
    void build_cdfs();

    int num_states_ = 0;
    int num_actions_ = 0;
    int horizon_ = 0;
    bool homogeneous_ = true;
    double return_bound_ = 0.0;
    std::vector<double> initial_dist_;
    std::vector<double> initial_cdf_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::vector<double>> row_cdfs_;
    std::vector<std::int32_t> row_index_;
    std::vector<double> rewards_; // S*A
};

} // namespace ilbench

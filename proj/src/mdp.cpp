#include "ilbench/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ilbench/numeric.hpp"

namespace ilbench {

namespace {

constexpr double kProbTol = 1e-12;

void check_prob_row(std::span<const double> row, const char* what, int index,
                    std::vector<std::string>& failures) {
    for (const double p : row) {
        if (p < 0.0) {
            std::ostringstream os;
            os << what << " " << index << " has a negative entry " << p;
            failures.push_back(os.str());
            return;
        }
    }
    const double sum = kahan_sum(row);
    if (std::abs(sum - 1.0) > kProbTol) {
        std::ostringstream os;
        os << what << " " << index << " sums to " << sum << " (|sum-1| > 1e-12)";
        failures.push_back(os.str());
    }
}

std::vector<double> make_cdf(std::span<const double> row) {
    std::vector<double> cdf(row.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        acc += row[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

} // namespace

TabularMdp TabularMdp::from_rows(int num_states, int num_actions, int horizon,
                                 std::vector<double> initial_dist,
                                 std::vector<std::vector<double>> rows,
                                 std::vector<std::int32_t> row_index,
                                 std::vector<double> rewards, double return_bound,
                                 bool homogeneous) {
    TabularMdp mdp;
    mdp.num_states_ = num_states;
    mdp.num_actions_ = num_actions;
    mdp.horizon_ = horizon;
    mdp.homogeneous_ = homogeneous;
    mdp.return_bound_ = return_bound;
    mdp.initial_dist_ = std::move(initial_dist);
    mdp.rows_ = std::move(rows);
    mdp.row_index_ = std::move(row_index);
    mdp.rewards_ = std::move(rewards);

    if (num_states <= 0 || num_actions <= 0 || horizon <= 0)
        throw config_error("mdp dimensions must be positive");
    const std::size_t sa = static_cast<std::size_t>(num_states) * num_actions;
    const std::size_t want_index = homogeneous ? sa : sa * static_cast<std::size_t>(horizon - 1);
    if (mdp.initial_dist_.size() != static_cast<std::size_t>(num_states))
        throw config_error("initial distribution length != S");
    if (mdp.row_index_.size() != want_index)
        throw config_error("transition index has wrong length");
    if (mdp.rewards_.size() != sa) throw config_error("reward table has wrong length");
    for (const std::int32_t id : mdp.row_index_)
        if (id < 0 || id >= static_cast<std::int32_t>(mdp.rows_.size()))
            throw config_error("transition index references a missing row");
    for (const auto& row : mdp.rows_)
        if (row.size() != static_cast<std::size_t>(num_states))
            throw config_error("transition row length != S");

    mdp.validate();
    mdp.build_cdfs();
    return mdp;
}

TabularMdp TabularMdp::dense(int num_states, int num_actions, int horizon,
                             std::vector<double> initial_dist,
                             const std::vector<std::vector<double>>& transitions,
                             std::vector<double> rewards, double return_bound,
                             bool homogeneous) {
    std::vector<std::vector<double>> rows;
    std::vector<std::int32_t> index(transitions.size());
    std::map<std::vector<double>, std::int32_t> seen;
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        auto [it, inserted] = seen.try_emplace(transitions[i], static_cast<std::int32_t>(rows.size()));
        if (inserted) rows.push_back(transitions[i]);
        index[i] = it->second;
    }
    return from_rows(num_states, num_actions, horizon, std::move(initial_dist), std::move(rows),
                     std::move(index), std::move(rewards), return_bound, homogeneous);
}

void TabularMdp::build_cdfs() {
    initial_cdf_ = make_cdf(initial_dist_);
    row_cdfs_.clear();
    row_cdfs_.reserve(rows_.size());
    for (const auto& row : rows_) row_cdfs_.push_back(make_cdf(row));
}

double TabularMdp::max_trajectory_reward() const {
    // Max summed reward over realizable paths: transitions with zero
    // probability do not count as reachable. Per-row maxima are shared
    // across all (s, a) pairs using the same row.
    std::vector<double> next(num_states_, 0.0), cur(num_states_, 0.0);
    std::vector<double> row_reach(rows_.size(), 0.0);
    for (int h = horizon_ - 1; h >= 0; --h) {
        if (h + 1 < horizon_) {
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                double reach = 0.0;
                const auto& row = rows_[r];
                for (int sp = 0; sp < num_states_; ++sp)
                    if (row[sp] > 0.0) reach = std::max(reach, next[sp]);
                row_reach[r] = reach;
            }
        }
        for (int s = 0; s < num_states_; ++s) {
            double best = 0.0;
            for (int a = 0; a < num_actions_; ++a) {
                double val = reward(s, a);
                if (h + 1 < horizon_) val += row_reach[row_id(h, s, a)];
                if (a == 0 || val > best) best = val;
            }
            cur[s] = best;
        }
        std::swap(cur, next);
    }
    double best = 0.0;
    for (int s = 0; s < num_states_; ++s)
        if (initial_dist_[s] > 0.0) best = std::max(best, next[s]);
    return best;
}

void TabularMdp::validate() const {
    std::vector<std::string> failures;
    check_prob_row(initial_dist_, "initial distribution", 0, failures);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        check_prob_row(rows_[r], "transition row", static_cast<int>(r), failures);
    for (std::size_t i = 0; i < rewards_.size(); ++i)
        if (rewards_[i] < 0.0 || rewards_[i] > 1.0) {
            failures.push_back("reward entry " + std::to_string(i) + " outside [0,1]");
            break;
        }
    if (max_trajectory_reward() > return_bound_ + 1e-9)
        failures.push_back("return bound below the max realizable trajectory reward");
    if (!failures.empty()) {
        std::string msg = "invalid mdp:";
        for (const auto& f : failures) msg += "\n  - " + f;
        throw config_error(msg);
    }
}

std::string TabularMdp::to_json() const {
    nlohmann::json j;
    j["S"] = num_states_;
    j["A"] = num_actions_;
    j["H"] = horizon_;
    j["rho"] = initial_dist_;
    j["homogeneous"] = homogeneous_;
    j["R"] = rewards_;
    j["R_max"] = return_bound_;
    // P: dense nested rows when small, shared-row form otherwise.
    const std::size_t dense_numbers = row_index_.size() * static_cast<std::size_t>(num_states_);
    if (dense_numbers <= 200000) {
        nlohmann::json p = nlohmann::json::array();
        for (const std::int32_t id : row_index_) p.push_back(rows_[id]);
        j["P"] = std::move(p);
    } else {
        nlohmann::json p;
        p["rows"] = rows_;
        p["index"] = row_index_;
        j["P"] = std::move(p);
    }
    return j.dump();
}

TabularMdp TabularMdp::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int S = j.at("S").get<int>();
    const int A = j.at("A").get<int>();
    const int H = j.at("H").get<int>();
    const bool homogeneous = j.at("homogeneous").get<bool>();
    auto rho = j.at("rho").get<std::vector<double>>();
    auto rewards = j.at("R").get<std::vector<double>>();
    const double r_max = j.at("R_max").get<double>();
    const auto& p = j.at("P");
    if (p.is_array()) {
        auto transitions = p.get<std::vector<std::vector<double>>>();
        return dense(S, A, H, std::move(rho), transitions, std::move(rewards), r_max, homogeneous);
    }
    auto rows = p.at("rows").get<std::vector<std::vector<double>>>();
    auto index = p.at("index").get<std::vector<std::int32_t>>();
    return from_rows(S, A, H, std::move(rho), std::move(rows), std::move(index),
                     std::move(rewards), r_max, homogeneous);
}

} // namespace ilbench

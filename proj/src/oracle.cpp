#include "ilbench/oracle.hpp"

#include <sstream>

#include <json.hpp>

#include "ilbench/rollout.hpp"

namespace ilbench {

void AnnotationLedger::record_state_query(int state, int answer) {
    interactive_log_.emplace_back(state, answer);
    if (dedup_billing_) {
        if (billed_.size() <= static_cast<std::size_t>(state))
            billed_.resize(state + 1, 0);
        if (billed_[state]) return;
        billed_[state] = 1;
    }
    n_int_ += 1;
}

void AnnotationLedger::record_trajectory_query(std::span<const int> states,
                                               std::span<const int> answers) {
    for (std::size_t i = 0; i < states.size(); ++i)
        interactive_log_.emplace_back(states[i], answers[i]);
    if (traj_flat_fee_) {
        n_int_ += 1;
        return;
    }
    if (dedup_billing_) {
        for (const int s : states) {
            if (billed_.size() <= static_cast<std::size_t>(s)) billed_.resize(s + 1, 0);
            if (!billed_[s]) {
                billed_[s] = 1;
                n_int_ += 1;
            }
        }
        return;
    }
    n_int_ += static_cast<long long>(states.size());
}

int ExpertOracle::query_state(int state, int step) {
    if (state < 0 || state >= num_states_)
        throw config_error("queried state out of range");
    if (step < 0 || step >= horizon_) throw config_error("queried step out of range");
    const int a = expert_.action(step, state);
    ++state_queries_;
    ledger_.record_state_query(state, a);
    return a;
}

std::vector<int> ExpertOracle::query_trajectory(std::span<const int> states) {
    if (static_cast<int>(states.size()) != horizon_)
        throw input_error("trajectory query must contain exactly H states");
    std::vector<int> answers(states.size());
    for (std::size_t h = 0; h < states.size(); ++h) {
        if (states[h] < 0 || states[h] >= num_states_)
            throw config_error("queried state out of range");
        answers[h] = expert_.action(static_cast<int>(h), states[h]);
    }
    ++traj_queries_;
    ledger_.record_trajectory_query(states, answers);
    return answers;
}

std::size_t OfflineDataset::total_pairs() const {
    std::size_t n = 0;
    for (const auto& t : states) n += t.size();
    return n;
}

std::string OfflineDataset::to_jsonl() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < states.size(); ++i) {
        nlohmann::json j;
        j["states"] = states[i];
        j["actions"] = actions[i];
        os << j.dump() << '\n';
    }
    return os.str();
}

OfflineDataset OfflineDataset::from_jsonl(const std::string& text) {
    OfflineDataset d;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        d.states.push_back(j.at("states").get<std::vector<int>>());
        d.actions.push_back(j.at("actions").get<std::vector<int>>());
    }
    return d;
}

OfflineDataset generate_offline(const TabularMdp& mdp, ExpertOracle& oracle, long long n,
                                Rng& rng) {
    if (n < 0) throw input_error("offline trajectory count must be >= 0");
    OfflineDataset data;
    data.states.reserve(n);
    data.actions.reserve(n);
    const Policy expert{oracle.expert()};
    for (long long i = 0; i < n; ++i) {
        Trajectory traj = rollout(mdp, expert, rng);
        data.states.push_back(std::move(traj.states));
        data.actions.push_back(std::move(traj.actions));
    }
    oracle.ledger().add_offline_trajectories(n);
    return data;
}

std::vector<OfflinePair> prefix_reveal(const OfflineDataset& dataset, std::size_t k) {
    if (k > dataset.total_pairs())
        throw input_error("prefix length exceeds the dataset pair count");
    std::vector<OfflinePair> pairs;
    pairs.reserve(k);
    for (std::size_t i = 0; i < dataset.states.size() && pairs.size() < k; ++i)
        for (std::size_t h = 0; h < dataset.states[i].size() && pairs.size() < k; ++h)
            pairs.push_back({static_cast<int>(h), dataset.states[i][h], dataset.actions[i][h]});
    return pairs;
}

std::vector<OfflinePair> all_pairs(const OfflineDataset& dataset) {
    return prefix_reveal(dataset, dataset.total_pairs());
}

} // namespace ilbench

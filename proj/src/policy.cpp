#include "ilbench/policy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "ilbench/numeric.hpp"

namespace ilbench {

namespace {

constexpr double kProbTol = 1e-12;

void check_weights(std::span<const double> w) {
    for (const double x : w)
        if (x < 0.0) throw config_error("mixture weight is negative");
    if (std::abs(kahan_sum(w) - 1.0) > kProbTol)
        throw config_error("mixture weights do not sum to 1 within 1e-12");
}

} // namespace

DetPolicy DetPolicy::stationary(std::vector<int> actions) {
    DetPolicy p;
    p.stationary_ = true;
    p.num_states_ = static_cast<int>(actions.size());
    p.actions_ = std::move(actions);
    return p;
}

DetPolicy DetPolicy::step_indexed(std::vector<int> actions, int num_states) {
    if (num_states <= 0 || actions.size() % num_states != 0)
        throw config_error("step-indexed action table length not a multiple of S");
    DetPolicy p;
    p.stationary_ = false;
    p.num_states_ = num_states;
    p.actions_ = std::move(actions);
    return p;
}

StochPolicy StochPolicy::stationary(std::vector<double> probs, int num_actions) {
    if (num_actions <= 0 || probs.size() % num_actions != 0)
        throw config_error("probability table length not a multiple of A");
    StochPolicy p;
    p.stationary_ = true;
    p.num_actions_ = num_actions;
    p.num_states_ = static_cast<int>(probs.size()) / num_actions;
    p.probs_ = std::move(probs);
    for (int s = 0; s < p.num_states_; ++s) {
        const auto row = p.action_probs(0, s);
        for (const double x : row)
            if (x < 0.0) throw config_error("action probability is negative");
        if (std::abs(kahan_sum(row) - 1.0) > kProbTol)
            throw config_error("action distribution does not sum to 1 within 1e-12");
    }
    return p;
}

StochPolicy StochPolicy::step_indexed(std::vector<double> probs, int num_actions, int num_states) {
    if (num_actions <= 0 || num_states <= 0 ||
        probs.size() % (static_cast<std::size_t>(num_actions) * num_states) != 0)
        throw config_error("probability table length not a multiple of S*A");
    StochPolicy p;
    p.stationary_ = false;
    p.num_actions_ = num_actions;
    p.num_states_ = num_states;
    p.probs_ = std::move(probs);
    const int rows = static_cast<int>(p.probs_.size()) / num_actions;
    for (int r = 0; r < rows; ++r) {
        const std::span<const double> row{p.probs_.data() +
                                              static_cast<std::size_t>(r) * num_actions,
                                          static_cast<std::size_t>(num_actions)};
        for (const double x : row)
            if (x < 0.0) throw config_error("action probability is negative");
        if (std::abs(kahan_sum(row) - 1.0) > kProbTol)
            throw config_error("action distribution does not sum to 1 within 1e-12");
    }
    return p;
}

PolicyClass::PolicyClass(std::vector<DetPolicy> members) : members_(std::move(members)) {
    if (members_.empty()) throw config_error("policy class must be non-empty");
    std::set<std::pair<bool, std::vector<int>>> seen;
    for (const auto& m : members_) {
        std::vector<int> table(m.actions().begin(), m.actions().end());
        if (!seen.insert({m.stationary_table(), std::move(table)}).second)
            throw config_error("policy class members must be pairwise distinct");
    }
}

int PolicyClass::find(const DetPolicy& policy) const {
    for (int i = 0; i < size(); ++i)
        if (members_[i] == policy) return i;
    return -1;
}

Policy Policy::each_step_mixture(std::shared_ptr<const PolicyClass> members,
                                 std::vector<double> weights) {
    if (!members) throw config_error("each-step mixture needs a policy class");
    if (static_cast<int>(weights.size()) != members->size())
        throw config_error("mixture weight length != class size");
    check_weights(weights);
    Policy p{DetPolicy::stationary({0})};
    p.impl_ = EachStepMixture{std::move(members), std::move(weights)};
    return p;
}

Policy Policy::first_step_mixture(std::vector<Policy> members, std::vector<double> weights) {
    return first_step_mixture(std::make_shared<const std::vector<Policy>>(std::move(members)),
                              std::move(weights));
}

Policy Policy::first_step_mixture(std::shared_ptr<const std::vector<Policy>> members,
                                  std::vector<double> weights) {
    if (!members || members->empty()) throw config_error("first-step mixture needs members");
    if (weights.size() != members->size())
        throw config_error("mixture weight length != member count");
    check_weights(weights);
    Policy p{DetPolicy::stationary({0})};
    p.impl_ = FirstStepMixture{std::move(members), std::move(weights)};
    return p;
}

Policy Policy::uniform_first_step_mixture(std::vector<Policy> members) {
    const std::size_t n = members.size();
    // Exactly uniform weights: distribute the rounding so the sum is 1.
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    return first_step_mixture(std::move(members), std::move(weights));
}

void Policy::action_probs(int step, int state, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (const auto* det = std::get_if<DetPolicy>(&impl_)) {
        out[det->action(step, state)] = 1.0;
    } else if (const auto* stoch = std::get_if<StochPolicy>(&impl_)) {
        const auto row = stoch->action_probs(step, state);
        std::copy(row.begin(), row.end(), out.begin());
    } else if (const auto* mix = std::get_if<EachStepMixture>(&impl_)) {
        for (int i = 0; i < mix->members->size(); ++i) {
            const double w = mix->weights[i];
            if (w == 0.0) continue;
            out[mix->members->member(i).action(step, state)] += w;
        }
    } else {
        throw input_error("first-step mixtures have no per-state action distribution");
    }
}

double Policy::action_prob(int step, int state, int action) const {
    if (const auto* det = std::get_if<DetPolicy>(&impl_))
        return det->action(step, state) == action ? 1.0 : 0.0;
    if (const auto* stoch = std::get_if<StochPolicy>(&impl_))
        return stoch->action_probs(step, state)[action];
    if (const auto* mix = std::get_if<EachStepMixture>(&impl_)) {
        double p = 0.0;
        for (int i = 0; i < mix->members->size(); ++i)
            if (mix->weights[i] != 0.0 && mix->members->member(i).action(step, state) == action)
                p += mix->weights[i];
        return p;
    }
    throw input_error("first-step mixtures have no per-state action distribution");
}

int Policy::sample_action(int step, int state, Rng& rng) const {
    if (const auto* det = std::get_if<DetPolicy>(&impl_)) return det->action(step, state);
    if (const auto* stoch = std::get_if<StochPolicy>(&impl_))
        return rng.categorical(stoch->action_probs(step, state));
    if (const auto* mix = std::get_if<EachStepMixture>(&impl_)) {
        const int member = rng.categorical(mix->weights);
        return mix->members->member(member).action(step, state);
    }
    throw input_error("resolve a first-step mixture member before sampling actions");
}

namespace {

nlohmann::json policy_json(const Policy& p);

nlohmann::json det_json(const DetPolicy& d) {
    nlohmann::json j;
    j["type"] = "det";
    j["stationary"] = d.stationary_table();
    j["S"] = d.num_states();
    j["actions"] = std::vector<int>(d.actions().begin(), d.actions().end());
    return j;
}

nlohmann::json policy_json(const Policy& p) {
    if (p.is_det()) return det_json(p.det());
    if (p.is_first_step_mixture()) {
        const auto& fs = p.first_step();
        nlohmann::json j;
        j["type"] = "first_step_mixture";
        j["weights"] = fs.weights;
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : *fs.members) members.push_back(policy_json(m));
        j["members"] = std::move(members);
        return j;
    }
    if (p.is_each_step_mixture()) {
        const auto& mix = p.each_step();
        nlohmann::json j;
        j["type"] = "each_step_mixture";
        j["weights"] = mix.weights;
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : mix.members->members()) members.push_back(det_json(m));
        j["class"] = std::move(members);
        return j;
    }
    const auto& st = p.stoch();
    nlohmann::json j;
    j["type"] = "stoch";
    j["stationary"] = st.stationary_table();
    j["S"] = st.num_states();
    j["A"] = st.num_actions();
    const int rows = st.stationary_table() ? st.num_states()
                                           : st.num_states() * st.table_horizon();
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(rows) * st.num_actions());
    for (int r = 0; r < rows; ++r) {
        const auto row = st.stationary_table()
                             ? st.action_probs(0, r)
                             : st.action_probs(r / st.num_states(), r % st.num_states());
        flat.insert(flat.end(), row.begin(), row.end());
    }
    j["probs"] = flat;
    return j;
}

DetPolicy det_from_json(const nlohmann::json& j) {
    auto actions = j.at("actions").get<std::vector<int>>();
    if (j.at("stationary").get<bool>()) return DetPolicy::stationary(std::move(actions));
    return DetPolicy::step_indexed(std::move(actions), j.at("S").get<int>());
}

Policy policy_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "det") return {det_from_json(j)};
    if (type == "stoch") {
        auto probs = j.at("probs").get<std::vector<double>>();
        const int A = j.at("A").get<int>();
        if (j.at("stationary").get<bool>()) return {StochPolicy::stationary(std::move(probs), A)};
        return {StochPolicy::step_indexed(std::move(probs), A, j.at("S").get<int>())};
    }
    if (type == "each_step_mixture") {
        std::vector<DetPolicy> members;
        for (const auto& m : j.at("class")) members.push_back(det_from_json(m));
        return Policy::each_step_mixture(std::make_shared<const PolicyClass>(std::move(members)),
                                         j.at("weights").get<std::vector<double>>());
    }
    if (type == "first_step_mixture") {
        std::vector<Policy> members;
        for (const auto& m : j.at("members")) members.push_back(policy_from_json(m));
        return Policy::first_step_mixture(std::move(members),
                                          j.at("weights").get<std::vector<double>>());
    }
    throw input_error("unknown policy type: " + type);
}

} // namespace

std::string Policy::to_json() const { return policy_json(*this).dump(); }

Policy Policy::from_json(const std::string& text) {
    return policy_from_json(nlohmann::json::parse(text));
}

} // namespace ilbench

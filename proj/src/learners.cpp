#include "ilbench/learners.hpp"

#include <cmath>
#include <limits>

namespace ilbench {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ExpWeightsState::ExpWeightsState(std::shared_ptr<const PolicyClass> members, double eta)
    : class_ref_(std::move(members)), eta_(eta) {
    if (!class_ref_) throw config_error("exponential weights needs a policy class");
    if (!(eta > 0.0)) throw config_error("eta must be positive");
    cumulative_losses_.assign(class_ref_->size(), 0.0);
    recompute_weights();
}

void ExpWeightsState::recompute_weights() {
    const int n = size();
    weights_.assign(n, 0.0);
    double min_loss = kInf;
    for (const double l : cumulative_losses_) min_loss = std::min(min_loss, l);
    if (min_loss == kInf)
        throw realizability_error("every class member has infinite cumulative loss");
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double l = cumulative_losses_[i];
        weights_[i] = l == kInf ? 0.0 : std::exp(-eta_ * (l - min_loss));
        norm += weights_[i];
    }
    for (double& w : weights_) w /= norm;
}

Policy ExpWeightsState::propose() const {
    return Policy::each_step_mixture(class_ref_, weights_);
}

void ExpWeightsState::update(std::span<const double> loss_per_member) {
    if (static_cast<int>(loss_per_member.size()) != size())
        throw input_error("loss vector length != class size");
    for (const double l : loss_per_member) {
        if (std::isnan(l)) throw input_error("loss is NaN");
        if (l < 0.0) throw input_error("loss is negative");
    }
    for (int i = 0; i < size(); ++i) cumulative_losses_[i] += loss_per_member[i];
    recompute_weights();
}

double ExpWeightsState::mixture_log_loss(std::span<const double> loss_per_member) const {
    double likelihood = 0.0;
    for (int i = 0; i < size(); ++i) {
        if (weights_[i] == 0.0 || loss_per_member[i] == kInf) continue;
        likelihood += weights_[i] * std::exp(-loss_per_member[i]);
    }
    return likelihood > 0.0 ? -std::log(likelihood) : kInf;
}

VersionSpace::VersionSpace(std::shared_ptr<const PolicyClass> members)
    : class_ref_(std::move(members)) {
    if (!class_ref_) throw config_error("version space needs a policy class");
    alive_.assign(class_ref_->size(), 1);
    alive_count_ = class_ref_->size();
}

void VersionSpace::finish_update() {
    if (alive_count_ == 0)
        throw realizability_error(
            "version space is empty: data is inconsistent with every class member");
}

void VersionSpace::constrain(int state, int expert_action) {
    for (int i = 0; i < class_ref_->size(); ++i) {
        if (!alive_[i]) continue;
        const DetPolicy& m = class_ref_->member(i);
        if (m.stationary_table()) {
            if (m.action(0, state) != expert_action) {
                alive_[i] = 0;
                --alive_count_;
            }
        } else {
            for (int h = 0; h < m.table_horizon(); ++h)
                if (m.action(h, state) != expert_action) {
                    alive_[i] = 0;
                    --alive_count_;
                    break;
                }
        }
    }
    finish_update();
}

void VersionSpace::constrain_at(int step, int state, int expert_action) {
    for (int i = 0; i < class_ref_->size(); ++i) {
        if (!alive_[i]) continue;
        if (class_ref_->member(i).action(step, state) != expert_action) {
            alive_[i] = 0;
            --alive_count_;
        }
    }
    finish_update();
}

Policy VersionSpace::uniform_mixture() const {
    std::vector<double> weights(class_ref_->size(), 0.0);
    const double w = 1.0 / alive_count_;
    for (int i = 0; i < class_ref_->size(); ++i)
        if (alive_[i]) weights[i] = w;
    return Policy::each_step_mixture(class_ref_, std::move(weights));
}

bool AnnotatedMap::annotate(int state, int expert_action) {
    if (actions_[state] >= 0) return false;
    actions_[state] = expert_action;
    ++annotated_count_;
    return true;
}

Policy memorizing_policy(const std::map<int, int>& annotated, int num_states, int num_actions) {
    AnnotatedMap map(num_states, num_actions);
    for (const auto& [s, a] : annotated) map.annotate(s, a);
    return memorizing_policy(map, num_states);
}

Policy memorizing_policy(const AnnotatedMap& map, int num_states) {
    const int A = map.num_actions();
    std::vector<double> probs(static_cast<std::size_t>(num_states) * A, 0.0);
    for (int s = 0; s < num_states; ++s) {
        if (map.annotated(s)) {
            probs[static_cast<std::size_t>(s) * A + map.action(s)] = 1.0;
        } else {
            for (int a = 0; a < A; ++a) probs[static_cast<std::size_t>(s) * A + a] = 1.0 / A;
        }
    }
    return {StochPolicy::stationary(std::move(probs), A)};
}

} // namespace ilbench

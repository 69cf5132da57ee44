#include "ilbench/algorithms.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "ilbench/rollout.hpp"

namespace ilbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// The online learning oracle behind the training loops.
class OnlineLearner {
  public:
    OnlineLearner(const TabularMdp& mdp, const LearnerConfig& config) : kind_(config.kind) {
        switch (kind_) {
            case LearnerKind::exp_weights:
                ew_.emplace(config.policy_class, config.eta);
                break;
            case LearnerKind::version_space:
                vs_.emplace(config.policy_class);
                break;
            case LearnerKind::memorizing:
                map_.emplace(mdp.num_states(), mdp.num_actions());
                break;
        }
    }

    LearnerKind kind() const { return kind_; }
    const AnnotatedMap* annotated_map() const { return map_ ? &*map_ : nullptr; }

    Policy propose(const TabularMdp& mdp) const {
        switch (kind_) {
            case LearnerKind::exp_weights:
                return ew_->propose();
            case LearnerKind::version_space:
                return vs_->uniform_mixture();
            default:
                return memorizing_policy(*map_, mdp.num_states());
        }
    }

    /// The round policy pi_{u^n} for trajectory-wise execution: a
    /// first-step mixture of the class members under the current weights.
    Policy propose_first_step(const TabularMdp& mdp) {
        if (kind_ == LearnerKind::memorizing) return propose(mdp);
        if (!member_policies_) {
            const auto& cls =
                kind_ == LearnerKind::exp_weights ? ew_->members() : vs_->members();
            auto members = std::make_shared<std::vector<Policy>>();
            members->reserve(cls->size());
            for (const auto& m : cls->members()) members->emplace_back(m);
            member_policies_ = std::move(members);
        }
        return Policy::first_step_mixture(member_policies_, weights());
    }

    std::vector<double> weights() const {
        switch (kind_) {
            case LearnerKind::exp_weights:
                return {ew_->weights().begin(), ew_->weights().end()};
            case LearnerKind::version_space: {
                std::vector<double> w(vs_->alive_mask().size(), 0.0);
                for (std::size_t i = 0; i < w.size(); ++i)
                    if (vs_->alive(static_cast<int>(i))) w[i] = 1.0 / vs_->alive_count();
                return w;
            }
            default:
                return {};
        }
    }

    /// Per-episode member draw for first-step execution (Tragger); the
    /// memorizing learner has a single implicit member.
    std::optional<int> draw_member(Rng& rng) const {
        switch (kind_) {
            case LearnerKind::exp_weights:
                return rng.categorical(ew_->weights());
            case LearnerKind::version_space: {
                int pick = rng.uniform_int(vs_->alive_count());
                for (int i = 0; i < static_cast<int>(vs_->alive_mask().size()); ++i)
                    if (vs_->alive(i) && pick-- == 0) return i;
                return 0;
            }
            default:
                return std::nullopt;
        }
    }

    int sample_action(int step, int state, Rng& rng) const {
        switch (kind_) {
            case LearnerKind::exp_weights: {
                const int member = rng.categorical(ew_->weights());
                return ew_->members()->member(member).action(step, state);
            }
            case LearnerKind::version_space: {
                const int member = *draw_member(rng);
                return vs_->members()->member(member).action(step, state);
            }
            default:
                return map_->sample_action(state, rng);
        }
    }

    int member_action(int member, int step, int state) const {
        const auto& cls = kind_ == LearnerKind::exp_weights ? ew_->members() : vs_->members();
        return cls->member(member).action(step, state);
    }

    void observe_state(int step, int state, int expert_action) {
        switch (kind_) {
            case LearnerKind::exp_weights: {
                std::vector<double> losses(ew_->size());
                for (int i = 0; i < ew_->size(); ++i) {
                    const auto& m = ew_->members()->member(i);
                    losses[i] = m.action(step, state) == expert_action ? 0.0 : kInf;
                }
                ew_->update(losses);
                break;
            }
            case LearnerKind::version_space:
                constrain(step, state, expert_action);
                break;
            default:
                map_->annotate(state, expert_action);
                break;
        }
    }

    void observe_trajectory(std::span<const int> states, std::span<const int> answers) {
        switch (kind_) {
            case LearnerKind::exp_weights: {
                std::vector<double> losses(ew_->size(), 0.0);
                for (int i = 0; i < ew_->size(); ++i) {
                    const auto& m = ew_->members()->member(i);
                    for (std::size_t h = 0; h < states.size(); ++h)
                        if (m.action(static_cast<int>(h), states[h]) != answers[h]) {
                            losses[i] = kInf;
                            break;
                        }
                }
                ew_->update(losses);
                break;
            }
            case LearnerKind::version_space:
                for (std::size_t h = 0; h < states.size(); ++h)
                    constrain(static_cast<int>(h), states[h], answers[h]);
                break;
            default:
                for (std::size_t h = 0; h < states.size(); ++h)
                    map_->annotate(states[h], answers[h]);
                break;
        }
    }

    /// Offline warm start: restrict to the pair-consistent class (B_bc) or
    /// seed the annotation map.
    void seed_offline(std::span<const OfflinePair> pairs) {
        switch (kind_) {
            case LearnerKind::exp_weights: {
                std::vector<double> losses(ew_->size(), 0.0);
                for (int i = 0; i < ew_->size(); ++i) {
                    const auto& m = ew_->members()->member(i);
                    for (const auto& p : pairs)
                        if (m.action(p.step, p.state) != p.action) {
                            losses[i] = kInf;
                            break;
                        }
                }
                ew_->update(losses);
                break;
            }
            case LearnerKind::version_space:
                for (const auto& p : pairs) constrain(p.step, p.state, p.action);
                break;
            default:
                for (const auto& p : pairs) {
                    if (map_->annotated(p.state) && map_->action(p.state) != p.action)
                        throw realizability_error(
                            "offline pairs assign two actions to one state");
                    map_->annotate(p.state, p.action);
                }
                break;
        }
    }

  private:
    void constrain(int step, int state, int expert_action) {
        // Stationary classes are constrained state-wise; step-indexed ones
        // at the observed step.
        if (vs_->members()->member(0).stationary_table())
            vs_->constrain(state, expert_action);
        else
            vs_->constrain_at(step, state, expert_action);
    }

    LearnerKind kind_;
    std::optional<ExpWeightsState> ew_;
    std::optional<VersionSpace> vs_;
    std::optional<AnnotatedMap> map_;
    std::shared_ptr<const std::vector<Policy>> member_policies_;
};

void check_learner(const TabularMdp& mdp, const LearnerConfig& config) {
    if (config.kind != LearnerKind::memorizing) {
        if (!config.policy_class)
            throw config_error("exp_weights/version_space learners need a policy class");
        for (const auto& m : config.policy_class->members())
            if (m.num_states() != mdp.num_states())
                throw config_error("policy class does not match mdp state count");
    }
}

RunResult finish(std::vector<Policy>&& snapshots, std::vector<TrainRecord>&& records,
                 const OnlineLearner& learner, const TabularMdp& mdp, bool keep_snapshots) {
    RunResult result{MixturePolicyOutput{Policy{DetPolicy::stationary({0})}, 0},
                     std::move(records),
                     learner.weights()};
    if (keep_snapshots && !snapshots.empty()) {
        result.output.rounds = static_cast<int>(snapshots.size());
        result.output.mixture = Policy::uniform_first_step_mixture(std::move(snapshots));
    } else {
        result.output.rounds = static_cast<int>(result.records.size());
        result.output.mixture = learner.propose(mdp);
    }
    return result;
}

enum class QueryMode { state_wise, trajectory_wise };

RunResult interactive_loop(const TabularMdp& mdp, ExpertOracle& oracle,
                           const LearnerConfig& config, std::span<const OfflinePair> offline_pairs,
                           long long rounds, QueryMode mode, Rng& rng, const RunOptions& opts) {
    check_learner(mdp, config);
    OnlineLearner learner(mdp, config);
    learner.seed_offline(offline_pairs);

    std::vector<Policy> snapshots;
    std::vector<TrainRecord> records;
    records.reserve(static_cast<std::size_t>(std::min<long long>(rounds, 1 << 20)));

    for (long long n = 1; n <= rounds; ++n) {
        if (opts.keep_snapshots)
            snapshots.push_back(mode == QueryMode::trajectory_wise
                                    ? learner.propose_first_step(mdp)
                                    : learner.propose(mdp));

        Trajectory traj;
        if (mode == QueryMode::trajectory_wise) {
            // First-step execution: one member per episode.
            const std::optional<int> member = learner.draw_member(rng);
            traj = rollout_with(
                mdp,
                [&](int h, int s, Rng& r) {
                    return member ? learner.member_action(*member, h, s)
                                  : learner.sample_action(h, s, r);
                },
                rng);
        } else {
            traj = rollout_with(
                mdp, [&](int h, int s, Rng& r) { return learner.sample_action(h, s, r); }, rng);
        }

        TrainRecord rec;
        rec.round = n;
        rec.snapshot_id = opts.keep_snapshots ? static_cast<int>(snapshots.size()) - 1 : -1;
        if (mode == QueryMode::state_wise) {
            const int h = rng.uniform_int(mdp.horizon());
            const int s = traj.states[h];
            const int a_star = oracle.query_state(s, h);
            learner.observe_state(h, s, a_star);
            rec.states = {s};
            rec.answers = {a_star};
        } else {
            std::vector<int> answers = oracle.query_trajectory(traj.states);
            learner.observe_trajectory(traj.states, answers);
            rec.states = traj.states;
            rec.answers = std::move(answers);
        }
        rec.annotations = oracle.ledger().interactive_annotations();
        rec.cost = oracle.ledger().total_cost();
        if (opts.observer)
            opts.observer(RoundEvent{n, rec.annotations, rec.cost, rec.states, rec.answers});
        records.push_back(std::move(rec));
    }
    return finish(std::move(snapshots), std::move(records), learner, mdp, opts.keep_snapshots);
}

} // namespace

Policy run_bc(const TabularMdp& mdp, const ExpertOracle& oracle,
              std::span<const OfflinePair> pairs, const LearnerConfig& learner) {
    (void)oracle;
    if (learner.kind == LearnerKind::memorizing) {
        AnnotatedMap map(mdp.num_states(), mdp.num_actions());
        for (const auto& p : pairs) {
            if (map.annotated(p.state) && map.action(p.state) != p.action)
                throw realizability_error("pairs assign two actions to one state");
            map.annotate(p.state, p.action);
        }
        return memorizing_policy(map, mdp.num_states());
    }
    if (learner.kind == LearnerKind::version_space) {
        check_learner(mdp, learner);
        VersionSpace vs(learner.policy_class);
        for (const auto& p : pairs) {
            if (learner.policy_class->member(0).stationary_table())
                vs.constrain(p.state, p.action);
            else
                vs.constrain_at(p.step, p.state, p.action);
        }
        return vs.uniform_mixture();
    }
    throw input_error("behavior cloning supports version_space or memorizing learners");
}

RunResult run_stagger(const TabularMdp& mdp, ExpertOracle& oracle, const LearnerConfig& learner,
                      long long n_int, Rng& rng, const RunOptions& opts) {
    if (n_int < 1) throw input_error("stagger needs n_int >= 1");
    return interactive_loop(mdp, oracle, learner, {}, n_int, QueryMode::state_wise, rng, opts);
}

RunResult run_warm_stagger(const TabularMdp& mdp, ExpertOracle& oracle,
                           const LearnerConfig& learner, std::span<const OfflinePair> offline_pairs,
                           long long n_int, Rng& rng, const RunOptions& opts) {
    return interactive_loop(mdp, oracle, learner, offline_pairs, n_int, QueryMode::state_wise, rng,
                            opts);
}

RunResult run_tragger(const TabularMdp& mdp, ExpertOracle& oracle, const LearnerConfig& learner,
                      long long n_traj_rounds, Rng& rng, const RunOptions& opts) {
    if (n_traj_rounds < 1) throw input_error("tragger needs at least one round");
    return interactive_loop(mdp, oracle, learner, {}, n_traj_rounds, QueryMode::trajectory_wise,
                            rng, opts);
}

RunResult run_warm_tragger(const TabularMdp& mdp, ExpertOracle& oracle,
                           const LearnerConfig& learner, std::span<const OfflinePair> offline_pairs,
                           long long budget, Rng& rng, const RunOptions& opts) {
    const long long rounds = budget / mdp.horizon();
    return interactive_loop(mdp, oracle, learner, offline_pairs, rounds,
                            QueryMode::trajectory_wise, rng, opts);
}

} // namespace ilbench

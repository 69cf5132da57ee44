#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "ilbench/learners.hpp"
#include "ilbench/mdp.hpp"
#include "ilbench/policy.hpp"

namespace ilbench {

/// Parameters of the cliff MDP. State ids are laid out as
/// [0, N0) = E (ideal), [N0, N0+N1) = E' (recoverable), then b (absorbing
/// failure) and b' (recoverable trap); S = N0 + N1 + 2.
struct CliffConfig {
    enum class RewardVariant { r1, r_e_only };

    int n_ideal = 0;       // N0 = |E|
    int n_recoverable = 0; // N1 = |E'|
    int horizon = 0;
    int num_actions = 0;
    double beta = 0.0;
    RewardVariant reward_variant = RewardVariant::r1;
    /// Enforces the parameter regime of the separation theorem:
    /// H >= 50, H >= (5/4) ln(10 N0), A >= 10H, beta = 8/(H-8),
    /// N1 >= 500, N1 >= 160 N0.
    bool theoretical_mode = false;
    /// Expert action per state: action 0 everywhere by default, or a seeded
    /// random assignment to confirm assignment invariance.
    std::optional<std::uint64_t> expert_assignment_seed;

    /// Simulation variant: N0=200, N1=1000, H=100, A=1001, beta=0.08
    /// (taken literally, not 8/(H-8)), rewards only in E.
    static CliffConfig figure2();
    /// Theorem-regime preset: H=50, N0=50, N1=8000, A=500, beta=8/42, R1.
    static CliffConfig theorem();

    int num_states() const { return n_ideal + n_recoverable + 2; }
    int b_state() const { return n_ideal + n_recoverable; }
    int b_prime_state() const { return n_ideal + n_recoverable + 1; }
    bool in_e(int s) const { return s >= 0 && s < n_ideal; }
    bool in_e_prime(int s) const { return s >= n_ideal && s < n_ideal + n_recoverable; }

    void validate() const;

    std::string to_json() const;
    static CliffConfig from_json(const std::string& text);
};

/// The constructed instance: a homogeneous-kernel MDP and its expert.
struct CliffWorld {
    CliffConfig config;
    TabularMdp mdp;
    DetPolicy expert;
};

CliffWorld build_cliff(const CliffConfig& config);

/// Coverage fractions of E and E' in an annotated-state set, plus whether
/// b' is annotated.
struct CoverageStats {
    double frac_e = 0.0;
    double frac_e_prime = 0.0;
    bool b_prime_annotated = false;
};

CoverageStats coverage_stats(const std::set<int>& annotated_states, const CliffConfig& config);

/// Closed-form thresholds from the separation analysis; requires
/// theoretical_mode.
struct TheoremBounds {
    double bc_threshold;      // N1 / 160 offline trajectories
    double stagger_threshold; // H * N0 / 12 interactive annotations
    long long ws_offline;     // ceil(N0 / ((1-beta) H) * ln(10 N0)) trajectories
    int ws_interactive;       // 3 annotations
};

TheoremBounds theorem_bounds(const CliffConfig& config);

/// Annotation-coverage summary driving the lumped evaluator.
struct CliffCoverage {
    int annotated_e = 0;
    int annotated_e_prime = 0;
    bool b_prime_annotated = false;

    void absorb(int state, const CliffConfig& config) {
        if (config.in_e(state))
            ++annotated_e;
        else if (config.in_e_prime(state))
            ++annotated_e_prime;
        else if (state == config.b_prime_state())
            b_prime_annotated = true;
    }
};

/// Exact return of the memorizing policy on a cliff instance, computed by
/// dynamic programming on the lumped chain {E annotated, E unannotated,
/// E' annotated, E' unannotated, b, b'}. States within each lump are
/// exchangeable under the cliff kernel, so this equals the full-state DP.
double cliff_memorizing_return(const CliffWorld& world, const CliffCoverage& coverage);

/// Same value via the generic full-state DP; used to cross-check the lumped
/// evaluator on small instances.
double cliff_memorizing_return_dense(const CliffWorld& world, const AnnotatedMap& map);

} // namespace ilbench

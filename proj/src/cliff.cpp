#include "ilbench/cliff.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ilbench/evaluation.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

CliffConfig CliffConfig::figure2() {
    CliffConfig c;
    c.n_ideal = 200;
    c.n_recoverable = 1000;
    c.horizon = 100;
    c.num_actions = 1001;
    c.beta = 0.08; // the simulation takes beta literally, not 8/(H-8)
    c.reward_variant = RewardVariant::r_e_only;
    c.theoretical_mode = false;
    return c;
}

CliffConfig CliffConfig::theorem() {
    CliffConfig c;
    c.n_ideal = 50;
    c.n_recoverable = 8000;
    c.horizon = 50;
    c.num_actions = 500;
    c.beta = 8.0 / (c.horizon - 8);
    c.reward_variant = RewardVariant::r1;
    c.theoretical_mode = true;
    return c;
}

void CliffConfig::validate() const {
    std::vector<std::string> failures;
    if (n_ideal < 1) failures.push_back("N0 must be >= 1");
    if (n_recoverable < 1) failures.push_back("N1 must be >= 1");
    if (horizon < 1) failures.push_back("H must be >= 1");
    if (num_actions < 2) failures.push_back("A must be >= 2");
    if (!(beta > 0.0 && beta < 1.0)) failures.push_back("beta must lie in (0,1)");
    if (theoretical_mode) {
        if (horizon < 50) failures.push_back("theoretical mode needs H >= 50");
        if (horizon < 1.25 * std::log(10.0 * n_ideal))
            failures.push_back("theoretical mode needs H >= (5/4) ln(10 N0)");
        if (num_actions < 10 * horizon) failures.push_back("theoretical mode needs A >= 10 H");
        if (std::abs(beta - 8.0 / (horizon - 8)) > 1e-12)
            failures.push_back("theoretical mode needs beta = 8/(H-8)");
        if (n_recoverable < 500) failures.push_back("theoretical mode needs N1 >= 500");
        if (n_recoverable < 160 * n_ideal)
            failures.push_back("theoretical mode needs N1 >= 160 N0");
    }
    if (!failures.empty()) {
        std::string msg = "invalid cliff config:";
        for (const auto& f : failures) msg += "\n  - " + f;
        throw config_error(msg);
    }
}

std::string CliffConfig::to_json() const {
    nlohmann::json j;
    j["N0"] = n_ideal;
    j["N1"] = n_recoverable;
    j["H"] = horizon;
    j["A"] = num_actions;
    j["beta"] = beta;
    j["reward_variant"] = reward_variant == RewardVariant::r1 ? "R1" : "R_E_only";
    j["theoretical_mode"] = theoretical_mode;
    if (expert_assignment_seed) j["expert_assignment_seed"] = *expert_assignment_seed;
    return j.dump();
}

CliffConfig CliffConfig::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CliffConfig c;
    c.n_ideal = j.at("N0").get<int>();
    c.n_recoverable = j.at("N1").get<int>();
    c.horizon = j.at("H").get<int>();
    c.num_actions = j.at("A").get<int>();
    c.beta = j.at("beta").get<double>();
    const std::string rv = j.at("reward_variant").get<std::string>();
    if (rv == "R1")
        c.reward_variant = RewardVariant::r1;
    else if (rv == "R_E_only")
        c.reward_variant = RewardVariant::r_e_only;
    else
        throw input_error("unknown reward variant: " + rv);
    c.theoretical_mode = j.at("theoretical_mode").get<bool>();
    if (j.contains("expert_assignment_seed"))
        c.expert_assignment_seed = j.at("expert_assignment_seed").get<std::uint64_t>();
    return c;
}

CliffWorld build_cliff(const CliffConfig& config) {
    config.validate();
    const int n0 = config.n_ideal;
    const int n1 = config.n_recoverable;
    const int S = config.num_states();
    const int A = config.num_actions();
    const int b = config.b_state();
    const int bp = config.b_prime_state();
    const double beta = config.beta;

    // Expert action table: action 0 everywhere, or a seeded assignment.
    std::vector<int> expert_actions(S, 0);
    if (config.expert_assignment_seed) {
        Rng rng(*config.expert_assignment_seed);
        for (int s = 0; s < S; ++s) expert_actions[s] = rng.uniform_int(A);
    }

    std::vector<double> rho(S, 0.0);
    for (int s = 0; s < n0; ++s) rho[s] = 1.0 / ((1.0 + beta) * n0);
    for (int s = n0; s < n0 + n1; ++s) rho[s] = beta / ((1.0 + beta) * n1);

    // Four distinct transition rows cover the whole kernel.
    std::vector<std::vector<double>> rows(4, std::vector<double>(S, 0.0));
    constexpr std::int32_t kExpertE = 0, kUniformE = 1, kDeltaB = 2, kDeltaBp = 3;
    for (int s = 0; s < n0; ++s) rows[kExpertE][s] = (1.0 - beta) / n0;
    for (int s = n0; s < n0 + n1; ++s) rows[kExpertE][s] = beta / n1;
    for (int s = 0; s < n0; ++s) rows[kUniformE][s] = 1.0 / n0;
    rows[kDeltaB][b] = 1.0;
    rows[kDeltaBp][bp] = 1.0;

    std::vector<std::int32_t> index(static_cast<std::size_t>(S) * A);
    std::vector<double> rewards(static_cast<std::size_t>(S) * A, 0.0);
    for (int s = 0; s < S; ++s) {
        const int a_star = expert_actions[s];
        std::int32_t expert_row, wrong_row;
        if (config.in_e(s)) {
            expert_row = kExpertE;
            wrong_row = kDeltaB;
        } else if (config.in_e_prime(s)) {
            expert_row = kUniformE;
            wrong_row = kDeltaBp;
        } else if (s == b) {
            expert_row = kDeltaB;
            wrong_row = kDeltaB;
        } else {
            expert_row = kUniformE;
            wrong_row = kDeltaBp;
        }
        for (int a = 0; a < A; ++a) {
            const std::size_t i = static_cast<std::size_t>(s) * A + a;
            index[i] = a == a_star ? expert_row : wrong_row;
            if (config.reward_variant == CliffConfig::RewardVariant::r1) {
                if (s < n0 + n1)
                    rewards[i] = 1.0;
                else if (s == bp && a == a_star)
                    rewards[i] = 1.0;
            } else {
                if (config.in_e(s)) rewards[i] = 1.0;
            }
        }
    }

    CliffWorld world{config,
                     TabularMdp::from_rows(S, A, config.horizon, std::move(rho), std::move(rows),
                                           std::move(index), std::move(rewards),
                                           static_cast<double>(config.horizon),
                                           /*homogeneous=*/true),
                     DetPolicy::stationary(std::move(expert_actions))};
    return world;
}

CoverageStats coverage_stats(const std::set<int>& annotated_states, const CliffConfig& config) {
    CoverageStats stats;
    int in_e = 0, in_ep = 0;
    for (const int s : annotated_states) {
        if (config.in_e(s))
            ++in_e;
        else if (config.in_e_prime(s))
            ++in_ep;
        else if (s == config.b_prime_state())
            stats.b_prime_annotated = true;
    }
    stats.frac_e = static_cast<double>(in_e) / config.n_ideal;
    stats.frac_e_prime = static_cast<double>(in_ep) / config.n_recoverable;
    return stats;
}

TheoremBounds theorem_bounds(const CliffConfig& config) {
    if (!config.theoretical_mode)
        throw config_error("theorem bounds are defined in theoretical mode only");
    config.validate();
    TheoremBounds b;
    b.bc_threshold = config.n_recoverable / 160.0;
    b.stagger_threshold = static_cast<double>(config.horizon) * config.n_ideal / 12.0;
    b.ws_offline = static_cast<long long>(
        std::ceil(config.n_ideal / ((1.0 - config.beta) * config.horizon) *
                  std::log(10.0 * config.n_ideal)));
    b.ws_interactive = 3;
    return b;
}

double cliff_memorizing_return(const CliffWorld& world, const CliffCoverage& coverage) {
    const CliffConfig& c = world.config;
    const double f0 = static_cast<double>(coverage.annotated_e) / c.n_ideal;
    const double f1 = static_cast<double>(coverage.annotated_e_prime) / c.n_recoverable;
    const double beta = c.beta;
    const double inv_a = 1.0 / c.num_actions;
    const bool r1 = c.reward_variant == CliffConfig::RewardVariant::r1;

    // Lumps: 0 = E annotated, 1 = E unannotated, 2 = E' annotated,
    //        3 = E' unannotated, 4 = b, 5 = b'.
    constexpr int L = 6;
    const double expert_e[L] = {(1 - beta) * f0, (1 - beta) * (1 - f0), beta * f1,
                                beta * (1 - f1), 0.0,                   0.0};
    const double uniform_e[L] = {f0, 1 - f0, 0.0, 0.0, 0.0, 0.0};

    double trans[L][L] = {};
    double reward[L] = {};
    for (int i = 0; i < L; ++i) trans[0][i] = expert_e[i];
    for (int i = 0; i < L; ++i) trans[1][i] = inv_a * expert_e[i];
    trans[1][4] += 1 - inv_a;
    for (int i = 0; i < L; ++i) trans[2][i] = uniform_e[i];
    for (int i = 0; i < L; ++i) trans[3][i] = inv_a * uniform_e[i];
    trans[3][5] += 1 - inv_a;
    trans[4][4] = 1.0;
    if (coverage.b_prime_annotated) {
        for (int i = 0; i < L; ++i) trans[5][i] = uniform_e[i];
    } else {
        for (int i = 0; i < L; ++i) trans[5][i] = inv_a * uniform_e[i];
        trans[5][5] += 1 - inv_a;
    }

    reward[0] = reward[1] = 1.0;
    if (r1) {
        reward[2] = reward[3] = 1.0;
        reward[5] = coverage.b_prime_annotated ? 1.0 : inv_a;
    }

    double v[L] = {}, next[L] = {};
    for (int h = c.horizon - 1; h >= 0; --h) {
        for (int i = 0; i < L; ++i) {
            double acc = reward[i];
            if (h + 1 < c.horizon)
                for (int jdx = 0; jdx < L; ++jdx) acc += trans[i][jdx] * next[jdx];
            v[i] = acc;
        }
        for (int i = 0; i < L; ++i) next[i] = v[i];
    }

    const double mass_e = 1.0 / (1.0 + beta);
    const double mass_ep = beta / (1.0 + beta);
    return mass_e * (f0 * next[0] + (1 - f0) * next[1]) +
           mass_ep * (f1 * next[2] + (1 - f1) * next[3]);
}

double cliff_memorizing_return_dense(const CliffWorld& world, const AnnotatedMap& map) {
    return exact_return(world.mdp, memorizing_policy(map, world.mdp.num_states()));
}

} // namespace ilbench

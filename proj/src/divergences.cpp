#include "ilbench/divergences.hpp"

#include <cmath>
#include <functional>

#include "ilbench/evaluation.hpp"

namespace ilbench {

namespace {

constexpr double kEnumGuard = 1e6;

void check_enumerable(const TabularMdp& mdp) {
    const double paths = std::pow(static_cast<double>(mdp.num_states()) * mdp.num_actions(),
                                  static_cast<double>(mdp.horizon()));
    if (paths > kEnumGuard)
        throw size_error("instance exceeds the 1e6 weighted-path enumeration guard");
}

/// Flattens a policy into weighted Markovian components (a Markovian policy
/// is a single component; nested first-step mixtures multiply out).
void flatten_components(const Policy& policy, double weight,
                        std::vector<std::pair<double, const Policy*>>& out) {
    if (policy.is_first_step_mixture()) {
        const auto& fs = policy.first_step();
        for (std::size_t i = 0; i < fs.weights.size(); ++i)
            if (fs.weights[i] != 0.0)
                flatten_components((*fs.members)[i], weight * fs.weights[i], out);
    } else {
        out.emplace_back(weight, &policy);
    }
}

std::vector<std::pair<double, const Policy*>> flatten_components(const Policy& policy) {
    std::vector<std::pair<double, const Policy*>> out;
    flatten_components(policy, 1.0, out);
    return out;
}

/// Enumerates (state, action) paths of a Markovian policy, calling
/// visit(states, actions, prob) for every positive-probability trajectory.
void for_each_trajectory(const TabularMdp& mdp, const Policy& policy,
                         const std::function<void(std::span<const int>, std::span<const int>,
                                                  double)>& visit) {
    const int H = mdp.horizon();
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    std::vector<int> states(H), actions(H);
    std::vector<double> probs(A);

    std::function<void(int, int, double)> expand = [&](int h, int s, double prefix) {
        states[h] = s;
        policy.action_probs(h, s, probs);
        for (int a = 0; a < A; ++a) {
            if (probs[a] == 0.0) continue;
            actions[h] = a;
            const double p = prefix * probs[a];
            if (h + 1 == H) {
                visit(states, actions, p);
                continue;
            }
            const auto row = mdp.transition_row(h, s, a);
            for (int sp = 0; sp < S; ++sp)
                if (row[sp] > 0.0) expand(h + 1, sp, p * row[sp]);
        }
    };
    const auto rho = mdp.initial_dist();
    for (int s = 0; s < S; ++s)
        if (rho[s] > 0.0) expand(0, s, rho[s]);
}

} // namespace

double hellinger_sq(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw input_error("distributions differ in length");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) throw input_error("distribution has a negative entry");
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        acc += d * d;
    }
    return acc;
}

double TrajectoryLaw::mass() const {
    double acc = 0.0;
    for (const auto& [k, v] : table) acc += v;
    return acc;
}

TrajectoryLaw trajectory_law(const TabularMdp& mdp, const Policy& policy) {
    check_enumerable(mdp);
    TrajectoryLaw law;
    for (const auto& [weight, component] : flatten_components(policy)) {
        for_each_trajectory(mdp, *component,
                            [&](std::span<const int> s, std::span<const int> a, double p) {
                                law.table[{std::vector<int>(s.begin(), s.end()),
                                           std::vector<int>(a.begin(), a.end())}] += weight * p;
                            });
    }
    return law;
}

double causal_state_prob(const TabularMdp& mdp, std::span<const int> states,
                         std::span<const int> actions) {
    if (states.size() != static_cast<std::size_t>(mdp.horizon()))
        throw input_error("state sequence must have length H");
    double p = mdp.initial_dist()[states[0]];
    for (int h = 0; h + 1 < mdp.horizon() && p > 0.0; ++h)
        p *= mdp.transition_row(h, states[h], actions[h])[states[h + 1]];
    return p;
}

double causal_action_prob(const Policy& policy, std::span<const int> states,
                          std::span<const int> actions) {
    if (policy.is_first_step_mixture()) {
        double p = 0.0;
        for (const auto& [weight, component] : flatten_components(policy)) {
            double prod = 1.0;
            for (std::size_t h = 0; h < states.size() && prod > 0.0; ++h)
                prod *= component->action_prob(static_cast<int>(h), states[h], actions[h]);
            p += weight * prod;
        }
        return p;
    }
    double prod = 1.0;
    for (std::size_t h = 0; h < states.size() && prod > 0.0; ++h)
        prod *= policy.action_prob(static_cast<int>(h), states[h], actions[h]);
    return prod;
}

double traj_l1_divergence(const TabularMdp& mdp, const Policy& pi, const Policy& pi_prime) {
    check_enumerable(mdp);
    if (!pi.markovian() || !pi_prime.markovian())
        throw input_error("trajectory L1 divergence requires Markovian policies");
    double acc = 0.0;
    for_each_trajectory(mdp, pi, [&](std::span<const int> s, std::span<const int> a, double p) {
        double mismatches = 0.0;
        for (std::size_t h = 0; h < s.size(); ++h)
            mismatches += 1.0 - pi_prime.action_prob(static_cast<int>(h), s[h], a[h]);
        acc += p * mismatches;
    });
    return acc;
}

double traj_linf_semimetric(const TabularMdp& mdp, const Policy& pi, const Policy& pi_prime) {
    check_enumerable(mdp);
    double acc = 0.0;
    for (const auto& [weight, component] : flatten_components(pi)) {
        for_each_trajectory(mdp, *component,
                            [&](std::span<const int> s, std::span<const int> a, double p) {
                                acc += weight * p * (1.0 - causal_action_prob(pi_prime, s, a));
                            });
    }
    return acc;
}

double statewise_hellinger_error(const TabularMdp& mdp, std::span<const Policy> policies,
                                 const Policy& expert) {
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    std::vector<double> p(A), q(A);
    double total = 0.0;
    for (const Policy& pi : policies) {
        const std::vector<double> d = visitation_distribution(mdp, pi);
        double err = 0.0;
        for (int h = 0; h < H; ++h) {
            for (int s = 0; s < S; ++s) {
                const double mass = d[static_cast<std::size_t>(h) * S + s];
                if (mass == 0.0) continue;
                pi.action_probs(h, s, p);
                expert.action_probs(h, s, q);
                err += mass * hellinger_sq(p, q);
            }
        }
        total += err / H;
    }
    return total;
}

double decoupled_hellinger(const TabularMdp& mdp, const Policy& pi, const Policy& expert) {
    check_enumerable(mdp);
    if (!expert.is_det()) throw input_error("decoupled Hellinger requires a deterministic expert");
    const auto components = flatten_components(pi);
    const int m = static_cast<int>(components.size());
    const int H = mdp.horizon();
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const DetPolicy& ex = expert.det();

    // DFS over state sequences; per component track the state-sequence
    // probability sp and the expert-action likelihood ap. The mixture's
    // action law conditions on the sequence marginally: q = sum_i w_i ap_i.
    std::vector<double> probs(A);
    double acc = 0.0;
    std::vector<double> sp(m), ap(m);

    std::function<void(int, int)> expand = [&](int h, int s) {
        const int a_star = ex.action(h, s);
        std::vector<double> saved_sp(sp), saved_ap(ap);
        for (int i = 0; i < m; ++i)
            ap[i] *= components[i].second->action_prob(h, s, a_star);
        if (h + 1 == H) {
            double weight = 0.0, q = 0.0;
            for (int i = 0; i < m; ++i) {
                weight += components[i].first * sp[i];
                q += components[i].first * ap[i];
            }
            if (weight > 0.0) acc += weight * (2.0 - 2.0 * std::sqrt(q));
        } else {
            // per-component state kernel out of s at step h
            std::vector<std::vector<double>> next(m, std::vector<double>(S, 0.0));
            for (int i = 0; i < m; ++i) {
                if (saved_sp[i] == 0.0) continue;
                components[i].second->action_probs(h, s, probs);
                for (int a = 0; a < A; ++a) {
                    if (probs[a] == 0.0) continue;
                    const auto row = mdp.transition_row(h, s, a);
                    for (int spi = 0; spi < S; ++spi) next[i][spi] += probs[a] * row[spi];
                }
            }
            for (int snext = 0; snext < S; ++snext) {
                bool any = false;
                for (int i = 0; i < m; ++i) {
                    sp[i] = saved_sp[i] * next[i][snext];
                    if (sp[i] > 0.0) any = true;
                }
                if (any) expand(h + 1, snext);
            }
            sp = saved_sp;
        }
        ap = std::move(saved_ap);
    };

    const auto rho = mdp.initial_dist();
    for (int s = 0; s < S; ++s) {
        if (rho[s] == 0.0) continue;
        std::fill(sp.begin(), sp.end(), rho[s]);
        std::fill(ap.begin(), ap.end(), 1.0);
        expand(0, s);
    }
    return acc;
}

std::pair<double, double> symmetric_F(const TabularMdp& mdp, const Policy& nu,
                                      const Policy& nu_prime, const Policy& expert) {
    check_enumerable(mdp);
    if (!nu.is_det() || !nu_prime.is_det() || !expert.is_det())
        throw input_error("symmetric evaluation requires deterministic policies");
    const int H = mdp.horizon();
    const int S = mdp.num_states();

    const auto evaluate = [&](const DetPolicy& roller, const DetPolicy& judged) {
        const DetPolicy& ex = expert.det();
        double acc = 0.0;
        std::function<void(int, int, double, bool)> expand = [&](int h, int s, double p,
                                                                 bool disagreed) {
            disagreed = disagreed || judged.action(h, s) != ex.action(h, s);
            if (h + 1 == H) {
                if (disagreed) acc += p;
                return;
            }
            const auto row = mdp.transition_row(h, s, roller.action(h, s));
            for (int sp = 0; sp < S; ++sp)
                if (row[sp] > 0.0) expand(h + 1, sp, p * row[sp], disagreed);
        };
        const auto rho = mdp.initial_dist();
        for (int s = 0; s < S; ++s)
            if (rho[s] > 0.0) expand(0, s, rho[s], false);
        return acc;
    };

    return {evaluate(nu.det(), nu_prime.det()), evaluate(nu_prime.det(), nu.det())};
}

Policy first_step_completion(const TabularMdp& mdp, const Policy& policy) {
    if (!policy.markovian()) throw input_error("completion applies to Markovian policies");
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    const double assignments = std::pow(static_cast<double>(A), static_cast<double>(S) * H);
    if (assignments > 4096.0)
        throw size_error("completion exceeds the 4096 table-assignment guard");

    const int cells = S * H;
    std::vector<Policy> members;
    std::vector<double> weights;
    std::vector<int> table(cells, 0);
    std::vector<double> probs(A);

    std::function<void(int, double)> assign = [&](int cell, double w) {
        if (w == 0.0) return;
        if (cell == cells) {
            members.emplace_back(DetPolicy::step_indexed(table, S));
            weights.push_back(w);
            return;
        }
        const int h = cell / S;
        const int s = cell % S;
        policy.action_probs(h, s, probs);
        for (int a = 0; a < A; ++a) {
            if (probs[a] == 0.0) continue;
            table[cell] = a;
            assign(cell + 1, w * probs[a]);
        }
    };
    assign(0, 1.0);
    return Policy::first_step_mixture(std::move(members), std::move(weights));
}

} // namespace ilbench

#include "ilbench/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ilbench {

namespace {

void check_markovian(const TabularMdp& mdp, const Policy& policy) {
    if (!policy.markovian())
        throw input_error("operation requires a Markovian policy");
    if (policy.is_det() && policy.det().num_states() != mdp.num_states())
        throw config_error("policy table does not match mdp state count");
    if (policy.is_stoch() && (policy.stoch().num_states() != mdp.num_states() ||
                              policy.stoch().num_actions() != mdp.num_actions()))
        throw config_error("policy table does not match mdp dimensions");
}

/// dot(row_r, values) for every unique transition row.
std::vector<double> row_dots(const TabularMdp& mdp, std::span<const double> values) {
    std::vector<double> dots(mdp.num_rows());
    for (int r = 0; r < mdp.num_rows(); ++r) {
        const auto row = mdp.row(r);
        double acc = 0.0;
        for (int sp = 0; sp < mdp.num_states(); ++sp) acc += row[sp] * values[sp];
        dots[r] = acc;
    }
    return dots;
}

} // namespace

double exact_return(const TabularMdp& mdp, const Policy& policy) {
    if (policy.is_first_step_mixture()) {
        const auto& fs = policy.first_step();
        double j = 0.0;
        for (std::size_t i = 0; i < fs.weights.size(); ++i)
            if (fs.weights[i] != 0.0) j += fs.weights[i] * exact_return(mdp, (*fs.members)[i]);
        return j;
    }
    check_markovian(mdp, policy);
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    std::vector<double> next(S, 0.0), cur(S, 0.0), probs(A);
    for (int h = H - 1; h >= 0; --h) {
        const auto dots = h + 1 < H ? row_dots(mdp, next) : std::vector<double>{};
        for (int s = 0; s < S; ++s) {
            double v = 0.0;
            if (policy.is_det()) {
                const int a = policy.det().action(h, s);
                v = mdp.reward(s, a);
                if (h + 1 < H) v += dots[mdp.row_id(h, s, a)];
            } else {
                policy.action_probs(h, s, probs);
                for (int a = 0; a < A; ++a) {
                    if (probs[a] == 0.0) continue;
                    double q = mdp.reward(s, a);
                    if (h + 1 < H) q += dots[mdp.row_id(h, s, a)];
                    v += probs[a] * q;
                }
            }
            cur[s] = v;
        }
        std::swap(cur, next);
    }
    const auto rho = mdp.initial_dist();
    double j = 0.0;
    for (int s = 0; s < S; ++s) j += rho[s] * next[s];
    return j;
}

ValueFunctions value_functions(const TabularMdp& mdp, const Policy& policy) {
    check_markovian(mdp, policy);
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    ValueFunctions vf;
    vf.v.assign(static_cast<std::size_t>(H) * S, 0.0);
    vf.q.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    std::vector<double> probs(A);
    for (int h = H - 1; h >= 0; --h) {
        std::span<const double> vnext;
        std::vector<double> dots;
        if (h + 1 < H) {
            vnext = std::span<const double>(vf.v).subspan(static_cast<std::size_t>(h + 1) * S, S);
            dots = row_dots(mdp, vnext);
        }
        for (int s = 0; s < S; ++s) {
            policy.action_probs(h, s, probs);
            double v = 0.0;
            for (int a = 0; a < A; ++a) {
                double q = mdp.reward(s, a);
                if (h + 1 < H) q += dots[mdp.row_id(h, s, a)];
                vf.q[(static_cast<std::size_t>(h) * S + s) * A + a] = q;
                v += probs[a] * q;
            }
            vf.v[static_cast<std::size_t>(h) * S + s] = v;
        }
    }
    return vf;
}

double recoverability_mu(const TabularMdp& mdp, const Policy& expert) {
    check_markovian(mdp, expert);
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    std::vector<double> next(S, 0.0), cur(S, 0.0), probs(A);
    double mu = 0.0;
    for (int h = H - 1; h >= 0; --h) {
        const auto dots = h + 1 < H ? row_dots(mdp, next) : std::vector<double>{};
        for (int s = 0; s < S; ++s) {
            expert.action_probs(h, s, probs);
            double v = 0.0;
            for (int a = 0; a < A; ++a) {
                if (probs[a] == 0.0) continue;
                double q = mdp.reward(s, a);
                if (h + 1 < H) q += dots[mdp.row_id(h, s, a)];
                v += probs[a] * q;
            }
            cur[s] = v;
            for (int a = 0; a < A; ++a) {
                double q = mdp.reward(s, a);
                if (h + 1 < H) q += dots[mdp.row_id(h, s, a)];
                mu = std::max(mu, v - q);
            }
        }
        std::swap(cur, next);
    }
    return mu;
}

std::vector<double> visitation_distribution(const TabularMdp& mdp, const Policy& policy) {
    check_markovian(mdp, policy);
    const int S = mdp.num_states();
    const int A = mdp.num_actions();
    const int H = mdp.horizon();
    std::vector<double> d(static_cast<std::size_t>(H) * S, 0.0);
    std::copy(mdp.initial_dist().begin(), mdp.initial_dist().end(), d.begin());
    std::vector<double> row_mass(mdp.num_rows());
    std::vector<double> probs(A);
    for (int h = 0; h + 1 < H; ++h) {
        std::fill(row_mass.begin(), row_mass.end(), 0.0);
        const double* dh = d.data() + static_cast<std::size_t>(h) * S;
        for (int s = 0; s < S; ++s) {
            if (dh[s] == 0.0) continue;
            if (policy.is_det()) {
                row_mass[mdp.row_id(h, s, policy.det().action(h, s))] += dh[s];
            } else {
                policy.action_probs(h, s, probs);
                for (int a = 0; a < A; ++a)
                    if (probs[a] != 0.0) row_mass[mdp.row_id(h, s, a)] += dh[s] * probs[a];
            }
        }
        double* dn = d.data() + static_cast<std::size_t>(h + 1) * S;
        for (int r = 0; r < mdp.num_rows(); ++r) {
            if (row_mass[r] == 0.0) continue;
            const auto row = mdp.row(r);
            for (int sp = 0; sp < S; ++sp) dn[sp] += row_mass[r] * row[sp];
        }
    }
    return d;
}

} // namespace ilbench

#pragma once

#include <vector>

#include "ilbench/mdp.hpp"
#include "ilbench/policy.hpp"

namespace ilbench {

/// State-value and action-value tables from backward recursion.
/// v[h*S + s] and q[(h*S + s)*A + a] for h in [0, H).
struct ValueFunctions {
    std::vector<double> v;
    std::vector<double> q;
};

/// J(pi) = E[sum of rewards] by backward dynamic programming. First-step
/// mixtures evaluate as the weighted mean of member returns.
double exact_return(const TabularMdp& mdp, const Policy& policy);

/// Full (V, Q) tables; Markovian policies only.
ValueFunctions value_functions(const TabularMdp& mdp, const Policy& policy);

/// Smallest mu such that Q_h(s,a) >= V_h(s) - mu everywhere under the
/// expert, i.e. max(V - Q) clamped at zero. Streams over (h, s, a) without
/// materializing Q.
double recoverability_mu(const TabularMdp& mdp, const Policy& expert);

/// Per-step state marginals d_h(s) by forward DP; row h sums to 1 within
/// 1e-10. Markovian policies only. Returns H*S values, row-major in h.
std::vector<double> visitation_distribution(const TabularMdp& mdp, const Policy& policy);

} // namespace ilbench

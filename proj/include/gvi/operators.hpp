#pragma once

#include <utility>

#include "gvi/mdp.hpp"

namespace gvi {

/// Per-state KL(p1(.|s) || p2(.|s)). Throws AbsoluteContinuityViolation when
/// p1 has support (above the probability floor) where p2 has none.
ValueVector kl_divergence(const Policy& p1, const Policy& p2);

/// Per-state Shannon entropy H(p) in [0, ln num_actions].
ValueVector entropy(const Policy& p);

/// Per-state value of <pi,q> - lambda*KL(pi||baseline) + tau*H(pi).
ValueVector regularized_objective(const Policy& pi, const QFunction& q,
                                  const Policy& baseline, double lambda_kl,
                                  double tau_entropy);

/// argmax_pi of the regularized objective; closed form is the baseline-weighted
/// softmax pi ~ baseline^(lambda/(lambda+tau)) exp(q/(lambda+tau)), computed in
/// log space with per-state max subtraction.
Policy regularized_greedy(const QFunction& q, const Policy& baseline,
                          double lambda_kl, double tau_entropy);

/// Per-state maximum of the regularized objective:
/// (lambda+tau) ln <1, baseline^(lambda/(lambda+tau)) exp(q/(lambda+tau))>.
ValueVector regularized_maximum(const QFunction& q, const Policy& baseline,
                                double lambda_kl, double tau_entropy);

/// One application of the regularized Bellman operator
/// r + gamma P (<pi,q> - lambda*KL(pi||baseline) + tau*H(pi)).
QFunction regularized_bellman(const QFunction& q, const Policy& pi,
                              const Policy& baseline, double lambda_kl,
                              double tau_entropy, const TabularMdp& mdp);

/// Exact fixed point q_pi of the unregularized evaluation operator,
/// via a direct linear solve for the state values.
QFunction evaluate_policy_exact(const Policy& pi, const TabularMdp& mdp);

/// Unregularized value iteration to residual ||Tq - q||_inf <= tol, plus the
/// deterministic greedy policy (ties broken toward the lowest action index).
std::pair<QFunction, Policy> solve_optimal(const TabularMdp& mdp, double tol,
                                           int max_iters = 1000000);

}  // namespace gvi

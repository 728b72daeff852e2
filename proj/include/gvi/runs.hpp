#pragma once

#include <cstdint>
#include <utility>

#include "gvi/error_model.hpp"
#include "gvi/mdp.hpp"
#include "gvi/schedule.hpp"
#include "gvi/trace.hpp"

namespace gvi {

struct RunOptions {
    bool record_policies = false;
    bool record_qs = false;
    double solve_tol = 1e-13;       // tolerance for the q* reference solve
    double log_policy_floor = -50.0;  // ln pi clip in the implicit/stable forms
};

/// Constant-coefficient mirror-descent value iteration:
/// pi_{k+1} = G^lambda_{pi_k}(q_k), q_{k+1} = T^lambda_{pi_{k+1}|pi_k} q_k + eps_{k+1}.
IterationTrace mdvi_run(const TabularMdp& mdp, double lambda_const,
                        const ErrorModel& error_model, int iters,
                        std::uint64_t seed, const RunOptions& opts = {});

/// Dynamic-coefficient iteration with
/// lambda_k = max(alpha1*||eps_k||_inf, alpha2*lambda_{k-1}).
IterationTrace gvi_explicit_run(const TabularMdp& mdp,
                                const CoefficientSchedule& schedule,
                                const ErrorModel& error_model, int iters,
                                std::uint64_t seed, const RunOptions& opts = {});

/// Numerically stable reformulation operating on q / lambda units; errors are
/// injected as eps/lambda_{k+1} so the run tracks the explicit iteration under
/// the change of variable q' = lambda(q - ln pi).
IterationTrace gvi_stable_run(const TabularMdp& mdp,
                              const CoefficientSchedule& schedule,
                              const ErrorModel& error_model, int iters,
                              std::uint64_t seed, const RunOptions& opts = {});

/// Averaged iteration: pi_{k+1} = G^{0,1/Z_k}(h_k), the 1/eta_k-KL Bellman
/// step on q, and h_{k+1} = (Z_k/Z_{k+1}) h_k + (eta_{k+1}/Z_{k+1}) q_{k+1}.
IterationTrace averaged_iteration_run(const TabularMdp& mdp,
                                      const CoefficientSchedule& schedule,
                                      const ErrorModel& error_model, int iters,
                                      std::uint64_t seed,
                                      const RunOptions& opts = {});

/// One step of the implicit-KL scheme with constant lambda:
/// pi = softmax(q/lambda), q' = lambda*ln pi + r + gamma P <pi, q - lambda*ln pi>.
std::pair<Policy, QFunction> munchausen_step(const QFunction& q,
                                             double lambda_const,
                                             const TabularMdp& mdp,
                                             double log_floor = -50.0);

/// One step of the stable form: pi = softmax(q),
/// q' = ln pi + r/lambda_k1 + (lambda_k/lambda_k1) gamma P <pi, q - ln pi>.
std::pair<Policy, QFunction> gvi_stable_step(const QFunction& q, double lambda_k,
                                             double lambda_k1,
                                             const TabularMdp& mdp,
                                             double log_floor = -50.0);

/// Row-wise geometric mixture prev^(1-zeta) * target^zeta, renormalized.
Policy geometric_interpolation(const Policy& prev, const Policy& target,
                               double zeta);

}  // namespace gvi

#include "gvi/runs.hpp"

#include <cmath>

#include "gvi/operators.hpp"

namespace gvi {

namespace {

Rng error_stream(std::uint64_t seed, const ErrorModel& model) {
    return Rng::derive(seed ^ (model.rng_seed * 0x9E3779B97F4A7C15ULL),
                       0x6572726F72ULL);
}

double optimality_gap(const QFunction& q_star, const Policy& pi,
                      const TabularMdp& mdp) {
    return (q_star.values - evaluate_policy_exact(pi, mdp).values)
        .cwiseAbs()
        .maxCoeff();
}

void record_step(IterationTrace& trace, const RunOptions& opts, double lambda,
                 Eigen::MatrixXd eps, double gap, const QFunction& backup,
                 const QFunction& q, const Policy& pi) {
    trace.lambdas.push_back(lambda);
    trace.gaps.push_back(gap);
    trace.q_norms.push_back(q.values.cwiseAbs().maxCoeff());
    trace.backup_norms.push_back(backup.values.cwiseAbs().maxCoeff());
    trace.errors.push(std::move(eps));
    if (opts.record_policies) trace.policies.push_back(pi);
    if (opts.record_qs) trace.qs.push_back(q);
}

/// Shared engine for the explicit schemes; `rule(err_norm, lambda_prev)`
/// yields lambda_k for k >= 1 (lambda_0 is always lambda0). The constant and
/// dynamic schemes run the identical code path so the alpha1=0, alpha2=1
/// reduction is exact.
template <typename LambdaRule>
IterationTrace explicit_engine(const TabularMdp& mdp, double lambda0,
                               LambdaRule rule, const ErrorModel& model,
                               int iters, std::uint64_t seed,
                               const RunOptions& opts, const char* scheme) {
    if (iters < 1) throw GviError("iters must be >= 1");
    if (!(lambda0 > 0.0)) throw GviError("lambda must be positive");
    const int S = mdp.num_states(), A = mdp.num_actions();
    auto [q_star, pi_star] = solve_optimal(mdp, opts.solve_tol);

    IterationTrace trace;
    trace.scheme = scheme;
    trace.gamma = mdp.gamma();
    trace.num_actions = A;

    Rng err_rng = error_stream(seed, model);
    Policy pi = Policy::uniform(S, A);
    QFunction q = QFunction::zeros(S, A);
    trace.q0_norm = 0.0;
    double lambda_prev = lambda0;
    double last_err_norm = 0.0;

    for (int k = 0; k < iters; ++k) {
        const double lambda_k =
            k == 0 ? lambda0 : rule(last_err_norm, lambda_prev);
        Policy pi_next = regularized_greedy(q, pi, lambda_k, 0.0);
        QFunction backup =
            regularized_bellman(q, pi_next, pi, lambda_k, 0.0, mdp);
        Eigen::MatrixXd eps = inject_error(model, k + 1, S, A, err_rng);
        q.values = backup.values + eps;
        const double gap = optimality_gap(q_star, pi_next, mdp);
        record_step(trace, opts, lambda_k, std::move(eps), gap, backup, q,
                    pi_next);
        last_err_norm = trace.errors.norms.back();
        lambda_prev = lambda_k;
        pi = std::move(pi_next);
    }
    return trace;
}

}  // namespace

double update_lambda_tabular(double err_norm, double lambda_prev, double alpha1,
                             double alpha2) {
    if (err_norm < 0.0) throw GviError("error norm must be nonnegative");
    if (!(lambda_prev > 0.0)) throw GviError("lambda_prev must be positive");
    const double next = std::max(alpha1 * err_norm, alpha2 * lambda_prev);
    if (!(next > 0.0)) throw GviError("lambda rule produced a nonpositive value");
    return next;
}

IterationTrace mdvi_run(const TabularMdp& mdp, double lambda_const,
                        const ErrorModel& error_model, int iters,
                        std::uint64_t seed, const RunOptions& opts) {
    return explicit_engine(
        mdp, lambda_const,
        [lambda_const](double, double) { return lambda_const; }, error_model,
        iters, seed, opts, "mdvi");
}

IterationTrace gvi_explicit_run(const TabularMdp& mdp,
                                const CoefficientSchedule& schedule,
                                const ErrorModel& error_model, int iters,
                                std::uint64_t seed, const RunOptions& opts) {
    schedule.validate();
    const double a1 = schedule.alpha1, a2 = schedule.alpha2;
    return explicit_engine(
        mdp, schedule.lambda_init,
        [a1, a2](double err_norm, double lambda_prev) {
            return update_lambda_tabular(err_norm, lambda_prev, a1, a2);
        },
        error_model, iters, seed, opts, "gvi_explicit");
}

std::pair<Policy, QFunction> munchausen_step(const QFunction& q,
                                             double lambda_const,
                                             const TabularMdp& mdp,
                                             double log_floor) {
    if (!(lambda_const > 0.0)) throw GviError("lambda must be positive");
    Policy pi = Policy::from_log_weights(q.values / lambda_const);
    // Additive log-policy reward term is clipped; the expectation term keeps
    // the exact logs so it stays the softmax value.
    Eigen::MatrixXd log_pi_add = pi.log_probs().cwiseMax(log_floor);
    Eigen::VectorXd inner =
        (pi.probs().array() *
         (q.values - lambda_const * pi.log_probs()).array())
            .rowwise()
            .sum();
    QFunction next{lambda_const * log_pi_add + mdp.reward() +
                   mdp.gamma() * mdp.apply_transition(inner)};
    return {std::move(pi), std::move(next)};
}

std::pair<Policy, QFunction> gvi_stable_step(const QFunction& q, double lambda_k,
                                             double lambda_k1,
                                             const TabularMdp& mdp,
                                             double log_floor) {
    if (!(lambda_k > 0.0) || !(lambda_k1 > 0.0))
        throw GviError("lambda values must be positive");
    Policy pi = Policy::from_log_weights(q.values);
    Eigen::MatrixXd log_pi_add = pi.log_probs().cwiseMax(log_floor);
    Eigen::VectorXd inner =
        (pi.probs().array() * (q.values - pi.log_probs()).array())
            .rowwise()
            .sum();
    QFunction next{log_pi_add + mdp.reward() / lambda_k1 +
                   (lambda_k / lambda_k1) * mdp.gamma() *
                       mdp.apply_transition(inner)};
    return {std::move(pi), std::move(next)};
}

IterationTrace gvi_stable_run(const TabularMdp& mdp,
                              const CoefficientSchedule& schedule,
                              const ErrorModel& error_model, int iters,
                              std::uint64_t seed, const RunOptions& opts) {
    schedule.validate();
    if (iters < 1) throw GviError("iters must be >= 1");
    const int S = mdp.num_states(), A = mdp.num_actions();
    auto [q_star, pi_star] = solve_optimal(mdp, opts.solve_tol);

    IterationTrace trace;
    trace.scheme = "gvi_stable";
    trace.gamma = mdp.gamma();
    trace.num_actions = A;

    Rng err_rng = error_stream(seed, error_model);
    // q_0 = ln pi_0 puts the transformed iterate lambda(q - ln pi) at zero,
    // matching the explicit scheme's q_0 = 0.
    QFunction q{Eigen::MatrixXd::Constant(S, A, -std::log(double(A)))};
    trace.q0_norm = 0.0;
    double lambda_k = schedule.lambda_init;

    for (int k = 0; k < iters; ++k) {
        Eigen::MatrixXd eps = inject_error(error_model, k + 1, S, A, err_rng);
        const double err_norm =
            eps.size() == 0 ? 0.0 : eps.cwiseAbs().maxCoeff();
        const double lambda_next = update_lambda_tabular(
            err_norm, lambda_k, schedule.alpha1, schedule.alpha2);
        auto [pi_next, backup] =
            gvi_stable_step(q, lambda_k, lambda_next, mdp, opts.log_policy_floor);
        q.values = backup.values + eps / lambda_next;
        // Norms are recorded in the explicit scheme's units via the change of
        // variable, so bound analysis applies to this trace unchanged.
        QFunction transformed{lambda_next * (q.values - pi_next.log_probs())};
        QFunction transformed_backup{transformed.values - eps};
        const double gap = optimality_gap(q_star, pi_next, mdp);
        record_step(trace, opts, lambda_k, std::move(eps), gap,
                    transformed_backup, transformed, pi_next);
        if (opts.record_qs) trace.transformed_qs.push_back(transformed);
        lambda_k = lambda_next;
    }
    return trace;
}

IterationTrace averaged_iteration_run(const TabularMdp& mdp,
                                      const CoefficientSchedule& schedule,
                                      const ErrorModel& error_model, int iters,
                                      std::uint64_t seed,
                                      const RunOptions& opts) {
    schedule.validate();
    if (iters < 1) throw GviError("iters must be >= 1");
    const int S = mdp.num_states(), A = mdp.num_actions();
    auto [q_star, pi_star] = solve_optimal(mdp, opts.solve_tol);

    IterationTrace trace;
    trace.scheme = "averaged";
    trace.gamma = mdp.gamma();
    trace.num_actions = A;

    Rng err_rng = error_stream(seed, error_model);
    Policy pi = Policy::uniform(S, A);
    const Policy uniform = Policy::uniform(S, A);
    QFunction q = QFunction::zeros(S, A);
    QFunction h = q;  // h_0 = q_0
    trace.q0_norm = 0.0;
    double lambda_k = schedule.lambda_init;
    double z = 1.0 / lambda_k;  // Z_0 = eta_0

    for (int k = 0; k < iters; ++k) {
        Policy pi_next = regularized_greedy(h, uniform, 0.0, 1.0 / z);
        QFunction backup =
            regularized_bellman(q, pi_next, pi, lambda_k, 0.0, mdp);
        Eigen::MatrixXd eps = inject_error(error_model, k + 1, S, A, err_rng);
        q.values = backup.values + eps;
        const double err_norm =
            eps.size() == 0 ? 0.0 : eps.cwiseAbs().maxCoeff();
        const double lambda_next = update_lambda_tabular(
            err_norm, lambda_k, schedule.alpha1, schedule.alpha2);
        const double eta_next = 1.0 / lambda_next;
        const double z_next = z + eta_next;
        h.values = (z / z_next) * h.values + (eta_next / z_next) * q.values;
        const double gap = optimality_gap(q_star, pi_next, mdp);
        record_step(trace, opts, lambda_k, std::move(eps), gap, backup, q,
                    pi_next);
        if (opts.record_qs) trace.averaged_hs.push_back(h);
        pi = std::move(pi_next);
        lambda_k = lambda_next;
        z = z_next;
    }
    return trace;
}

Policy geometric_interpolation(const Policy& prev, const Policy& target,
                               double zeta) {
    if (prev.num_states() != target.num_states() ||
        prev.num_actions() != target.num_actions())
        throw ShapeMismatch("policy shape mismatch");
    if (!(zeta > 0.0 && zeta <= 1.0)) throw GviError("zeta must lie in (0,1]");
    if (zeta == 1.0) return target;
    for (int s = 0; s < prev.num_states(); ++s)
        for (int a = 0; a < prev.num_actions(); ++a)
            if (target.probs()(s, a) > kProbFloor &&
                prev.probs()(s, a) <= kProbFloor)
                throw AbsoluteContinuityViolation(
                    "target has support outside the previous policy");
    return Policy::from_log_weights((1.0 - zeta) * prev.log_probs() +
                                    zeta * target.log_probs());
}

}  // namespace gvi

#include "gvi/operators.hpp"

#include <cmath>
#include <sstream>

namespace gvi {

namespace {

void check_same_shape(const Policy& p1, const Policy& p2) {
    if (p1.num_states() != p2.num_states() || p1.num_actions() != p2.num_actions())
        throw ShapeMismatch("policy shape mismatch");
}

void check_coefficients(double lambda_kl, double tau_entropy) {
    if (lambda_kl < 0.0 || tau_entropy < 0.0)
        throw GviError("regularization coefficients must be nonnegative");
    if (lambda_kl + tau_entropy <= 0.0)
        throw DegenerateTemperature(
            "lambda + tau must be positive (pure argmax is solve_optimal)");
}

}  // namespace

ValueVector kl_divergence(const Policy& p1, const Policy& p2) {
    check_same_shape(p1, p2);
    for (int s = 0; s < p1.num_states(); ++s)
        for (int a = 0; a < p1.num_actions(); ++a)
            if (p1.probs()(s, a) > kProbFloor && p2.probs()(s, a) <= kProbFloor) {
                std::ostringstream msg;
                msg << "p1 has support at (s=" << s << ", a=" << a
                    << ") where p2 has none";
                throw AbsoluteContinuityViolation(msg.str());
            }
    Eigen::VectorXd kl =
        (p1.probs().array() * (p1.log_probs() - p2.log_probs()).array())
            .rowwise()
            .sum();
    // Entries with p1 ~ 0 contribute 0; clamp fp negatives of order -1e-16.
    return ValueVector{kl.cwiseMax(0.0)};
}

ValueVector entropy(const Policy& p) {
    Eigen::VectorXd h =
        -(p.probs().array() * p.log_probs().array()).rowwise().sum();
    return ValueVector{h.cwiseMax(0.0)};
}

ValueVector regularized_objective(const Policy& pi, const QFunction& q,
                                  const Policy& baseline, double lambda_kl,
                                  double tau_entropy) {
    Eigen::VectorXd value =
        (pi.probs().array() * q.values.array()).rowwise().sum();
    if (lambda_kl != 0.0)
        value -= lambda_kl * kl_divergence(pi, baseline).values;
    if (tau_entropy != 0.0) value += tau_entropy * entropy(pi).values;
    return ValueVector{value};
}

Policy regularized_greedy(const QFunction& q, const Policy& baseline,
                          double lambda_kl, double tau_entropy) {
    check_coefficients(lambda_kl, tau_entropy);
    if (q.values.rows() != baseline.num_states() ||
        q.values.cols() != baseline.num_actions())
        throw ShapeMismatch("q/baseline shape mismatch");
    const double temp = lambda_kl + tau_entropy;
    const double mix = lambda_kl / temp;
    Eigen::MatrixXd log_weights =
        (mix * baseline.log_probs() + q.values / temp);
    return Policy::from_log_weights(log_weights);
}

ValueVector regularized_maximum(const QFunction& q, const Policy& baseline,
                                double lambda_kl, double tau_entropy) {
    check_coefficients(lambda_kl, tau_entropy);
    const double temp = lambda_kl + tau_entropy;
    const double mix = lambda_kl / temp;
    Eigen::MatrixXd logits = mix * baseline.log_probs() + q.values / temp;
    Eigen::VectorXd out(logits.rows());
    for (Eigen::Index s = 0; s < logits.rows(); ++s) {
        const double row_max = logits.row(s).maxCoeff();
        out(s) = temp * (row_max +
                         std::log((logits.row(s).array() - row_max).exp().sum()));
    }
    return ValueVector{out};
}

QFunction regularized_bellman(const QFunction& q, const Policy& pi,
                              const Policy& baseline, double lambda_kl,
                              double tau_entropy, const TabularMdp& mdp) {
    Eigen::VectorXd backup =
        regularized_objective(pi, q, baseline, lambda_kl, tau_entropy).values;
    return QFunction{mdp.reward() + mdp.gamma() * mdp.apply_transition(backup)};
}

QFunction evaluate_policy_exact(const Policy& pi, const TabularMdp& mdp) {
    const int n = mdp.num_states();
    Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(n, n) - mdp.gamma() * mdp.policy_kernel(pi);
    Eigen::VectorXd reward_pi =
        (pi.probs().array() * mdp.reward().array()).rowwise().sum();
    Eigen::VectorXd v = system.partialPivLu().solve(reward_pi);
    return QFunction{mdp.reward() + mdp.gamma() * mdp.apply_transition(v)};
}

std::pair<QFunction, Policy> solve_optimal(const TabularMdp& mdp, double tol,
                                           int max_iters) {
    if (!(tol > 0.0)) throw GviError("tolerance must be positive");
    QFunction q = QFunction::zeros(mdp.num_states(), mdp.num_actions());
    Eigen::VectorXd v(mdp.num_states());
    for (int iter = 0; iter < max_iters; ++iter) {
        v = q.values.rowwise().maxCoeff();
        Eigen::MatrixXd next = mdp.reward() + mdp.gamma() * mdp.apply_transition(v);
        const double residual = (next - q.values).cwiseAbs().maxCoeff();
        q.values = std::move(next);
        if (residual <= tol) {
            std::vector<int> greedy(mdp.num_states(), 0);
            for (int s = 0; s < mdp.num_states(); ++s) {
                int best = 0;
                for (int a = 1; a < mdp.num_actions(); ++a)
                    if (q.values(s, a) > q.values(s, best)) best = a;
                greedy[s] = best;
            }
            return {q, Policy::deterministic(mdp.num_states(), mdp.num_actions(),
                                             greedy)};
        }
    }
    throw NonConvergence("value iteration did not reach tolerance");
}

}  // namespace gvi

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gvi/errors.hpp"

namespace gvi {

/// Probability entries at or below this are treated as zero support.
inline constexpr double kProbFloor = 1e-12;

/// Log-probabilities are clamped here (ln 1e-300) so near-deterministic
/// policies keep finite logs and support can recover after large updates.
inline const double kLogFloor = -690.77552789821368;  // std::log(1e-300)

/// State-action value table, rows = states, cols = actions.
struct QFunction {
    Eigen::MatrixXd values;

    int num_states() const { return static_cast<int>(values.rows()); }
    int num_actions() const { return static_cast<int>(values.cols()); }

    static QFunction zeros(int num_states, int num_actions) {
        return QFunction{Eigen::MatrixXd::Zero(num_states, num_actions)};
    }
};

/// Per-state scalar quantity (values of <pi,q>, KL, entropy, ...).
struct ValueVector {
    Eigen::VectorXd values;
};

/// Row-stochastic policy table with a consistently maintained log table.
class Policy {
public:
    static Policy uniform(int num_states, int num_actions);
    /// Validates row sums (1e-10) and nonnegativity; logs are clamped at the floor.
    static Policy from_probs(const Eigen::MatrixXd& probs);
    /// Normalizes unnormalized per-row log weights via logsumexp.
    static Policy from_log_weights(const Eigen::MatrixXd& log_weights);
    static Policy deterministic(int num_states, int num_actions,
                                const std::vector<int>& actions);

    const Eigen::MatrixXd& probs() const { return probs_; }
    const Eigen::MatrixXd& log_probs() const { return log_probs_; }
    int num_states() const { return static_cast<int>(probs_.rows()); }
    int num_actions() const { return static_cast<int>(probs_.cols()); }

private:
    Policy(Eigen::MatrixXd probs, Eigen::MatrixXd log_probs)
        : probs_(std::move(probs)), log_probs_(std::move(log_probs)) {}

    Eigen::MatrixXd probs_;
    Eigen::MatrixXd log_probs_;
};

/// Finite discounted MDP: transition kernel, reward table, discount,
/// initial state distribution. Immutable once constructed; the constructor
/// validates stochasticity of every transition row.
class TabularMdp {
public:
    /// transition[a] is the S x S matrix with row s giving P(. | s, a).
    TabularMdp(std::vector<Eigen::MatrixXd> transition, Eigen::MatrixXd reward,
               double gamma, Eigen::VectorXd initial_dist);

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    double gamma() const { return gamma_; }
    double r_max() const { return r_max_; }
    const Eigen::MatrixXd& reward() const { return reward_; }
    const Eigen::VectorXd& initial_dist() const { return initial_dist_; }
    const Eigen::MatrixXd& transition(int action) const { return transition_[action]; }
    const std::vector<Eigen::MatrixXd>& transition() const { return transition_; }

    /// (Pv)(s,a) = sum_s' P(s'|s,a) v(s').
    Eigen::MatrixXd apply_transition(const Eigen::VectorXd& v) const;

    /// Policy-induced kernel P_pi(s,s') = sum_a pi(a|s) P(s'|s,a).
    Eigen::MatrixXd policy_kernel(const Policy& pi) const;

private:
    int num_states_;
    int num_actions_;
    std::vector<Eigen::MatrixXd> transition_;
    Eigen::MatrixXd reward_;
    double gamma_;
    double r_max_;
    Eigen::VectorXd initial_dist_;
};

}  // namespace gvi

#include "gvi/mdp.hpp"

#include <cmath>
#include <sstream>

namespace gvi {

namespace {

Eigen::MatrixXd clamped_log(const Eigen::MatrixXd& probs) {
    Eigen::MatrixXd out(probs.rows(), probs.cols());
    for (Eigen::Index s = 0; s < probs.rows(); ++s)
        for (Eigen::Index a = 0; a < probs.cols(); ++a)
            out(s, a) = probs(s, a) > 0.0 ? std::max(std::log(probs(s, a)), kLogFloor)
                                          : kLogFloor;
    return out;
}

}  // namespace

Policy Policy::uniform(int num_states, int num_actions) {
    Eigen::MatrixXd probs =
        Eigen::MatrixXd::Constant(num_states, num_actions, 1.0 / num_actions);
    return Policy(probs, clamped_log(probs));
}

Policy Policy::from_probs(const Eigen::MatrixXd& probs) {
    for (Eigen::Index s = 0; s < probs.rows(); ++s) {
        const double row_sum = probs.row(s).sum();
        if (std::abs(row_sum - 1.0) > 1e-10) {
            std::ostringstream msg;
            msg << "policy row " << s << " sums to " << row_sum;
            throw GviError(msg.str());
        }
        if (probs.row(s).minCoeff() < 0.0)
            throw GviError("negative policy probability");
    }
    return Policy(probs, clamped_log(probs));
}

Policy Policy::from_log_weights(const Eigen::MatrixXd& log_weights) {
    Eigen::MatrixXd log_probs(log_weights.rows(), log_weights.cols());
    for (Eigen::Index s = 0; s < log_weights.rows(); ++s) {
        const double row_max = log_weights.row(s).maxCoeff();
        if (!std::isfinite(row_max)) throw GviError("non-finite policy log weight");
        const double lse =
            row_max + std::log((log_weights.row(s).array() - row_max).exp().sum());
        log_probs.row(s) =
            (log_weights.row(s).array() - lse).max(kLogFloor).matrix();
    }
    return Policy(log_probs.array().exp().matrix(), log_probs);
}

Policy Policy::deterministic(int num_states, int num_actions,
                             const std::vector<int>& actions) {
    if (static_cast<int>(actions.size()) != num_states)
        throw ShapeMismatch("deterministic policy needs one action per state");
    Eigen::MatrixXd probs = Eigen::MatrixXd::Zero(num_states, num_actions);
    for (int s = 0; s < num_states; ++s) {
        if (actions[s] < 0 || actions[s] >= num_actions)
            throw InvalidAction("action index out of range");
        probs(s, actions[s]) = 1.0;
    }
    return Policy(probs, clamped_log(probs));
}

TabularMdp::TabularMdp(std::vector<Eigen::MatrixXd> transition,
                       Eigen::MatrixXd reward, double gamma,
                       Eigen::VectorXd initial_dist)
    : num_states_(static_cast<int>(reward.rows())),
      num_actions_(static_cast<int>(reward.cols())),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      gamma_(gamma),
      initial_dist_(std::move(initial_dist)) {
    if (num_states_ < 1 || num_actions_ < 1)
        throw ShapeMismatch("MDP needs at least one state and one action");
    if (static_cast<int>(transition_.size()) != num_actions_)
        throw ShapeMismatch("transition kernel must have one matrix per action");
    for (const auto& p : transition_) {
        if (p.rows() != num_states_ || p.cols() != num_states_)
            throw ShapeMismatch("transition matrix shape mismatch");
        for (Eigen::Index s = 0; s < p.rows(); ++s) {
            if (p.row(s).minCoeff() < 0.0)
                throw GviError("negative transition probability");
            if (std::abs(p.row(s).sum() - 1.0) > 1e-12)
                throw GviError("transition row does not sum to 1");
        }
    }
    if (!(gamma_ > 0.0 && gamma_ < 1.0)) throw GviError("gamma must lie in (0,1)");
    if (initial_dist_.size() != num_states_)
        throw ShapeMismatch("initial distribution size mismatch");
    if (initial_dist_.minCoeff() < 0.0 ||
        std::abs(initial_dist_.sum() - 1.0) > 1e-12)
        throw GviError("initial distribution is not a probability vector");
    if (!reward_.allFinite()) throw GviError("non-finite reward");
    r_max_ = reward_.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd TabularMdp::apply_transition(const Eigen::VectorXd& v) const {
    Eigen::MatrixXd out(num_states_, num_actions_);
    for (int a = 0; a < num_actions_; ++a) out.col(a) = transition_[a] * v;
    return out;
}

Eigen::MatrixXd TabularMdp::policy_kernel(const Policy& pi) const {
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(num_states_, num_states_);
    for (int a = 0; a < num_actions_; ++a)
        kernel += pi.probs().col(a).asDiagonal() * transition_[a];
    return kernel;
}

}  // namespace gvi

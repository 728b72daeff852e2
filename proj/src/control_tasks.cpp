#include "gvi/control_tasks.hpp"

#include <algorithm>
#include <cmath>

#include "gvi/errors.hpp"

namespace gvi {

namespace {
constexpr double kPi = 3.14159265358979323846;

double angle_normalize(double theta) {
    double wrapped = std::fmod(theta + kPi, 2.0 * kPi);
    if (wrapped < 0.0) wrapped += 2.0 * kPi;
    return wrapped - kPi;
}
}  // namespace

ControlTask ControlTask::cartpole() {
    ControlTask t{};
    t.id = TaskId::cartpole;
    t.action_count = 2;
    t.observation_dim = 4;
    t.episode_cap = 500;
    return t;
}

ControlTask ControlTask::discrete_pendulum() {
    ControlTask t{};
    t.id = TaskId::discrete_pendulum;
    t.action_count = 5;
    t.observation_dim = 3;
    t.episode_cap = 200;
    return t;
}

ControlTask ControlTask::from_name(const std::string& name) {
    if (name == "cartpole") return cartpole();
    if (name == "discrete_pendulum") return discrete_pendulum();
    throw ConfigError("unknown task id: " + name);
}

std::string ControlTask::name() const {
    return id == TaskId::cartpole ? "cartpole" : "discrete_pendulum";
}

TaskState task_reset(const ControlTask& task, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, 0x7265736574ULL);
    TaskState state;
    state.t = 0;
    if (task.id == TaskId::cartpole) {
        state.phys.resize(4);
        for (int i = 0; i < 4; ++i) state.phys(i) = rng.uniform(-0.05, 0.05);
    } else {
        state.phys.resize(2);
        state.phys(0) = rng.uniform(-kPi, kPi);
        state.phys(1) = rng.uniform(-1.0, 1.0);
    }
    return state;
}

Eigen::VectorXd observe(const ControlTask& task, const TaskState& state) {
    if (task.id == TaskId::cartpole) return state.phys;
    Eigen::VectorXd obs(3);
    obs << std::cos(state.phys(0)), std::sin(state.phys(0)), state.phys(1);
    return obs;
}

double pendulum_torque(const ControlTask& task, int action) {
    const double lo = -task.max_torque, hi = task.max_torque;
    return lo + (hi - lo) * action / (task.action_count - 1);
}

double pendulum_energy(const ControlTask& task, const TaskState& state) {
    const double m = task.pend_mass, l = task.pend_length, g = task.pend_gravity;
    const double theta = state.phys(0), theta_dot = state.phys(1);
    return m * l * l / 6.0 * theta_dot * theta_dot +
           m * g * l / 2.0 * std::cos(theta);
}

EpisodeStep task_step(const ControlTask& task, TaskState& state, int action) {
    if (action < 0 || action >= task.action_count)
        throw InvalidAction("action out of range");
    EpisodeStep out;
    out.observation = observe(task, state);
    out.action = action;

    if (task.id == TaskId::cartpole) {
        double x = state.phys(0), x_dot = state.phys(1);
        double theta = state.phys(2), theta_dot = state.phys(3);
        const double force = action == 1 ? task.force_mag : -task.force_mag;
        const double cos_theta = std::cos(theta), sin_theta = std::sin(theta);
        const double total_mass = task.cart_mass + task.pole_mass;
        const double pole_mass_length = task.pole_mass * task.half_pole_length;
        const double temp =
            (force + pole_mass_length * theta_dot * theta_dot * sin_theta) /
            total_mass;
        const double theta_acc =
            (task.gravity * sin_theta - cos_theta * temp) /
            (task.half_pole_length *
             (4.0 / 3.0 - task.pole_mass * cos_theta * cos_theta / total_mass));
        const double x_acc = temp - pole_mass_length * theta_acc * cos_theta / total_mass;
        x += task.timestep * x_dot;
        x_dot += task.timestep * x_acc;
        theta += task.timestep * theta_dot;
        theta_dot += task.timestep * theta_acc;
        state.phys << x, x_dot, theta, theta_dot;
        state.t += 1;
        const bool fell = std::abs(x) > task.x_threshold ||
                          std::abs(theta) > task.theta_threshold;
        out.reward = 1.0;
        out.done_flag = fell || state.t >= task.episode_cap;
    } else {
        const double torque = pendulum_torque(task, action);
        const double theta = state.phys(0), theta_dot = state.phys(1);
        const double g = task.pend_gravity, m = task.pend_mass, l = task.pend_length;
        const double cost = angle_normalize(theta) * angle_normalize(theta) +
                            0.1 * theta_dot * theta_dot + 0.001 * torque * torque;
        double new_theta_dot =
            theta_dot + (-3.0 * g / (2.0 * l) * std::sin(theta + kPi) +
                         3.0 / (m * l * l) * torque) *
                            task.pend_dt;
        const double new_theta = theta + new_theta_dot * task.pend_dt;
        new_theta_dot =
            std::clamp(new_theta_dot, -task.max_speed, task.max_speed);
        state.phys << new_theta, new_theta_dot;
        state.t += 1;
        out.reward = -cost;
        out.done_flag = state.t >= task.episode_cap;
    }
    out.next_observation = observe(task, state);
    return out;
}

}  // namespace gvi

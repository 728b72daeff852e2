#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gvi/rng.hpp"

namespace gvi {

enum class TaskId { cartpole, discrete_pendulum };

/// Immutable description of a control task: physics constants, action count,
/// observation dimension, episode cap.
struct ControlTask {
    TaskId id;
    int action_count;
    int observation_dim;
    int episode_cap;

    // cartpole constants
    double gravity = 9.8;
    double cart_mass = 1.0;
    double pole_mass = 0.1;
    double half_pole_length = 0.5;
    double force_mag = 10.0;
    double timestep = 0.02;
    double theta_threshold = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
    double x_threshold = 2.4;

    // pendulum constants
    double pend_gravity = 10.0;
    double pend_mass = 1.0;
    double pend_length = 1.0;
    double pend_dt = 0.05;
    double max_torque = 2.0;
    double max_speed = 8.0;

    static ControlTask cartpole();
    static ControlTask discrete_pendulum();
    static ControlTask from_name(const std::string& name);
    std::string name() const;
};

/// One transition as stored in the replay buffer.
struct EpisodeStep {
    Eigen::VectorXd observation;
    int action = 0;
    double reward = 0.0;
    Eigen::VectorXd next_observation;
    bool done_flag = false;
};

/// Physical state plus the step counter that drives the horizon cap.
struct TaskState {
    Eigen::VectorXd phys;
    int t = 0;
};

/// Draw an initial state from the task's standard initial distribution;
/// deterministic per seed.
TaskState task_reset(const ControlTask& task, std::uint64_t seed);

Eigen::VectorXd observe(const ControlTask& task, const TaskState& state);

/// Advance the physics one timestep; `state` is updated in place and the
/// returned record holds (observation, action, reward, next_observation,
/// done_flag). done_flag is set exactly at termination or at the horizon.
EpisodeStep task_step(const ControlTask& task, TaskState& state, int action);

/// Pendulum torque levels: action_count values evenly spanning
/// [-max_torque, max_torque].
double pendulum_torque(const ControlTask& task, int action);

/// Rod pendulum mechanical energy, for integrator sanity checks.
double pendulum_energy(const ControlTask& task, const TaskState& state);

}  // namespace gvi

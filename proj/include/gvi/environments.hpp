#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gvi/error_model.hpp"
#include "gvi/mdp.hpp"
#include "gvi/rng.hpp"

namespace gvi {

/// Random gridworld maze. A cleared wall_mask means "generate walls randomly
/// at wall_density, rejecting layouts until start and goal connect".
struct MazeSpec {
    int width = 5;
    int height = 5;
    double wall_density = 0.2;
    std::pair<int, int> start_cell{0, 0};       // (row, col)
    std::pair<int, int> goal_cell{4, 4};
    double success_prob = 0.9;
    double slip_prob = 0.1;
    double goal_reward = 1.0;
    int horizon = 25;          // applies to sampled rollouts, not the DP model
    double gamma = 0.9;
    std::uint64_t rng_seed = 0;
    std::vector<std::uint8_t> wall_mask;        // row-major, empty = generate
};

/// Generated maze: the discounted MDP over free cells plus one absorbing
/// terminal state, and the layout needed to render or re-derive it.
struct Maze {
    MazeSpec spec;                  // with wall_mask filled in
    TabularMdp mdp;
    std::vector<int> cell_to_state; // -1 for walls
    int terminal_state;

    int state_of(int row, int col) const;
    /// Walls '#', start 'S', goal 'G', free '.'.
    std::string ascii() const;
};

Maze generate_maze(const MazeSpec& spec);

/// Two-state loop MDP: state 0 self-loops with probability (K-1)/K at zero
/// cost and moves to state 1 with probability 1/K; the move's expected cost
/// K/2 enters as the negative expected per-step reward -1/2, while the
/// uniform(0, K) fluctuation is carried by the paired periodic error model.
std::pair<TabularMdp, ErrorModel> two_state_mdp(int big_k, double gamma = 0.99);

/// Dense random MDP with strictly positive transition kernel; rewards
/// uniform in [-1, 1].
TabularMdp random_mdp(int num_states, int num_actions, double gamma, Rng& rng);

}  // namespace gvi

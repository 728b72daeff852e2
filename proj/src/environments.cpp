#include "gvi/environments.hpp"

#include <algorithm>
#include <queue>

#include "gvi/errors.hpp"

namespace gvi {

namespace {

constexpr int kGenerationRetries = 1000;

// up, down, left, right
constexpr int kRowDelta[4] = {-1, 1, 0, 0};
constexpr int kColDelta[4] = {0, 0, -1, 1};

bool connected(const MazeSpec& spec, const std::vector<std::uint8_t>& walls) {
    const int h = spec.height, w = spec.width;
    auto idx = [w](int r, int c) { return r * w + c; };
    std::vector<std::uint8_t> seen(h * w, 0);
    std::queue<std::pair<int, int>> frontier;
    frontier.push(spec.start_cell);
    seen[idx(spec.start_cell.first, spec.start_cell.second)] = 1;
    while (!frontier.empty()) {
        auto [r, c] = frontier.front();
        frontier.pop();
        if (std::make_pair(r, c) == spec.goal_cell) return true;
        for (int d = 0; d < 4; ++d) {
            const int nr = r + kRowDelta[d], nc = c + kColDelta[d];
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
            if (walls[idx(nr, nc)] || seen[idx(nr, nc)]) continue;
            seen[idx(nr, nc)] = 1;
            frontier.push({nr, nc});
        }
    }
    return false;
}

}  // namespace

int Maze::state_of(int row, int col) const {
    return cell_to_state[row * spec.width + col];
}

std::string Maze::ascii() const {
    std::string out;
    for (int r = 0; r < spec.height; ++r) {
        for (int c = 0; c < spec.width; ++c) {
            if (std::make_pair(r, c) == spec.start_cell)
                out += 'S';
            else if (std::make_pair(r, c) == spec.goal_cell)
                out += 'G';
            else
                out += spec.wall_mask[r * spec.width + c] ? '#' : '.';
        }
        out += '\n';
    }
    return out;
}

Maze generate_maze(const MazeSpec& spec) {
    if (spec.width < 2 || spec.height < 2) throw GviError("maze too small");
    if (std::abs(spec.success_prob + spec.slip_prob - 1.0) > 1e-12)
        throw GviError("success_prob + slip_prob must equal 1");
    const int h = spec.height, w = spec.width;
    auto idx = [w](int r, int c) { return r * w + c; };
    if (spec.start_cell == spec.goal_cell)
        throw GviError("start and goal must differ");
    for (auto cell : {spec.start_cell, spec.goal_cell})
        if (cell.first < 0 || cell.first >= h || cell.second < 0 || cell.second >= w)
            throw GviError("start/goal outside the grid");

    MazeSpec resolved = spec;
    if (resolved.wall_mask.empty()) {
        Rng rng = Rng::derive(spec.rng_seed, 0x6d617a65ULL);  // maze layout stream
        bool ok = false;
        for (int attempt = 0; attempt < kGenerationRetries && !ok; ++attempt) {
            std::vector<std::uint8_t> walls(h * w, 0);
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c)
                    walls[idx(r, c)] = rng.uniform01() < spec.wall_density ? 1 : 0;
            walls[idx(spec.start_cell.first, spec.start_cell.second)] = 0;
            walls[idx(spec.goal_cell.first, spec.goal_cell.second)] = 0;
            if (connected(spec, walls)) {
                resolved.wall_mask = std::move(walls);
                ok = true;
            }
        }
        if (!ok) throw UnreachableGoal("no connected layout found");
    } else {
        if (static_cast<int>(resolved.wall_mask.size()) != h * w)
            throw ShapeMismatch("wall mask size mismatch");
        if (resolved.wall_mask[idx(spec.start_cell.first, spec.start_cell.second)] ||
            resolved.wall_mask[idx(spec.goal_cell.first, spec.goal_cell.second)])
            throw GviError("start/goal cell is a wall");
        if (!connected(spec, resolved.wall_mask))
            throw UnreachableGoal("goal not reachable from start");
    }

    // States: free cells in row-major order, absorbing terminal last.
    std::vector<int> cell_to_state(h * w, -1);
    int num_states = 0;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (!resolved.wall_mask[idx(r, c)]) cell_to_state[idx(r, c)] = num_states++;
    const int terminal = num_states++;
    const int num_actions = 4;

    std::vector<Eigen::MatrixXd> transition(
        num_actions, Eigen::MatrixXd::Zero(num_states, num_states));
    Eigen::MatrixXd reward = Eigen::MatrixXd::Zero(num_states, num_actions);

    const int goal_state =
        cell_to_state[idx(spec.goal_cell.first, spec.goal_cell.second)];
    for (int a = 0; a < num_actions; ++a) {
        transition[a](terminal, terminal) = 1.0;
        transition[a](goal_state, terminal) = 1.0;
        reward(goal_state, a) = spec.goal_reward;
    }

    auto move_target = [&](int r, int c, int dir) {
        const int nr = r + kRowDelta[dir], nc = c + kColDelta[dir];
        if (nr < 0 || nr >= h || nc < 0 || nc >= w || resolved.wall_mask[idx(nr, nc)])
            return cell_to_state[idx(r, c)];  // blocked: stay in place
        return cell_to_state[idx(nr, nc)];
    };

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int s = cell_to_state[idx(r, c)];
            if (s < 0 || s == goal_state) continue;
            for (int a = 0; a < num_actions; ++a) {
                transition[a](s, move_target(r, c, a)) += spec.success_prob;
                for (int d = 0; d < num_actions; ++d) {
                    if (d == a) continue;
                    transition[a](s, move_target(r, c, d)) += spec.slip_prob / 3.0;
                }
            }
        }
    }

    Eigen::VectorXd init = Eigen::VectorXd::Zero(num_states);
    init(cell_to_state[idx(spec.start_cell.first, spec.start_cell.second)]) = 1.0;

    TabularMdp mdp(std::move(transition), std::move(reward), spec.gamma,
                   std::move(init));
    return Maze{std::move(resolved), std::move(mdp), std::move(cell_to_state),
                terminal};
}

std::pair<TabularMdp, ErrorModel> two_state_mdp(int big_k, double gamma) {
    if (big_k < 2) throw GviError("two-state MDP needs K >= 2");
    const double loop_prob = (big_k - 1.0) / big_k;
    std::vector<Eigen::MatrixXd> transition(1, Eigen::MatrixXd::Zero(2, 2));
    transition[0](0, 0) = loop_prob;
    transition[0](0, 1) = 1.0 - loop_prob;
    transition[0](1, 0) = 1.0;
    Eigen::MatrixXd reward(2, 1);
    reward(0, 0) = -0.5;  // (1/K) * expected move cost K/2
    reward(1, 0) = 0.0;
    Eigen::VectorXd init(2);
    init << 1.0, 0.0;
    TabularMdp mdp(std::move(transition), std::move(reward), gamma,
                   std::move(init));
    ErrorModel model = ErrorModel::periodic(big_k, static_cast<double>(big_k));
    return {std::move(mdp), std::move(model)};
}

TabularMdp random_mdp(int num_states, int num_actions, double gamma, Rng& rng) {
    std::vector<Eigen::MatrixXd> transition(
        num_actions, Eigen::MatrixXd(num_states, num_states));
    for (int a = 0; a < num_actions; ++a) {
        for (int s = 0; s < num_states; ++s) {
            double total = 0.0;
            for (int sp = 0; sp < num_states; ++sp) {
                const double weight = 0.05 + rng.uniform01();
                transition[a](s, sp) = weight;
                total += weight;
            }
            transition[a].row(s) /= total;
        }
    }
    Eigen::MatrixXd reward(num_states, num_actions);
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a)
            reward(s, a) = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd init =
        Eigen::VectorXd::Constant(num_states, 1.0 / num_states);
    return TabularMdp(std::move(transition), std::move(reward), gamma,
                      std::move(init));
}

}  // namespace gvi

#include "gvi/mdp_json.hpp"

#include <fstream>

namespace gvi {

nlohmann::json mdp_to_json(const TabularMdp& mdp) {
    nlohmann::json j;
    j["num_states"] = mdp.num_states();
    j["num_actions"] = mdp.num_actions();
    j["gamma"] = mdp.gamma();
    auto transition = nlohmann::json::array();
    for (int s = 0; s < mdp.num_states(); ++s) {
        auto per_action = nlohmann::json::array();
        for (int a = 0; a < mdp.num_actions(); ++a) {
            auto row = nlohmann::json::array();
            for (int sp = 0; sp < mdp.num_states(); ++sp)
                row.push_back(mdp.transition(a)(s, sp));
            per_action.push_back(std::move(row));
        }
        transition.push_back(std::move(per_action));
    }
    j["transition"] = std::move(transition);
    auto reward = nlohmann::json::array();
    for (int s = 0; s < mdp.num_states(); ++s) {
        auto row = nlohmann::json::array();
        for (int a = 0; a < mdp.num_actions(); ++a) row.push_back(mdp.reward()(s, a));
        reward.push_back(std::move(row));
    }
    j["reward"] = std::move(reward);
    auto init = nlohmann::json::array();
    for (int s = 0; s < mdp.num_states(); ++s) init.push_back(mdp.initial_dist()(s));
    j["initial_dist"] = std::move(init);
    return j;
}

TabularMdp mdp_from_json(const nlohmann::json& j) {
    const int num_states = j.at("num_states").get<int>();
    const int num_actions = j.at("num_actions").get<int>();
    const double gamma = j.at("gamma").get<double>();
    std::vector<Eigen::MatrixXd> transition(
        num_actions, Eigen::MatrixXd(num_states, num_states));
    const auto& tj = j.at("transition");
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a)
            for (int sp = 0; sp < num_states; ++sp)
                transition[a](s, sp) = tj.at(s).at(a).at(sp).get<double>();
    Eigen::MatrixXd reward(num_states, num_actions);
    const auto& rj = j.at("reward");
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a)
            reward(s, a) = rj.at(s).at(a).get<double>();
    Eigen::VectorXd init(num_states);
    const auto& ij = j.at("initial_dist");
    for (int s = 0; s < num_states; ++s) init(s) = ij.at(s).get<double>();
    return TabularMdp(std::move(transition), std::move(reward), gamma,
                      std::move(init));
}

void save_mdp(const TabularMdp& mdp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GviError("cannot open " + path + " for writing");
    out << mdp_to_json(mdp).dump(2) << "\n";
}

TabularMdp load_mdp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GviError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return mdp_from_json(j);
}

}  // namespace gvi

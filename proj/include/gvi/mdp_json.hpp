#pragma once

#include <string>

#include <json.hpp>

#include "gvi/mdp.hpp"

namespace gvi {

/// Schema: {num_states, num_actions, gamma, transition [s][a][s'],
/// reward [s][a], initial_dist [s]}. Doubles round-trip exactly.
nlohmann::json mdp_to_json(const TabularMdp& mdp);
TabularMdp mdp_from_json(const nlohmann::json& j);

void save_mdp(const TabularMdp& mdp, const std::string& path);
TabularMdp load_mdp(const std::string& path);

}  // namespace gvi

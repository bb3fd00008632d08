#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nrhf/instance.hpp"

namespace nrhf {

struct Range
{
    double min = 0.0;
    double max = 0.0;
};

// Random 4-connected grid problem. Values are drawn uniformly from the lattice
// {min, min + value_step, ..., <= max}; value_step == 0 draws continuously.
// Default ranges were chosen so that most 15x15 / 10-agent instances stay
// solvable with both noise zones and recharging in play.
struct GridSpec
{
    int rows = 5;
    int cols = 5;
    double noise_density = 0.25;  // fraction of undirected adjacencies where the generator is banned
    Range travel_cost{1.0, 10.0};
    Range energy_cost{1.0, 4.0};
    Range recharge{2.0, 6.0};
    Range battery_init{4.0, 10.0};
    Range battery_max{10.0, 14.0};
    Range fuel_init{20.0, 60.0};
    double value_step = 1.0;
    int epsilon = 1;
    std::uint64_t seed = 1;

    std::vector<std::string> problems() const;
};

Graph build_grid(const GridSpec& spec);

// Distinct starts, goal != own start, all start times 0. Deterministic in (spec, n_agents).
Instance generate_instance(const GridSpec& spec, int n_agents);

inline NodeId grid_node(const GridSpec& spec, int row, int col) { return row * spec.cols + col; }

}  // namespace nrhf

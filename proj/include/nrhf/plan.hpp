#pragma once

#include <string>
#include <vector>

#include "nrhf/instance.hpp"

namespace nrhf {

// One agent's route: visited nodes, generator decision per traversed edge,
// arrival time per node, and the resources left at the goal.
struct Plan
{
    std::vector<NodeId> path;
    std::vector<bool> gen_pattern;   // gen_pattern[k] covers path[k] -> path[k+1]
    std::vector<int> arrival_times;  // arrival_times[0] is the agent's start time
    double cost = 0.0;
    double final_battery = 0.0;
    double final_fuel = 0.0;

    int edge_count() const { return static_cast<int>(gen_pattern.size()); }

    bool operator==(const Plan&) const = default;
};

inline constexpr double kReplayTolerance = 1e-9;

// Checks the structural invariants of a plan for `agent` and replays the
// resource recurrence edge by edge. Returns one message per problem.
std::vector<std::string> check_plan(const Instance& instance, int agent, const Plan& plan);

}  // namespace nrhf

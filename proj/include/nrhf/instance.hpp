#pragma once

#include <string>
#include <vector>

#include "nrhf/graph.hpp"

namespace nrhf {

struct AgentSpec
{
    NodeId start = kNoNode;
    NodeId goal = kNoNode;
    double battery_init = 0.0;
    double battery_max = 0.0;
    double fuel_init = 0.0;
    int start_time = 0;

    bool operator==(const AgentSpec&) const = default;
};

// The complete problem statement: graph, fleet, and conflict threshold.
struct Instance
{
    Graph graph;
    std::vector<AgentSpec> agents;
    int epsilon = 1;  // two agents conflict when their times differ by less than this

    int agent_count() const { return static_cast<int>(agents.size()); }

    bool operator==(const Instance&) const = default;
};

// Returns one message per broken invariant; empty means valid.
std::vector<std::string> validate(const Instance& instance);

// Throws std::invalid_argument listing every violation.
void require_valid(const Instance& instance);

}  // namespace nrhf

#include "nrhf/plan.hpp"

#include <cmath>
#include <set>

#include "nrhf/labeling.hpp"

namespace nrhf {

std::vector<std::string> check_plan(const Instance& instance, int agent, const Plan& plan)
{
    std::vector<std::string> out;
    const AgentSpec& spec = instance.agents.at(agent);
    const Graph& graph = instance.graph;

    if (plan.path.empty())
        return {"empty path"};
    if (plan.arrival_times.size() != plan.path.size())
        out.push_back("arrival_times has " + std::to_string(plan.arrival_times.size()) + " entries for " +
                      std::to_string(plan.path.size()) + " nodes");
    if (plan.gen_pattern.size() + 1 != plan.path.size())
        out.push_back("gen_pattern length does not match edge count");
    if (plan.path.front() != spec.start)
        out.push_back("path does not begin at the start node");
    if (plan.path.back() != spec.goal)
        out.push_back("path does not end at the goal node");
    if (!out.empty())
        return out;

    std::set<NodeId> seen;
    for (NodeId v : plan.path)
        if (!seen.insert(v).second)
            out.push_back("node " + std::to_string(v) + " visited twice");

    Label label;
    label.node = spec.start;
    label.time = spec.start_time;
    label.battery = spec.battery_init;
    label.fuel = spec.fuel_init;
    if (plan.arrival_times[0] != spec.start_time)
        out.push_back("arrival time at start differs from the agent's start time");

    for (std::size_t k = 0; k + 1 < plan.path.size(); ++k)
    {
        auto e = graph.find_edge(plan.path[k], plan.path[k + 1]);
        if (!e)
        {
            out.push_back("no edge (" + std::to_string(plan.path[k]) + "," + std::to_string(plan.path[k + 1]) + ")");
            return out;
        }
        const Edge& edge = graph.edge(*e);
        if (plan.gen_pattern[k] && !edge.attr.gen_allowed)
            out.push_back("generator on inside a noise-restricted edge at step " + std::to_string(k));
        auto next = extend(label, edge, plan.gen_pattern[k], spec.battery_max);
        if (!next)
        {
            out.push_back("resource bounds violated at step " + std::to_string(k));
            return out;
        }
        label = *next;
        if (plan.arrival_times[k + 1] != label.time)
            out.push_back("arrival time mismatch at step " + std::to_string(k + 1));
    }

    if (std::abs(label.cost - plan.cost) > kReplayTolerance)
        out.push_back("cost does not replay");
    if (std::abs(label.battery - plan.final_battery) > kReplayTolerance)
        out.push_back("final battery does not replay");
    if (std::abs(label.fuel - plan.final_fuel) > kReplayTolerance)
        out.push_back("final fuel does not replay");
    return out;
}

}  // namespace nrhf

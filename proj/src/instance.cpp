#include "nrhf/instance.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace nrhf {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::string edge_name(const Edge& e)
{
    return "edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
}

}  // namespace

std::vector<std::string> validate(const Instance& instance)
{
    std::vector<std::string> out;
    const Graph& g = instance.graph;

    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : g.edges())
    {
        if (e.from == e.to)
            out.push_back(edge_name(e) + ": self-loop");
        if (!seen.emplace(e.from, e.to).second)
            out.push_back(edge_name(e) + ": duplicate edge");
        if (!finite_nonneg(e.attr.travel_cost))
            out.push_back(edge_name(e) + ": travel_cost must be finite and >= 0");
        if (e.attr.travel_time < 1)
            out.push_back(edge_name(e) + ": travel_time must be >= 1");
        if (!finite_nonneg(e.attr.energy_cost))
            out.push_back(edge_name(e) + ": energy_cost must be finite and >= 0");
        if (!finite_nonneg(e.attr.recharge))
            out.push_back(edge_name(e) + ": recharge must be finite and >= 0");
    }

    if (instance.epsilon < 1)
        out.push_back("epsilon must be a positive integer");
    if (instance.agents.empty())
        out.push_back("instance has no agents");

    std::map<NodeId, int> start_owner;
    for (int k = 0; k < instance.agent_count(); ++k)
    {
        const AgentSpec& a = instance.agents[k];
        const std::string who = "agent " + std::to_string(k);
        if (!g.valid_node(a.start))
            out.push_back(who + ": start node " + std::to_string(a.start) + " out of range");
        if (!g.valid_node(a.goal))
            out.push_back(who + ": goal node " + std::to_string(a.goal) + " out of range");
        if (a.start == a.goal)
            out.push_back(who + ": goal equals start");
        if (!finite_nonneg(a.battery_init))
            out.push_back(who + ": battery_init must be finite and >= 0");
        if (!(std::isfinite(a.battery_max) && a.battery_max > 0.0))
            out.push_back(who + ": battery_max must be finite and > 0");
        if (a.battery_init > a.battery_max)
            out.push_back(who + ": battery_init exceeds battery_max");
        if (!finite_nonneg(a.fuel_init))
            out.push_back(who + ": fuel_init must be finite and >= 0");
        if (a.start_time < 0)
            out.push_back(who + ": start_time must be >= 0");

        auto [it, fresh] = start_owner.emplace(a.start, k);
        if (!fresh)
            out.push_back("agents " + std::to_string(it->second) + " and " + std::to_string(k) +
                          " share start node " + std::to_string(a.start));
    }
    return out;
}

void require_valid(const Instance& instance)
{
    auto problems = validate(instance);
    if (problems.empty())
        return;
    std::string msg = "invalid instance:";
    for (const auto& p : problems)
        msg += "\n  " + p;
    throw std::invalid_argument(msg);
}

}  // namespace nrhf

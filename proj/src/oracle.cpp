#include "nrhf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

namespace nrhf::oracle {

namespace {

using ResourceState = std::pair<double, double>;  // battery, fuel

void check_limits(const Instance& instance, const OracleLimits& limits)
{
    if (instance.graph.node_count() > limits.max_nodes)
        throw OracleRefusal("oracle: graph has " + std::to_string(instance.graph.node_count()) +
                            " nodes, limit is " + std::to_string(limits.max_nodes));
    if (limits.horizon < 0)
        throw OracleRefusal("oracle: negative horizon");
}

// Every (battery, fuel) pair reachable after one more edge, duplicates merged.
std::vector<ResourceState> step_states(const std::vector<ResourceState>& states, const EdgeAttr& attr,
                                       double battery_max)
{
    std::vector<ResourceState> next;
    next.reserve(states.size() * 2);
    for (const auto& [battery, fuel] : states)
    {
        for (int on = 0; on < 2; ++on)
        {
            if (on && !attr.gen_allowed)
                continue;
            const double b = battery - attr.energy_cost + (on ? attr.recharge : 0.0);
            const double q = fuel - (on ? attr.recharge : 0.0);
            if (b >= 0.0 && b <= battery_max && q >= 0.0)
                next.emplace_back(b, q);
        }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

struct Walker
{
    const Instance& instance;
    const AgentSpec& spec;
    const ConstraintSet& constraints;
    int horizon;

    std::vector<NodeId> path;
    std::vector<int> times;
    std::vector<char> on_path;

    Walker(const Instance& inst, int agent, const ConstraintSet& cons, int hz)
        : instance(inst), spec(inst.agents.at(agent)), constraints(cons), horizon(hz),
          on_path(inst.graph.node_count(), 0)
    {}

    // Depth-first over elementary paths in lexicographic order. `visit` is
    // called on each goal arrival with the path cost; `keep_going(cost)`
    // bounds the descent.
    template <class Visit, class Bound>
    void walk(double cost, const std::vector<ResourceState>& states, Visit& visit, Bound& keep_going)
    {
        const NodeId here = path.back();
        if (here == spec.goal)
        {
            visit(cost);
            return;
        }
        const Graph& g = instance.graph;
        for (EdgeIndex e : g.out_edges(here))
        {
            const Edge& edge = g.edge(e);
            const NodeId next = edge.to;
            if (on_path[next])
                continue;
            const int depart = times.back();
            const int arrive = depart + edge.attr.travel_time;
            if (arrive > horizon)
                continue;
            if (constraints.forbids_vertex(next, arrive) || constraints.forbids_edge(here, next, depart))
                continue;
            const double c = cost + edge.attr.travel_cost;
            if (!keep_going(c))
                continue;
            auto next_states = step_states(states, edge.attr, spec.battery_max);
            if (next_states.empty())
                continue;
            path.push_back(next);
            times.push_back(arrive);
            on_path[next] = 1;
            walk(c, next_states, visit, keep_going);
            on_path[next] = 0;
            times.pop_back();
            path.pop_back();
        }
    }

    template <class Visit, class Bound>
    void run(Visit visit, Bound keep_going)
    {
        if (spec.start_time > horizon || constraints.forbids_vertex(spec.start, spec.start_time))
            return;
        path = {spec.start};
        times = {spec.start_time};
        on_path.assign(on_path.size(), 0);
        on_path[spec.start] = 1;
        walk(0.0, {{spec.battery_init, spec.fuel_init}}, visit, keep_going);
    }
};

// Lexicographically smallest feasible generator pattern (off before on) for
// a fixed path, with the resulting plan; nullopt if none exists.
std::optional<Plan> realise(const Instance& instance, int agent, const std::vector<NodeId>& path,
                            const std::vector<int>& times)
{
    const AgentSpec& spec = instance.agents.at(agent);
    const Graph& g = instance.graph;
    std::vector<const EdgeAttr*> attrs;
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        attrs.push_back(&g.edge(*g.find_edge(path[k], path[k + 1])).attr);

    std::vector<bool> pattern;
    std::optional<Plan> found;
    std::function<bool(std::size_t, double, double)> dfs = [&](std::size_t k, double battery, double fuel) {
        if (k == attrs.size())
        {
            Plan p;
            p.path = path;
            p.arrival_times = times;
            p.gen_pattern = pattern;
            p.final_battery = battery;
            p.final_fuel = fuel;
            for (const EdgeAttr* a : attrs)
                p.cost += a->travel_cost;
            found = std::move(p);
            return true;
        }
        for (int on = 0; on < 2; ++on)
        {
            if (on && !attrs[k]->gen_allowed)
                continue;
            const double b = battery - attrs[k]->energy_cost + (on ? attrs[k]->recharge : 0.0);
            const double q = fuel - (on ? attrs[k]->recharge : 0.0);
            if (b < 0.0 || b > spec.battery_max || q < 0.0)
                continue;
            pattern.push_back(on == 1);
            if (dfs(k + 1, b, q))
                return true;
            pattern.pop_back();
        }
        return false;
    };
    dfs(0, spec.battery_init, spec.fuel_init);
    return found;
}

}  // namespace

std::optional<Plan> brute_force_single(const Instance& instance, int agent, const ConstraintSet& constraints,
                                       const OracleLimits& limits)
{
    check_limits(instance, limits);
    Walker walker(instance, agent, constraints, limits.horizon);

    double best = std::numeric_limits<double>::infinity();
    std::vector<NodeId> best_path;
    std::vector<int> best_times;
    walker.run(
        [&](double cost) {
            if (cost < best)
            {
                best = cost;
                best_path = walker.path;
                best_times = walker.times;
            }
        },
        [&](double cost) { return cost < best; });

    if (best_path.empty())
        return std::nullopt;
    return realise(instance, agent, best_path, best_times);
}

std::vector<Plan> all_feasible_plans(const Instance& instance, int agent, const OracleLimits& limits)
{
    check_limits(instance, limits);
    const ConstraintSet none;
    Walker walker(instance, agent, none, limits.horizon);
    std::vector<Plan> plans;
    walker.run(
        [&](double) {
            auto p = realise(instance, agent, walker.path, walker.times);
            if (p)
                plans.push_back(std::move(*p));
        },
        [](double) { return true; });
    std::stable_sort(plans.begin(), plans.end(), [](const Plan& a, const Plan& b) { return a.cost < b.cost; });
    return plans;
}

bool plans_conflict(const Plan& p, const Plan& q, int epsilon)
{
    for (std::size_t i = 0; i < p.path.size(); ++i)
        for (std::size_t j = 0; j < q.path.size(); ++j)
        {
            if (p.path[i] == q.path[j] && std::abs(p.arrival_times[i] - q.arrival_times[j]) < epsilon)
                return true;
            // p moves path[i-1] -> path[i] while q moves the opposite way.
            if (i > 0 && j > 0 && p.path[i - 1] == q.path[j] && p.path[i] == q.path[j - 1] &&
                std::abs(p.arrival_times[i] - q.arrival_times[j]) < epsilon)
                return true;
        }
    return false;
}

std::optional<Solution> brute_force_joint(const Instance& instance, const OracleLimits& limits)
{
    check_limits(instance, limits);
    const int n_agents = instance.agent_count();
    if (n_agents > limits.max_agents)
        throw OracleRefusal("oracle: " + std::to_string(n_agents) + " agents, limit is " +
                            std::to_string(limits.max_agents));

    std::vector<std::vector<Plan>> options(n_agents);
    for (int k = 0; k < n_agents; ++k)
    {
        options[k] = all_feasible_plans(instance, k, limits);
        if (options[k].empty())
            return std::nullopt;
    }

    // Cheapest possible completion from agent k onwards, for pruning.
    std::vector<double> tail(n_agents + 1, 0.0);
    for (int k = n_agents - 1; k >= 0; --k)
        tail[k] = tail[k + 1] + options[k].front().cost;

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> choice(n_agents, -1);
    std::vector<int> best_choice;

    std::function<void(int, double)> dfs = [&](int k, double cost) {
        if (k == n_agents)
        {
            if (cost < best)
            {
                best = cost;
                best_choice = choice;
            }
            return;
        }
        for (int i = 0; i < static_cast<int>(options[k].size()); ++i)
        {
            const Plan& p = options[k][i];
            if (cost + p.cost + tail[k + 1] >= best)
                break;  // sorted by cost
            bool clash = false;
            for (int j = 0; j < k && !clash; ++j)
                clash = plans_conflict(options[j][choice[j]], p, instance.epsilon);
            if (clash)
                continue;
            choice[k] = i;
            dfs(k + 1, cost + p.cost);
        }
    };
    dfs(0, 0.0);

    if (best_choice.empty())
        return std::nullopt;
    Solution sol;
    for (int k = 0; k < n_agents; ++k)
    {
        sol.plans.push_back(options[k][best_choice[k]]);
        sol.total_cost += sol.plans.back().cost;
    }
    return sol;
}

}  // namespace nrhf::oracle

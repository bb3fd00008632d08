#pragma once

// Test-side reference computations and random case builders. Nothing here
// calls into the label search or CBS.

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "nrhf/constraints.hpp"
#include "nrhf/generator.hpp"
#include "nrhf/instance.hpp"

namespace nrhf::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// All-pairs shortest travel cost.
inline std::vector<std::vector<double>> floyd_warshall(const Graph& g)
{
    const int n = g.node_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (int i = 0; i < n; ++i)
        d[i][i] = 0.0;
    for (const Edge& e : g.edges())
        d[e.from][e.to] = std::min(d[e.from][e.to], e.attr.travel_cost);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j])
                    d[i][j] = d[i][k] + d[k][j];
    return d;
}

// Single-source shortest travel cost by edge relaxation.
inline double bellman_ford(const Graph& g, NodeId source, NodeId target)
{
    std::vector<double> d(g.node_count(), kInf);
    d[source] = 0.0;
    for (int round = 0; round < g.node_count(); ++round)
    {
        bool changed = false;
        for (const Edge& e : g.edges())
            if (d[e.from] + e.attr.travel_cost < d[e.to])
            {
                d[e.to] = d[e.from] + e.attr.travel_cost;
                changed = true;
            }
        if (!changed)
            break;
    }
    return d[target];
}

inline Instance make_instance(int node_count, std::vector<Edge> edges, std::vector<AgentSpec> agents, int epsilon = 1)
{
    Instance inst{Graph(node_count, std::move(edges)), std::move(agents), epsilon};
    require_valid(inst);
    return inst;
}

inline Edge edge(NodeId from, NodeId to, double cost = 1.0, double energy = 0.0, double recharge = 0.0,
                 bool gen = true, int time = 1)
{
    return Edge{from, to, EdgeAttr{cost, time, energy, recharge, gen}};
}

inline AgentSpec agent(NodeId start, NodeId goal, double battery = 100.0, double battery_max = 100.0,
                       double fuel = 0.0, int start_time = 0)
{
    return AgentSpec{start, goal, battery, battery_max, fuel, start_time};
}

// Grid spec with resources tight enough that the generator, noise zones,
// and the battery cap all matter on small grids.
inline GridSpec tight_spec(int rows, int cols, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    GridSpec s;
    s.rows = rows;
    s.cols = cols;
    s.noise_density = unit(rng);
    s.travel_cost = {1.0, 6.0};
    s.energy_cost = {0.0, 4.0};
    s.recharge = {0.0, 6.0};
    s.battery_init = {1.0, 8.0};
    s.battery_max = {6.0, 10.0};
    s.fuel_init = {0.0, 16.0};
    s.seed = rng();
    return s;
}

// Up to `max_entries` vertex/edge constraints at times in [1, max_time].
inline ConstraintSet random_constraints(const Instance& inst, std::mt19937_64& rng, int max_entries, int max_time)
{
    ConstraintSet cs;
    std::uniform_int_distribution<int> count(0, max_entries);
    std::uniform_int_distribution<int> node(0, inst.graph.node_count() - 1);
    std::uniform_int_distribution<int> edge_idx(0, static_cast<int>(inst.graph.edge_count()) - 1);
    std::uniform_int_distribution<int> time(1, max_time);
    std::bernoulli_distribution is_vertex(0.6);
    const int n = count(rng);
    for (int k = 0; k < n; ++k)
    {
        if (is_vertex(rng))
            cs.forbid_vertex(node(rng), time(rng));
        else
        {
            const Edge& e = inst.graph.edge(edge_idx(rng));
            cs.forbid_edge(e.from, e.to, time(rng) - 1);
        }
    }
    return cs;
}

}  // namespace nrhf::testing

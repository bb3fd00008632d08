#include "nrhf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nrhf {

namespace {

// The agent stream is decoupled from the graph stream so the same seed yields
// the same graph whatever the agent count.
constexpr std::uint64_t kAgentStreamSalt = 0x9e3779b97f4a7c15ULL;

class LatticeSampler
{
public:
    LatticeSampler(std::mt19937_64& rng, double step) : rng_(rng), step_(step) {}

    double operator()(const Range& r)
    {
        if (r.max == r.min)
            return r.min;
        if (step_ <= 0.0)
            return std::uniform_real_distribution<double>(r.min, r.max)(rng_);
        const auto steps = static_cast<long long>(std::floor((r.max - r.min) / step_ + 1e-9));
        const long long k = std::uniform_int_distribution<long long>(0, steps)(rng_);
        return r.min + static_cast<double>(k) * step_;
    }

private:
    std::mt19937_64& rng_;
    double step_;
};

void check_range(std::vector<std::string>& out, const char* name, const Range& r)
{
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min < 0.0 || r.min > r.max)
        out.push_back(std::string(name) + " range must satisfy 0 <= min <= max");
}

}  // namespace

std::vector<std::string> GridSpec::problems() const
{
    std::vector<std::string> out;
    if (rows < 2 || cols < 2)
        out.push_back("grid needs at least 2 rows and 2 columns");
    if (!(noise_density >= 0.0 && noise_density <= 1.0))
        out.push_back("noise_density must lie in [0,1]");
    check_range(out, "travel_cost", travel_cost);
    check_range(out, "energy_cost", energy_cost);
    check_range(out, "recharge", recharge);
    check_range(out, "battery_init", battery_init);
    check_range(out, "battery_max", battery_max);
    check_range(out, "fuel_init", fuel_init);
    if (battery_max.min <= 0.0)
        out.push_back("battery_max range must be strictly positive");
    if (!(value_step >= 0.0) || !std::isfinite(value_step))
        out.push_back("value_step must be >= 0");
    if (epsilon < 1)
        out.push_back("epsilon must be >= 1");
    return out;
}

Graph build_grid(const GridSpec& spec)
{
    if (auto p = spec.problems(); !p.empty())
        throw std::invalid_argument("grid spec: " + p.front());

    std::mt19937_64 rng(spec.seed);
    LatticeSampler draw(rng, spec.value_step);

    // Undirected adjacencies in row-major order: right neighbour, then down.
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (int r = 0; r < spec.rows; ++r)
        for (int c = 0; c < spec.cols; ++c)
        {
            if (c + 1 < spec.cols)
                pairs.emplace_back(grid_node(spec, r, c), grid_node(spec, r, c + 1));
            if (r + 1 < spec.rows)
                pairs.emplace_back(grid_node(spec, r, c), grid_node(spec, r + 1, c));
        }

    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto quiet_count = static_cast<std::size_t>(std::llround(spec.noise_density * pairs.size()));
    std::vector<bool> quiet(pairs.size(), false);
    for (std::size_t k = 0; k < quiet_count; ++k)
        quiet[order[k]] = true;

    std::vector<Edge> edges;
    edges.reserve(pairs.size() * 2);
    for (std::size_t p = 0; p < pairs.size(); ++p)
    {
        for (int dir = 0; dir < 2; ++dir)
        {
            Edge e;
            e.from = dir == 0 ? pairs[p].first : pairs[p].second;
            e.to = dir == 0 ? pairs[p].second : pairs[p].first;
            e.attr.travel_cost = draw(spec.travel_cost);
            e.attr.travel_time = 1;
            e.attr.energy_cost = draw(spec.energy_cost);
            e.attr.recharge = draw(spec.recharge);
            e.attr.gen_allowed = !quiet[p];
            edges.push_back(e);
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
    return Graph(spec.rows * spec.cols, std::move(edges));
}

Instance generate_instance(const GridSpec& spec, int n_agents)
{
    Graph graph = build_grid(spec);
    const int n = graph.node_count();
    if (n_agents < 1 || n_agents > n)
        throw std::invalid_argument("cannot place " + std::to_string(n_agents) + " agents on " + std::to_string(n) +
                                    " nodes with distinct starts");

    std::mt19937_64 rng(spec.seed ^ kAgentStreamSalt);
    LatticeSampler draw(rng, spec.value_step);

    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);

    std::vector<AgentSpec> agents;
    agents.reserve(n_agents);
    for (int k = 0; k < n_agents; ++k)
    {
        AgentSpec a;
        a.start = nodes[k];
        // Uniform over the other n-1 nodes; other agents' starts are allowed.
        NodeId g = static_cast<NodeId>(std::uniform_int_distribution<int>(0, n - 2)(rng));
        a.goal = g >= a.start ? g + 1 : g;
        a.battery_max = draw(spec.battery_max);
        a.battery_init = std::min(draw(spec.battery_init), a.battery_max);
        a.fuel_init = draw(spec.fuel_init);
        a.start_time = 0;
        agents.push_back(a);
    }
    return Instance{std::move(graph), std::move(agents), spec.epsilon};
}

}  // namespace nrhf

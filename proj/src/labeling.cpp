#include "nrhf/labeling.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace nrhf {

void ConstraintSet::forbid_vertex(NodeId node, int time)
{
    if (time < 0)
        throw std::invalid_argument("vertex constraint with negative time");
    vertices_.insert(Vertex{node, time});
    latest_ = std::max(latest_, time);
}

void ConstraintSet::forbid_edge(NodeId from, NodeId to, int depart_time)
{
    if (depart_time < 0)
        throw std::invalid_argument("edge constraint with negative time");
    edges_.insert(EdgeAt{from, to, depart_time});
    latest_ = std::max(latest_, depart_time);
}

std::optional<Label> extend(const Label& label, const Edge& edge, bool gen_on, double battery_max)
{
    const EdgeAttr& a = edge.attr;
    if (gen_on && !a.gen_allowed)
        return std::nullopt;

    Label next;
    next.node = edge.to;
    next.cost = label.cost + a.travel_cost;
    next.time = label.time + a.travel_time;
    next.battery = label.battery - a.energy_cost + (gen_on ? a.recharge : 0.0);
    next.fuel = label.fuel - (gen_on ? a.recharge : 0.0);
    next.gen_on_last_edge = gen_on;

    if (next.battery < 0.0 || next.battery > battery_max || next.fuel < 0.0)
        return std::nullopt;
    return next;
}

bool dominates(const Label& a, const Label& b)
{
    if (a.cost > b.cost || a.time > b.time || a.battery < b.battery || a.fuel < b.fuel)
        return false;
    const bool strict = a.cost < b.cost || a.time < b.time || a.battery > b.battery || a.fuel > b.fuel;
    return strict || a.id < b.id;
}

bool dominates_exact(const Label& a, std::span<const std::uint64_t> visited_a, const Label& b,
                     std::span<const std::uint64_t> visited_b, int latest_constraint_time)
{
    if (a.battery != b.battery || a.cost > b.cost || a.fuel < b.fuel)
        return false;
    if (a.time != b.time)
    {
        const bool unconstrained_future = a.time > latest_constraint_time && b.time > latest_constraint_time;
        if (!unconstrained_future || a.time > b.time)
            return false;
    }
    bool proper_subset = false;
    for (std::size_t w = 0; w < visited_a.size(); ++w)
    {
        if (visited_a[w] & ~visited_b[w])
            return false;
        proper_subset |= visited_a[w] != visited_b[w];
    }
    const bool strict = a.cost < b.cost || a.fuel > b.fuel || a.time < b.time || proper_subset;
    return strict || a.id < b.id;
}

const char* to_string(SearchStatus status)
{
    switch (status)
    {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::Infeasible: return "infeasible";
    case SearchStatus::Timeout: return "timeout";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

LabelPool::LabelPool(int node_count) : words_(std::max(1, (node_count + 63) / 64)) {}

std::int32_t LabelPool::add_root(Label label)
{
    label.parent = -1;
    label.id = static_cast<std::int64_t>(labels_.size());
    labels_.push_back(label);
    bits_.resize(bits_.size() + words_, 0);
    bits_[bits_.size() - words_ + (label.node >> 6)] |= std::uint64_t{1} << (label.node & 63);
    return size() - 1;
}

std::int32_t LabelPool::add_child(Label label)
{
    label.id = static_cast<std::int64_t>(labels_.size());
    labels_.push_back(label);
    const std::size_t parent_off = static_cast<std::size_t>(label.parent) * words_;
    const std::size_t off = bits_.size();
    bits_.resize(off + words_);
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(parent_off), words_,
                bits_.begin() + static_cast<std::ptrdiff_t>(off));
    bits_[off + (label.node >> 6)] |= std::uint64_t{1} << (label.node & 63);
    return size() - 1;
}

void LabelPool::pop_back()
{
    labels_.pop_back();
    bits_.resize(bits_.size() - words_);
}

LabelStore::LabelStore(const LabelPool& pool, int node_count, DominanceRule rule, int latest_constraint_time)
    : pool_(pool), rule_(rule), latest_(latest_constraint_time), buckets_(node_count)
{}

bool LabelStore::dominates(std::int32_t a, std::int32_t b) const
{
    if (rule_ == DominanceRule::Componentwise)
        return nrhf::dominates(pool_[a], pool_[b]);
    return dominates_exact(pool_[a], pool_.visited(a), pool_[b], pool_.visited(b), latest_);
}

bool LabelStore::efficient(std::int32_t idx) const
{
    for (std::int32_t other : buckets_[pool_[idx].node])
        if (dominates(other, idx))
            return false;
    return true;
}

std::size_t LabelStore::insert(std::int32_t idx)
{
    if (static_cast<std::int32_t>(alive_.size()) < pool_.size())
        alive_.resize(pool_.size(), 0);
    auto& bucket = buckets_[pool_[idx].node];
    std::size_t retired = 0;
    for (std::size_t k = 0; k < bucket.size();)
    {
        if (dominates(idx, bucket[k]))
        {
            alive_[bucket[k]] = 0;
            bucket[k] = bucket.back();
            bucket.pop_back();
            ++retired;
        }
        else
            ++k;
    }
    bucket.push_back(idx);
    alive_[idx] = 1;
    return retired;
}

// ---------------------------------------------------------------------------

namespace {

template <class Weight>
std::vector<double> reverse_dijkstra(const Graph& graph, NodeId goal, Weight weight)
{
    std::vector<double> dist(graph.node_count(), kUnreachable);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[goal] = 0.0;
    pq.emplace(0.0, goal);
    while (!pq.empty())
    {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v])
            continue;
        for (EdgeIndex e : graph.in_edges(v))
        {
            const Edge& ed = graph.edge(e);
            const double nd = d + weight(ed.attr);
            if (nd < dist[ed.from])
            {
                dist[ed.from] = nd;
                pq.emplace(nd, ed.from);
            }
        }
    }
    return dist;
}

struct OpenEntry
{
    double f;
    int time;
    double battery;
    std::int64_t id;
    std::int32_t idx;
};

// Best first: lower f, then deeper (later) labels, then fuller battery, then older.
struct WorseEntry
{
    bool operator()(const OpenEntry& a, const OpenEntry& b) const
    {
        if (a.f != b.f)
            return a.f > b.f;
        if (a.time != b.time)
            return a.time < b.time;
        if (a.battery != b.battery)
            return a.battery < b.battery;
        return a.id > b.id;
    }
};

Plan build_plan(const LabelPool& pool, std::int32_t goal_idx)
{
    std::vector<std::int32_t> chain;
    for (std::int32_t i = goal_idx; i >= 0; i = pool[i].parent)
        chain.push_back(i);
    std::reverse(chain.begin(), chain.end());

    Plan plan;
    for (std::size_t k = 0; k < chain.size(); ++k)
    {
        const Label& l = pool[chain[k]];
        plan.path.push_back(l.node);
        plan.arrival_times.push_back(l.time);
        if (k > 0)
            plan.gen_pattern.push_back(l.gen_on_last_edge);
    }
    const Label& last = pool[goal_idx];
    plan.cost = last.cost;
    plan.final_battery = last.battery;
    plan.final_fuel = last.fuel;
    return plan;
}

constexpr std::int64_t kClockStride = 256;

}  // namespace

Heuristic compute_heuristic(const Graph& graph, NodeId goal)
{
    return Heuristic{reverse_dijkstra(graph, goal, [](const EdgeAttr& a) { return a.travel_cost; })};
}

std::vector<double> compute_energy_to_go(const Graph& graph, NodeId goal)
{
    return reverse_dijkstra(graph, goal, [](const EdgeAttr& a) { return a.energy_cost; });
}

AgentContext prepare_agent(const Instance& instance, int agent)
{
    const NodeId goal = instance.agents.at(agent).goal;
    return AgentContext{compute_heuristic(instance.graph, goal), compute_energy_to_go(instance.graph, goal)};
}

int default_horizon(const Instance& instance, int agent)
{
    return instance.agents.at(agent).start_time + instance.graph.node_count() * instance.graph.max_travel_time();
}

SubproblemResult solve_nrhfsp(const Instance& instance, int agent, const ConstraintSet& constraints,
                              const SearchLimits& limits, const AgentContext* context)
{
    const AgentSpec& spec = instance.agents.at(agent);
    const Graph& graph = instance.graph;

    AgentContext local;
    if (context == nullptr)
    {
        local = prepare_agent(instance, agent);
        context = &local;
    }
    const auto& h = context->heuristic.cost_to_go;
    const auto& energy_to_go = context->energy_to_go;
    const int horizon = limits.horizon.value_or(default_horizon(instance, agent));

    SubproblemResult result;
    LabelStats& stats = result.stats;

    if (h[spec.start] == kUnreachable || spec.start_time > horizon ||
        constraints.forbids_vertex(spec.start, spec.start_time))
        return result;

    LabelPool pool(graph.node_count());
    LabelStore store(pool, graph.node_count(), limits.dominance, constraints.latest_time());
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, WorseEntry> open;

    Label root;
    root.node = spec.start;
    root.time = spec.start_time;
    root.battery = spec.battery_init;
    root.fuel = spec.fuel_init;
    const std::int32_t root_idx = pool.add_root(root);
    store.insert(root_idx);
    open.push(OpenEntry{h[spec.start], root.time, root.battery, 0, root_idx});
    stats.labels_created = 1;
    stats.peak_open = 1;

    while (!open.empty())
    {
        const OpenEntry top = open.top();
        open.pop();
        if (!store.alive(top.idx))
            continue;

        if (stats.extractions % kClockStride == 0 && Clock::now() >= limits.deadline)
        {
            result.status = SearchStatus::Timeout;
            return result;
        }
        ++stats.extractions;

        const Label current = pool[top.idx];
        if (limits.on_extract)
            limits.on_extract(current, top.f);

        if (current.node == spec.goal)
        {
            result.status = SearchStatus::Solved;
            result.plan = build_plan(pool, top.idx);
            return result;
        }

        for (EdgeIndex e : graph.out_edges(current.node))
        {
            const Edge& edge = graph.edge(e);
            const NodeId j = edge.to;
            if (pool.on_path(top.idx, j) || h[j] == kUnreachable)
                continue;
            const int arrive = current.time + edge.attr.travel_time;
            if (arrive > horizon || violates(current.node, j, current.time, arrive, constraints))
                continue;

            for (bool gen_on : {true, false})
            {
                auto next = extend(current, edge, gen_on, spec.battery_max);
                if (!next)
                    continue;
                if (limits.energy_bound && next->battery + next->fuel < energy_to_go[j] - 1e-9)
                    continue;

                next->parent = top.idx;
                const std::int32_t idx = pool.add_child(*next);
                ++stats.labels_created;
                if (!store.efficient(idx))
                {
                    ++stats.labels_dominated;
                    pool.pop_back();
                    continue;
                }
                stats.labels_retired += static_cast<std::int64_t>(store.insert(idx));
                open.push(OpenEntry{next->cost + h[j], next->time, next->battery, pool[idx].id, idx});
                // Heap size includes retired entries awaiting lazy removal.
                stats.peak_open = std::max(stats.peak_open, static_cast<std::int64_t>(open.size()));
            }
        }
    }
    result.status = SearchStatus::Infeasible;
    return result;
}

SubproblemResult solve_spp(const Instance& instance, int agent, const SearchLimits& limits,
                           const AgentContext* context)
{
    const AgentSpec& spec = instance.agents.at(agent);
    const Graph& graph = instance.graph;
    Heuristic local;
    if (context == nullptr)
        local = compute_heuristic(graph, spec.goal);
    const auto& h = context ? context->heuristic.cost_to_go : local.cost_to_go;

    SubproblemResult result;
    if (h[spec.start] == kUnreachable)
        return result;

    const int n = graph.node_count();
    std::vector<double> g(n, kUnreachable);
    std::vector<NodeId> parent(n, kNoNode);
    std::vector<char> closed(n, 0);
    using Item = std::tuple<double, double, NodeId>;  // f, -g (deeper first on ties), node
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    g[spec.start] = 0.0;
    open.emplace(h[spec.start], 0.0, spec.start);

    while (!open.empty())
    {
        auto [f, neg_g, v] = open.top();
        open.pop();
        if (closed[v])
            continue;
        closed[v] = 1;
        ++result.stats.extractions;
        if (result.stats.extractions % kClockStride == 0 && Clock::now() >= limits.deadline)
        {
            result.status = SearchStatus::Timeout;
            return result;
        }
        if (v == spec.goal)
            break;
        for (EdgeIndex e : graph.out_edges(v))
        {
            const Edge& ed = graph.edge(e);
            const double ng = g[v] + ed.attr.travel_cost;
            if (ng < g[ed.to])
            {
                g[ed.to] = ng;
                parent[ed.to] = v;
                open.emplace(ng + h[ed.to], -ng, ed.to);
                ++result.stats.labels_created;
            }
        }
    }
    if (!closed[spec.goal])
        return result;

    Plan plan;
    for (NodeId v = spec.goal; v != kNoNode; v = parent[v])
        plan.path.push_back(v);
    std::reverse(plan.path.begin(), plan.path.end());
    int t = spec.start_time;
    plan.arrival_times.push_back(t);
    for (std::size_t k = 1; k < plan.path.size(); ++k)
    {
        t += graph.edge(*graph.find_edge(plan.path[k - 1], plan.path[k])).attr.travel_time;
        plan.arrival_times.push_back(t);
        plan.gen_pattern.push_back(false);
    }
    plan.cost = g[spec.goal];
    result.status = SearchStatus::Solved;
    result.plan = std::move(plan);
    return result;
}

}  // namespace nrhf

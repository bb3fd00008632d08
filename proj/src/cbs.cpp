#include "nrhf/cbs.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

namespace nrhf {

namespace {

auto conflict_order_key(const Conflict& c)
{
    return std::tuple(c.time, static_cast<int>(c.kind), c.agent_a, c.agent_b, c.from, c.to, c.arrive_a, c.arrive_b);
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<Conflict> detect_conflicts(std::span<const Plan* const> plans, int epsilon)
{
    struct Visit
    {
        int agent;
        int time;
    };
    struct Move
    {
        int agent;
        int depart;
        int arrive;
    };
    std::map<NodeId, std::vector<Visit>> visits;
    std::map<std::pair<NodeId, NodeId>, std::vector<Move>> moves;

    for (int k = 0; k < static_cast<int>(plans.size()); ++k)
    {
        const Plan& p = *plans[k];
        for (std::size_t s = 0; s < p.path.size(); ++s)
        {
            visits[p.path[s]].push_back(Visit{k, p.arrival_times[s]});
            if (s + 1 < p.path.size())
                moves[{p.path[s], p.path[s + 1]}].push_back(Move{k, p.arrival_times[s], p.arrival_times[s + 1]});
        }
    }

    std::vector<Conflict> out;
    for (const auto& [node, list] : visits)
    {
        for (std::size_t x = 0; x < list.size(); ++x)
            for (std::size_t y = x + 1; y < list.size(); ++y)
            {
                if (list[x].agent == list[y].agent || std::abs(list[x].time - list[y].time) >= epsilon)
                    continue;
                const Visit& a = list[x].agent < list[y].agent ? list[x] : list[y];
                const Visit& b = list[x].agent < list[y].agent ? list[y] : list[x];
                Conflict c;
                c.kind = ConflictKind::Vertex;
                c.agent_a = a.agent;
                c.agent_b = b.agent;
                c.from = node;
                c.arrive_a = a.time;
                c.arrive_b = b.time;
                c.time = std::min(a.time, b.time);
                out.push_back(c);
            }
    }
    for (const auto& [edge, forward] : moves)
    {
        auto rev = moves.find({edge.second, edge.first});
        if (rev == moves.end())
            continue;
        for (const Move& a : forward)
            for (const Move& b : rev->second)
            {
                // Each unordered pair is seen from both directions; keep the one
                // where the lower-index agent owns `forward`.
                if (a.agent >= b.agent || std::abs(a.arrive - b.arrive) >= epsilon)
                    continue;
                Conflict c;
                c.kind = ConflictKind::Edge;
                c.agent_a = a.agent;
                c.agent_b = b.agent;
                c.from = edge.first;
                c.to = edge.second;
                c.arrive_a = a.arrive;
                c.arrive_b = b.arrive;
                c.depart_a = a.depart;
                c.depart_b = b.depart;
                c.time = std::min(a.depart, b.depart);
                out.push_back(c);
            }
    }
    std::sort(out.begin(), out.end(),
              [](const Conflict& x, const Conflict& y) { return conflict_order_key(x) < conflict_order_key(y); });
    return out;
}

std::vector<Conflict> detect_conflicts(const std::vector<Plan>& plans, int epsilon)
{
    std::vector<const Plan*> ptrs;
    ptrs.reserve(plans.size());
    for (const Plan& p : plans)
        ptrs.push_back(&p);
    return detect_conflicts(std::span<const Plan* const>(ptrs), epsilon);
}

std::optional<Conflict> first_conflict(const std::vector<Plan>& plans, int epsilon)
{
    auto all = detect_conflicts(plans, epsilon);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

ConstraintSet child_constraints(const Instance& instance, const Conflict& conflict, int agent)
{
    ConstraintSet added;
    const int eps = instance.epsilon;

    // The lower-index agent is kept eps away from the other agent's occurrence;
    // the other agent only loses its exact occurrence. Together the two
    // children cover every conflict-free continuation.
    if (agent == conflict.agent_a)
    {
        const int centre = conflict.arrive_b;
        if (conflict.kind == ConflictKind::Vertex)
        {
            for (int t = std::max(0, centre - eps + 1); t <= centre + eps - 1; ++t)
                added.forbid_vertex(conflict.from, t);
        }
        else
        {
            const int travel =
                instance.graph.edge(*instance.graph.find_edge(conflict.from, conflict.to)).attr.travel_time;
            for (int t = centre - eps + 1; t <= centre + eps - 1; ++t)
                if (t - travel >= 0)
                    added.forbid_edge(conflict.from, conflict.to, t - travel);
        }
    }
    else
    {
        if (conflict.kind == ConflictKind::Vertex)
            added.forbid_vertex(conflict.from, conflict.arrive_b);
        else
            added.forbid_edge(conflict.to, conflict.from, conflict.depart_b);
    }
    return added;
}

CbsContext::CbsContext(const Instance& inst, const CbsOptions& opts) : instance(inst), options(opts)
{
    agents.reserve(instance.agents.size());
    for (int k = 0; k < instance.agent_count(); ++k)
        agents.push_back(prepare_agent(instance, k));
    const auto budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opts.time_budget_s));
    deadline = Clock::now() + budget;
}

SubproblemResult CbsContext::replan(int agent, const ConstraintSet& constraints)
{
    SearchLimits limits;
    limits.horizon = options.horizon;
    limits.deadline = deadline;
    limits.dominance = options.dominance;
    const auto t0 = Clock::now();
    SubproblemResult r = solve_nrhfsp(instance, agent, constraints, limits, &agents[agent]);
    stats.subproblem_seconds += seconds_since(t0);
    ++stats.subproblem_calls;
    stats.labels_created += r.stats.labels_created;
    if (options.compare_spp)
    {
        SearchLimits relaxed;
        relaxed.deadline = deadline;
        const auto t1 = Clock::now();
        solve_spp(instance, agent, relaxed, &agents[agent]);
        stats.spp_subproblem_seconds += seconds_since(t1);
    }
    return r;
}

namespace {

std::int64_t count_conflicts(const CTNode& node, int epsilon)
{
    std::vector<const Plan*> ptrs;
    for (const auto& p : node.plans)
        ptrs.push_back(p.get());
    return static_cast<std::int64_t>(detect_conflicts(std::span<const Plan* const>(ptrs), epsilon).size());
}

std::vector<Conflict> node_conflicts(const CTNode& node, int epsilon)
{
    std::vector<const Plan*> ptrs;
    for (const auto& p : node.plans)
        ptrs.push_back(p.get());
    return detect_conflicts(std::span<const Plan* const>(ptrs), epsilon);
}

}  // namespace

BranchResult branch(const CTNode& node, const Conflict& conflict, CbsContext& context, std::int64_t next_id)
{
    BranchResult result;
    for (int agent : {conflict.agent_a, conflict.agent_b})
    {
        ConstraintSet merged = *node.constraints[agent];
        const ConstraintSet added = child_constraints(context.instance, conflict, agent);
        for (const auto& v : added.vertices())
            merged.forbid_vertex(v.node, v.time);
        for (const auto& e : added.edges())
            merged.forbid_edge(e.from, e.to, e.time);

        SubproblemResult sub = context.replan(agent, merged);
        if (sub.status == SearchStatus::Timeout)
        {
            result.timed_out = true;
            return result;
        }
        if (sub.status == SearchStatus::Infeasible)
            continue;

        CTNode child;
        child.constraints = node.constraints;
        child.constraints[agent] = std::make_shared<const ConstraintSet>(std::move(merged));
        child.plans = node.plans;
        child.plans[agent] = std::make_shared<const Plan>(std::move(*sub.plan));
        child.total_cost = 0.0;
        for (const auto& p : child.plans)
            child.total_cost += p->cost;
        child.id = next_id++;
        child.parent = node.id;
        child.replanned_agent = agent;
        child.depth = node.depth + 1;
        child.conflict_count = count_conflicts(child, context.instance.epsilon);
        result.children.push_back(std::move(child));
    }
    return result;
}

CbsResult solve(const Instance& instance, const CbsOptions& options)
{
    const auto t0 = Clock::now();
    CbsContext context(instance, options);
    CbsResult result;

    auto finish = [&](SearchStatus status) {
        result.status = status;
        context.stats.wall_seconds = seconds_since(t0);
        result.stats = context.stats;
        return result;
    };

    CTNode root;
    const auto empty = std::make_shared<const ConstraintSet>();
    for (int k = 0; k < instance.agent_count(); ++k)
    {
        SubproblemResult sub = context.replan(k, *empty);
        if (sub.status != SearchStatus::Solved)
            return finish(sub.status);
        root.constraints.push_back(empty);
        root.total_cost += sub.plan->cost;
        root.plans.push_back(std::make_shared<const Plan>(std::move(*sub.plan)));
    }
    root.conflict_count = count_conflicts(root, instance.epsilon);
    context.stats.root_cost = root.total_cost;
    context.stats.root_conflicts = root.conflict_count;
    context.stats.ct_nodes_generated = 1;

    auto worse = [](const CTNode* a, const CTNode* b) {
        return std::tie(a->total_cost, a->conflict_count, a->id) > std::tie(b->total_cost, b->conflict_count, b->id);
    };
    std::vector<std::unique_ptr<CTNode>> arena;
    std::priority_queue<const CTNode*, std::vector<const CTNode*>, decltype(worse)> open(worse);
    arena.push_back(std::make_unique<CTNode>(std::move(root)));
    open.push(arena.back().get());
    std::int64_t next_id = 1;

    auto record = [&](const CTNode& n) {
        if (options.record_tree)
            result.tree.push_back(TreeRecord{n.id, n.parent, n.total_cost, n.replanned_agent, n.conflict_count});
    };
    record(*arena.back());

    while (!open.empty())
    {
        if (Clock::now() >= context.deadline)
            return finish(SearchStatus::Timeout);

        const CTNode* node = open.top();
        open.pop();
        ++context.stats.ct_nodes_expanded;

        if (node->conflict_count == 0)
        {
            Solution solution;
            solution.total_cost = node->total_cost;
            for (const auto& p : node->plans)
                solution.plans.push_back(*p);
            result.solution = std::move(solution);
            return finish(SearchStatus::Solved);
        }

        const Conflict conflict = node_conflicts(*node, instance.epsilon).front();
        BranchResult br = branch(*node, conflict, context, next_id);
        if (br.timed_out)
            return finish(SearchStatus::Timeout);
        for (CTNode& child : br.children)
        {
            next_id = std::max(next_id, child.id + 1);
            ++context.stats.ct_nodes_generated;
            record(child);
            arena.push_back(std::make_unique<CTNode>(std::move(child)));
            open.push(arena.back().get());
        }
    }
    return finish(SearchStatus::Infeasible);
}

}  // namespace nrhf

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nrhf/labeling.hpp"

namespace nrhf {

enum class ConflictKind
{
    Vertex,
    Edge,
};

// Pairwise conflict, agent_a < agent_b.
//
// Vertex: both agents reach `from` with arrival times closer than epsilon.
// Edge: agent_a traverses (from, to) while agent_b traverses (to, from), and
// a's arrival at `to` is closer than epsilon to b's arrival at `from`.
struct Conflict
{
    ConflictKind kind = ConflictKind::Vertex;
    int agent_a = -1;
    int agent_b = -1;
    NodeId from = kNoNode;
    NodeId to = kNoNode;  // kNoNode for vertex conflicts
    int time = 0;         // earliest arrival (vertex) or earliest departure (edge)
    int arrive_a = 0;
    int arrive_b = 0;
    int depart_a = 0;  // edge conflicts only
    int depart_b = 0;

    bool operator==(const Conflict&) const = default;
};

// Ordered by time, vertex before edge, then agent indices and location.
std::vector<Conflict> detect_conflicts(std::span<const Plan* const> plans, int epsilon);
std::vector<Conflict> detect_conflicts(const std::vector<Plan>& plans, int epsilon);

std::optional<Conflict> first_conflict(const std::vector<Plan>& plans, int epsilon);

struct Solution
{
    std::vector<Plan> plans;
    double total_cost = 0.0;
};

struct CbsOptions
{
    double time_budget_s = 120.0;
    std::optional<int> horizon;  // forwarded to every subproblem
    DominanceRule dominance = DominanceRule::Exact;
    bool record_tree = false;
    bool compare_spp = false;  // also time a resource-free A* for every subproblem
};

struct CbsStats
{
    std::int64_t ct_nodes_expanded = 0;
    std::int64_t ct_nodes_generated = 0;
    std::int64_t subproblem_calls = 0;
    double subproblem_seconds = 0.0;
    double wall_seconds = 0.0;
    double root_cost = 0.0;
    std::int64_t root_conflicts = 0;
    std::int64_t labels_created = 0;
    double spp_subproblem_seconds = 0.0;  // with CbsOptions::compare_spp
};

struct CTNode
{
    std::vector<std::shared_ptr<const ConstraintSet>> constraints;  // per agent
    std::vector<std::shared_ptr<const Plan>> plans;                 // per agent
    double total_cost = 0.0;
    std::int64_t id = 0;
    std::int64_t parent = -1;
    int replanned_agent = -1;
    int depth = 0;
    std::int64_t conflict_count = 0;
};

// Constraints added to a child that constrains `agent` to resolve `conflict`.
ConstraintSet child_constraints(const Instance& instance, const Conflict& conflict, int agent);

// Shared state for one CBS run: per-agent heuristics, deadline, counters.
struct CbsContext
{
    const Instance& instance;
    CbsOptions options;
    std::vector<AgentContext> agents;
    Clock::time_point deadline;
    CbsStats stats;

    CbsContext(const Instance& instance, const CbsOptions& options);

    SubproblemResult replan(int agent, const ConstraintSet& constraints);
};

struct BranchResult
{
    std::vector<CTNode> children;  // ids and conflict counts filled in
    bool timed_out = false;
};

// One child per conflicting agent; a child whose agent has no feasible plan
// under the enlarged constraint set is dropped. Child ids start at next_id.
BranchResult branch(const CTNode& node, const Conflict& conflict, CbsContext& context, std::int64_t next_id);

struct TreeRecord
{
    std::int64_t id;
    std::int64_t parent;
    double total_cost;
    int replanned_agent;
    std::int64_t conflicts;
};

struct CbsResult
{
    SearchStatus status = SearchStatus::Infeasible;
    std::optional<Solution> solution;
    CbsStats stats;
    std::vector<TreeRecord> tree;  // only with CbsOptions::record_tree
};

// Best-first constraint-tree search; returns the first expanded node whose
// plans are conflict-free.
CbsResult solve(const Instance& instance, const CbsOptions& options = {});

}  // namespace nrhf

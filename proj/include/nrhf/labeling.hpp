#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "nrhf/constraints.hpp"
#include "nrhf/instance.hpp"
#include "nrhf/plan.hpp"

namespace nrhf {

using Clock = std::chrono::steady_clock;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Partial single-agent plan state at `node`.
struct Label
{
    NodeId node = kNoNode;
    double cost = 0.0;
    int time = 0;
    double battery = 0.0;
    double fuel = 0.0;
    bool gen_on_last_edge = false;
    std::int32_t parent = -1;  // index into the owning pool, -1 at the root
    std::int64_t id = 0;       // creation order; lower is older
};

// Applies one edge with the generator on or off. Returns nullopt when the
// generator is banned on the edge, the battery would leave [0, battery_max]
// (no clamping), or fuel would go negative. Path elementarity and dynamic
// obstacles are the caller's concern.
std::optional<Label> extend(const Label& label, const Edge& edge, bool gen_on, double battery_max);

// Componentwise resource dominance: cost <=, time <=, battery >=, fuel >=,
// strict somewhere, or identical with `a` older. Cheap, but not exact once
// dynamic obstacles or the battery cap bind; see DominanceRule.
bool dominates(const Label& a, const Label& b);

// Dominance that never discards a label whose completions are not all
// available to `a` as well: equal battery, fuel >=, cost <=, a's visited set
// contained in b's, and equal time unless both labels are already later than
// every constraint (then time <=).
bool dominates_exact(const Label& a, std::span<const std::uint64_t> visited_a, const Label& b,
                     std::span<const std::uint64_t> visited_b, int latest_constraint_time);

enum class DominanceRule
{
    Exact,
    Componentwise,
};

// Label arena: labels plus one visited-node bitset per label.
class LabelPool
{
public:
    explicit LabelPool(int node_count);

    std::int32_t add_root(Label label);
    std::int32_t add_child(Label label);  // label.parent must be set
    void pop_back();

    const Label& operator[](std::int32_t idx) const { return labels_[idx]; }
    std::int32_t size() const { return static_cast<std::int32_t>(labels_.size()); }

    std::span<const std::uint64_t> visited(std::int32_t idx) const
    {
        return {bits_.data() + static_cast<std::size_t>(idx) * words_, static_cast<std::size_t>(words_)};
    }
    bool on_path(std::int32_t idx, NodeId node) const
    {
        return (bits_[static_cast<std::size_t>(idx) * words_ + (node >> 6)] >> (node & 63)) & 1U;
    }

private:
    int words_;
    std::vector<Label> labels_;
    std::vector<std::uint64_t> bits_;
};

// Per-node store of undominated labels across the open and closed sets.
class LabelStore
{
public:
    LabelStore(const LabelPool& pool, int node_count, DominanceRule rule, int latest_constraint_time);

    bool dominates(std::int32_t a, std::int32_t b) const;

    // EFF: true when nothing stored at pool[idx]'s node dominates it.
    bool efficient(std::int32_t idx) const;

    // Stores pool[idx], retiring every stored label it dominates. Returns the
    // number of retired labels.
    std::size_t insert(std::int32_t idx);

    bool alive(std::int32_t idx) const { return idx < static_cast<std::int32_t>(alive_.size()) && alive_[idx]; }
    std::span<const std::int32_t> at(NodeId node) const { return buckets_[node]; }

private:
    const LabelPool& pool_;
    DominanceRule rule_;
    int latest_;
    std::vector<std::vector<std::int32_t>> buckets_;
    std::vector<char> alive_;
};

struct Heuristic
{
    std::vector<double> cost_to_go;  // kUnreachable where the goal cannot be reached
};

// Reverse Dijkstra over travel_cost, ignoring time, energy, and noise.
Heuristic compute_heuristic(const Graph& graph, NodeId goal);

// Reverse Dijkstra over energy_cost: least battery+fuel needed to reach goal.
std::vector<double> compute_energy_to_go(const Graph& graph, NodeId goal);

// Goal-dependent tables reused across every subproblem of one agent.
struct AgentContext
{
    Heuristic heuristic;
    std::vector<double> energy_to_go;
};

AgentContext prepare_agent(const Instance& instance, int agent);

struct SearchLimits
{
    std::optional<int> horizon;  // latest admissible arrival time; default start_time + |N| * max T
    Clock::time_point deadline = Clock::time_point::max();
    DominanceRule dominance = DominanceRule::Exact;
    bool energy_bound = true;
    std::function<void(const Label&, double f)> on_extract;  // observation hook for tests
};

enum class SearchStatus
{
    Solved,
    Infeasible,
    Timeout,
};

const char* to_string(SearchStatus status);

struct LabelStats
{
    std::int64_t labels_created = 0;
    std::int64_t labels_dominated = 0;  // rejected by EFF
    std::int64_t labels_retired = 0;    // stored, later removed by a dominating label
    std::int64_t extractions = 0;
    std::int64_t peak_open = 0;
};

struct SubproblemResult
{
    SearchStatus status = SearchStatus::Infeasible;
    std::optional<Plan> plan;
    LabelStats stats;
};

int default_horizon(const Instance& instance, int agent);

// Minimum-cost plan for one agent under its dynamic obstacles: best-first
// label search over implicitly generated (node, time) states.
SubproblemResult solve_nrhfsp(const Instance& instance, int agent, const ConstraintSet& constraints,
                              const SearchLimits& limits = {}, const AgentContext* context = nullptr);

// Classical A* on travel_cost with energy, noise, and time ignored. The
// returned plan has an all-off generator pattern and unchecked resources.
SubproblemResult solve_spp(const Instance& instance, int agent, const SearchLimits& limits = {},
                           const AgentContext* context = nullptr);

}  // namespace nrhf

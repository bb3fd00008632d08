#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace nrhf {

// Dense node index in [0, node_count).
using NodeId = std::int32_t;
using EdgeIndex = std::int32_t;

inline constexpr NodeId kNoNode = -1;

struct EdgeAttr
{
    double travel_cost = 0.0;  // objective contribution D
    int travel_time = 1;       // time steps T, >= 1
    double energy_cost = 0.0;  // battery discharge C
    double recharge = 0.0;     // battery gained when the generator runs, Z
    bool gen_allowed = true;   // false inside a noise-restricted zone

    bool operator==(const EdgeAttr&) const = default;
};

struct Edge
{
    NodeId from = kNoNode;
    NodeId to = kNoNode;
    EdgeAttr attr;

    bool operator==(const Edge&) const = default;
};

// Directed graph with per-edge attributes. Immutable after construction.
//
// Endpoints are checked on construction; attribute ranges, self-loops and
// duplicate edges are left to validate() so that a loaded file can report
// every problem at once.
class Graph
{
public:
    Graph() = default;
    Graph(int node_count, std::vector<Edge> edges);

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }

    // Outgoing / incoming edge indices, sorted by the opposite endpoint.
    std::span<const EdgeIndex> out_edges(NodeId i) const { return out_[i]; }
    std::span<const EdgeIndex> in_edges(NodeId i) const { return in_[i]; }

    std::optional<EdgeIndex> find_edge(NodeId from, NodeId to) const;
    bool has_edge(NodeId from, NodeId to) const { return find_edge(from, to).has_value(); }

    bool valid_node(NodeId i) const { return i >= 0 && i < node_count_; }

    int max_travel_time() const;

    bool operator==(const Graph& other) const
    {
        return node_count_ == other.node_count_ && edges_ == other.edges_;
    }

private:
    static std::uint64_t key(NodeId from, NodeId to)
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
               static_cast<std::uint32_t>(to);
    }

    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeIndex>> out_;
    std::vector<std::vector<EdgeIndex>> in_;
    std::unordered_map<std::uint64_t, EdgeIndex> index_;
};

}  // namespace nrhf

#pragma once

#include <set>
#include <tuple>

#include "nrhf/graph.hpp"

namespace nrhf {

// Dynamic obstacles for one agent. Vertex constraints forbid arriving at a
// node at an exact time; edge constraints forbid departing along a directed
// edge at an exact time.
class ConstraintSet
{
public:
    struct Vertex
    {
        NodeId node;
        int time;
        auto operator<=>(const Vertex&) const = default;
    };

    struct EdgeAt
    {
        NodeId from;
        NodeId to;
        int time;  // departure
        auto operator<=>(const EdgeAt&) const = default;
    };

    void forbid_vertex(NodeId node, int time);
    void forbid_edge(NodeId from, NodeId to, int depart_time);

    bool forbids_vertex(NodeId node, int time) const
    {
        return !vertices_.empty() && vertices_.contains(Vertex{node, time});
    }
    bool forbids_edge(NodeId from, NodeId to, int depart_time) const
    {
        return !edges_.empty() && edges_.contains(EdgeAt{from, to, depart_time});
    }

    const std::set<Vertex>& vertices() const { return vertices_; }
    const std::set<EdgeAt>& edges() const { return edges_; }

    bool empty() const { return vertices_.empty() && edges_.empty(); }
    std::size_t size() const { return vertices_.size() + edges_.size(); }

    // Latest time mentioned by any constraint, or -1 when empty.
    int latest_time() const { return latest_; }

    bool operator==(const ConstraintSet& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

private:
    std::set<Vertex> vertices_;
    std::set<EdgeAt> edges_;
    int latest_ = -1;
};

// True when moving from -> to, departing at `depart` and arriving at `arrive`,
// hits a dynamic obstacle.
inline bool violates(NodeId from, NodeId to, int depart, int arrive, const ConstraintSet& constraints)
{
    return constraints.forbids_vertex(to, arrive) || constraints.forbids_edge(from, to, depart);
}

}  // namespace nrhf

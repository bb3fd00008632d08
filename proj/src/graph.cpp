#include "nrhf/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nrhf {

Graph::Graph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges))
{
    if (node_count_ < 0)
        throw std::invalid_argument("graph: negative node count");

    out_.resize(node_count_);
    in_.resize(node_count_);
    for (EdgeIndex e = 0; e < edge_count(); ++e)
    {
        const Edge& ed = edges_[e];
        if (!valid_node(ed.from) || !valid_node(ed.to))
            throw std::invalid_argument("graph: edge " + std::to_string(e) + " (" + std::to_string(ed.from) +
                                        "," + std::to_string(ed.to) + ") has an endpoint outside [0," +
                                        std::to_string(node_count_) + ")");
        // First occurrence wins; duplicates are reported by validate().
        if (index_.emplace(key(ed.from, ed.to), e).second)
        {
            out_[ed.from].push_back(e);
            in_[ed.to].push_back(e);
        }
    }
    for (auto& list : out_)
        std::sort(list.begin(), list.end(), [&](EdgeIndex a, EdgeIndex b) { return edges_[a].to < edges_[b].to; });
    for (auto& list : in_)
        std::sort(list.begin(), list.end(),
                  [&](EdgeIndex a, EdgeIndex b) { return edges_[a].from < edges_[b].from; });
}

std::optional<EdgeIndex> Graph::find_edge(NodeId from, NodeId to) const
{
    auto it = index_.find(key(from, to));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

int Graph::max_travel_time() const
{
    int best = 0;
    for (const Edge& e : edges_)
        best = std::max(best, e.attr.travel_time);
    return best;
}

}  // namespace nrhf

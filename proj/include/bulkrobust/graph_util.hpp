#pragma once

#include <utility>
#include <vector>

#include "bulkrobust/instance.hpp"

namespace bulkrobust {

class DisjointSets {
public:
    explicit DisjointSets(int n);
    int find(int x);
    bool unite(int a, int b);
    [[nodiscard]] int size() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

/// Component label per node using edges whose mask entry is set; labels are the smallest
/// node id of each component. Nodes without masked edges get their own label.
std::vector<int> component_labels(const EmbeddedGraph& g, const std::vector<char>& mask);

bool nodes_connected(const EmbeddedGraph& g, const std::vector<char>& mask, NodeId a, NodeId b);

/// True when all listed nodes lie in one component of the masked graph.
bool nodes_all_connected(const EmbeddedGraph& g, const std::vector<char>& mask, const std::vector<NodeId>& nodes);

/// Whether the masked edge set satisfies the connectivity requirement of the problem:
/// s-t connected for st, all `span_nodes` connected for mst.
bool requirement_met(const EmbeddedGraph& g, const std::vector<char>& mask, Problem problem, NodeId s, NodeId t,
                     const std::vector<NodeId>& span_nodes);

bool requirement_met(const Instance& inst, const std::vector<char>& mask);

/// Shortest paths over an allowed edge subset with deterministic ties: minimize total
/// weight, then edge count, then the external-id sequence read from the start node.
class PathFinder {
public:
    PathFinder(const EmbeddedGraph& g, const std::vector<char>& allowed);

    struct Label {
        Weight cost;
        int hops;
        friend bool operator<(const Label& a, const Label& b)
        {
            return a.cost != b.cost ? a.cost < b.cost : a.hops < b.hops;
        }
        friend bool operator==(const Label& a, const Label& b) { return a.cost == b.cost && a.hops == b.hops; }
    };

    /// Labels to `target` from every node; unreachable nodes have hops == -1.
    [[nodiscard]] std::vector<Label> labels_to(NodeId target) const;

    /// Lexicographically smallest optimal path from `from` to the target of `labels`.
    /// Empty optional-like result (false) when unreachable.
    bool path(NodeId from, NodeId target, const std::vector<Label>& labels, std::vector<EdgeIndex>& out) const;

    /// Convenience: single-pair query.
    bool shortest_path(NodeId from, NodeId to, std::vector<EdgeIndex>& out, Weight& cost) const;

private:
    const EmbeddedGraph* g_;
    std::vector<std::vector<std::pair<NodeId, EdgeIndex>>> adj_;
};

/// Minimum spanning tree by Kruskal with (weight, external id) order.
EdgeSet minimum_spanning_tree(const EmbeddedGraph& g);

} // namespace bulkrobust

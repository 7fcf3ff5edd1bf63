#include "bulkrobust/graph_util.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "bulkrobust/error.hpp"

namespace bulkrobust {

DisjointSets::DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0)
{
    std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x)
{
    while (parent_[static_cast<std::size_t>(x)] != x) {
        auto& p = parent_[static_cast<std::size_t>(x)];
        p = parent_[static_cast<std::size_t>(p)];
        x = p;
    }
    return x;
}

bool DisjointSets::unite(int a, int b)
{
    a = find(a);
    b = find(b);
    if (a == b) {
        return false;
    }
    auto& ra = rank_[static_cast<std::size_t>(a)];
    auto& rb = rank_[static_cast<std::size_t>(b)];
    if (ra < rb) {
        std::swap(a, b);
    }
    parent_[static_cast<std::size_t>(b)] = a;
    if (ra == rb) {
        ++rank_[static_cast<std::size_t>(a)];
    }
    return true;
}

std::vector<int> component_labels(const EmbeddedGraph& g, const std::vector<char>& mask)
{
    DisjointSets ds(g.node_count);
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (g.is_present(e) && mask[static_cast<std::size_t>(e)]) {
            ds.unite(g.edges[static_cast<std::size_t>(e)].u, g.edges[static_cast<std::size_t>(e)].v);
        }
    }
    std::vector<int> root_label(static_cast<std::size_t>(g.node_count), -1);
    std::vector<int> label(static_cast<std::size_t>(g.node_count));
    for (NodeId x = 0; x < g.node_count; ++x) {
        int r = ds.find(x);
        if (root_label[static_cast<std::size_t>(r)] < 0) {
            root_label[static_cast<std::size_t>(r)] = x;
        }
        label[static_cast<std::size_t>(x)] = root_label[static_cast<std::size_t>(r)];
    }
    return label;
}

bool nodes_connected(const EmbeddedGraph& g, const std::vector<char>& mask, NodeId a, NodeId b)
{
    if (a == b) {
        return true;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.node_count), 0);
    std::vector<NodeId> stack{a};
    seen[static_cast<std::size_t>(a)] = 1;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (EdgeIndex e : g.rotation[static_cast<std::size_t>(x)]) {
            if (!mask[static_cast<std::size_t>(e)]) {
                continue;
            }
            NodeId y = g.other_end(e, x);
            if (y == b) {
                return true;
            }
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
    }
    return false;
}

bool nodes_all_connected(const EmbeddedGraph& g, const std::vector<char>& mask, const std::vector<NodeId>& nodes)
{
    if (nodes.size() <= 1) {
        return true;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.node_count), 0);
    std::vector<NodeId> stack{nodes.front()};
    seen[static_cast<std::size_t>(nodes.front())] = 1;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (EdgeIndex e : g.rotation[static_cast<std::size_t>(x)]) {
            if (!mask[static_cast<std::size_t>(e)]) {
                continue;
            }
            NodeId y = g.other_end(e, x);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
    }
    return std::all_of(nodes.begin(), nodes.end(), [&](NodeId x) { return seen[static_cast<std::size_t>(x)] != 0; });
}

bool requirement_met(const EmbeddedGraph& g, const std::vector<char>& mask, Problem problem, NodeId s, NodeId t,
                     const std::vector<NodeId>& span_nodes)
{
    if (problem == Problem::st) {
        return nodes_connected(g, mask, s, t);
    }
    return nodes_all_connected(g, mask, span_nodes);
}

bool requirement_met(const Instance& inst, const std::vector<char>& mask)
{
    if (inst.problem == Problem::st) {
        return nodes_connected(inst.graph, mask, inst.s, inst.t);
    }
    std::vector<NodeId> all(static_cast<std::size_t>(inst.graph.node_count));
    std::iota(all.begin(), all.end(), 0);
    return nodes_all_connected(inst.graph, mask, all);
}

PathFinder::PathFinder(const EmbeddedGraph& g, const std::vector<char>& allowed)
    : g_(&g), adj_(static_cast<std::size_t>(g.node_count))
{
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (!g.is_present(e) || !allowed[static_cast<std::size_t>(e)]) {
            continue;
        }
        const Edge& ed = g.edges[static_cast<std::size_t>(e)];
        if (ed.u == ed.v) {
            continue;
        }
        adj_[static_cast<std::size_t>(ed.u)].emplace_back(ed.v, e);
        adj_[static_cast<std::size_t>(ed.v)].emplace_back(ed.u, e);
    }
}

std::vector<PathFinder::Label> PathFinder::labels_to(NodeId target) const
{
    std::vector<Label> label(static_cast<std::size_t>(g_->node_count), Label{0, -1});
    using Item = std::pair<Label, NodeId>;
    auto greater = [](const Item& a, const Item& b) {
        if (a.first == b.first) {
            return a.second > b.second;
        }
        return b.first < a.first;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(greater)> pq(greater);
    label[static_cast<std::size_t>(target)] = Label{0, 0};
    pq.push({Label{0, 0}, target});
    std::vector<char> done(static_cast<std::size_t>(g_->node_count), 0);
    while (!pq.empty()) {
        auto [lab, x] = pq.top();
        pq.pop();
        if (done[static_cast<std::size_t>(x)]) {
            continue;
        }
        done[static_cast<std::size_t>(x)] = 1;
        for (auto [y, e] : adj_[static_cast<std::size_t>(x)]) {
            Label cand{lab.cost + g_->edges[static_cast<std::size_t>(e)].weight, lab.hops + 1};
            Label& cur = label[static_cast<std::size_t>(y)];
            if (cur.hops < 0 || cand < cur) {
                cur = cand;
                pq.push({cand, y});
            }
        }
    }
    return label;
}

bool PathFinder::path(NodeId from, NodeId target, const std::vector<Label>& labels, std::vector<EdgeIndex>& out) const
{
    out.clear();
    if (labels[static_cast<std::size_t>(from)].hops < 0) {
        return false;
    }
    NodeId x = from;
    while (x != target) {
        const Label& here = labels[static_cast<std::size_t>(x)];
        EdgeIndex best = -1;
        NodeId best_next = -1;
        for (auto [y, e] : adj_[static_cast<std::size_t>(x)]) {
            const Label& there = labels[static_cast<std::size_t>(y)];
            if (there.hops < 0) {
                continue;
            }
            Label via{there.cost + g_->edges[static_cast<std::size_t>(e)].weight, there.hops + 1};
            if (!(via == here)) {
                continue;
            }
            if (best < 0 || g_->edges[static_cast<std::size_t>(e)].id < g_->edges[static_cast<std::size_t>(best)].id) {
                best = e;
                best_next = y;
            }
        }
        if (best < 0) {
            throw InvariantError("path reconstruction found no tight edge");
        }
        out.push_back(best);
        x = best_next;
    }
    return true;
}

bool PathFinder::shortest_path(NodeId from, NodeId to, std::vector<EdgeIndex>& out, Weight& cost) const
{
    auto labels = labels_to(to);
    if (!path(from, to, labels, out)) {
        return false;
    }
    cost = labels[static_cast<std::size_t>(from)].cost;
    return true;
}

EdgeSet minimum_spanning_tree(const EmbeddedGraph& g)
{
    std::vector<EdgeIndex> order;
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (g.is_present(e)) {
            order.push_back(e);
        }
    }
    std::sort(order.begin(), order.end(), [&](EdgeIndex a, EdgeIndex b) {
        const Edge& ea = g.edges[static_cast<std::size_t>(a)];
        const Edge& eb = g.edges[static_cast<std::size_t>(b)];
        return ea.weight != eb.weight ? ea.weight < eb.weight : ea.id < eb.id;
    });
    DisjointSets ds(g.node_count);
    EdgeSet tree;
    for (EdgeIndex e : order) {
        if (ds.unite(g.edges[static_cast<std::size_t>(e)].u, g.edges[static_cast<std::size_t>(e)].v)) {
            tree.push_back(e);
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

} // namespace bulkrobust

#include "bulkrobust/links.hpp"

#include <algorithm>
#include <set>

#include "bulkrobust/error.hpp"
#include "bulkrobust/graph_util.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Calls visit(subset) for every size-r subset of `pool`; stops early when visit returns false.
template <class Visit>
bool for_each_subset(const std::vector<EdgeIndex>& pool, int r, std::size_t& budget, Visit&& visit)
{
    const int n = static_cast<int>(pool.size());
    if (r < 0 || r > n) {
        return true;
    }
    std::vector<int> pick(idx(r));
    for (int i = 0; i < r; ++i) {
        pick[idx(i)] = i;
    }
    EdgeSet subset(idx(r));
    while (true) {
        if (budget == 0) {
            throw BudgetExceeded("scenario subset enumeration exceeded its cap");
        }
        --budget;
        for (int i = 0; i < r; ++i) {
            subset[idx(i)] = pool[idx(pick[idx(i)])];
        }
        if (!visit(subset)) {
            return false;
        }
        int i = r - 1;
        while (i >= 0 && pick[idx(i)] == n - r + i) {
            --i;
        }
        if (i < 0) {
            return true;
        }
        ++pick[idx(i)];
        for (int j = i + 1; j < r; ++j) {
            pick[idx(j)] = pick[idx(j - 1)] + 1;
        }
    }
}

EdgeSet intersect(const EdgeSet& a, const EdgeSet& b)
{
    EdgeSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

std::vector<EdgeSet> relevant_subsets(const Instance& inst, const EdgeSet& x, int level, std::size_t cap)
{
    std::set<EdgeSet> found;
    const auto xmask = edge_mask(inst.graph.edge_slots(), x);
    std::size_t budget = cap;
    for (const auto& fj : inst.scenarios) {
        // subsets containing unchosen edges remove fewer than `level` chosen edges
        const EdgeSet pool = intersect(fj, x);
        for_each_subset(pool, level, budget, [&](const EdgeSet& f) {
            auto mask = xmask;
            for (EdgeIndex e : f) {
                mask[idx(e)] = 0;
            }
            if (!requirement_met(inst, mask)) {
                found.insert(f);
            }
            return true;
        });
    }
    return {found.begin(), found.end()};
}

bool feasible_for_level(const Instance& inst, const EdgeSet& x, int level, std::size_t cap)
{
    const auto xmask = edge_mask(inst.graph.edge_slots(), x);
    if (!requirement_met(inst, xmask)) {
        return false;
    }
    std::size_t budget = cap;
    for (const auto& fj : inst.scenarios) {
        const EdgeSet pool = intersect(fj, x);
        // supersets of disconnecting sets disconnect, so the largest size suffices
        const int r = std::min(level, static_cast<int>(pool.size()));
        if (r == 0) {
            continue;
        }
        bool ok = for_each_subset(pool, r, budget, [&](const EdgeSet& f) {
            auto mask = xmask;
            for (EdgeIndex e : f) {
                mask[idx(e)] = 0;
            }
            return requirement_met(inst, mask);
        });
        if (!ok) {
            return false;
        }
    }
    return true;
}

StepContext preprocess_step(const Instance& inst, const EdgeSet& x, int level, std::size_t cap)
{
    if (level < 1) {
        throw InvariantError("preprocess_step: level must be >= 1");
    }
    if (x.empty()) {
        throw InvariantError("preprocess_step: empty solution");
    }
    if (!feasible_for_level(inst, x, level - 1, cap)) {
        throw InvariantError("preprocess_step: X is infeasible for level " + std::to_string(level - 1));
    }
    StepContext ctx;
    ctx.problem = inst.problem;
    ctx.level = level;
    ctx.x = x;
    ctx.scenarios = inst.scenarios;
    ctx.omega = relevant_subsets(inst, x, level, cap);
    ctx.working = inst.graph;
    ctx.node_map.resize(idx(inst.graph.node_count));
    for (NodeId v = 0; v < inst.graph.node_count; ++v) {
        ctx.node_map[idx(v)] = v;
    }
    ctx.s = inst.s;
    ctx.t = inst.t;
    if (ctx.omega.empty()) {
        ctx.x_working = x;
        return ctx;
    }

    EdgeSet needed;
    for (const auto& f : ctx.omega) {
        needed = set_union(needed, f);
    }
    for (EdgeIndex e : x) {
        if (contains(needed, e) || !ctx.working.is_present(e)) {
            continue;
        }
        const NodeId keep = ctx.working.edges[idx(e)].u;
        const NodeId gone = ctx.working.edges[idx(e)].v;
        ctx.working = contract_edge(ctx.working, e, ctx.omega);
        for (auto& m : ctx.node_map) {
            if (m == gone) {
                m = keep;
            }
        }
    }
    for (EdgeIndex e : x) {
        if (ctx.working.is_present(e)) {
            ctx.x_working.push_back(e);
        } else {
            ctx.contracted.push_back(e);
        }
    }
    for (EdgeIndex e : needed) {
        check_invariant(ctx.working.is_present(e), "contraction removed an edge of a relevant scenario");
    }
    if (ctx.problem == Problem::st) {
        ctx.s = ctx.node_map[idx(inst.s)];
        ctx.t = ctx.node_map[idx(inst.t)];
        check_invariant(ctx.s != ctx.t, "terminals merged although a relevant scenario separates them");
    }
    ctx.sub = induced_faces(ctx.working, ctx.x_working);
    if (level >= 2) {
        for (EdgeIndex e : ctx.x_working) {
            auto f = ctx.sub.faces.faces_of(e);
            check_invariant(f[0] != f[1], "chosen subgraph has bridge " +
                                              std::to_string(inst.graph.edges[idx(e)].id) + " at level " +
                                              std::to_string(level));
        }
    }
    return ctx;
}

FailureCut failure_components(const StepContext& ctx, const EdgeSet& f)
{
    check_invariant(ctx.has_subgraph(), "failure_components needs a step with relevant scenarios");
    const auto& g = ctx.working;
    auto mask = edge_mask(g.edge_slots(), ctx.x_working);
    for (EdgeIndex e : f) {
        mask[idx(e)] = 0;
    }
    auto label = component_labels(g, mask);
    std::vector<int> distinct;
    for (NodeId v : ctx.sub.nodes) {
        int l = label[idx(v)];
        if (std::find(distinct.begin(), distinct.end(), l) == distinct.end()) {
            distinct.push_back(l);
        }
    }
    check_invariant(distinct.size() == 2, "scenario leaves " + std::to_string(distinct.size()) +
                                              " components instead of two");
    const int first = ctx.problem == Problem::st ? label[idx(ctx.s)] : label[idx(ctx.sub.nodes.front())];
    FailureCut cut;
    cut.scenario = f;
    cut.side.assign(idx(g.node_count), -1);
    for (NodeId v : ctx.sub.nodes) {
        cut.side[idx(v)] = label[idx(v)] == first ? 0 : 1;
    }
    for (EdgeIndex e : f) {
        const Edge& ed = g.edges[idx(e)];
        check_invariant(cut.side[idx(ed.u)] != cut.side[idx(ed.v)], "scenario edge inside one component");
    }
    return cut;
}

bool covers(NodeId u, NodeId v, const FailureCut& cut)
{
    if (u < 0 || v < 0 || idx(u) >= cut.side.size() || idx(v) >= cut.side.size() || cut.side[idx(u)] < 0 ||
        cut.side[idx(v)] < 0) {
        throw InvariantError("covers: endpoint outside the chosen node set");
    }
    return cut.side[idx(u)] != cut.side[idx(v)];
}

std::vector<TypedLink> enumerate_typed_links(const StepContext& ctx)
{
    std::vector<TypedLink> links;
    if (!ctx.has_subgraph()) {
        return links;
    }
    const auto& g = ctx.working;
    std::vector<EdgeIndex> path;
    for (int f = 0; f < ctx.sub.face_count(); ++f) {
        auto boundary = ctx.sub.boundary_nodes(f);
        std::sort(boundary.begin(), boundary.end());
        if (boundary.size() < 2) {
            continue;
        }
        std::vector<char> allowed(idx(g.edge_slots()), 0);
        bool any = false;
        for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
            if (ctx.sub.edge_face[idx(e)] == f) {
                allowed[idx(e)] = 1;
                any = true;
            }
        }
        if (!any) {
            continue;
        }
        PathFinder finder(g, allowed);
        for (std::size_t b = 1; b < boundary.size(); ++b) {
            const NodeId v = boundary[b];
            auto labels = finder.labels_to(v);
            for (std::size_t a = 0; a < b; ++a) {
                const NodeId u = boundary[a];
                if (!finder.path(u, v, labels, path)) {
                    continue;
                }
                links.push_back(TypedLink{u, v, f, path, labels[idx(u)].cost});
            }
        }
    }
    std::sort(links.begin(), links.end(), [](const TypedLink& a, const TypedLink& b) {
        if (a.face != b.face) {
            return a.face < b.face;
        }
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return links;
}

std::vector<int> scenario_face_counts(const StepContext& ctx, const EdgeSet& f)
{
    std::vector<int> counts(idx(ctx.sub.face_count()), 0);
    for (EdgeIndex e : f) {
        for (int face : ctx.sub.faces.faces_of(e)) {
            check_invariant(face >= 0, "scenario edge missing from the chosen subgraph");
            ++counts[idx(face)];
        }
    }
    return counts;
}

std::vector<int> faces_containing(const StepContext& ctx, const EdgeSet& f)
{
    auto counts = scenario_face_counts(ctx, f);
    std::vector<int> out;
    for (int face = 0; face < static_cast<int>(counts.size()); ++face) {
        const int c = counts[idx(face)];
        check_invariant(c == 0 || c == 2, "face " + std::to_string(face) + " carries " + std::to_string(c) +
                                              " scenario edges (expected 0 or 2)");
        if (c == 2) {
            out.push_back(face);
        }
    }
    check_invariant(static_cast<int>(out.size()) == ctx.level,
                    std::to_string(out.size()) + " faces contain the scenario at level " + std::to_string(ctx.level));
    return out;
}

std::size_t validate_face_structure(const StepContext& ctx)
{
    if (ctx.level < 2) {
        return 0;
    }
    for (const auto& f : ctx.omega) {
        faces_containing(ctx, f);
    }
    return ctx.omega.size();
}

} // namespace bulkrobust

#include "bulkrobust/driver.hpp"

#include <algorithm>
#include <map>

#include "bulkrobust/error.hpp"
#include "bulkrobust/graph_util.hpp"
#include "bulkrobust/lp.hpp"
#include "bulkrobust/oracle.hpp"
#include "bulkrobust/set_cover.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

struct Link {
    NodeId u;
    NodeId v;
    std::vector<EdgeIndex> path;
    Weight cost;
};

std::vector<char> unchosen_mask(const EmbeddedGraph& g, const EdgeSet& x)
{
    std::vector<char> allowed(idx(g.edge_slots()), 0);
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        allowed[idx(e)] = g.is_present(e) && !contains(x, e) ? 1 : 0;
    }
    return allowed;
}

// covering LP over explicit rows, for the record only
double covering_lp_value(const std::vector<Link>& links, const std::vector<std::vector<int>>& covered_by)
{
    LinearProgram lp;
    for (const auto& l : links) {
        lp.c.push_back(static_cast<double>(l.cost));
    }
    for (const auto& holders : covered_by) {
        std::vector<double> row(links.size(), 0.0);
        for (int l : holders) {
            row[idx(l)] = 1.0;
        }
        lp.add_row(std::move(row), 1.0);
    }
    const LpResult res = simplex_min(lp);
    if (res.status == LpStatus::infeasible) {
        throw InfeasibleError("augmentation impossible: a relevant scenario has no covering link");
    }
    check_invariant(res.status == LpStatus::optimal, "level-1 LP not optimal");
    return res.value;
}

EdgeSet paths_of(const std::vector<Link>& links, const std::vector<int>& chosen)
{
    EdgeSet out;
    for (int l : chosen) {
        out.insert(out.end(), links[idx(l)].path.begin(), links[idx(l)].path.end());
    }
    return normalized(std::move(out));
}

// Level 1 for s-t: X is a path and every relevant scenario is one of its edges.
EdgeSet augment_path(const Instance& inst, const StepContext& ctx, LevelRecord& rec)
{
    const auto& g = inst.graph;
    std::vector<NodeId> nodes{inst.s};
    std::map<EdgeIndex, int> position;  // edge -> 1-based index along the path
    std::vector<char> used(idx(g.edge_slots()), 0);
    NodeId at = inst.s;
    while (at != inst.t) {
        EdgeIndex step = -1;
        for (EdgeIndex e : g.rotation[idx(at)]) {
            if (contains(ctx.x, e) && !used[idx(e)]) {
                check_invariant(step < 0, "level-1 solution is not a simple path");
                step = e;
            }
        }
        check_invariant(step >= 0, "level-1 solution does not reach t");
        used[idx(step)] = 1;
        at = g.other_end(step, at);
        nodes.push_back(at);
        position[step] = static_cast<int>(nodes.size()) - 1;
    }
    check_invariant(position.size() == ctx.x.size(), "level-1 solution has edges off the s-t path");

    std::vector<int> points;
    for (const auto& f : ctx.omega) {
        points.push_back(position.at(f.front()));
    }
    PathFinder finder(g, unchosen_mask(g, ctx.x));
    std::vector<Link> links;
    std::vector<Interval> intervals;
    for (std::size_t b = 1; b < nodes.size(); ++b) {
        const auto labels = finder.labels_to(nodes[b]);
        for (std::size_t a = 0; a < b; ++a) {
            Link link{nodes[a], nodes[b], {}, 0};
            if (!finder.path(nodes[a], nodes[b], labels, link.path)) {
                continue;
            }
            link.cost = labels[idx(nodes[a])].cost;
            intervals.push_back(Interval{static_cast<int>(a) + 1, static_cast<int>(b), link.cost});
            links.push_back(std::move(link));
        }
    }
    std::vector<std::vector<int>> covered_by(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t l = 0; l < intervals.size(); ++l) {
            if (intervals[l].lo <= points[p] && points[p] <= intervals[l].hi) {
                covered_by[p].push_back(static_cast<int>(l));
            }
        }
    }
    rec.link_count = links.size();
    rec.lp_value = covering_lp_value(links, covered_by);
    const IntervalCover cover = cover_intervals_exact(points, intervals);
    rec.rounded_cost = cover.cost;
    return paths_of(links, cover.chosen);
}

// Level 1 for spanning trees: cover tree edges by links along non-tree edges.
EdgeSet augment_tree(const Instance& inst, const StepContext& ctx, LevelRecord& rec)
{
    const auto& g = inst.graph;
    check_invariant(static_cast<int>(ctx.x.size()) == g.node_count - 1, "level-1 solution is not a spanning tree");
    std::vector<int> parent_edge(idx(g.node_count), -1);
    std::vector<int> depth(idx(g.node_count), -1);
    std::vector<NodeId> order{0};
    depth[0] = 0;
    for (std::size_t q = 0; q < order.size(); ++q) {
        const NodeId x = order[q];
        for (EdgeIndex e : g.rotation[idx(x)]) {
            if (!contains(ctx.x, e)) {
                continue;
            }
            const NodeId y = g.other_end(e, x);
            if (depth[idx(y)] < 0) {
                depth[idx(y)] = depth[idx(x)] + 1;
                parent_edge[idx(y)] = e;
                order.push_back(y);
            }
        }
    }
    check_invariant(static_cast<int>(order.size()) == g.node_count, "level-1 solution does not span");
    auto tree_path = [&](NodeId a, NodeId b) {
        EdgeSet out;
        while (a != b) {
            if (depth[idx(a)] < depth[idx(b)]) {
                std::swap(a, b);
            }
            const EdgeIndex e = parent_edge[idx(a)];
            out.push_back(e);
            a = g.other_end(e, a);
        }
        return normalized(std::move(out));
    };

    const auto allowed = unchosen_mask(g, ctx.x);
    PathFinder finder(g, allowed);
    std::vector<Link> links;
    std::vector<EdgeSet> spans;
    std::map<std::pair<NodeId, NodeId>, bool> seen;
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (!allowed[idx(e)]) {
            continue;
        }
        NodeId u = g.edges[idx(e)].u;
        NodeId v = g.edges[idx(e)].v;
        if (u > v) {
            std::swap(u, v);
        }
        if (seen.emplace(std::make_pair(u, v), true).second) {
            Link link{u, v, {}, 0};
            finder.shortest_path(u, v, link.path, link.cost);
            spans.push_back(tree_path(u, v));
            links.push_back(std::move(link));
        }
    }
    SetCoverInstance sc;
    sc.elements = static_cast<int>(ctx.omega.size());
    sc.sets.resize(links.size());
    std::vector<std::vector<int>> covered_by(ctx.omega.size());
    for (std::size_t q = 0; q < ctx.omega.size(); ++q) {
        for (std::size_t l = 0; l < links.size(); ++l) {
            if (contains(spans[l], ctx.omega[q].front())) {
                sc.sets[l].push_back(static_cast<int>(q));
                covered_by[q].push_back(static_cast<int>(l));
            }
        }
    }
    for (const auto& l : links) {
        sc.costs.push_back(l.cost);
    }
    rec.link_count = links.size();
    rec.lp_value = covering_lp_value(links, covered_by);
    const SetCoverResult cover = solve_set_cover(sc);
    rec.rounded_cost = cover.cost;
    return paths_of(links, cover.chosen);
}

EdgeSet augment_faces(const StepContext& ctx, const SolveOptions& options, LevelRecord& rec)
{
    rec.face_checks = validate_face_structure(ctx);
    const auto links = enumerate_typed_links(ctx);
    rec.link_count = links.size();
    LinkLpOptions lp_options;
    lp_options.dump = options.dump_lp ? &rec.lp_dump : nullptr;
    const FractionalCover cover = solve_link_lp(ctx, links, lp_options);
    rec.lp_value = cover.value;
    rec.oracle_calls = cover.oracle_calls;
    rec.lp_rounds = cover.rounds;
    const ScenarioPartition part = partition_scenarios(ctx, links, cover.x);
    EdgeSet added;
    for (int face = 0; face < ctx.sub.face_count(); ++face) {
        FaceRounding fr = round_face(ctx, face, part, links);
        if (fr.scenario_count == 0) {
            continue;
        }
        rec.rounded_cost += fr.cost;
        for (int l : fr.chosen) {
            added.insert(added.end(), links[idx(l)].path.begin(), links[idx(l)].path.end());
        }
        if (options.measure_gaps) {
            rec.gaps.push_back(measure_face_gap(ctx, face, part.face_omega[idx(face)], links));
        }
        rec.faces.push_back(std::move(fr));
    }
    return normalized(std::move(added));
}

} // namespace

EdgeSet initial_solution(const Instance& inst)
{
    const auto& g = inst.graph;
    if (inst.problem == Problem::mst) {
        return minimum_spanning_tree(g);
    }
    std::vector<char> all(idx(g.edge_slots()), 1);
    PathFinder finder(g, all);
    std::vector<EdgeIndex> path;
    Weight cost = 0;
    if (!finder.shortest_path(inst.s, inst.t, path, cost)) {
        throw InfeasibleError("s and t are not connected");
    }
    return normalized(std::move(path));
}

EdgeSet augment_step(const Instance& inst, const EdgeSet& x, int level, const SolveOptions& options,
                     LevelRecord* record)
{
    LevelRecord local;
    LevelRecord& rec = record != nullptr ? *record : local;
    rec = LevelRecord{};
    rec.level = level;
    const StepContext ctx = preprocess_step(inst, x, level, options.omega_cap);
    rec.omega = ctx.omega;
    rec.contracted = ctx.contracted;
    EdgeSet added;
    if (!ctx.omega.empty()) {
        if (level == 1) {
            added = inst.problem == Problem::st ? augment_path(inst, ctx, rec) : augment_tree(inst, ctx, rec);
        } else {
            added = augment_faces(ctx, options, rec);
        }
    }
    rec.added = added;
    rec.added_weight = inst.weight_of(set_difference(added, x));
    rec.bound = 8.0 * level * rec.lp_value;
    check_invariant(static_cast<double>(rec.rounded_cost) <= rec.bound + 1e-6,
                    "level " + std::to_string(level) + " rounded cost exceeds 8*i*l(x*)");
    check_invariant(feasible_for_level(inst, set_union(x, added), level, options.omega_cap),
                    "augmented solution still fails a scenario of size " + std::to_string(level));
    return added;
}

SolveResult solve(const Instance& inst, const SolveOptions& options)
{
    precheck_feasibility(inst);
    SolveResult result;
    SolveTrace& trace = result.trace;
    trace.problem = inst.problem;
    trace.k = inst.diameter();
    trace.x0 = initial_solution(inst);
    trace.x0_cost = inst.weight_of(trace.x0);
    EdgeSet x = trace.x0;
    Weight running = trace.x0_cost;
    for (int level = 1; level <= trace.k; ++level) {
        LevelRecord rec;
        const EdgeSet added = augment_step(inst, x, level, options, &rec);
        x = set_union(x, added);
        running += rec.added_weight;
        trace.levels.push_back(std::move(rec));
    }
    check_invariant(is_feasible(inst, x), "final solution fails a full scenario");
    result.chosen = x;
    result.cost = inst.weight_of(x);
    check_invariant(result.cost == running, "solution cost differs from the per-level sum");
    trace.alg = result.cost;
    return result;
}

} // namespace bulkrobust

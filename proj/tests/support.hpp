#pragma once

// Fixtures and brute-force references shared by the tests. The references use their own
// traversal and enumeration code so they do not inherit bugs from the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "bulkrobust/driver.hpp"
#include "bulkrobust/generators.hpp"
#include "bulkrobust/instance.hpp"
#include "bulkrobust/links.hpp"
#include "bulkrobust/lp.hpp"
#include "bulkrobust/rounding.hpp"

namespace fixture {

using namespace bulkrobust;

inline Instance make(int n, std::vector<Edge> edges, std::vector<std::vector<EdgeIndex>> rotation, Problem problem,
                     NodeId s, NodeId t, std::vector<EdgeSet> scenarios)
{
    Instance inst;
    inst.problem = problem;
    inst.s = s;
    inst.t = t;
    inst.graph.node_count = n;
    inst.graph.edges = std::move(edges);
    inst.graph.present.assign(inst.graph.edges.size(), 1);
    inst.graph.rotation = std::move(rotation);
    inst.scenarios = std::move(scenarios);
    return inst;
}

// e0 = {0,1}, e1 = {0,2}, e2 = {2,1}; s = 0, t = 1; scenario [e0].
inline Instance triangle(Weight w0 = 1, Weight w1 = 1, Weight w2 = 1)
{
    return make(3, {{0, 0, 1, w0}, {1, 0, 2, w1}, {2, 2, 1, w2}}, {{0, 1}, {2, 0}, {1, 2}}, Problem::st, 0, 1, {{0}});
}

// Cycle s=0, a=1, t=2, b=3 with e0 = sa, e1 = at, e2 = tb, e3 = bs. The optional chord
// e4 = st splits one of the two faces.
inline Instance square(bool chord = false, Weight chord_weight = 5, std::vector<EdgeSet> scenarios = {{0, 2}})
{
    std::vector<Edge> edges{{0, 0, 1, 1}, {1, 1, 2, 1}, {2, 2, 3, 1}, {3, 3, 0, 1}};
    std::vector<std::vector<EdgeIndex>> rot{{0, 3}, {1, 0}, {2, 1}, {3, 2}};
    if (chord) {
        edges.push_back({4, 0, 2, chord_weight});
        rot[0] = {0, 4, 3};
        rot[2] = {2, 4, 1};
    }
    return make(4, edges, rot, Problem::st, 0, 2, std::move(scenarios));
}

inline EdgeSet all_edges(const Instance& inst)
{
    EdgeSet out;
    for (EdgeIndex e = 0; e < inst.graph.edge_slots(); ++e) {
        if (inst.graph.is_present(e)) {
            out.push_back(e);
        }
    }
    return out;
}

} // namespace fixture

namespace ref {

using namespace bulkrobust;

// Plain BFS over an explicit edge list.
inline std::vector<int> components(int n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int c = 0;
    for (int r = 0; r < n; ++r) {
        if (comp[static_cast<std::size_t>(r)] >= 0) {
            continue;
        }
        std::vector<int> stack{r};
        comp[static_cast<std::size_t>(r)] = c;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[static_cast<std::size_t>(x)]) {
                if (comp[static_cast<std::size_t>(y)] < 0) {
                    comp[static_cast<std::size_t>(y)] = c;
                    stack.push_back(y);
                }
            }
        }
        ++c;
    }
    return comp;
}

inline std::vector<std::pair<int, int>> pairs_of(const EmbeddedGraph& g, const std::function<bool(EdgeIndex)>& keep)
{
    std::vector<std::pair<int, int>> out;
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (g.is_present(e) && keep(e)) {
            out.emplace_back(g.edges[static_cast<std::size_t>(e)].u, g.edges[static_cast<std::size_t>(e)].v);
        }
    }
    return out;
}

inline bool meets(const Instance& inst, const std::function<bool(EdgeIndex)>& keep)
{
    auto comp = components(inst.graph.node_count, pairs_of(inst.graph, keep));
    if (inst.problem == Problem::st) {
        return comp[static_cast<std::size_t>(inst.s)] == comp[static_cast<std::size_t>(inst.t)];
    }
    return std::all_of(comp.begin(), comp.end(), [&](int c) { return c == comp[0]; });
}

inline bool feasible(const Instance& inst, const std::set<EdgeIndex>& s)
{
    if (!meets(inst, [&](EdgeIndex e) { return s.count(e) != 0; })) {
        return false;
    }
    for (const auto& f : inst.scenarios) {
        std::set<EdgeIndex> fs(f.begin(), f.end());
        if (!meets(inst, [&](EdgeIndex e) { return s.count(e) != 0 && fs.count(e) == 0; })) {
            return false;
        }
    }
    return true;
}

// Exhaustive optimum over all edge subsets (small m only).
inline std::optional<Weight> opt(const Instance& inst)
{
    const auto edges = fixture::all_edges(inst);
    const std::size_t m = edges.size();
    std::optional<Weight> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Weight w = 0;
        std::set<EdgeIndex> s;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                s.insert(edges[i]);
                w += inst.graph.edges[static_cast<std::size_t>(edges[i])].weight;
            }
        }
        if (best && w >= *best) {
            continue;
        }
        if (feasible(inst, s)) {
            best = w;
        }
    }
    return best;
}

inline int vertex_cover(const Hypergraph& h)
{
    std::vector<int> nodes;
    for (const auto& p : h.parts) {
        nodes.insert(nodes.end(), p.begin(), p.end());
    }
    int best = static_cast<int>(nodes.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nodes.size()); ++mask) {
        std::set<int> chosen;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (mask >> i & 1) {
                chosen.insert(nodes[i]);
            }
        }
        bool ok = std::all_of(h.hyperedges.begin(), h.hyperedges.end(), [&](const std::vector<int>& e) {
            return std::any_of(e.begin(), e.end(), [&](int v) { return chosen.count(v) != 0; });
        });
        if (ok) {
            best = std::min(best, static_cast<int>(chosen.size()));
        }
    }
    return best;
}

// Cheapest subset of `sets` covering `elements` elements; nullopt when impossible.
inline std::optional<Weight> set_cover(int elements, const std::vector<std::vector<int>>& sets,
                                       const std::vector<Weight>& costs)
{
    std::optional<Weight> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sets.size()); ++mask) {
        std::vector<char> hit(static_cast<std::size_t>(elements), 0);
        Weight w = 0;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            if (mask >> s & 1) {
                w += costs[s];
                for (int e : sets[s]) {
                    hit[static_cast<std::size_t>(e)] = 1;
                }
            }
        }
        if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }) && (!best || w < *best)) {
            best = w;
        }
    }
    return best;
}

// LP optimum by enumerating every basis: pick n tight constraints among the rows and the
// bounds x_j >= 0, solve, keep feasible points. Requires a bounded objective.
inline std::optional<double> lp_by_vertices(const LinearProgram& lp)
{
    const int n = lp.variable_count();
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const auto& r : lp.rows) {
        a.push_back(r.a);
        b.push_back(r.b);
    }
    for (int j = 0; j < n; ++j) {
        std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
        unit[static_cast<std::size_t>(j)] = 1.0;
        a.push_back(unit);
        b.push_back(0.0);
    }
    const int total = static_cast<int>(a.size());
    std::optional<double> best;
    std::vector<int> pick(static_cast<std::size_t>(n));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            std::vector<std::vector<double>> m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n) + 1));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    m[i][j] = a[pick[i]][j];
                }
                m[i][n] = b[pick[i]];
            }
            for (int c = 0; c < n; ++c) {
                int p = c;
                for (int r = c + 1; r < n; ++r) {
                    if (std::abs(m[r][c]) > std::abs(m[p][c])) {
                        p = r;
                    }
                }
                if (std::abs(m[p][c]) < 1e-10) {
                    return;
                }
                std::swap(m[p], m[c]);
                for (int r = 0; r < n; ++r) {
                    if (r == c) {
                        continue;
                    }
                    const double f = m[r][c] / m[c][c];
                    for (int j = c; j <= n; ++j) {
                        m[r][j] -= f * m[c][j];
                    }
                }
            }
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                x[i] = m[i][n] / m[i][i];
            }
            for (int r = 0; r < total; ++r) {
                double lhs = 0;
                for (int j = 0; j < n; ++j) {
                    lhs += a[r][j] * x[j];
                }
                if (lhs < b[r] - 1e-9) {
                    return;
                }
            }
            double v = 0;
            for (int j = 0; j < n; ++j) {
                v += lp.c[j] * x[j];
            }
            if (!best || v < *best) {
                best = v;
            }
            return;
        }
        for (int i = start; i < total; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

// Violating sets found by enumerating size-i subsets of F_j among the chosen edges.
struct Violation {
    EdgeSet set;
    double mass;
};

inline std::vector<int> sides_after_removal(const StepContext& ctx, const EdgeSet& f)
{
    const auto& g = ctx.working;
    return components(g.node_count, pairs_of(g, [&](EdgeIndex e) {
                          return std::binary_search(ctx.x_working.begin(), ctx.x_working.end(), e) &&
                                 !std::binary_search(f.begin(), f.end(), e);
                      }));
}

// Whether removing f breaks the requirement among the chosen nodes; fills the two sides.
inline bool disconnects(const StepContext& ctx, const EdgeSet& f, std::vector<int>& comp, int& anchor)
{
    comp = sides_after_removal(ctx, f);
    const auto& nodes = ctx.sub.nodes;
    if (ctx.problem == Problem::st) {
        anchor = comp[static_cast<std::size_t>(ctx.s)];
        return comp[static_cast<std::size_t>(ctx.s)] != comp[static_cast<std::size_t>(ctx.t)];
    }
    anchor = comp[static_cast<std::size_t>(nodes.front())];
    return std::any_of(nodes.begin(), nodes.end(), [&](NodeId v) { return comp[static_cast<std::size_t>(v)] != anchor; });
}

inline double mass_across(const std::vector<TypedLink>& links, const std::vector<double>& x,
                          const std::vector<int>& comp, int anchor)
{
    double m = 0;
    for (std::size_t l = 0; l < links.size(); ++l) {
        const bool su = comp[static_cast<std::size_t>(links[l].u)] == anchor;
        const bool sv = comp[static_cast<std::size_t>(links[l].v)] == anchor;
        if (su != sv) {
            m += x[l];
        }
    }
    return m;
}

inline std::vector<Violation> violations(const StepContext& ctx, const std::vector<TypedLink>& links,
                                         const std::vector<double>& x, int j, double eps)
{
    std::vector<Violation> out;
    EdgeSet pool;
    for (EdgeIndex e : ctx.scenarios[static_cast<std::size_t>(j)]) {
        if (std::binary_search(ctx.x_working.begin(), ctx.x_working.end(), e)) {
            pool.push_back(e);
        }
    }
    const int i = ctx.level;
    if (static_cast<int>(pool.size()) < i) {
        return out;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
        if (__builtin_popcountll(mask) != i) {
            continue;
        }
        EdgeSet f;
        for (std::size_t b = 0; b < pool.size(); ++b) {
            if (mask >> b & 1) {
                f.push_back(pool[b]);
            }
        }
        std::vector<int> comp;
        int anchor = 0;
        if (!disconnects(ctx, f, comp, anchor)) {
            continue;
        }
        const double m = mass_across(links, x, comp, anchor);
        if (m < 1 - eps) {
            out.push_back({f, m});
        }
    }
    return out;
}

// Two-terminal series-parallel recognizer by repeated series and parallel reductions.
inline bool series_parallel(int n, std::vector<std::pair<int, int>> edges, int s, int t)
{
    bool changed = true;
    while (changed && edges.size() > 1) {
        changed = false;
        // parallel: merge duplicates
        std::map<std::pair<int, int>, int> seen;
        std::vector<std::pair<int, int>> kept;
        for (auto [u, v] : edges) {
            auto key = std::minmax(u, v);
            if (seen[key]++ == 0) {
                kept.push_back({key.first, key.second});
            } else {
                changed = true;
            }
        }
        edges = kept;
        // series: a non-terminal node of degree two
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (auto [u, v] : edges) {
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
        }
        for (int x = 0; x < n && !changed; ++x) {
            if (x == s || x == t || deg[static_cast<std::size_t>(x)] != 2) {
                continue;
            }
            std::vector<int> ends;
            std::vector<std::pair<int, int>> rest;
            for (auto [u, v] : edges) {
                if (u == x) {
                    ends.push_back(v);
                } else if (v == x) {
                    ends.push_back(u);
                } else {
                    rest.push_back({u, v});
                }
            }
            if (ends[0] == ends[1]) {
                continue;
            }
            rest.push_back({ends[0], ends[1]});
            edges = rest;
            changed = true;
        }
    }
    return edges.size() == 1 && std::minmax(edges[0].first, edges[0].second) == std::minmax(s, t);
}

// Chord crossing by segment geometry on the unit circle.
inline bool segments_cross(int m, int p1, int p2, int q1, int q2)
{
    auto pt = [m](int p) {
        const double a = 2 * std::numbers::pi * p / m;
        return std::pair<double, double>{std::cos(a), std::sin(a)};
    };
    auto cross = [](std::pair<double, double> o, std::pair<double, double> a, std::pair<double, double> b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    auto A = pt(p1), B = pt(p2), C = pt(q1), D = pt(q2);
    const double d1 = cross(A, B, C), d2 = cross(A, B, D), d3 = cross(C, D, A), d4 = cross(C, D, B);
    return ((d1 > 1e-12 && d2 < -1e-12) || (d1 < -1e-12 && d2 > 1e-12)) &&
           ((d3 > 1e-12 && d4 < -1e-12) || (d3 < -1e-12 && d4 > 1e-12));
}

// Step contexts met while solving, rebuilt from the trace: X_{i-1} = X_0 plus earlier A's.
struct Step {
    const Instance* inst;
    StepContext ctx;
};

inline std::vector<Step> steps_of(const std::vector<Instance>& instances, int min_level, int max_level)
{
    std::vector<Step> out;
    for (const Instance& inst : instances) {
        const SolveResult res = solve(inst);
        EdgeSet x = res.trace.x0;
        for (const auto& rec : res.trace.levels) {
            if (rec.level >= min_level && rec.level <= max_level) {
                StepContext ctx = preprocess_step(inst, x, rec.level);
                if (ctx.has_subgraph()) {
                    out.push_back({&inst, std::move(ctx)});
                }
            }
            x = set_union(x, rec.added);
        }
    }
    return out;
}

} // namespace ref

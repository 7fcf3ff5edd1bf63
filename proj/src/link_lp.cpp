#include <algorithm>
#include <set>

#include "bulkrobust/error.hpp"
#include "bulkrobust/lp.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::vector<double> cover_row(const std::vector<TypedLink>& links, const FailureCut& cut)
{
    std::vector<double> a(links.size(), 0.0);
    for (std::size_t l = 0; l < links.size(); ++l) {
        if (covers(links[l], cut)) {
            a[l] = 1.0;
        }
    }
    return a;
}

} // namespace

SeparationResult separation_oracle(const StepContext& ctx, const std::vector<TypedLink>& links,
                                   const std::vector<double>& x, int scenario_index, CutMode mode)
{
    if (mode == CutMode::st && (ctx.problem != Problem::st || ctx.s < 0 || ctx.t < 0)) {
        throw InvariantError("separation_oracle: s-t mode needs terminals");
    }
    if (x.size() != links.size()) {
        throw InvariantError("separation_oracle: value vector does not match links");
    }
    if (scenario_index < 0 || idx(scenario_index) >= ctx.scenarios.size()) {
        throw InvariantError("separation_oracle: scenario index out of range");
    }
    SeparationResult result;
    if (!ctx.has_subgraph()) {
        return result;
    }
    const EdgeSet& fj = ctx.scenarios[idx(scenario_index)];
    double mass = 0.0;
    for (double v : x) {
        mass += std::max(0.0, v);
    }
    const double sentinel = ctx.level + 2 + mass;
    const auto& g = ctx.working;

    auto build = [&]() {
        MaxFlow flow(g.node_count);
        for (EdgeIndex e : ctx.x_working) {
            flow.add_edge(g.edges[idx(e)].u, g.edges[idx(e)].v, contains(fj, e) ? 1.0 : sentinel);
        }
        for (std::size_t l = 0; l < links.size(); ++l) {
            if (x[l] > 0) {
                flow.add_edge(links[l].u, links[l].v, x[l]);
            }
        }
        return flow;
    };

    std::vector<char> side;
    if (mode == CutMode::st) {
        MaxFlow flow = build();
        result.cut_value = flow.run(ctx.s, ctx.t);
        side = flow.source_side();
    } else {
        const NodeId root = ctx.sub.nodes.front();
        bool first = true;
        for (std::size_t k = 1; k < ctx.sub.nodes.size(); ++k) {
            MaxFlow flow = build();
            const double value = flow.run(root, ctx.sub.nodes[k]);
            if (first || value < result.cut_value) {
                result.cut_value = value;
                side = flow.source_side();
                first = false;
            }
        }
    }
    if (result.cut_value >= ctx.level + 1 - kEpsFeas) {
        return result;
    }
    for (EdgeIndex e : ctx.x_working) {
        const Edge& ed = g.edges[idx(e)];
        if (side[idx(ed.u)] != side[idx(ed.v)]) {
            check_invariant(contains(fj, e), "separation: sentinel edge crosses a cut below the threshold");
            result.set.push_back(e);
        }
    }
    std::sort(result.set.begin(), result.set.end());
    check_invariant(static_cast<int>(result.set.size()) == ctx.level,
                    "separation: violating cut crosses " + std::to_string(result.set.size()) +
                        " scenario edges at level " + std::to_string(ctx.level));
    result.violating = true;
    return result;
}

double cover_mass(const StepContext& ctx, const std::vector<TypedLink>& links, const std::vector<double>& x,
                  const EdgeSet& f)
{
    const FailureCut cut = failure_components(ctx, f);
    double sum = 0.0;
    for (std::size_t l = 0; l < links.size(); ++l) {
        if (covers(links[l], cut)) {
            sum += x[l];
        }
    }
    return sum;
}

LinearProgram explicit_link_lp(const StepContext& ctx, const std::vector<TypedLink>& links)
{
    LinearProgram lp;
    for (const auto& link : links) {
        lp.c.push_back(static_cast<double>(link.cost));
    }
    for (const auto& f : ctx.omega) {
        lp.add_row(cover_row(links, failure_components(ctx, f)), 1.0);
    }
    return lp;
}

FractionalCover solve_link_lp(const StepContext& ctx, const std::vector<TypedLink>& links,
                              const LinkLpOptions& options)
{
    FractionalCover out;
    out.x.assign(links.size(), 0.0);
    if (!ctx.has_subgraph()) {
        return out;
    }
    LinearProgram lp;
    for (const auto& link : links) {
        lp.c.push_back(static_cast<double>(link.cost));
    }
    const CutMode mode = cut_mode_for(ctx.problem);
    std::set<EdgeSet> added;
    bool settled = false;
    while (out.rounds < options.max_rounds) {
        ++out.rounds;
        LpResult res = simplex_min(lp);
        if (res.status == LpStatus::infeasible) {
            throw InfeasibleError("augmentation impossible: a relevant scenario has no covering link");
        }
        check_invariant(res.status == LpStatus::optimal, "link LP unbounded");
        out.x = res.x;
        bool grew = false;
        std::set<EdgeSet> fresh;
        for (int j = 0; j < static_cast<int>(ctx.scenarios.size()); ++j) {
            int inside = 0;
            for (EdgeIndex e : ctx.scenarios[idx(j)]) {
                inside += contains(ctx.x_working, e) ? 1 : 0;
            }
            if (inside < ctx.level) {
                continue;
            }
            ++out.oracle_calls;
            SeparationResult sep = separation_oracle(ctx, links, out.x, j, mode);
            if (!sep.violating) {
                continue;
            }
            // overlapping scenarios can report the same set within one round
            if (fresh.count(sep.set) != 0) {
                continue;
            }
            check_invariant(added.insert(sep.set).second, "separation returned a row the LP already satisfies");
            fresh.insert(sep.set);
            lp.add_row(cover_row(links, failure_components(ctx, sep.set)), 1.0);
            out.rows.push_back(sep.set);
            grew = true;
        }
        if (!grew) {
            settled = true;
            break;
        }
    }
    if (!settled) {
        throw InvariantError("link LP: cutting-plane round cap exceeded");
    }
    if (options.dump != nullptr) {
        *options.dump = lp.dump();
    }
    for (double& v : out.x) {
        v = std::clamp(v, 0.0, 1.0);
    }
    out.value = 0.0;
    for (std::size_t l = 0; l < links.size(); ++l) {
        out.value += static_cast<double>(links[l].cost) * out.x[l];
    }
    for (const auto& f : ctx.omega) {
        check_invariant(cover_mass(ctx, links, out.x, f) >= 1 - kEpsFeas,
                        "link LP solution leaves a relevant scenario uncovered");
    }
    return out;
}

} // namespace bulkrobust

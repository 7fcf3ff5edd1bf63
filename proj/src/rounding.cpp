#include "bulkrobust/rounding.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "bulkrobust/error.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::vector<int> links_of_face(const std::vector<TypedLink>& links, int face)
{
    std::vector<int> out;
    for (int l = 0; l < static_cast<int>(links.size()); ++l) {
        if (links[idx(l)].face == face) {
            out.push_back(l);
        }
    }
    return out;
}

// Scenario q (index into face_omega) -> face links covering it.
SetCoverInstance face_cover_instance(const StepContext& ctx, const std::vector<int>& face_omega,
                                     const std::vector<TypedLink>& links, const std::vector<int>& face_links)
{
    SetCoverInstance sc;
    sc.elements = static_cast<int>(face_omega.size());
    sc.sets.resize(face_links.size());
    for (int q = 0; q < sc.elements; ++q) {
        const FailureCut cut = failure_components(ctx, ctx.omega[idx(face_omega[idx(q)])]);
        for (std::size_t k = 0; k < face_links.size(); ++k) {
            if (covers(links[idx(face_links[k])], cut)) {
                sc.sets[k].push_back(q);
            }
        }
    }
    for (int l : face_links) {
        sc.costs.push_back(links[idx(l)].cost);
    }
    return sc;
}

} // namespace

ScenarioPartition partition_scenarios(const StepContext& ctx, const std::vector<TypedLink>& links,
                                      const std::vector<double>& x)
{
    check_invariant(ctx.level >= 1, "partition_scenarios needs level >= 1");
    check_invariant(x.size() == links.size(), "partition_scenarios: value vector does not match links");
    const int faces = ctx.sub.face_count();
    ScenarioPartition part;
    part.face_omega.resize(idx(faces));
    part.face_x.assign(idx(faces), std::vector<double>(links.size(), 0.0));
    part.face_value.assign(idx(faces), 0.0);
    for (std::size_t l = 0; l < links.size(); ++l) {
        const int f = links[l].face;
        part.face_x[idx(f)][l] = x[l];
        part.face_value[idx(f)] += static_cast<double>(links[l].cost) * x[l];
    }
    const double threshold = 1.0 / ctx.level - kEpsFeas;
    for (int q = 0; q < static_cast<int>(ctx.omega.size()); ++q) {
        const EdgeSet& f = ctx.omega[idx(q)];
        ScenarioPartition::Entry entry;
        entry.faces = faces_containing(ctx, f);
        const FailureCut cut = failure_components(ctx, f);
        double total = 0.0;
        for (int face : entry.faces) {
            double sigma = 0.0;
            for (std::size_t l = 0; l < links.size(); ++l) {
                if (links[l].face == face && covers(links[l], cut)) {
                    sigma += x[l];
                }
            }
            entry.sigma.push_back(sigma);
            total += sigma;
            if (entry.chosen < 0 && sigma >= threshold) {
                entry.chosen = face;
            }
        }
        check_invariant(total >= 1 - kEpsFeas, "partition: scenario covering mass below 1");
        check_invariant(entry.chosen >= 0, "partition: no face carries 1/i of the covering mass");
        part.face_omega[idx(entry.chosen)].push_back(q);
        part.entries.push_back(std::move(entry));
    }
    return part;
}

Chord make_chord(int p, int q)
{
    return p < q ? Chord{p, q} : Chord{q, p};
}

bool chords_intersect(const Chord& x, const Chord& y)
{
    if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) {
        throw InvariantError("chords_intersect: shared endpoint");
    }
    const bool ya_inside = x.a < y.a && y.a < x.b;
    const bool yb_inside = x.a < y.b && y.b < x.b;
    return ya_inside != yb_inside;
}

CircleInstance build_circle_instance(const StepContext& ctx, int face, const std::vector<int>& face_omega,
                                     const std::vector<TypedLink>& links, const std::vector<double>& x)
{
    check_invariant(ctx.sub.boundary_is_simple(face), "circle instance needs a simple boundary cycle");
    const auto& walk = ctx.sub.faces.walks[idx(face)];
    CircleInstance ci;
    ci.face = face;
    ci.level = ctx.level;
    std::vector<int> position(idx(ctx.working.node_count), -1);
    for (std::size_t l = 0; l < walk.size(); ++l) {
        const NodeId v = dart_tail(ctx.working, walk[l]);
        position[idx(v)] = static_cast<int>(l);
        ci.boundary.push_back(v);
        ci.boundary_edges.push_back(dart_edge(walk[l]));
    }
    for (int q : face_omega) {
        const EdgeSet& f = ctx.omega[idx(q)];
        std::vector<int> at;
        for (std::size_t l = 0; l < ci.boundary_edges.size(); ++l) {
            if (contains(f, ci.boundary_edges[l])) {
                at.push_back(2 * static_cast<int>(l) + 1);
            }
        }
        check_invariant(at.size() == 2, "scenario does not meet the face in exactly two edges");
        ci.demand.push_back(make_chord(at[0], at[1]));
        ci.demand_scenario.push_back(q);
    }
    for (int l : links_of_face(links, face)) {
        const TypedLink& link = links[idx(l)];
        const int pu = position[idx(link.u)];
        const int pv = position[idx(link.v)];
        check_invariant(pu >= 0 && pv >= 0, "link endpoint missing from its face boundary");
        ci.covering.push_back(make_chord(2 * pu, 2 * pv));
        ci.covering_link.push_back(l);
        ci.cost.push_back(link.cost);
        ci.z.push_back(ctx.level * x[idx(l)]);
    }
    // the chord picture must agree with the cut-based cover relation
    for (std::size_t d = 0; d < ci.demand.size(); ++d) {
        const FailureCut cut = failure_components(ctx, ctx.omega[idx(ci.demand_scenario[d])]);
        for (std::size_t c = 0; c < ci.covering.size(); ++c) {
            check_invariant(chords_intersect(ci.demand[d], ci.covering[c]) ==
                                covers(links[idx(ci.covering_link[c])], cut),
                            "chord intersection disagrees with the cover relation");
        }
    }
    return ci;
}

RectangleSystem chords_to_rectangles(const CircleInstance& ci)
{
    RectangleSystem rs;
    rs.size = ci.point_count();
    for (const Chord& c : ci.covering) {
        check_invariant(c.a <= c.b, "chord not normalized");
        rs.left.push_back(left_rect(c));
        rs.top.push_back(top_rect(c, rs.size));
    }
    for (std::size_t d = 0; d < ci.demand.size(); ++d) {
        const Point p = chord_point(ci.demand[d]);
        check_invariant(p.x <= p.y, "demand point below the diagonal");
        rs.points.push_back(p);
        double mass = 0.0;
        for (std::size_t c = 0; c < rs.left.size(); ++c) {
            if (rs.left[c].contains(p)) {
                mass += ci.z[c];
            }
        }
        rs.left_mass.push_back(mass);
        (mass >= 0.5 - kEpsFeas ? rs.split_left : rs.split_top).push_back(static_cast<int>(d));
    }
    return rs;
}

SetCoverResult solve_anchored_cover(const std::vector<Point>& points, const std::vector<Rect>& rects,
                                    const std::vector<Weight>& costs)
{
    SetCoverInstance sc;
    sc.elements = static_cast<int>(points.size());
    sc.sets.resize(rects.size());
    sc.costs = costs;
    for (std::size_t r = 0; r < rects.size(); ++r) {
        for (int p = 0; p < sc.elements; ++p) {
            if (rects[r].contains(points[idx(p)])) {
                sc.sets[r].push_back(p);
            }
        }
    }
    return solve_set_cover(sc);
}

FaceRounding round_face(const StepContext& ctx, int face, const ScenarioPartition& partition,
                        const std::vector<TypedLink>& links)
{
    FaceRounding fr;
    fr.face = face;
    const auto& face_omega = partition.face_omega[idx(face)];
    fr.scenario_count = static_cast<int>(face_omega.size());
    fr.lp_value = partition.face_value[idx(face)];
    fr.bound = 8.0 * ctx.level * fr.lp_value;
    fr.simple = ctx.sub.boundary_is_simple(face);
    if (face_omega.empty()) {
        return fr;
    }
    std::vector<int> picked;
    if (fr.simple) {
        CircleInstance ci = build_circle_instance(ctx, face, face_omega, links, partition.face_x[idx(face)]);
        RectangleSystem rs = chords_to_rectangles(ci);
        std::vector<Point> lp;
        for (int d : rs.split_left) {
            lp.push_back(rs.points[idx(d)]);
        }
        std::vector<Point> tp;
        for (int d : rs.split_top) {
            tp.push_back(rs.points[idx(d)]);
        }
        fr.chosen_left = solve_anchored_cover(lp, rs.left, ci.cost).chosen;
        fr.chosen_top = solve_anchored_cover(tp, rs.top, ci.cost).chosen;
        for (int c : fr.chosen_left) {
            picked.push_back(ci.covering_link[idx(c)]);
        }
        for (int c : fr.chosen_top) {
            picked.push_back(ci.covering_link[idx(c)]);
        }
        fr.circle = std::move(ci);
        fr.rectangles = std::move(rs);
    } else {
        const auto face_links = links_of_face(links, face);
        const auto result = solve_set_cover(face_cover_instance(ctx, face_omega, links, face_links));
        for (int k : result.chosen) {
            picked.push_back(face_links[idx(k)]);
        }
    }
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    fr.chosen = picked;
    for (int l : picked) {
        fr.cost += links[idx(l)].cost;
    }
    for (int q : face_omega) {
        const FailureCut cut = failure_components(ctx, ctx.omega[idx(q)]);
        bool hit = false;
        for (int l : picked) {
            hit = hit || covers(links[idx(l)], cut);
        }
        check_invariant(hit, "rounded face leaves a scenario uncovered");
    }
    if (static_cast<double>(fr.cost) > fr.bound + 1e-6) {
        std::ostringstream os;
        os << "rounding bound violated on face " << face << " at level " << ctx.level << ": cost " << fr.cost
           << " > 8*i*l(x) = " << fr.bound << "; scenarios";
        for (int q : face_omega) {
            os << " {";
            for (EdgeIndex e : ctx.omega[idx(q)]) {
                os << ' ' << ctx.working.edges[idx(e)].id;
            }
            os << " }";
        }
        os << "; links";
        for (int l : links_of_face(links, face)) {
            os << " (" << links[idx(l)].u << ',' << links[idx(l)].v << ",c=" << links[idx(l)].cost
               << ",x=" << partition.face_x[idx(face)][idx(l)] << ')';
        }
        throw InvariantError(os.str());
    }
    return fr;
}

FaceGap measure_face_gap(const StepContext& ctx, int face, const std::vector<int>& face_omega,
                         const std::vector<TypedLink>& links)
{
    FaceGap gap;
    gap.face = face;
    if (face_omega.empty()) {
        return gap;
    }
    const auto face_links = links_of_face(links, face);
    const SetCoverInstance sc = face_cover_instance(ctx, face_omega, links, face_links);
    gap.integral = solve_set_cover(sc).cost;
    LinearProgram lp;
    for (Weight c : sc.costs) {
        lp.c.push_back(static_cast<double>(c));
    }
    for (int q = 0; q < sc.elements; ++q) {
        std::vector<double> row(sc.sets.size(), 0.0);
        for (std::size_t k = 0; k < sc.sets.size(); ++k) {
            if (std::find(sc.sets[k].begin(), sc.sets[k].end(), q) != sc.sets[k].end()) {
                row[k] = 1.0;
            }
        }
        lp.add_row(std::move(row), 1.0);
    }
    const LpResult res = simplex_min(lp);
    check_invariant(res.status == LpStatus::optimal, "face gap LP not optimal");
    gap.fractional = res.value;
    if (gap.fractional <= kEpsLp) {
        gap.ratio = gap.integral == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
        gap.ratio = static_cast<double>(gap.integral) / gap.fractional;
    }
    return gap;
}

IntervalCover cover_intervals_exact(std::vector<int> points, const std::vector<Interval>& intervals)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    constexpr Weight kNone = std::numeric_limits<Weight>::max();
    // before[I] = number of points left of the interval
    std::vector<std::size_t> before(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].cost < 0) {
            throw InvariantError("interval cover: negative cost");
        }
        before[i] = static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), intervals[i].lo) -
                                             points.begin());
    }
    std::vector<Weight> dp(n + 1, kNone);
    std::vector<int> choice(n + 1, -1);
    dp[0] = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const int p = points[k - 1];
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            const Interval& iv = intervals[i];
            if (iv.lo > p || p > iv.hi || dp[before[i]] == kNone) {
                continue;
            }
            const Weight value = iv.cost + dp[before[i]];
            if (value < dp[k]) {
                dp[k] = value;
                choice[k] = static_cast<int>(i);
            }
        }
        if (dp[k] == kNone) {
            throw InfeasibleError("interval cover: point " + std::to_string(p) + " lies in no interval");
        }
    }
    IntervalCover out;
    out.cost = dp[n];
    for (std::size_t k = n; k > 0;) {
        const int i = choice[k];
        out.chosen.push_back(i);
        k = before[idx(i)];
    }
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

} // namespace bulkrobust

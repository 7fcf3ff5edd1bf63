#include <doctest.h>

#include "bulkrobust/error.hpp"
#include "bulkrobust/rounding.hpp"
#include "bulkrobust/suite.hpp"
#include "support.hpp"

using namespace bulkrobust;

namespace {

std::vector<Instance> family(const std::string& name, int count, std::uint64_t seed)
{
    std::vector<Instance> out;
    for (auto& e : make_family(name, count, seed)) {
        out.push_back(std::move(e.inst));
    }
    return out;
}

// Square with an s-t chord inside each face.
Instance square_two_chords(Weight c)
{
    Instance sq = fixture::square(true, c);
    sq.graph.edges.push_back({5, 0, 2, c});
    sq.graph.present.push_back(1);
    sq.graph.rotation[0] = {0, 4, 3, 5};
    sq.graph.rotation[2] = {2, 4, 1, 5};
    return sq;
}

int position(const std::vector<EdgeIndex>& walk, EdgeIndex e)
{
    return static_cast<int>(std::find(walk.begin(), walk.end(), e) - walk.begin());
}

int node_position(const std::vector<NodeId>& walk, NodeId v)
{
    return static_cast<int>(std::find(walk.begin(), walk.end(), v) - walk.begin());
}

} // namespace

TEST_CASE("chord crossing")
{
    CHECK(chords_intersect(make_chord(1, 5), make_chord(2, 6)));
    CHECK_FALSE(chords_intersect(make_chord(1, 3), make_chord(5, 7)));
    CHECK(chords_intersect(make_chord(1, 5), make_chord(0, 2)));
    CHECK_FALSE(chords_intersect(make_chord(1, 5), make_chord(2, 4)));
    CHECK(make_chord(5, 1).a == 1);
    CHECK_THROWS_AS(chords_intersect(make_chord(1, 5), make_chord(5, 7)), InvariantError);
}

TEST_CASE("rectangle formulas")
{
    const Chord beta = make_chord(2, 6);
    const Rect l = left_rect(beta);
    const Rect t = top_rect(beta, 8);
    CHECK(l.x0 == 0);
    CHECK(l.x1 == 2);
    CHECK(l.y0 == 2);
    CHECK(l.y1 == 6);
    CHECK(t.x0 == 2);
    CHECK(t.x1 == 6);
    CHECK(t.y0 == 6);
    CHECK(t.y1 == 7);
    CHECK(l.contains(chord_point(make_chord(1, 5))));
    // interleaved pair alpha = (v1, v3), beta = (v2, v4)
    CHECK(left_rect(make_chord(2, 4)).contains(chord_point(make_chord(1, 3))));
}

TEST_CASE("crossing matches rectangle containment and geometry on every small circle")
{
    for (int m = 4; m <= 12; ++m) {
        for (int a1 = 0; a1 < m; ++a1) {
            for (int a2 = a1 + 1; a2 < m; ++a2) {
                for (int b1 = 0; b1 < m; ++b1) {
                    for (int b2 = b1 + 1; b2 < m; ++b2) {
                        if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) {
                            continue;
                        }
                        const Chord alpha{a1, a2};
                        const Chord beta{b1, b2};
                        const bool crossing = chords_intersect(alpha, beta);
                        const Point q = chord_point(alpha);
                        CHECK(crossing == (left_rect(beta).contains(q) || top_rect(beta, m).contains(q)));
                        CHECK(crossing == ref::segments_cross(m, a1, a2, b1, b2));
                    }
                }
            }
        }
    }
}

TEST_CASE("anchored cover examples")
{
    SetCoverResult r = solve_anchored_cover({{1, 2}}, {{0, 2, 0, 3}, {0, 3, 0, 3}}, {3, 5});
    CHECK(r.cost == 3);
    CHECK(r.chosen == std::vector<int>{0});

    // A covers both points, B and C one each
    r = solve_anchored_cover({{1, 2}, {2, 5}}, {{0, 3, 0, 6}, {0, 1, 2, 2}, {0, 2, 5, 5}}, {3, 1, 1});
    CHECK(r.cost == 2);
    CHECK(r.chosen == std::vector<int>{1, 2});

    r = solve_anchored_cover({}, {{0, 3, 0, 6}}, {3});
    CHECK(r.cost == 0);
    CHECK(r.chosen.empty());
}

TEST_CASE("anchored cover against enumeration")
{
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = static_cast<int>(rng.uniform(4, 12));
        std::vector<Point> pts;
        const int np = static_cast<int>(rng.uniform(0, 6));
        for (int i = 0; i < np; ++i) {
            const int a = static_cast<int>(rng.uniform(0, m - 2));
            pts.push_back({a, static_cast<int>(rng.uniform(a + 1, m - 1))});
        }
        std::vector<Rect> rects;
        std::vector<Weight> costs;
        const int nr = static_cast<int>(rng.uniform(1, 10));
        for (int i = 0; i < nr; ++i) {
            const int a = static_cast<int>(rng.uniform(0, m - 2));
            const Chord c{a, static_cast<int>(rng.uniform(a + 1, m - 1))};
            rects.push_back(rng.uniform(0, 1) ? left_rect(c) : top_rect(c, m));
            costs.push_back(rng.uniform(0, 9));
        }
        std::vector<std::vector<int>> sets(rects.size());
        for (std::size_t r = 0; r < rects.size(); ++r) {
            for (std::size_t p = 0; p < pts.size(); ++p) {
                if (rects[r].contains(pts[p])) {
                    sets[r].push_back(static_cast<int>(p));
                }
            }
        }
        const auto expect = ref::set_cover(np, sets, costs);
        if (!expect) {
            CHECK_THROWS(solve_anchored_cover(pts, rects, costs));
            continue;
        }
        const SetCoverResult got = solve_anchored_cover(pts, rects, costs);
        CHECK(got.cost == *expect);
        Weight sum = 0;
        for (int r : got.chosen) {
            sum += costs[static_cast<std::size_t>(r)];
        }
        CHECK(sum == got.cost);
        for (const Point& p : pts) {
            CHECK(std::any_of(got.chosen.begin(), got.chosen.end(), [&](int r) { return rects[static_cast<std::size_t>(r)].contains(p); }));
        }
    }
}

TEST_CASE("interval cover examples")
{
    IntervalCover c = cover_intervals_exact({1, 3}, {{1, 2, 1}, {3, 3, 1}, {1, 3, 3}});
    CHECK(c.cost == 2);
    CHECK(c.chosen == std::vector<int>{0, 1});
    c = cover_intervals_exact({4}, {{2, 6, 7}});
    CHECK(c.cost == 7);
    CHECK(c.chosen == std::vector<int>{0});
    c = cover_intervals_exact({}, {{2, 6, 7}});
    CHECK(c.cost == 0);
    CHECK(c.chosen.empty());
    CHECK_THROWS_AS(cover_intervals_exact({9}, {{2, 6, 7}}), InfeasibleError);
}

TEST_CASE("interval cover against enumeration")
{
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> pts;
        const int np = static_cast<int>(rng.uniform(0, 6));
        for (int i = 0; i < np; ++i) {
            pts.push_back(static_cast<int>(rng.uniform(0, 15)));
        }
        std::vector<Interval> iv;
        const int ni = static_cast<int>(rng.uniform(1, 12));
        for (int i = 0; i < ni; ++i) {
            const int lo = static_cast<int>(rng.uniform(0, 15));
            iv.push_back({lo, static_cast<int>(rng.uniform(lo, 15)), rng.uniform(0, 9)});
        }
        std::vector<int> uniq = pts;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<std::vector<int>> sets(iv.size());
        for (std::size_t i = 0; i < iv.size(); ++i) {
            for (std::size_t p = 0; p < uniq.size(); ++p) {
                if (iv[i].lo <= uniq[p] && uniq[p] <= iv[i].hi) {
                    sets[i].push_back(static_cast<int>(p));
                }
            }
        }
        const auto expect = ref::set_cover(static_cast<int>(uniq.size()), sets, [&] {
            std::vector<Weight> c;
            for (const auto& i : iv) {
                c.push_back(i.cost);
            }
            return c;
        }());
        if (!expect) {
            CHECK_THROWS_AS(cover_intervals_exact(pts, iv), InfeasibleError);
            continue;
        }
        const IntervalCover got = cover_intervals_exact(pts, iv);
        CHECK(got.cost == *expect);
        Weight sum = 0;
        for (int i : got.chosen) {
            sum += iv[static_cast<std::size_t>(i)].cost;
        }
        CHECK(sum == got.cost);
    }
}

TEST_CASE("partition ties and thresholds")
{
    Instance sq = square_two_chords(4);
    StepContext ctx = preprocess_step(sq, {0, 1, 2, 3}, 2);
    auto links = enumerate_typed_links(ctx);
    REQUIRE(links.size() == 2);

    ScenarioPartition even = partition_scenarios(ctx, links, {0.5, 0.5});
    REQUIRE(even.entries.size() == 1);
    CHECK(even.entries[0].faces.size() == 2);
    CHECK(even.entries[0].chosen == even.entries[0].faces[0]);
    CHECK(even.entries[0].sigma[0] == doctest::Approx(0.5));

    ScenarioPartition skew = partition_scenarios(ctx, links, {0.2, 0.8});
    CHECK(skew.entries[0].chosen == links[1].face);
    CHECK(skew.face_omega[static_cast<std::size_t>(links[1].face)] == std::vector<int>{0});
    CHECK(skew.face_omega[static_cast<std::size_t>(links[0].face)].empty());

    // the face without scenarios rounds to nothing
    FaceRounding empty = round_face(ctx, links[0].face, skew, links);
    CHECK(empty.chosen.empty());
    CHECK(empty.cost == 0);

    CHECK_THROWS_AS(partition_scenarios(ctx, links, {0.2, 0.2}), InvariantError);
}

TEST_CASE("triangle rounding")
{
    StepContext ctx = preprocess_step(fixture::triangle(), {0}, 1);
    auto links = enumerate_typed_links(ctx);
    ScenarioPartition part = partition_scenarios(ctx, links, {1.0});
    REQUIRE(part.face_omega.size() == 1);
    CHECK(part.face_omega[0] == std::vector<int>{0});
    CHECK(part.entries[0].sigma == std::vector<double>{1.0});
    FaceRounding fr = round_face(ctx, 0, part, links);
    CHECK(fr.chosen == std::vector<int>{0});
    CHECK(fr.cost == 2);
    CHECK(fr.bound == doctest::Approx(16));
}

TEST_CASE("circle instance on a four-cycle face")
{
    // square with one s-t chord, both diagonal pairs as scenarios, so nothing is contracted
    Instance sq = fixture::square(true, 5, {{0, 2}, {1, 3}});
    StepContext ctx = preprocess_step(sq, {0, 1, 2, 3}, 2);
    REQUIRE(ctx.omega.size() == 2);
    CHECK(ctx.contracted.empty());
    auto links = enumerate_typed_links(ctx);
    REQUIRE(links.size() == 1);
    const int face = links[0].face;
    ScenarioPartition part = partition_scenarios(ctx, links, {1.0});
    CircleInstance ci = build_circle_instance(ctx, face, part.face_omega[static_cast<std::size_t>(face)], links,
                                              part.face_x[static_cast<std::size_t>(face)]);
    CHECK(ci.boundary.size() == 4);
    CHECK(ci.point_count() == 8);
    REQUIRE(ci.demand.size() == 2);
    for (std::size_t d = 0; d < ci.demand.size(); ++d) {
        const EdgeSet& f = ctx.omega[static_cast<std::size_t>(ci.demand_scenario[d])];
        const Chord want = make_chord(2 * position(ci.boundary_edges, f[0]) + 1, 2 * position(ci.boundary_edges, f[1]) + 1);
        CHECK(ci.demand[d].a == want.a);
        CHECK(ci.demand[d].b == want.b);
    }
    REQUIRE(ci.covering.size() == 1);
    const Chord link = make_chord(2 * node_position(ci.boundary, links[0].u), 2 * node_position(ci.boundary, links[0].v));
    CHECK(ci.covering[0].a == link.a);
    CHECK(ci.covering[0].b == link.b);
    CHECK(ci.cost == std::vector<Weight>{5});
    CHECK(ci.z == std::vector<double>{2.0});
    for (const Chord& d : ci.demand) {
        CHECK(chords_intersect(d, ci.covering[0]));
    }
    FaceRounding fr = round_face(ctx, face, part, links);
    CHECK(fr.chosen == std::vector<int>{0});
    CHECK(fr.cost == 5);
    CHECK(fr.simple);
}

TEST_CASE("rounding properties along real solves")
{
    auto insts = family("grid", 40, 2);
    auto more = family("sp", 40, 2);
    insts.insert(insts.end(), more.begin(), more.end());
    const auto steps = ref::steps_of(insts, 2, 4);
    REQUIRE(steps.size() > 5);
    for (const auto& step : steps) {
        const StepContext& ctx = step.ctx;
        const auto links = enumerate_typed_links(ctx);
        const FractionalCover fc = solve_link_lp(ctx, links);
        const ScenarioPartition part = partition_scenarios(ctx, links, fc.x);
        double total = 0;
        for (double v : part.face_value) {
            total += v;
        }
        CHECK(total == doctest::Approx(fc.value).epsilon(1e-9));
        double summed_cost = 0;
        for (int face = 0; face < ctx.sub.face_count(); ++face) {
            const FaceRounding fr = round_face(ctx, face, part, links);
            CHECK(static_cast<double>(fr.cost) <= 8.0 * ctx.level * part.face_value[static_cast<std::size_t>(face)] + 1e-6);
            summed_cost += static_cast<double>(fr.cost);
            for (int q : part.face_omega[static_cast<std::size_t>(face)]) {
                const FailureCut cut = failure_components(ctx, ctx.omega[static_cast<std::size_t>(q)]);
                CHECK(std::any_of(fr.chosen.begin(), fr.chosen.end(),
                                  [&](int l) { return covers(links[static_cast<std::size_t>(l)], cut); }));
            }
            if (fr.circle) {
                // chord crossing and the cover relation agree
                const CircleInstance& ci = *fr.circle;
                for (std::size_t d = 0; d < ci.demand.size(); ++d) {
                    const FailureCut cut = failure_components(ctx, ctx.omega[static_cast<std::size_t>(ci.demand_scenario[d])]);
                    for (std::size_t c = 0; c < ci.covering.size(); ++c) {
                        CHECK(chords_intersect(ci.demand[d], ci.covering[c]) ==
                              covers(links[static_cast<std::size_t>(ci.covering_link[c])], cut));
                    }
                }
                // every demand point lands on the side carrying half its mass
                const RectangleSystem& rs = *fr.rectangles;
                CHECK(rs.split_left.size() + rs.split_top.size() == ci.demand.size());
            }
            const FaceGap gap = measure_face_gap(ctx, face, part.face_omega[static_cast<std::size_t>(face)], links);
            CHECK(static_cast<double>(gap.integral) >= gap.fractional - 1e-6);
            CHECK(gap.ratio <= 8.0 + 1e-9);
        }
        CHECK(summed_cost <= 8.0 * ctx.level * fc.value + 1e-6);
    }
}

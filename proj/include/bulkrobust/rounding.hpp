#pragma once

#include <optional>
#include <vector>

#include "bulkrobust/links.hpp"
#include "bulkrobust/lp.hpp"
#include "bulkrobust/set_cover.hpp"

namespace bulkrobust {

struct ScenarioPartition {
    struct Entry {
        std::vector<int> faces;     // the level faces holding the scenario, ascending
        std::vector<double> sigma;  // covering mass per listed face
        int chosen = -1;            // j[F]
    };
    std::vector<Entry> entries;                  // per member of ctx.omega
    std::vector<std::vector<int>> face_omega;    // omega indices assigned to each face
    std::vector<std::vector<double>> face_x;     // x restricted to each face's links
    std::vector<double> face_value;              // l(x^(j))
};

ScenarioPartition partition_scenarios(const StepContext& ctx, const std::vector<TypedLink>& links,
                                      const std::vector<double>& x);

/// Chord between two circle positions, stored with a < b.
struct Chord {
    int a = 0;
    int b = 0;
};

Chord make_chord(int p, int q);

/// True iff the endpoints strictly alternate around the circle.
bool chords_intersect(const Chord& x, const Chord& y);

/// Boundary nodes v_l sit at positions 2l, subdivision points w_l at 2l+1 (w_l on the
/// boundary edge from v_l to v_{l+1}).
struct CircleInstance {
    int face = -1;
    int level = 0;
    std::vector<NodeId> boundary;
    std::vector<EdgeIndex> boundary_edges;
    std::vector<Chord> demand;
    std::vector<int> demand_scenario;  // index into ctx.omega
    std::vector<Chord> covering;
    std::vector<int> covering_link;    // index into the link list
    std::vector<Weight> cost;
    std::vector<double> z;             // level * x

    [[nodiscard]] int point_count() const { return 2 * static_cast<int>(boundary.size()); }
};

/// Requires a simple boundary cycle; throws InvariantError otherwise.
CircleInstance build_circle_instance(const StepContext& ctx, int face, const std::vector<int>& face_omega,
                                     const std::vector<TypedLink>& links, const std::vector<double>& x);

struct Point {
    int x = 0;
    int y = 0;
};

struct Rect {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    [[nodiscard]] bool contains(const Point& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }
};

inline Point chord_point(const Chord& c) { return {c.a, c.b}; }
/// [0, l] x [l, r] for chord (l, r).
inline Rect left_rect(const Chord& c) { return {0, c.a, c.a, c.b}; }
/// [l, r] x [r, m - 1] for chord (l, r) on a circle of m points.
inline Rect top_rect(const Chord& c, int m) { return {c.a, c.b, c.b, m - 1}; }

struct RectangleSystem {
    int size = 0;  // m
    std::vector<Point> points;
    std::vector<Rect> left;
    std::vector<Rect> top;
    std::vector<double> left_mass;  // per demand point
    std::vector<int> split_left;    // demand indices
    std::vector<int> split_top;
};

RectangleSystem chords_to_rectangles(const CircleInstance& ci);

/// Minimum-cost subset of rectangles covering all points; exact.
SetCoverResult solve_anchored_cover(const std::vector<Point>& points, const std::vector<Rect>& rects,
                                    const std::vector<Weight>& costs);

struct FaceRounding {
    int face = -1;
    bool simple = false;  // false means the direct covering fallback ran
    int scenario_count = 0;
    std::vector<int> chosen;  // link indices, ascending
    Weight cost = 0;
    double lp_value = 0.0;  // l(x^(j))
    double bound = 0.0;     // 8 i l(x^(j))
    std::optional<CircleInstance> circle;
    std::optional<RectangleSystem> rectangles;
    std::vector<int> chosen_left;  // covering chord indices picked per side
    std::vector<int> chosen_top;
};

/// Rounds one face. Throws InvariantError if the result misses a scenario or exceeds the
/// 8 i l(x^(j)) bound.
FaceRounding round_face(const StepContext& ctx, int face, const ScenarioPartition& partition,
                        const std::vector<TypedLink>& links);

/// Per-face integrality gap of the covering problem: exact integral cost over the LP value
/// of the same instance (all face links against all face scenarios).
struct FaceGap {
    int face = -1;
    Weight integral = 0;
    double fractional = 0.0;
    double ratio = 1.0;  // 1 when both are zero
};

FaceGap measure_face_gap(const StepContext& ctx, int face, const std::vector<int>& face_omega,
                         const std::vector<TypedLink>& links);

struct Interval {
    int lo = 0;  // inclusive
    int hi = 0;
    Weight cost = 0;
};

struct IntervalCover {
    Weight cost = 0;
    std::vector<int> chosen;  // ascending interval indices
};

/// Minimum-cost set of intervals covering every point, by dynamic programming over the
/// sorted points. Throws InfeasibleError if some point lies in no interval.
IntervalCover cover_intervals_exact(std::vector<int> points, const std::vector<Interval>& intervals);

} // namespace bulkrobust

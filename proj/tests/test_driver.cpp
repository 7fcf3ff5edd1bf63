#include <doctest.h>

#include <json.hpp>

#include "bulkrobust/driver.hpp"
#include "bulkrobust/error.hpp"
#include "bulkrobust/suite.hpp"
#include "bulkrobust/trace_json.hpp"
#include "support.hpp"

using namespace bulkrobust;

namespace {

// Six-cycle 0..5 (e0..e5) with inner chords e6 = 1-5 and e7 = 1-3. The scenarios
// {e0,e3} and {e1,e4} each have exactly one chord that reconnects the cycle.
Instance hexagon()
{
    std::vector<Edge> edges;
    for (int v = 0; v < 6; ++v) {
        edges.push_back({v, v, (v + 1) % 6, 1});
    }
    edges.push_back({6, 1, 5, 2});
    edges.push_back({7, 1, 3, 3});
    std::vector<std::vector<EdgeIndex>> rot{{0, 5}, {1, 7, 6, 0}, {2, 1}, {3, 7, 2}, {4, 3}, {5, 6, 4}};
    return fixture::make(6, edges, rot, Problem::mst, -1, -1, {{0, 3}, {1, 4}});
}

} // namespace

TEST_CASE("triangle end to end")
{
    Instance tri = fixture::triangle();
    SolveResult res = solve(tri);
    CHECK(res.trace.x0 == EdgeSet{0});
    REQUIRE(res.trace.levels.size() == 1);
    CHECK(res.trace.levels[0].added == EdgeSet{1, 2});
    CHECK(res.cost == 3);
    CHECK(res.chosen == EdgeSet{0, 1, 2});
    CHECK(ref::opt(tri) == 2);
    CHECK(res.trace.guarantee() == doctest::Approx(17));
    CHECK(static_cast<double>(res.cost) / 2.0 <= res.trace.guarantee());
}

TEST_CASE("no scenarios keeps the initial solution")
{
    Instance g = gen_grid(3, 3, ScenarioParams{0, 1}, 9, 4);
    SolveResult res = solve(g);
    CHECK(res.chosen == res.trace.x0);
    CHECK(res.trace.levels.empty());
    CHECK(res.cost == ref::opt(g));
}

TEST_CASE("hypergraph reduction solves feasibly")
{
    Instance inst = reduce_hypergraph_vc(Hypergraph{{{0}, {1}}, {{0, 1}}});
    SolveResult res = solve(inst);
    CHECK(res.cost >= 1);
    const std::set<EdgeIndex> s(res.chosen.begin(), res.chosen.end());
    CHECK(ref::feasible(inst, s));
}

TEST_CASE("single augmentation steps")
{
    CHECK(augment_step(fixture::triangle(), {0}, 1) == EdgeSet{1, 2});

    Instance sq = fixture::square(true, 5);
    CHECK(augment_step(sq, {0, 1, 2, 3}, 2) == EdgeSet{4});

    Instance quiet = fixture::square(false, 5, {{0}});
    CHECK(augment_step(quiet, {0, 1, 2, 3}, 1).empty());

    Instance hex = hexagon();
    REQUIRE(trace_faces(hex).face_count() == 4);
    CHECK(augment_step(hex, {0, 1, 2, 3, 4, 5}, 2) == EdgeSet{6, 7});
}

TEST_CASE("initial solution")
{
    CHECK(initial_solution(fixture::triangle(5, 1, 1)) == EdgeSet{1, 2});
    // a tie between the direct edge and the detour goes to the fewer edges
    CHECK(initial_solution(fixture::triangle(2, 1, 1)) == EdgeSet{0});
    Instance g = gen_grid(3, 3, ScenarioParams{1, 1}, 9, 1, Problem::mst);
    CHECK(initial_solution(g).size() == 8);
}

TEST_CASE("solves are feasible level by level and within the guarantee")
{
    int compared = 0;
    for (const std::string fam : {"grid", "sp"}) {
        for (const auto& entry : make_family(fam, 40, 6)) {
            const Instance& inst = entry.inst;
            CAPTURE(entry.id);
            SolveResult res = solve(inst);
            EdgeSet x = res.trace.x0;
            for (const auto& rec : res.trace.levels) {
                x = set_union(x, rec.added);
                // every size <= level subset of every scenario is survived
                for (const auto& f : inst.scenarios) {
                    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.size()); ++mask) {
                        if (__builtin_popcountll(mask) > rec.level) {
                            continue;
                        }
                        std::set<EdgeIndex> removed;
                        for (std::size_t b = 0; b < f.size(); ++b) {
                            if (mask >> b & 1) {
                                removed.insert(f[b]);
                            }
                        }
                        CHECK(ref::meets(inst, [&](EdgeIndex e) { return contains(x, e) && removed.count(e) == 0; }));
                    }
                }
                CHECK(static_cast<double>(rec.rounded_cost) <= rec.bound + 1e-6);
                CHECK(rec.added_weight <= rec.rounded_cost);
            }
            CHECK(x == res.chosen);
            CHECK(res.cost == inst.weight_of(res.chosen));
            CHECK(ref::feasible(inst, std::set<EdgeIndex>(x.begin(), x.end())));
            if (inst.graph.present_edge_count() <= 16) {
                const auto opt = ref::opt(inst);
                REQUIRE(opt);
                ++compared;
                CHECK(res.cost >= *opt);
                CHECK(static_cast<double>(res.cost) <= res.trace.guarantee() * static_cast<double>(*opt) + 1e-9);
                for (const auto& rec : res.trace.levels) {
                    CHECK(rec.lp_value <= 2.0 * static_cast<double>(*opt) + kEpsLp);
                }
            }
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("solves are deterministic")
{
    for (const auto& entry : make_family("grid", 12, 8)) {
        const SolveResult a = solve(entry.inst);
        const SolveResult b = solve(parse_instance(serialize_instance(entry.inst)));
        CHECK(solution_to_json(entry.inst, a) == solution_to_json(entry.inst, b));
    }
}

TEST_CASE("trace json")
{
    Instance sq = fixture::square(true, 5, {{0, 2}, {1, 3}});
    SolveOptions opts;
    opts.dump_lp = true;
    opts.measure_gaps = true;
    const SolveResult res = solve(sq, opts);
    const auto doc = nlohmann::json::parse(solution_to_json(sq, res));
    CHECK(doc["cost"] == res.cost);
    CHECK(doc["chosen_edges"].size() == res.chosen.size());
    const auto& trace = doc["trace"];
    CHECK(trace["problem"] == "st");
    CHECK(trace["k"] == 2);
    CHECK(trace["levels"].size() == 2);
    const auto& l2 = trace["levels"][1];
    CHECK(l2["level"] == 2);
    CHECK(l2.contains("lp"));
    CHECK(l2.contains("gaps"));
    CHECK(l2["omega"].size() == 2);
    bool circle = false;
    for (const auto& f : l2["faces"]) {
        circle = circle || f.contains("circle");
    }
    CHECK(circle);

    const SolutionFile back = parse_solution(sq, solution_to_json(sq, res));
    CHECK(back.chosen == res.chosen);
    CHECK(back.cost == res.cost);
    CHECK_THROWS_AS(parse_solution(sq, "{}"), ParseError);
    CHECK_THROWS_AS(parse_solution(sq, R"({"chosen_edges":[42],"cost":1})"), ParseError);
}

TEST_CASE("infeasible instances are refused")
{
    Instance bad = fixture::triangle();
    bad.scenarios = {{1, 0}};
    bad.scenarios[0] = normalized(bad.scenarios[0]);
    CHECK_THROWS_AS(solve(bad), InfeasibleError);
}

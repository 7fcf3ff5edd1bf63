#include <doctest.h>

#include "bulkrobust/error.hpp"
#include "bulkrobust/graph_util.hpp"
#include "bulkrobust/oracle.hpp"
#include "bulkrobust/set_cover.hpp"
#include "bulkrobust/suite.hpp"
#include "support.hpp"

using namespace bulkrobust;

TEST_CASE("feasibility examples")
{
    Instance tri = fixture::triangle();
    CHECK(is_feasible(tri, {1, 2}));
    CHECK_FALSE(is_feasible(tri, {0}));
    CHECK_FALSE(is_feasible(tri, {0, 1}));
    CHECK(is_feasible(tri, {0, 1, 2}));
}

TEST_CASE("feasibility agrees with BFS and is monotone")
{
    Rng rng(2);
    for (const auto& entry : make_family("grid", 20, 3)) {
        const Instance& inst = entry.inst;
        CHECK(is_feasible(inst, fixture::all_edges(inst)));
        for (int trial = 0; trial < 20; ++trial) {
            EdgeSet s;
            for (EdgeIndex e = 0; e < inst.graph.edge_slots(); ++e) {
                if (rng.uniform(0, 3) != 0) {
                    s.push_back(e);
                }
            }
            const bool f = is_feasible(inst, s);
            CHECK(f == ref::feasible(inst, std::set<EdgeIndex>(s.begin(), s.end())));
            if (f) {
                EdgeSet bigger = s;
                bigger.push_back(static_cast<EdgeIndex>(rng.uniform(0, inst.graph.edge_slots() - 1)));
                CHECK(is_feasible(inst, normalized(bigger)));
            }
        }
    }
}

TEST_CASE("optimum examples")
{
    OracleResult r = brute_force_opt(fixture::triangle());
    CHECK(r.opt == 2);
    CHECK(r.witness == EdgeSet{1, 2});

    Instance g = gen_grid(3, 3, ScenarioParams{0, 1}, 9, 5);
    std::vector<EdgeIndex> path;
    Weight cost = 0;
    PathFinder pf(g.graph, std::vector<char>(g.graph.edges.size(), 1));
    REQUIRE(pf.shortest_path(g.s, g.t, path, cost));
    CHECK(brute_force_opt(g).opt == cost);

    CHECK(brute_force_opt(reduce_hypergraph_vc(Hypergraph{{{0}, {1}}, {{0, 1}}})).opt == 1);
}

TEST_CASE("optimum matches enumeration and the witness is least")
{
    for (const std::string fam : {"grid", "sp"}) {
        for (const auto& entry : make_family(fam, 30, 11)) {
            const Instance& inst = entry.inst;
            if (inst.graph.present_edge_count() > 16) {
                continue;
            }
            CAPTURE(entry.id);
            const OracleResult r = brute_force_opt(inst);
            CHECK(ref::opt(inst) == r.opt);
            CHECK(inst.weight_of(r.witness) == r.opt);
            CHECK(is_feasible(inst, r.witness));
            // no optimal set sorts before the witness by external ids
            const auto edges = fixture::all_edges(inst);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
                EdgeSet s;
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    if (mask >> i & 1) {
                        s.push_back(edges[i]);
                    }
                }
                if (inst.weight_of(s) == r.opt && ref::feasible(inst, std::set<EdgeIndex>(s.begin(), s.end()))) {
                    CHECK_FALSE(inst.ids_of(s) < inst.ids_of(r.witness));
                }
            }
        }
    }
}

TEST_CASE("budget")
{
    Instance g = gen_grid(5, 6, ScenarioParams{1, 1}, 9, 1);
    CHECK_THROWS_AS(brute_force_opt(g), BudgetExceeded);
    OracleBudget tiny;
    tiny.max_nodes = 3;
    CHECK_THROWS_AS(brute_force_opt(gen_grid(3, 3, ScenarioParams{2, 2}, 9, 1), tiny), BudgetExceeded);
}

TEST_CASE("vertex cover examples")
{
    CHECK(brute_force_vc(Hypergraph{{{0}, {1}}, {{0, 1}}}).opt == 1);
    const VertexCoverResult r = brute_force_vc(Hypergraph{{{0, 1}, {2}}, {{0, 2}, {1, 2}}});
    CHECK(r.opt == 1);
    CHECK(r.witness == std::vector<int>{2});
    CHECK(brute_force_vc(Hypergraph{{{0}, {1}}, {}}).opt == 0);
}

TEST_CASE("reduction equivalence")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Hypergraph h = gen_hypergraph(2 + static_cast<int>(seed % 3), 2, 6, seed);
        CAPTURE(serialize_hypergraph(h));
        const int vc = brute_force_vc(h).opt;
        CHECK(vc == ref::vertex_cover(h));
        CHECK(brute_force_opt(reduce_hypergraph_vc(h)).opt == vc);
    }
}

TEST_CASE("set cover solver against enumeration")
{
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        SetCoverInstance sc;
        sc.elements = static_cast<int>(rng.uniform(0, 6));
        const int ns = static_cast<int>(rng.uniform(1, 10));
        for (int s = 0; s < ns; ++s) {
            std::vector<int> set;
            for (int e = 0; e < sc.elements; ++e) {
                if (rng.uniform(0, 2) == 0) {
                    set.push_back(e);
                }
            }
            sc.sets.push_back(set);
            sc.costs.push_back(rng.uniform(0, 9));
        }
        const auto expect = ref::set_cover(sc.elements, sc.sets, sc.costs);
        if (!expect) {
            CHECK_THROWS_AS(solve_set_cover(sc), InvariantError);
            continue;
        }
        const SetCoverResult got = solve_set_cover(sc);
        CHECK(got.cost == *expect);
        CHECK(std::is_sorted(got.chosen.begin(), got.chosen.end()));
    }
}

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bulkrobust/instance.hpp"

namespace bulkrobust {

/// Small deterministic generator; bounded draws avoid the implementation-defined
/// behavior of std::uniform_int_distribution so output is identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    /// Uniform double in [0, 1).
    double unit();

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

struct ScenarioParams {
    int count = 1;       // m
    int diameter = 1;    // k: maximum scenario size
    int max_resamples = 1000;
};

/// rows x cols grid, s top-left, t bottom-right. Weights uniform in [1, weight_max].
Instance gen_grid(int rows, int cols, ScenarioParams scenarios, Weight weight_max, std::uint64_t seed,
                  Problem problem = Problem::st);

/// Random series-parallel graph between s=0 and t=1. The top composition is parallel and
/// compositions alternate with depth, so depth 0 is one edge and depth 1 two parallel edges.
Instance gen_series_parallel(int depth, ScenarioParams scenarios, Weight weight_max, std::uint64_t seed,
                             Problem problem = Problem::st);

/// Series-parallel composition tree with an embedding builder.
struct SpTree {
    enum class Kind { edge, series, parallel };
    Kind kind = Kind::edge;
    int edge_id = -1;   // for edges: id to assign
    Weight weight = 0;  // for edges
    std::vector<SpTree> children;  // left to right (parallel) or s to t (series)

    static SpTree edge(int id, Weight w);
    static SpTree series(std::vector<SpTree> parts);
    static SpTree parallel(std::vector<SpTree> parts);
};

/// Embeds an SP tree between node 0 (s) and node 1 (t). Edge ids come from the leaves;
/// edges are stored in increasing id order, which must be 0..leaves-1.
EmbeddedGraph embed_series_parallel(const SpTree& tree);

struct Hypergraph {
    std::vector<std::vector<int>> parts;
    std::vector<std::vector<int>> hyperedges;

    [[nodiscard]] int uniformity() const { return static_cast<int>(parts.size()); }
};

/// Throws ParseError unless the hypergraph is k-uniform and k-partite w.r.t. its parts.
void validate_hypergraph(const Hypergraph& h);

Hypergraph parse_hypergraph(std::string_view text);
std::string serialize_hypergraph(const Hypergraph& h);

/// Random k-partite, k-uniform hypergraph with the given part sizes drawn in
/// [1, max_part_size] and up to `max_edges` distinct hyperedges.
Hypergraph gen_hypergraph(int k, int max_part_size, int max_edges, std::uint64_t seed);

/// Bulk-robust s-t instance equivalent to minimum vertex cover of h: k zero-weight s-t
/// paths, one unit-weight bypass edge per node, one scenario of size k per hyperedge.
Instance reduce_hypergraph_vc(const Hypergraph& h);

/// Draws scenarios for an instance whose graph and requirement are already set.
void draw_scenarios(Instance& inst, ScenarioParams params, Rng& rng);

} // namespace bulkrobust

#include "bulkrobust/generators.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "bulkrobust/error.hpp"
#include "bulkrobust/graph_util.hpp"

namespace bulkrobust {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }
} // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next()
{
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo) {
        throw Error("Rng::uniform: empty range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
        return static_cast<std::int64_t>(next());
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r = next();
    while (r >= limit) {
        r = next();
    }
    return lo + static_cast<std::int64_t>(r % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void draw_scenarios(Instance& inst, ScenarioParams params, Rng& rng)
{
    const int m_e = inst.graph.present_edge_count();
    if (params.count < 0 || params.diameter < 1) {
        throw Error("scenario count must be nonnegative and diameter positive");
    }
    inst.scenarios.clear();
    std::vector<EdgeIndex> all;
    for (EdgeIndex e = 0; e < inst.graph.edge_slots(); ++e) {
        if (inst.graph.is_present(e)) {
            all.push_back(e);
        }
    }
    std::vector<char> full(idx(inst.graph.edge_slots()), 1);
    for (int j = 0; j < params.count; ++j) {
        bool ok = false;
        for (int attempt = 0; attempt < params.max_resamples && !ok; ++attempt) {
            auto size = static_cast<int>(rng.uniform(1, std::min(params.diameter, m_e)));
            auto pool = all;
            rng.shuffle(pool);
            EdgeSet f(pool.begin(), pool.begin() + size);
            std::sort(f.begin(), f.end());
            auto mask = full;
            for (EdgeIndex e : f) {
                mask[idx(e)] = 0;
            }
            if (requirement_met(inst, mask)) {
                inst.scenarios.push_back(std::move(f));
                ok = true;
            }
        }
        if (!ok) {
            throw InfeasibleError("no feasible scenario found after " + std::to_string(params.max_resamples) +
                                  " resamples");
        }
    }
}

Instance gen_grid(int rows, int cols, ScenarioParams scenarios, Weight weight_max, std::uint64_t seed, Problem problem)
{
    if (rows < 2 || cols < 2) {
        throw Error("grid needs rows, cols >= 2");
    }
    if (weight_max < 1) {
        throw Error("weight_max must be >= 1");
    }
    Rng rng(seed);
    Instance inst;
    inst.problem = problem;
    auto& g = inst.graph;
    g.node_count = rows * cols;
    g.rotation.assign(idx(g.node_count), {});
    auto node = [&](int r, int c) { return r * cols + c; };
    // per node: up, right, down, left (clockwise with rows growing downward)
    std::vector<std::array<EdgeIndex, 4>> around(idx(g.node_count), {-1, -1, -1, -1});
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                auto e = static_cast<EdgeIndex>(g.edges.size());
                g.edges.push_back(Edge{e, node(r, c), node(r, c + 1), rng.uniform(1, weight_max)});
                around[idx(node(r, c))][1] = e;
                around[idx(node(r, c + 1))][3] = e;
            }
            if (r + 1 < rows) {
                auto e = static_cast<EdgeIndex>(g.edges.size());
                g.edges.push_back(Edge{e, node(r, c), node(r + 1, c), rng.uniform(1, weight_max)});
                around[idx(node(r, c))][2] = e;
                around[idx(node(r + 1, c))][0] = e;
            }
        }
    }
    g.present.assign(g.edges.size(), 1);
    for (NodeId x = 0; x < g.node_count; ++x) {
        for (EdgeIndex e : around[idx(x)]) {
            if (e >= 0) {
                g.rotation[idx(x)].push_back(e);
            }
        }
    }
    if (problem == Problem::st) {
        inst.s = node(0, 0);
        inst.t = node(rows - 1, cols - 1);
    }
    draw_scenarios(inst, scenarios, rng);
    validate_instance(inst);
    return inst;
}

SpTree SpTree::edge(int id, Weight w)
{
    SpTree t;
    t.kind = Kind::edge;
    t.edge_id = id;
    t.weight = w;
    return t;
}

SpTree SpTree::series(std::vector<SpTree> parts)
{
    SpTree t;
    t.kind = Kind::series;
    t.children = std::move(parts);
    return t;
}

SpTree SpTree::parallel(std::vector<SpTree> parts)
{
    SpTree t;
    t.kind = Kind::parallel;
    t.children = std::move(parts);
    return t;
}

namespace {

struct SpEmbedder {
    EmbeddedGraph g;

    NodeId new_node()
    {
        g.rotation.emplace_back();
        return g.node_count++;
    }

    // Returns the edges at s and at t, both ordered left to right in a drawing with s on
    // top and t at the bottom.
    std::pair<std::vector<EdgeIndex>, std::vector<EdgeIndex>> embed(const SpTree& tree, NodeId s, NodeId t)
    {
        switch (tree.kind) {
        case SpTree::Kind::edge: {
            if (tree.edge_id < 0) {
                throw Error("series-parallel leaf without edge id");
            }
            if (idx(tree.edge_id) >= g.edges.size()) {
                g.edges.resize(idx(tree.edge_id) + 1, Edge{-1, 0, 0, 0});
            }
            if (g.edges[idx(tree.edge_id)].id >= 0) {
                throw Error("series-parallel edge id used twice");
            }
            g.edges[idx(tree.edge_id)] = Edge{tree.edge_id, s, t, tree.weight};
            return {{tree.edge_id}, {tree.edge_id}};
        }
        case SpTree::Kind::parallel: {
            std::vector<EdgeIndex> at_s;
            std::vector<EdgeIndex> at_t;
            for (const auto& child : tree.children) {
                auto [cs, ct] = embed(child, s, t);
                at_s.insert(at_s.end(), cs.begin(), cs.end());
                at_t.insert(at_t.end(), ct.begin(), ct.end());
            }
            return {at_s, at_t};
        }
        case SpTree::Kind::series: {
            const std::size_t r = tree.children.size();
            std::vector<EdgeIndex> first_s;
            std::vector<EdgeIndex> last_t;
            std::vector<EdgeIndex> above;  // t-side edges of the previous child
            NodeId top = s;
            for (std::size_t i = 0; i < r; ++i) {
                NodeId bottom = (i + 1 == r) ? t : new_node();
                auto [cs, ct] = embed(tree.children[i], top, bottom);
                if (i == 0) {
                    first_s = cs;
                } else {
                    // middle node: upward edges left to right, then downward edges right to left
                    auto& rot = g.rotation[idx(top)];
                    rot = above;
                    rot.insert(rot.end(), cs.rbegin(), cs.rend());
                }
                above = ct;
                if (i + 1 == r) {
                    last_t = ct;
                }
                top = bottom;
            }
            return {first_s, last_t};
        }
        }
        return {};
    }
};

int count_leaves(const SpTree& t)
{
    if (t.kind == SpTree::Kind::edge) {
        return 1;
    }
    int n = 0;
    for (const auto& c : t.children) {
        n += count_leaves(c);
    }
    return n;
}

SpTree random_sp(int depth, bool parallel, Rng& rng, Weight weight_max, int& next_id)
{
    if (depth == 0) {
        return SpTree::edge(next_id++, rng.uniform(1, weight_max));
    }
    auto count = depth == 1 ? 2 : static_cast<int>(rng.uniform(2, 3));
    auto forced = static_cast<int>(rng.uniform(0, count - 1));
    std::vector<SpTree> parts;
    for (int c = 0; c < count; ++c) {
        int d = (c == forced) ? depth - 1 : static_cast<int>(rng.uniform(0, depth - 1));
        parts.push_back(random_sp(d, !parallel, rng, weight_max, next_id));
    }
    return parallel ? SpTree::parallel(std::move(parts)) : SpTree::series(std::move(parts));
}

} // namespace

EmbeddedGraph embed_series_parallel(const SpTree& tree)
{
    SpEmbedder em;
    em.g.node_count = 2;
    em.g.rotation.assign(2, {});
    auto [at_s, at_t] = em.embed(tree, 0, 1);
    em.g.rotation[0].assign(at_s.rbegin(), at_s.rend());
    em.g.rotation[1] = at_t;
    if (static_cast<int>(em.g.edges.size()) != count_leaves(tree)) {
        throw Error("series-parallel edge ids must be 0..leaves-1");
    }
    for (const Edge& e : em.g.edges) {
        if (e.id < 0) {
            throw Error("series-parallel edge ids must be 0..leaves-1");
        }
    }
    em.g.present.assign(em.g.edges.size(), 1);
    return em.g;
}

Instance gen_series_parallel(int depth, ScenarioParams scenarios, Weight weight_max, std::uint64_t seed,
                             Problem problem)
{
    if (depth < 0) {
        throw Error("depth must be nonnegative");
    }
    if (weight_max < 1) {
        throw Error("weight_max must be >= 1");
    }
    Rng rng(seed);
    int next_id = 0;
    SpTree tree = random_sp(depth, true, rng, weight_max, next_id);
    Instance inst;
    inst.problem = problem;
    inst.graph = embed_series_parallel(tree);
    if (problem == Problem::st) {
        inst.s = 0;
        inst.t = 1;
    }
    draw_scenarios(inst, scenarios, rng);
    validate_instance(inst);
    return inst;
}

void validate_hypergraph(const Hypergraph& h)
{
    const int k = h.uniformity();
    std::map<int, int> part_of;
    for (int j = 0; j < k; ++j) {
        for (int v : h.parts[idx(j)]) {
            if (!part_of.emplace(v, j).second) {
                throw ParseError("hypergraph node " + std::to_string(v) + " belongs to two parts");
            }
        }
    }
    for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
        const auto& he = h.hyperedges[e];
        if (static_cast<int>(he.size()) != k) {
            throw ParseError("hyperedge " + std::to_string(e) + " violates " + std::to_string(k) + "-uniformity");
        }
        std::vector<char> hit(idx(k), 0);
        for (int v : he) {
            auto it = part_of.find(v);
            if (it == part_of.end()) {
                throw ParseError("hyperedge " + std::to_string(e) + " uses unknown node " + std::to_string(v));
            }
            if (hit[idx(it->second)]++) {
                throw ParseError("hyperedge " + std::to_string(e) + " violates " + std::to_string(k) + "-partiteness");
            }
        }
    }
}

Hypergraph parse_hypergraph(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("malformed JSON: ") + err.what());
    }
    Hypergraph h;
    try {
        h.parts = doc.at("parts").get<std::vector<std::vector<int>>>();
        h.hyperedges = doc.at("hyperedges").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("bad hypergraph: ") + err.what());
    }
    validate_hypergraph(h);
    return h;
}

std::string serialize_hypergraph(const Hypergraph& h)
{
    nlohmann::ordered_json doc;
    doc["parts"] = h.parts;
    doc["hyperedges"] = h.hyperedges;
    return doc.dump() + "\n";
}

Hypergraph gen_hypergraph(int k, int max_part_size, int max_edges, std::uint64_t seed)
{
    if (k < 1 || max_part_size < 1 || max_edges < 1) {
        throw Error("gen_hypergraph: parameters must be positive");
    }
    Rng rng(seed);
    Hypergraph h;
    int next = 0;
    for (int j = 0; j < k; ++j) {
        auto size = static_cast<int>(rng.uniform(1, max_part_size));
        std::vector<int> part;
        for (int i = 0; i < size; ++i) {
            part.push_back(next++);
        }
        h.parts.push_back(std::move(part));
    }
    auto p = static_cast<int>(rng.uniform(1, max_edges));
    std::set<std::vector<int>> seen;
    for (int e = 0; e < p; ++e) {
        std::vector<int> he;
        for (int j = 0; j < k; ++j) {
            const auto& part = h.parts[idx(j)];
            he.push_back(part[idx(static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(part.size()) - 1)))]);
        }
        if (seen.insert(he).second) {
            h.hyperedges.push_back(std::move(he));
        }
    }
    return h;
}

Instance reduce_hypergraph_vc(const Hypergraph& h)
{
    validate_hypergraph(h);
    const int k = h.uniformity();
    const int p = static_cast<int>(h.hyperedges.size());
    if (k < 2 || p < 1) {
        throw Error("reduction needs k >= 2 parts and at least one hyperedge");
    }
    std::vector<std::vector<int>> position(idx(k), std::vector<int>(idx(p), -1));  // [part][hyperedge]
    int next_alpha = k * p;
    std::vector<SpTree> paths;
    for (int j = 0; j < k; ++j) {
        std::vector<SpTree> blocks;
        int pos = 0;
        for (int v : h.parts[idx(j)]) {
            std::vector<SpTree> segment;
            for (int e = 0; e < p; ++e) {
                const auto& he = h.hyperedges[idx(e)];
                if (std::find(he.begin(), he.end(), v) == he.end()) {
                    continue;
                }
                position[idx(j)][idx(e)] = pos;
                segment.push_back(SpTree::edge(j * p + pos, 0));
                ++pos;
            }
            if (segment.empty()) {
                continue;
            }
            // path segment on the left, bypass edge for v on the right
            blocks.push_back(SpTree::parallel({SpTree::series(std::move(segment)), SpTree::edge(next_alpha++, 1)}));
        }
        if (pos != p) {
            throw InvariantError("hyperedge ordering does not cover every hyperedge");
        }
        paths.push_back(SpTree::series(std::move(blocks)));
    }
    Instance inst;
    inst.problem = Problem::st;
    inst.s = 0;
    inst.t = 1;
    inst.graph = embed_series_parallel(SpTree::parallel(std::move(paths)));
    for (int e = 0; e < p; ++e) {
        EdgeSet f;
        for (int j = 0; j < k; ++j) {
            f.push_back(j * p + position[idx(j)][idx(e)]);
        }
        std::sort(f.begin(), f.end());
        inst.scenarios.push_back(std::move(f));
    }
    validate_instance(inst);
    return inst;
}

} // namespace bulkrobust

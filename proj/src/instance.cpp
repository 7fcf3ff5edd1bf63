#include "bulkrobust/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "bulkrobust/error.hpp"
#include "bulkrobust/graph_util.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Dart leaving node x along edge e.
int dart_from(const EmbeddedGraph& g, EdgeIndex e, NodeId x)
{
    return dart_of(e, g.edges[idx(e)].u != x);
}

} // namespace

int EmbeddedGraph::present_edge_count() const
{
    return static_cast<int>(std::count(present.begin(), present.end(), char{1}));
}

NodeId EmbeddedGraph::other_end(EdgeIndex e, NodeId x) const
{
    const Edge& ed = edges[idx(e)];
    return ed.u == x ? ed.v : ed.u;
}

std::vector<NodeId> EmbeddedGraph::active_nodes() const
{
    std::vector<NodeId> out;
    for (NodeId x = 0; x < node_count; ++x) {
        if (!rotation[idx(x)].empty()) {
            out.push_back(x);
        }
    }
    return out;
}

NodeId dart_tail(const EmbeddedGraph& g, int d)
{
    const Edge& e = g.edges[idx(dart_edge(d))];
    return (d & 1) ? e.v : e.u;
}

NodeId dart_head(const EmbeddedGraph& g, int d)
{
    const Edge& e = g.edges[idx(dart_edge(d))];
    return (d & 1) ? e.u : e.v;
}

std::string_view to_string(Problem p) { return p == Problem::st ? "st" : "mst"; }

int Instance::diameter() const
{
    std::size_t k = 0;
    for (const auto& f : scenarios) {
        k = std::max(k, f.size());
    }
    return static_cast<int>(k);
}

Weight Instance::weight_of(const EdgeSet& edges) const
{
    Weight w = 0;
    for (EdgeIndex e : edges) {
        w += graph.edges[idx(e)].weight;
    }
    return w;
}

EdgeIndex Instance::index_of_id(int id) const
{
    for (EdgeIndex e = 0; e < graph.edge_slots(); ++e) {
        if (graph.edges[idx(e)].id == id) {
            return e;
        }
    }
    throw ParseError("unknown edge id " + std::to_string(id));
}

std::vector<int> Instance::ids_of(const EdgeSet& edges) const
{
    std::vector<int> ids;
    ids.reserve(edges.size());
    for (EdgeIndex e : edges) {
        ids.push_back(graph.edges[idx(e)].id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<NodeId> EmbeddedSubgraph::boundary_nodes(int face) const
{
    std::vector<NodeId> out;
    std::vector<char> seen(idx(parent.node_count), 0);
    for (int d : faces.walks[idx(face)]) {
        NodeId x = dart_tail(parent, d);
        if (!seen[idx(x)]) {
            seen[idx(x)] = 1;
            out.push_back(x);
        }
    }
    return out;
}

bool EmbeddedSubgraph::boundary_is_simple(int face) const
{
    return boundary_nodes(face).size() == faces.walks[idx(face)].size();
}

void validate_rotation(const EmbeddedGraph& g)
{
    if (static_cast<int>(g.rotation.size()) != g.node_count) {
        throw EmbeddingError("rotation table size does not match node count");
    }
    std::vector<int> seen_u(idx(g.edge_slots()), 0);
    std::vector<int> seen_v(idx(g.edge_slots()), 0);
    for (NodeId x = 0; x < g.node_count; ++x) {
        for (EdgeIndex e : g.rotation[idx(x)]) {
            if (e < 0 || e >= g.edge_slots() || !g.is_present(e)) {
                throw EmbeddingError("rotation of node " + std::to_string(x) + " lists a missing edge");
            }
            const Edge& ed = g.edges[idx(e)];
            if (ed.u == x) {
                ++seen_u[idx(e)];
            }
            if (ed.v == x) {
                ++seen_v[idx(e)];
            }
            if (ed.u != x && ed.v != x) {
                throw EmbeddingError("rotation of node " + std::to_string(x) + " lists edge " +
                                     std::to_string(ed.id) + " which is not incident to it");
            }
        }
    }
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (!g.is_present(e)) {
            continue;
        }
        if (g.edges[idx(e)].u == g.edges[idx(e)].v) {
            throw EmbeddingError("self-loop on edge " + std::to_string(g.edges[idx(e)].id));
        }
        if (seen_u[idx(e)] != 1 || seen_v[idx(e)] != 1) {
            throw EmbeddingError("edge " + std::to_string(g.edges[idx(e)].id) +
                                 " must appear exactly once in the rotation of each endpoint");
        }
    }
}

FaceSet trace_faces(const EmbeddedGraph& g)
{
    validate_rotation(g);
    // position of each dart in the rotation of its tail
    std::vector<int> pos(idx(2 * g.edge_slots()), -1);
    for (NodeId x = 0; x < g.node_count; ++x) {
        const auto& rot = g.rotation[idx(x)];
        for (std::size_t p = 0; p < rot.size(); ++p) {
            pos[idx(dart_from(g, rot[p], x))] = static_cast<int>(p);
        }
    }

    FaceSet fs;
    fs.dart_face.assign(idx(2 * g.edge_slots()), -1);
    for (int d0 = 0; d0 < 2 * g.edge_slots(); ++d0) {
        if (!g.is_present(dart_edge(d0)) || fs.dart_face[idx(d0)] >= 0) {
            continue;
        }
        int face = fs.face_count();
        std::vector<int> walk;
        int d = d0;
        do {
            fs.dart_face[idx(d)] = face;
            walk.push_back(d);
            NodeId h = dart_head(g, d);
            int r = dart_reverse(d);
            const auto& rot = g.rotation[idx(h)];
            EdgeIndex nxt = rot[(idx(pos[idx(r)]) + 1) % rot.size()];
            d = dart_from(g, nxt, h);
        } while (d != d0);
        fs.walks.push_back(std::move(walk));
    }

    auto active = g.active_nodes();
    std::vector<char> all(idx(g.edge_slots()), 1);
    if (!nodes_all_connected(g, all, active)) {
        throw EmbeddingError("graph is disconnected");
    }
    const int n = static_cast<int>(active.size());
    const int m = g.present_edge_count();
    if (m == 0) {
        throw EmbeddingError("graph has no edges");
    }
    if (n - m + fs.face_count() != 2) {
        throw EmbeddingError("rotation system not planar (n - m + f = " + std::to_string(n - m + fs.face_count()) +
                             ")");
    }
    return fs;
}

FaceSet trace_faces(const Instance& inst) { return trace_faces(inst.graph); }

EmbeddedGraph restrict_edges(const EmbeddedGraph& g, const std::vector<char>& keep)
{
    EmbeddedGraph r = g;
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (!keep[idx(e)]) {
            r.present[idx(e)] = 0;
        }
    }
    for (auto& rot : r.rotation) {
        std::erase_if(rot, [&](EdgeIndex e) { return !keep[idx(e)]; });
    }
    return r;
}

EmbeddedSubgraph induced_faces(const EmbeddedGraph& g, const EdgeSet& x)
{
    if (x.empty()) {
        throw InvariantError("induced_faces needs a nonempty edge set");
    }
    EmbeddedSubgraph sub;
    sub.parent = g;
    sub.in_x = edge_mask(g.edge_slots(), x);
    for (EdgeIndex e : x) {
        if (!g.is_present(e)) {
            throw InvariantError("induced_faces: edge " + std::to_string(g.edges[idx(e)].id) + " is not present");
        }
    }
    sub.parent_faces = trace_faces(g);

    EmbeddedGraph restricted = restrict_edges(g, sub.in_x);
    sub.in_nodes.assign(idx(g.node_count), 0);
    for (EdgeIndex e : x) {
        sub.in_nodes[idx(g.edges[idx(e)].u)] = 1;
        sub.in_nodes[idx(g.edges[idx(e)].v)] = 1;
    }
    for (NodeId v = 0; v < g.node_count; ++v) {
        if (sub.in_nodes[idx(v)]) {
            sub.nodes.push_back(v);
        }
    }
    try {
        sub.faces = trace_faces(restricted);
    } catch (const EmbeddingError& err) {
        throw InvariantError(std::string("induced_faces: (V-bar, X) is not a connected plane graph: ") + err.what());
    }

    // Merge parent faces across unchosen edges; the classes must match the traced faces.
    DisjointSets ds(sub.parent_faces.face_count());
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (g.is_present(e) && !sub.in_x[idx(e)]) {
            auto f = sub.parent_faces.faces_of(e);
            ds.unite(f[0], f[1]);
        }
    }
    std::vector<int> class_to_face(idx(sub.parent_faces.face_count()), -1);
    for (int f = 0; f < sub.faces.face_count(); ++f) {
        int cls = -1;
        for (int d : sub.faces.walks[idx(f)]) {
            int c = ds.find(sub.parent_faces.dart_face[idx(d)]);
            if (cls < 0) {
                cls = c;
            } else if (cls != c) {
                throw InvariantError("induced face walk spans two merged parent-face classes");
            }
        }
        if (class_to_face[idx(cls)] >= 0) {
            throw InvariantError("two induced faces map to the same parent-face class");
        }
        class_to_face[idx(cls)] = f;
    }
    for (int pf = 0; pf < sub.parent_faces.face_count(); ++pf) {
        if (class_to_face[idx(ds.find(pf))] < 0) {
            throw InvariantError("parent face class without induced face");
        }
    }
    sub.edge_face.assign(idx(g.edge_slots()), -1);
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (g.is_present(e) && !sub.in_x[idx(e)]) {
            sub.edge_face[idx(e)] = class_to_face[idx(ds.find(sub.parent_faces.faces_of(e)[0]))];
        }
    }
    return sub;
}

EmbeddedSubgraph induced_faces(const Instance& inst, const EdgeSet& x) { return induced_faces(inst.graph, x); }

EmbeddedGraph contract_edge(const EmbeddedGraph& g, EdgeIndex e, std::span<const EdgeSet> protected_sets)
{
    if (e < 0 || e >= g.edge_slots() || !g.is_present(e)) {
        throw InvariantError("contract_edge: edge not present");
    }
    for (const auto& f : protected_sets) {
        if (contains(f, e)) {
            throw InvariantError("contract_edge: edge " + std::to_string(g.edges[idx(e)].id) +
                                 " belongs to a relevant scenario");
        }
    }
    EmbeddedGraph out = g;
    const NodeId u = g.edges[idx(e)].u;
    const NodeId v = g.edges[idx(e)].v;
    if (u == v) {
        throw InvariantError("contract_edge: self-loop");
    }
    auto after = [&](NodeId x) {
        const auto& rot = g.rotation[idx(x)];
        auto it = std::find(rot.begin(), rot.end(), e);
        std::vector<EdgeIndex> seq;
        for (std::size_t k = 1; k < rot.size(); ++k) {
            seq.push_back(rot[(static_cast<std::size_t>(it - rot.begin()) + k) % rot.size()]);
        }
        return seq;
    };
    std::vector<EdgeIndex> merged = after(u);
    std::vector<EdgeIndex> from_v = after(v);
    merged.insert(merged.end(), from_v.begin(), from_v.end());

    out.present[idx(e)] = 0;
    out.rotation[idx(v)].clear();
    for (EdgeIndex f : from_v) {
        Edge& ed = out.edges[idx(f)];
        if (ed.u == v) {
            ed.u = u;
        }
        if (ed.v == v) {
            ed.v = u;
        }
    }
    std::vector<EdgeIndex> rot;
    for (EdgeIndex f : merged) {
        if (out.edges[idx(f)].u == out.edges[idx(f)].v) {
            out.present[idx(f)] = 0;
        } else {
            rot.push_back(f);
        }
    }
    out.rotation[idx(u)] = std::move(rot);
    return out;
}

void validate_instance(const Instance& inst)
{
    const auto& g = inst.graph;
    if (g.node_count < 2) {
        throw ParseError("instance needs at least two nodes");
    }
    for (const Edge& e : g.edges) {
        if (e.u < 0 || e.u >= g.node_count || e.v < 0 || e.v >= g.node_count) {
            throw ParseError("dangling node id on edge " + std::to_string(e.id));
        }
        if (e.u == e.v) {
            throw ParseError("self-loop on edge " + std::to_string(e.id));
        }
        if (e.weight < 0) {
            throw ParseError("negative weight on edge " + std::to_string(e.id));
        }
    }
    try {
        trace_faces(g);
    } catch (const EmbeddingError& err) {
        throw ParseError(std::string("invalid rotation: ") + err.what());
    }
    if (static_cast<int>(g.active_nodes().size()) != g.node_count) {
        throw ParseError("graph is disconnected (isolated node)");
    }
    if (inst.problem == Problem::st) {
        if (inst.s < 0 || inst.s >= g.node_count || inst.t < 0 || inst.t >= g.node_count) {
            throw ParseError("dangling node id for terminal");
        }
        if (inst.s == inst.t) {
            throw ParseError("terminals must differ");
        }
    }
    for (const auto& f : inst.scenarios) {
        if (f.empty()) {
            throw ParseError("empty scenario");
        }
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (f[k] < 0 || f[k] >= g.edge_slots()) {
                throw ParseError("scenario references unknown edge");
            }
            if (k > 0 && f[k] <= f[k - 1]) {
                throw ParseError("scenario is not a set");
            }
        }
    }
}

void precheck_feasibility(const Instance& inst)
{
    std::vector<char> all(idx(inst.graph.edge_slots()), 1);
    if (!requirement_met(inst, all)) {
        throw InfeasibleError("requirement fails on the full graph");
    }
    for (std::size_t j = 0; j < inst.scenarios.size(); ++j) {
        auto mask = all;
        for (EdgeIndex e : inst.scenarios[j]) {
            mask[idx(e)] = 0;
        }
        if (!requirement_met(inst, mask)) {
            throw InfeasibleError("scenario " + std::to_string(j) + " disconnects the requirement in G");
        }
    }
}

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

int as_int(const json& j, const char* what)
{
    if (!j.is_number_integer()) {
        throw ParseError(std::string("expected integer for ") + what);
    }
    return j.get<int>();
}

} // namespace

Instance parse_instance(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("malformed JSON: ") + err.what());
    }
    if (!doc.is_object()) {
        throw ParseError("instance must be a JSON object");
    }
    for (const char* key : {"nodes", "edges", "rotation", "problem", "scenarios"}) {
        if (!doc.contains(key)) {
            throw ParseError(std::string("missing key '") + key + "'");
        }
    }
    Instance inst;
    auto& g = inst.graph;
    g.node_count = as_int(doc["nodes"], "nodes");
    if (g.node_count < 0) {
        throw ParseError("negative node count");
    }
    std::map<int, EdgeIndex> by_id;
    if (!doc["edges"].is_array()) {
        throw ParseError("'edges' must be an array");
    }
    for (const auto& row : doc["edges"]) {
        if (!row.is_array() || row.size() != 4) {
            throw ParseError("edge rows must be [id,u,v,w]");
        }
        Edge e{as_int(row[0], "edge id"), as_int(row[1], "edge endpoint"), as_int(row[2], "edge endpoint"),
               row[3].is_number_integer() ? row[3].get<Weight>() : throw ParseError("expected integer weight")};
        if (e.id < 0) {
            throw ParseError("negative edge id");
        }
        if (!by_id.emplace(e.id, static_cast<EdgeIndex>(g.edges.size())).second) {
            throw ParseError("duplicate edge id " + std::to_string(e.id));
        }
        if (e.u < 0 || e.u >= g.node_count || e.v < 0 || e.v >= g.node_count) {
            throw ParseError("dangling node id on edge " + std::to_string(e.id));
        }
        if (e.u == e.v) {
            throw ParseError("self-loop on edge " + std::to_string(e.id));
        }
        g.edges.push_back(e);
    }
    g.present.assign(g.edges.size(), 1);
    auto lookup = [&](const json& j) {
        int id = as_int(j, "edge id");
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            throw ParseError("dangling edge id " + std::to_string(id));
        }
        return it->second;
    };

    if (!doc["rotation"].is_object()) {
        throw ParseError("'rotation' must be an object");
    }
    g.rotation.assign(idx(g.node_count), {});
    for (auto it = doc["rotation"].begin(); it != doc["rotation"].end(); ++it) {
        int node = 0;
        try {
            std::size_t used = 0;
            node = std::stoi(it.key(), &used);
            if (used != it.key().size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception&) {
            throw ParseError("rotation key '" + it.key() + "' is not a node id");
        }
        if (node < 0 || node >= g.node_count) {
            throw ParseError("dangling node id " + it.key() + " in rotation");
        }
        if (!it.value().is_array()) {
            throw ParseError("rotation entries must be arrays");
        }
        for (const auto& e : it.value()) {
            g.rotation[idx(node)].push_back(lookup(e));
        }
    }

    const std::string problem = doc["problem"].is_string() ? doc["problem"].get<std::string>() : "";
    if (problem == "st") {
        inst.problem = Problem::st;
        if (!doc.contains("s") || !doc.contains("t")) {
            throw ParseError("problem st needs 's' and 't'");
        }
        inst.s = as_int(doc["s"], "s");
        inst.t = as_int(doc["t"], "t");
    } else if (problem == "mst") {
        inst.problem = Problem::mst;
    } else {
        throw ParseError("problem must be \"st\" or \"mst\"");
    }

    if (!doc["scenarios"].is_array()) {
        throw ParseError("'scenarios' must be an array");
    }
    for (const auto& sc : doc["scenarios"]) {
        if (!sc.is_array()) {
            throw ParseError("scenario must be an array");
        }
        EdgeSet f;
        for (const auto& e : sc) {
            f.push_back(lookup(e));
        }
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
            throw ParseError("scenario lists an edge twice");
        }
        inst.scenarios.push_back(std::move(f));
    }
    validate_instance(inst);
    return inst;
}

std::string serialize_instance(const Instance& inst)
{
    const auto& g = inst.graph;
    ojson doc;
    doc["nodes"] = g.node_count;
    ojson edges = ojson::array();
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        if (!g.is_present(e)) {
            continue;
        }
        const Edge& ed = g.edges[idx(e)];
        edges.push_back(ojson::array({ed.id, ed.u, ed.v, ed.weight}));
    }
    doc["edges"] = std::move(edges);
    ojson rot = ojson::object();
    for (NodeId x = 0; x < g.node_count; ++x) {
        ojson list = ojson::array();
        for (EdgeIndex e : g.rotation[idx(x)]) {
            list.push_back(g.edges[idx(e)].id);
        }
        rot[std::to_string(x)] = std::move(list);
    }
    doc["rotation"] = std::move(rot);
    doc["problem"] = std::string(to_string(inst.problem));
    if (inst.problem == Problem::st) {
        doc["s"] = inst.s;
        doc["t"] = inst.t;
    }
    ojson scen = ojson::array();
    for (const auto& f : inst.scenarios) {
        ojson list = ojson::array();
        for (EdgeIndex e : f) {
            list.push_back(g.edges[idx(e)].id);
        }
        scen.push_back(std::move(list));
    }
    doc["scenarios"] = std::move(scen);
    return doc.dump() + "\n";
}

std::string load_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << text;
}

Instance load_instance(const std::string& path) { return parse_instance(load_text(path)); }

std::vector<char> edge_mask(int slots, const EdgeSet& edges)
{
    std::vector<char> mask(idx(slots), 0);
    for (EdgeIndex e : edges) {
        mask[idx(e)] = 1;
    }
    return mask;
}

EdgeSet normalized(EdgeSet edges)
{
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b)
{
    EdgeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b)
{
    EdgeSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const EdgeSet& set, EdgeIndex e) { return std::binary_search(set.begin(), set.end(), e); }

} // namespace bulkrobust

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bulkrobust {

using NodeId = int;
using EdgeIndex = int;
using Weight = std::int64_t;

/// Sorted, duplicate-free list of edge indices.
using EdgeSet = std::vector<EdgeIndex>;

struct Edge {
    int id = 0;  // external id as it appears in files
    NodeId u = 0;
    NodeId v = 0;
    Weight weight = 0;
};

/// Embedded multigraph given by a rotation system.
///
/// Edges are addressed by their position in `edges` (the edge index). Contraction keeps
/// indices stable and clears `present` for edges that disappear, so edge sets computed on
/// a contracted copy stay meaningful in the original graph.
struct EmbeddedGraph {
    int node_count = 0;
    std::vector<Edge> edges;
    std::vector<char> present;
    std::vector<std::vector<EdgeIndex>> rotation;  // clockwise, per node

    [[nodiscard]] int edge_slots() const { return static_cast<int>(edges.size()); }
    [[nodiscard]] int present_edge_count() const;
    [[nodiscard]] bool is_present(EdgeIndex e) const { return present[static_cast<std::size_t>(e)] != 0; }
    [[nodiscard]] NodeId other_end(EdgeIndex e, NodeId x) const;
    /// Nodes with at least one incident present edge, ascending.
    [[nodiscard]] std::vector<NodeId> active_nodes() const;
};

// Darts: 2e runs u->v, 2e+1 runs v->u.
inline int dart_of(EdgeIndex e, bool reversed) { return 2 * e + (reversed ? 1 : 0); }
inline EdgeIndex dart_edge(int d) { return d >> 1; }
inline int dart_reverse(int d) { return d ^ 1; }
NodeId dart_tail(const EmbeddedGraph& g, int d);
NodeId dart_head(const EmbeddedGraph& g, int d);

enum class Problem { st, mst };

std::string_view to_string(Problem p);

struct Instance {
    EmbeddedGraph graph;
    Problem problem = Problem::st;
    NodeId s = -1;
    NodeId t = -1;
    std::vector<EdgeSet> scenarios;

    [[nodiscard]] int diameter() const;  // k = max |F_j|, 0 without scenarios
    [[nodiscard]] Weight weight_of(const EdgeSet& edges) const;
    /// Edge index for an external id; throws ParseError when unknown.
    [[nodiscard]] EdgeIndex index_of_id(int id) const;
    [[nodiscard]] std::vector<int> ids_of(const EdgeSet& edges) const;
};

struct FaceSet {
    std::vector<std::vector<int>> walks;  // each a cyclic dart sequence
    std::vector<int> dart_face;           // face of each dart, -1 for absent edges

    [[nodiscard]] int face_count() const { return static_cast<int>(walks.size()); }
    [[nodiscard]] std::array<int, 2> faces_of(EdgeIndex e) const
    {
        return {dart_face[static_cast<std::size_t>(2 * e)], dart_face[static_cast<std::size_t>(2 * e + 1)]};
    }
};

/// Chosen edge set X together with the faces it induces in the embedding of the parent.
struct EmbeddedSubgraph {
    EmbeddedGraph parent;
    std::vector<char> in_x;       // per edge index
    std::vector<NodeId> nodes;    // V-bar, ascending
    std::vector<char> in_nodes;   // per node
    FaceSet parent_faces;
    FaceSet faces;                // traced on (V-bar, X); walks contain only X darts
    std::vector<int> edge_face;   // E\X edge -> induced face, -1 otherwise

    [[nodiscard]] int face_count() const { return faces.face_count(); }
    /// Distinct nodes on the boundary walk of a face, in first-visit order.
    [[nodiscard]] std::vector<NodeId> boundary_nodes(int face) const;
    /// True when the boundary walk visits no node twice.
    [[nodiscard]] bool boundary_is_simple(int face) const;
};

/// Checks that every present edge occurs exactly once in each endpoint's rotation.
void validate_rotation(const EmbeddedGraph& g);

/// Traces faces with the dart rule: from dart d, go to the successor of reverse(d) in the
/// rotation at head(d). Throws EmbeddingError if the graph is disconnected or Euler fails.
FaceSet trace_faces(const EmbeddedGraph& g);
FaceSet trace_faces(const Instance& inst);

/// Copy of g keeping only the edges in `keep` (mask over edge indices).
EmbeddedGraph restrict_edges(const EmbeddedGraph& g, const std::vector<char>& keep);

EmbeddedSubgraph induced_faces(const EmbeddedGraph& g, const EdgeSet& x);
EmbeddedSubgraph induced_faces(const Instance& inst, const EdgeSet& x);

/// Contracts edge e, splicing the rotations of its endpoints. Resulting self-loops are
/// deleted. Throws InvariantError if e belongs to one of the protected sets.
EmbeddedGraph contract_edge(const EmbeddedGraph& g, EdgeIndex e, std::span<const EdgeSet> protected_sets = {});

/// Structural validation shared by the parser and generators.
void validate_instance(const Instance& inst);

/// Throws InfeasibleError when E minus some scenario violates the requirement.
void precheck_feasibility(const Instance& inst);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance load_instance(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

/// Builds edge masks and sets.
std::vector<char> edge_mask(int slots, const EdgeSet& edges);
EdgeSet normalized(EdgeSet edges);
EdgeSet set_union(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b);
bool contains(const EdgeSet& set, EdgeIndex e);

} // namespace bulkrobust

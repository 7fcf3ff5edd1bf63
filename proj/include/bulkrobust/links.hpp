#pragma once

#include <cstddef>
#include <vector>

#include "bulkrobust/instance.hpp"

namespace bulkrobust {

inline constexpr std::size_t kDefaultOmegaCap = 100000;

/// Everything the i-th augmentation step needs, computed once by preprocess_step.
///
/// `working` is the parent graph with every X-edge outside all relevant scenarios
/// contracted. Edge indices are shared with the instance, so link paths found in
/// `working` are already expressed in original edges.
struct StepContext {
    Problem problem = Problem::st;
    int level = 0;
    EdgeSet x;                       // X_{i-1}, original edges
    std::vector<EdgeSet> omega;      // relevant scenarios, each of size `level`
    std::vector<EdgeSet> scenarios;  // the full input scenarios F_j
    EdgeSet contracted;              // X-edges merged away (or dropped as loops)
    EmbeddedGraph working;
    std::vector<NodeId> node_map;    // original node -> working node
    NodeId s = -1;                   // working terminals (st only)
    NodeId t = -1;
    EdgeSet x_working;               // X-edges still present in `working`
    EmbeddedSubgraph sub;            // induced faces of x_working; empty when omega is empty

    [[nodiscard]] bool has_subgraph() const { return !omega.empty(); }
    [[nodiscard]] bool is_x(EdgeIndex e) const { return sub.in_x[static_cast<std::size_t>(e)] != 0; }
};

/// The two components of (V-bar, X \ F) for a relevant scenario F.
struct FailureCut {
    EdgeSet scenario;
    std::vector<signed char> side;  // per working node: 0 (s side), 1 (t side), -1 not in V-bar
};

struct TypedLink {
    NodeId u = -1;  // working nodes, u < v
    NodeId v = -1;
    int face = -1;
    std::vector<EdgeIndex> path;  // from u to v
    Weight cost = 0;
};

/// Whether X \ F violates the requirement in the original graph for every size-i subset F
/// of some scenario; returns the relevant (disconnecting) subsets, deduplicated.
std::vector<EdgeSet> relevant_subsets(const Instance& inst, const EdgeSet& x, int level,
                                      std::size_t cap = kDefaultOmegaCap);

/// True when X survives removal of every subset of size <= level of every scenario.
bool feasible_for_level(const Instance& inst, const EdgeSet& x, int level, std::size_t cap = kDefaultOmegaCap);

/// Builds the step context for level i. Requires X feasible for level i-1.
StepContext preprocess_step(const Instance& inst, const EdgeSet& x, int level, std::size_t cap = kDefaultOmegaCap);

FailureCut failure_components(const StepContext& ctx, const EdgeSet& f);

/// Endpoint-only cover relation: true iff u and v lie on different sides.
bool covers(NodeId u, NodeId v, const FailureCut& cut);
inline bool covers(const TypedLink& link, const FailureCut& cut) { return covers(link.u, link.v, cut); }

/// Per induced face, the shortest path among that face's unchosen edges for every pair of
/// distinct boundary nodes. Empty when omega is empty. The driver only uses these from level 2.
std::vector<TypedLink> enumerate_typed_links(const StepContext& ctx);

/// Number of F-edges on each induced face's boundary walk.
std::vector<int> scenario_face_counts(const StepContext& ctx, const EdgeSet& f);

/// Faces whose boundary carries two edges of F, after checking that every face carries 0
/// or 2 and exactly `level` faces carry 2. Throws InvariantError otherwise.
std::vector<int> faces_containing(const StepContext& ctx, const EdgeSet& f);

/// Runs the face/cut structure check on every relevant scenario; returns how many
/// scenarios were checked (throws on the first violation).
std::size_t validate_face_structure(const StepContext& ctx);

} // namespace bulkrobust

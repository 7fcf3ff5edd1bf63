#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bulkrobust/links.hpp"

namespace bulkrobust {

inline constexpr double kEpsLp = 1e-7;
inline constexpr double kEpsFeas = 1e-6;

/// min c.x subject to a_i.x >= b_i, x >= 0.
struct LinearProgram {
    struct Row {
        std::vector<double> a;
        double b = 0.0;
    };
    std::vector<double> c;
    std::vector<Row> rows;

    [[nodiscard]] int variable_count() const { return static_cast<int>(c.size()); }
    void add_row(std::vector<double> a, double b);
    /// lp_solve-compatible text; variables are implicitly nonnegative there.
    [[nodiscard]] std::string dump() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x;
    int pivots = 0;
};

/// Two-phase dense tableau simplex. Dantzig pricing, switching to Bland's rule once a
/// run of degenerate pivots is detected.
LpResult simplex_min(const LinearProgram& lp);

/// Undirected max-flow by shortest augmenting paths on double capacities.
class MaxFlow {
public:
    explicit MaxFlow(int nodes);
    void add_edge(int u, int v, double capacity);
    double run(int source, int sink);
    /// Nodes reachable from the source in the residual graph of the last run.
    [[nodiscard]] std::vector<char> source_side() const;

private:
    struct Arc {
        int to;
        double residual;
    };
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;
    int source_ = -1;
};

enum class CutMode { st, global };

struct SeparationResult {
    bool violating = false;
    EdgeSet set;           // F, the crossing scenario edges
    double cut_value = 0;  // min cut in H
};

/// Min cut in the graph of chosen edges (capacity 1 inside F_j, a large sentinel otherwise)
/// plus one edge per link with capacity x. A cut below level+1 yields a violated row.
SeparationResult separation_oracle(const StepContext& ctx, const std::vector<TypedLink>& links,
                                   const std::vector<double>& x, int scenario_index, CutMode mode);

inline CutMode cut_mode_for(Problem p) { return p == Problem::st ? CutMode::st : CutMode::global; }

struct FractionalCover {
    std::vector<double> x;       // per link, clipped to [0, 1]
    double value = 0.0;          // l(x)
    std::vector<EdgeSet> rows;   // scenarios added as explicit constraints, in order
    int oracle_calls = 0;
    int rounds = 0;
};

/// Covering mass sum_{links covering F} x for one relevant scenario.
double cover_mass(const StepContext& ctx, const std::vector<TypedLink>& links, const std::vector<double>& x,
                  const EdgeSet& f);

/// The covering LP with every member of ctx.omega written out explicitly.
LinearProgram explicit_link_lp(const StepContext& ctx, const std::vector<TypedLink>& links);

struct LinkLpOptions {
    int max_rounds = 1000;
    std::string* dump = nullptr;  // receives the final LP text when set
};

/// Cutting-plane solve of the typed-link LP driven by the separation oracle.
FractionalCover solve_link_lp(const StepContext& ctx, const std::vector<TypedLink>& links,
                              const LinkLpOptions& options = {});

} // namespace bulkrobust

#pragma once

#include <string>
#include <vector>

#include "bulkrobust/instance.hpp"
#include "bulkrobust/links.hpp"
#include "bulkrobust/rounding.hpp"

namespace bulkrobust {

struct LevelRecord {
    int level = 0;
    std::vector<EdgeSet> omega;
    EdgeSet contracted;
    std::size_t link_count = 0;
    double lp_value = 0.0;        // l(x*_i)
    Weight rounded_cost = 0;      // summed cost of the chosen links
    Weight added_weight = 0;      // w(A_i \ X_{i-1})
    double bound = 0.0;           // 8 i l(x*_i)
    int oracle_calls = 0;
    int lp_rounds = 0;
    std::size_t face_checks = 0;
    EdgeSet added;                // A_i
    std::vector<FaceRounding> faces;
    std::vector<FaceGap> gaps;    // only with SolveOptions::measure_gaps
    std::string lp_dump;          // only with SolveOptions::dump_lp
};

struct SolveTrace {
    Problem problem = Problem::st;
    int k = 0;
    EdgeSet x0;
    Weight x0_cost = 0;
    std::vector<LevelRecord> levels;
    Weight alg = 0;

    /// 1 + 8k(k+1)
    [[nodiscard]] double guarantee() const { return 1.0 + 8.0 * k * (k + 1); }
};

struct SolveOptions {
    bool measure_gaps = false;
    bool dump_lp = false;
    std::size_t omega_cap = kDefaultOmegaCap;
};

struct SolveResult {
    EdgeSet chosen;
    Weight cost = 0;
    SolveTrace trace;
};

/// Shortest s-t path or minimum spanning tree, both with edge-id tie breaks.
EdgeSet initial_solution(const Instance& inst);

/// Edges A_i that make X feasible for level i. Fills `record` when given.
EdgeSet augment_step(const Instance& inst, const EdgeSet& x, int level, const SolveOptions& options = {},
                     LevelRecord* record = nullptr);

SolveResult solve(const Instance& inst, const SolveOptions& options = {});

} // namespace bulkrobust

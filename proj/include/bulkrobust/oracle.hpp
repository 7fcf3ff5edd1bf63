#pragma once

#include <cstddef>
#include <vector>

#include "bulkrobust/generators.hpp"
#include "bulkrobust/instance.hpp"

namespace bulkrobust {

struct OracleBudget {
    int max_edges = 24;              // branching elements: positive-weight edges or hypergraph nodes
    std::size_t max_nodes = 20'000'000;
    double max_seconds = 120.0;
};

/// S survives every full scenario. Removing part of a scenario removes fewer edges, so
/// the full scenarios are the only ones that need checking.
bool is_feasible(const Instance& inst, const EdgeSet& s);

struct OracleResult {
    Weight opt = 0;
    EdgeSet witness;  // lexicographically least optimal edge index list
    std::size_t nodes = 0;
};

/// Exact bulk-robust optimum. Zero-weight edges are free to add, so only positive-weight
/// edges count against the budget. Throws BudgetExceeded or InfeasibleError.
OracleResult brute_force_opt(const Instance& inst, const OracleBudget& budget = {});

struct VertexCoverResult {
    int opt = 0;
    std::vector<int> witness;  // ascending node ids
};

/// Minimum vertex cover by enumerating node subsets in order of size.
VertexCoverResult brute_force_vc(const Hypergraph& h, const OracleBudget& budget = {});

} // namespace bulkrobust

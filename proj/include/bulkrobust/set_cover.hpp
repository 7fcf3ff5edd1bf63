#pragma once

#include <cstddef>
#include <vector>

#include "bulkrobust/instance.hpp"

namespace bulkrobust {

struct SetCoverInstance {
    int elements = 0;
    std::vector<std::vector<int>> sets;  // element ids per set
    std::vector<Weight> costs;
};

struct SetCoverResult {
    Weight cost = 0;
    std::vector<int> chosen;  // ascending set indices
    std::size_t nodes = 0;    // search nodes visited
};

/// Exact minimum-cost cover by branch and bound. Branches on the uncovered element with
/// the fewest candidate sets, trying candidates by (cost, index). Throws InvariantError when
/// some element lies in no set and BudgetExceeded past `node_cap` search nodes.
SetCoverResult solve_set_cover(const SetCoverInstance& inst, std::size_t node_cap = 20'000'000);

} // namespace bulkrobust

#pragma once

#include <string>
#include <string_view>

#include "bulkrobust/driver.hpp"

namespace bulkrobust {

/// {"chosen_edges": [ids], "cost": int, "trace": {...}}, one line plus newline.
std::string solution_to_json(const Instance& inst, const SolveResult& result);

/// The trace object alone.
std::string trace_to_json(const Instance& inst, const SolveTrace& trace);

struct SolutionFile {
    EdgeSet chosen;
    Weight cost = 0;
};

/// Reads chosen_edges and cost; edge ids are mapped to indices of `inst`.
SolutionFile parse_solution(const Instance& inst, std::string_view text);

} // namespace bulkrobust

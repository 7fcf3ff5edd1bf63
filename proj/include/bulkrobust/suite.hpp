#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bulkrobust/instance.hpp"
#include "bulkrobust/oracle.hpp"

namespace bulkrobust {

struct SuiteEntry {
    std::string id;
    Instance inst;
};

/// count instances of one family: "grid" or "sp" (alternating st/mst, k cycling 1..4,
/// n <= 30, m <= 6) or "hvc" (hypergraph reductions with k in {2,3,4}).
std::vector<SuiteEntry> make_family(const std::string& family, int count, std::uint64_t seed);

/// Grid and series-parallel instances interleaved, both problems.
std::vector<SuiteEntry> mixed_suite(int count, std::uint64_t seed);

struct BenchRow {
    std::string id;
    int n = 0;
    int m_e = 0;
    int k = 0;
    Weight alg = 0;
    std::optional<Weight> opt;
    std::vector<double> lp;     // per level
    std::vector<double> bound;  // per level, 8 i l(x*_i)
    double wall_ms = 0.0;

    [[nodiscard]] std::optional<double> ratio() const;
    [[nodiscard]] double guarantee() const { return 1.0 + 8.0 * k * (k + 1); }
};

/// Solves one instance and, when it has at most `oracle_edges` edges, its exact optimum.
BenchRow bench_instance(const SuiteEntry& entry, int oracle_edges = 20);

/// CSV with a fixed header. wall_ms is left empty unless `timing` is set.
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);

struct GapRow {
    std::string id;
    int level = 0;
    int face = -1;
    Weight integral = 0;
    double fractional = 0.0;
    double ratio = 1.0;
};

/// Per-face integrality gaps over all levels >= 2 of one solve.
std::vector<GapRow> gap_rows(const SuiteEntry& entry);

std::string gap_csv(const std::vector<GapRow>& rows);

} // namespace bulkrobust

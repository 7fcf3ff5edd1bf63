#include "bulkrobust/suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bulkrobust/driver.hpp"
#include "bulkrobust/error.hpp"
#include "bulkrobust/generators.hpp"

namespace bulkrobust {

namespace {

constexpr int kMaxNodes = 30;
constexpr Weight kWeightMax = 9;

std::string label(const std::string& family, int i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%04d", family.c_str(), i);
    return buf;
}

// Tries successive sub-seeds until the generator produces a small feasible instance.
Instance planar_instance(bool grid, int i, std::uint64_t seed)
{
    const Problem problem = (i / 2) % 2 == 0 ? Problem::st : Problem::mst;
    const int k = 1 + (i / 4) % 4;
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(i) * 131ULL + attempt);
        ScenarioParams params;
        params.count = static_cast<int>(rng.uniform(1, 6));
        params.diameter = k;
        const std::uint64_t sub = rng.next();
        try {
            Instance inst;
            if (grid) {
                const int rows = static_cast<int>(rng.uniform(2, 5));
                const int cols = static_cast<int>(rng.uniform(2, 6));
                inst = gen_grid(rows, cols, params, kWeightMax, sub, problem);
            } else {
                const int depth = static_cast<int>(rng.uniform(2, 5));
                inst = gen_series_parallel(depth, params, kWeightMax, sub, problem);
            }
            if (inst.graph.node_count <= kMaxNodes) {
                return inst;
            }
        } catch (const InfeasibleError&) {
        }
    }
    throw Error("suite: no feasible instance for slot " + std::to_string(i));
}

} // namespace

std::vector<SuiteEntry> make_family(const std::string& family, int count, std::uint64_t seed)
{
    std::vector<SuiteEntry> out;
    for (int i = 0; i < count; ++i) {
        if (family == "grid" || family == "sp") {
            out.push_back(SuiteEntry{label(family, i), planar_instance(family == "grid", i, seed)});
        } else if (family == "hvc") {
            const int k = 2 + i % 3;
            Rng rng(seed * 7919ULL + static_cast<std::uint64_t>(i));
            const Hypergraph h = gen_hypergraph(k, 2, 6, rng.next());
            out.push_back(SuiteEntry{label(family, i), reduce_hypergraph_vc(h)});
        } else {
            throw Error("unknown family '" + family + "' (expected grid, sp or hvc)");
        }
    }
    return out;
}

std::vector<SuiteEntry> mixed_suite(int count, std::uint64_t seed)
{
    std::vector<SuiteEntry> out;
    for (int i = 0; i < count; ++i) {
        const bool grid = i % 2 == 0;
        // the family index keeps the st/mst and k cycles intact within each family
        const int slot = i / 2;
        out.push_back(SuiteEntry{label(grid ? "grid" : "sp", slot), planar_instance(grid, slot, seed)});
    }
    return out;
}

std::optional<double> BenchRow::ratio() const
{
    if (!opt) {
        return std::nullopt;
    }
    if (*opt == 0) {
        return alg == 0 ? 1.0 : INFINITY;
    }
    return static_cast<double>(alg) / static_cast<double>(*opt);
}

BenchRow bench_instance(const SuiteEntry& entry, int oracle_edges)
{
    const Instance& inst = entry.inst;
    BenchRow row;
    row.id = entry.id;
    row.n = inst.graph.node_count;
    row.m_e = inst.graph.present_edge_count();
    row.k = inst.diameter();
    const auto start = std::chrono::steady_clock::now();
    const SolveResult res = solve(inst);
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.alg = res.cost;
    for (const auto& rec : res.trace.levels) {
        row.lp.push_back(rec.lp_value);
        row.bound.push_back(rec.bound);
    }
    if (row.m_e <= oracle_edges) {
        try {
            row.opt = brute_force_opt(inst).opt;
        } catch (const BudgetExceeded&) {
        }
    }
    return row;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing)
{
    std::size_t levels = 0;
    for (const auto& r : rows) {
        levels = std::max(levels, r.lp.size());
    }
    std::ostringstream os;
    os << "instance_id,n,m_e,k,ALG,OPT,ratio";
    for (std::size_t i = 1; i <= levels; ++i) {
        os << ",lp_level_" << i;
    }
    for (std::size_t i = 1; i <= levels; ++i) {
        os << ",bound_level_" << i;
    }
    os << ",wall_ms\n";
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    for (const auto& r : rows) {
        os << r.id << ',' << r.n << ',' << r.m_e << ',' << r.k << ',' << r.alg << ',';
        if (r.opt) {
            os << *r.opt;
        }
        os << ',';
        if (auto q = r.ratio()) {
            os << num(*q);
        }
        for (std::size_t i = 0; i < levels; ++i) {
            os << ',' << (i < r.lp.size() ? num(r.lp[i]) : "");
        }
        for (std::size_t i = 0; i < levels; ++i) {
            os << ',' << (i < r.bound.size() ? num(r.bound[i]) : "");
        }
        os << ',';
        if (timing) {
            os << num(r.wall_ms);
        }
        os << '\n';
    }
    return os.str();
}

std::vector<GapRow> gap_rows(const SuiteEntry& entry)
{
    SolveOptions options;
    options.measure_gaps = true;
    const SolveResult res = solve(entry.inst, options);
    std::vector<GapRow> out;
    for (const auto& rec : res.trace.levels) {
        for (const auto& g : rec.gaps) {
            out.push_back(GapRow{entry.id, rec.level, g.face, g.integral, g.fractional, g.ratio});
        }
    }
    return out;
}

std::string gap_csv(const std::vector<GapRow>& rows)
{
    std::ostringstream os;
    os << "instance_id,level,face,integral,fractional,ratio\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%lld,%.6f,%.6f\n", r.id.c_str(), r.level, r.face,
                      static_cast<long long>(r.integral), r.fractional, r.ratio);
        os << buf;
    }
    return os.str();
}

} // namespace bulkrobust

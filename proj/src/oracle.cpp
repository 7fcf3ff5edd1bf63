#include "bulkrobust/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>

#include "bulkrobust/error.hpp"
#include "bulkrobust/graph_util.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool mask_feasible(const Instance& inst, const std::vector<char>& mask)
{
    if (!requirement_met(inst, mask)) {
        return false;
    }
    auto work = mask;
    for (const auto& f : inst.scenarios) {
        for (EdgeIndex e : f) {
            work[idx(e)] = 0;
        }
        const bool ok = requirement_met(inst, work);
        for (EdgeIndex e : f) {
            work[idx(e)] = mask[idx(e)];
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

class OptSearch {
public:
    OptSearch(const Instance& inst, const OracleBudget& budget) : inst_(inst), budget_(budget)
    {
        start_ = std::chrono::steady_clock::now();
    }

    // Cheapest feasible S with forced_in inside S and forced_out disjoint from it.
    std::optional<Weight> best(const std::vector<char>& forced_in, const std::vector<char>& forced_out)
    {
        const auto& g = inst_.graph;
        const int slots = g.edge_slots();
        in_.assign(idx(slots), 0);
        allowed_.assign(idx(slots), 0);
        Weight cost = 0;
        for (EdgeIndex e = 0; e < slots; ++e) {
            if (!g.is_present(e) || forced_out[idx(e)]) {
                continue;
            }
            allowed_[idx(e)] = 1;
            if (forced_in[idx(e)] || g.edges[idx(e)].weight == 0) {
                in_[idx(e)] = 1;
                cost += g.edges[idx(e)].weight;
            }
        }
        if (!mask_feasible(inst_, allowed_)) {
            return std::nullopt;
        }
        best_ = std::numeric_limits<Weight>::max();
        descend(cost);
        if (best_ == std::numeric_limits<Weight>::max()) {
            return std::nullopt;
        }
        return best_;
    }

    [[nodiscard]] std::size_t nodes() const { return nodes_; }

private:
    void tick()
    {
        if (++nodes_ > budget_.max_nodes) {
            throw BudgetExceeded("oracle: search node cap exceeded");
        }
        if ((nodes_ & 1023) == 0) {
            const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
            if (spent.count() > budget_.max_seconds) {
                throw BudgetExceeded("oracle: time cap exceeded");
            }
        }
    }

    void descend(Weight cost)
    {
        tick();
        const auto& g = inst_.graph;
        // find a scenario the chosen edges do not yet survive
        int broken = -1;
        std::vector<char> work = in_;
        if (!requirement_met(inst_, work)) {
            broken = -2;
        }
        for (std::size_t j = 0; broken == -1 && j < inst_.scenarios.size(); ++j) {
            for (EdgeIndex e : inst_.scenarios[j]) {
                work[idx(e)] = 0;
            }
            if (!requirement_met(inst_, work)) {
                broken = static_cast<int>(j);
            }
            for (EdgeIndex e : inst_.scenarios[j]) {
                work[idx(e)] = in_[idx(e)];
            }
        }
        if (broken == -1) {
            best_ = std::min(best_, cost);
            return;
        }
        static const EdgeSet kNone;
        const EdgeSet& f = broken >= 0 ? inst_.scenarios[idx(broken)] : kNone;
        for (EdgeIndex e : f) {
            work[idx(e)] = 0;
        }
        const auto label = component_labels(g, work);
        const int side = label[idx(inst_.problem == Problem::st ? inst_.s : 0)];
        // every completion needs an edge leaving this component outside the scenario
        std::vector<EdgeIndex> cand;
        for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
            if (!allowed_[idx(e)] || in_[idx(e)] || contains(f, e)) {
                continue;
            }
            const Edge& ed = g.edges[idx(e)];
            if ((label[idx(ed.u)] == side) != (label[idx(ed.v)] == side)) {
                cand.push_back(e);
            }
        }
        std::sort(cand.begin(), cand.end(), [&](EdgeIndex a, EdgeIndex b) {
            const Edge& ea = g.edges[idx(a)];
            const Edge& eb = g.edges[idx(b)];
            return ea.weight != eb.weight ? ea.weight < eb.weight : ea.id < eb.id;
        });
        std::vector<EdgeIndex> dropped;
        for (EdgeIndex c : cand) {
            if (cost + g.edges[idx(c)].weight >= best_) {
                break;
            }
            if (!mask_feasible(inst_, allowed_)) {
                break;
            }
            in_[idx(c)] = 1;
            descend(cost + g.edges[idx(c)].weight);
            in_[idx(c)] = 0;
            allowed_[idx(c)] = 0;
            dropped.push_back(c);
        }
        for (EdgeIndex c : dropped) {
            allowed_[idx(c)] = 1;
        }
    }

    const Instance& inst_;
    OracleBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::vector<char> in_;
    std::vector<char> allowed_;
    Weight best_ = 0;
    std::size_t nodes_ = 0;
};

} // namespace

bool is_feasible(const Instance& inst, const EdgeSet& s)
{
    return mask_feasible(inst, edge_mask(inst.graph.edge_slots(), s));
}

OracleResult brute_force_opt(const Instance& inst, const OracleBudget& budget)
{
    const auto& g = inst.graph;
    int branching = 0;
    for (EdgeIndex e = 0; e < g.edge_slots(); ++e) {
        branching += g.is_present(e) && g.edges[idx(e)].weight > 0 ? 1 : 0;
    }
    if (branching > budget.max_edges) {
        throw BudgetExceeded("oracle: " + std::to_string(branching) + " positive-weight edges exceed the budget of " +
                             std::to_string(budget.max_edges));
    }
    const int slots = g.edge_slots();
    std::vector<char> in(idx(slots), 0);
    std::vector<char> out(idx(slots), 0);
    OptSearch search(inst, budget);
    const auto opt = search.best(in, out);
    if (!opt) {
        throw InfeasibleError("oracle: no feasible edge set exists");
    }
    OracleResult result;
    result.opt = *opt;

    // Fix the witness one edge at a time in external-id order: stop as soon as the chosen
    // prefix is optimal on its own, otherwise take the next edge whenever an optimal
    // completion still exists.
    std::vector<EdgeIndex> by_id;
    for (EdgeIndex e = 0; e < slots; ++e) {
        if (g.is_present(e)) {
            by_id.push_back(e);
        }
    }
    std::sort(by_id.begin(), by_id.end(), [&](EdgeIndex a, EdgeIndex b) { return g.edges[idx(a)].id < g.edges[idx(b)].id; });
    Weight chosen_cost = 0;
    for (EdgeIndex e : by_id) {
        if (chosen_cost == result.opt && mask_feasible(inst, in)) {
            break;
        }
        in[idx(e)] = 1;
        const auto with = search.best(in, out);
        if (with && *with == result.opt) {
            chosen_cost += g.edges[idx(e)].weight;
            continue;
        }
        in[idx(e)] = 0;
        out[idx(e)] = 1;
    }
    for (EdgeIndex e = 0; e < slots; ++e) {
        if (in[idx(e)]) {
            result.witness.push_back(e);
        }
    }
    check_invariant(is_feasible(inst, result.witness) && inst.weight_of(result.witness) == result.opt,
                    "oracle witness is not an optimal feasible set");
    result.nodes = search.nodes();
    return result;
}

VertexCoverResult brute_force_vc(const Hypergraph& h, const OracleBudget& budget)
{
    validate_hypergraph(h);
    std::vector<int> nodes;
    for (const auto& part : h.parts) {
        nodes.insert(nodes.end(), part.begin(), part.end());
    }
    std::sort(nodes.begin(), nodes.end());
    const int n = static_cast<int>(nodes.size());
    if (n > budget.max_edges) {
        throw BudgetExceeded("oracle: " + std::to_string(n) + " hypergraph nodes exceed the budget");
    }
    std::size_t visited = 0;
    for (int r = 0; r <= n; ++r) {
        std::vector<int> pick(idx(r));
        for (int i = 0; i < r; ++i) {
            pick[idx(i)] = i;
        }
        while (true) {
            if (++visited > budget.max_nodes) {
                throw BudgetExceeded("oracle: vertex cover enumeration cap exceeded");
            }
            std::vector<int> cover;
            for (int i : pick) {
                cover.push_back(nodes[idx(i)]);
            }
            bool all = true;
            for (const auto& e : h.hyperedges) {
                bool hit = false;
                for (int v : e) {
                    hit = hit || std::binary_search(cover.begin(), cover.end(), v);
                }
                if (!hit) {
                    all = false;
                    break;
                }
            }
            if (all) {
                return VertexCoverResult{r, cover};
            }
            int i = r - 1;
            while (i >= 0 && pick[idx(i)] == n - r + i) {
                --i;
            }
            if (i < 0) {
                break;
            }
            ++pick[idx(i)];
            for (int j = i + 1; j < r; ++j) {
                pick[idx(j)] = pick[idx(j - 1)] + 1;
            }
        }
    }
    throw InvariantError("vertex cover enumeration found no cover");
}

} // namespace bulkrobust

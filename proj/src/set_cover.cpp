#include "bulkrobust/set_cover.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "bulkrobust/error.hpp"

namespace bulkrobust {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

class Search {
public:
    Search(const SetCoverInstance& inst, std::size_t cap) : inst_(inst), cap_(cap)
    {
        const int n = static_cast<int>(inst.sets.size());
        holders_.resize(idx(inst.elements));
        for (int s = 0; s < n; ++s) {
            for (int e : inst.sets[idx(s)]) {
                holders_[idx(e)].push_back(s);
            }
        }
        for (auto& h : holders_) {
            std::sort(h.begin(), h.end(), [&](int a, int b) {
                return inst.costs[idx(a)] != inst.costs[idx(b)] ? inst.costs[idx(a)] < inst.costs[idx(b)] : a < b;
            });
        }
        cover_count_.assign(idx(inst.elements), 0);
        excluded_.assign(idx(n), 0);
        taken_.assign(idx(n), 0);
        uncovered_ = inst.elements;
    }

    SetCoverResult run()
    {
        for (int e = 0; e < inst_.elements; ++e) {
            if (holders_[idx(e)].empty()) {
                throw InvariantError("set cover: element " + std::to_string(e) + " lies in no set");
            }
        }
        // zero-cost sets never hurt
        for (int s = 0; s < static_cast<int>(inst_.sets.size()); ++s) {
            if (inst_.costs[idx(s)] == 0 && !inst_.sets[idx(s)].empty()) {
                take(s);
            }
        }
        greedy();
        descend();
        SetCoverResult out;
        out.cost = best_cost_;
        out.chosen = best_;
        std::sort(out.chosen.begin(), out.chosen.end());
        out.nodes = nodes_;
        return out;
    }

private:
    void take(int s)
    {
        taken_[idx(s)] = 1;
        chosen_.push_back(s);
        cost_ += inst_.costs[idx(s)];
        for (int e : inst_.sets[idx(s)]) {
            if (cover_count_[idx(e)]++ == 0) {
                --uncovered_;
            }
        }
    }

    void drop(int s)
    {
        taken_[idx(s)] = 0;
        chosen_.pop_back();
        cost_ -= inst_.costs[idx(s)];
        for (int e : inst_.sets[idx(s)]) {
            if (--cover_count_[idx(e)] == 0) {
                ++uncovered_;
            }
        }
    }

    int fresh(int s) const
    {
        int k = 0;
        for (int e : inst_.sets[idx(s)]) {
            k += cover_count_[idx(e)] == 0 ? 1 : 0;
        }
        return k;
    }

    void greedy()
    {
        const auto saved = chosen_.size();
        while (uncovered_ > 0) {
            int pick = -1;
            double ratio = 0;
            for (int s = 0; s < static_cast<int>(inst_.sets.size()); ++s) {
                const int k = taken_[idx(s)] ? 0 : fresh(s);
                if (k == 0) {
                    continue;
                }
                const double r = static_cast<double>(inst_.costs[idx(s)]) / k;
                if (pick < 0 || r < ratio) {
                    pick = s;
                    ratio = r;
                }
            }
            take(pick);
        }
        best_cost_ = cost_;
        best_ = chosen_;
        while (chosen_.size() > saved) {
            drop(chosen_.back());
        }
    }

    // Each uncovered element pays the cheapest per-element price of a set that can
    // still cover it; any completion costs at least the sum.
    double lower_bound() const
    {
        double total = 0;
        for (int e = 0; e < inst_.elements; ++e) {
            if (cover_count_[idx(e)] > 0) {
                continue;
            }
            double cheapest = std::numeric_limits<double>::infinity();
            for (int s : holders_[idx(e)]) {
                if (excluded_[idx(s)] || taken_[idx(s)]) {
                    continue;
                }
                cheapest = std::min(cheapest, static_cast<double>(inst_.costs[idx(s)]) / fresh(s));
            }
            total += cheapest;
        }
        return total;
    }

    void descend()
    {
        if (++nodes_ > cap_) {
            throw BudgetExceeded("set cover: search node cap exceeded");
        }
        if (uncovered_ == 0) {
            if (cost_ < best_cost_) {
                best_cost_ = cost_;
                best_ = chosen_;
            }
            return;
        }
        if (static_cast<double>(cost_) + lower_bound() >= static_cast<double>(best_cost_) - 1e-9) {
            return;
        }
        int branch = -1;
        int fewest = std::numeric_limits<int>::max();
        for (int e = 0; e < inst_.elements; ++e) {
            if (cover_count_[idx(e)] > 0) {
                continue;
            }
            int k = 0;
            for (int s : holders_[idx(e)]) {
                k += excluded_[idx(s)] ? 0 : 1;
            }
            if (k < fewest) {
                fewest = k;
                branch = e;
            }
        }
        if (fewest == 0) {
            return;
        }
        std::vector<int> tried;
        for (int s : holders_[idx(branch)]) {
            if (excluded_[idx(s)]) {
                continue;
            }
            take(s);
            descend();
            drop(s);
            excluded_[idx(s)] = 1;
            tried.push_back(s);
        }
        for (int s : tried) {
            excluded_[idx(s)] = 0;
        }
    }

    const SetCoverInstance& inst_;
    std::size_t cap_;
    std::vector<std::vector<int>> holders_;
    std::vector<int> cover_count_;
    std::vector<char> excluded_;
    std::vector<char> taken_;
    std::vector<int> chosen_;
    Weight cost_ = 0;
    int uncovered_ = 0;
    std::vector<int> best_;
    Weight best_cost_ = 0;
    std::size_t nodes_ = 0;
};

} // namespace

SetCoverResult solve_set_cover(const SetCoverInstance& inst, std::size_t node_cap)
{
    if (inst.costs.size() != inst.sets.size()) {
        throw InvariantError("set cover: cost vector does not match sets");
    }
    for (const auto& s : inst.sets) {
        for (int e : s) {
            if (e < 0 || e >= inst.elements) {
                throw InvariantError("set cover: element out of range");
            }
        }
    }
    for (Weight c : inst.costs) {
        if (c < 0) {
            throw InvariantError("set cover: negative cost");
        }
    }
    Search search(inst, node_cap);
    return search.run();
}

} // namespace bulkrobust

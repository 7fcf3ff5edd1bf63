#include <algorithm>
#include <deque>
#include <limits>

#include "bulkrobust/error.hpp"
#include "bulkrobust/lp.hpp"

namespace bulkrobust {

namespace {
constexpr double kResidualTol = 1e-12;
}

MaxFlow::MaxFlow(int nodes) : out_(static_cast<std::size_t>(nodes)) {}

void MaxFlow::add_edge(int u, int v, double capacity)
{
    if (capacity < 0) {
        throw InvariantError("MaxFlow: negative capacity");
    }
    if (u == v || capacity == 0.0) {
        return;
    }
    // an undirected edge is an arc pair, each the other's reverse
    out_[static_cast<std::size_t>(u)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back(Arc{v, capacity});
    out_[static_cast<std::size_t>(v)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back(Arc{u, capacity});
}

double MaxFlow::run(int source, int sink)
{
    source_ = source;
    double total = 0.0;
    const std::size_t n = out_.size();
    std::vector<int> via(n);
    while (true) {
        std::fill(via.begin(), via.end(), -1);
        std::vector<char> seen(n, 0);
        std::deque<int> queue{source};
        seen[static_cast<std::size_t>(source)] = 1;
        while (!queue.empty() && !seen[static_cast<std::size_t>(sink)]) {
            const int x = queue.front();
            queue.pop_front();
            for (int a : out_[static_cast<std::size_t>(x)]) {
                const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.residual > kResidualTol && !seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = 1;
                    via[static_cast<std::size_t>(arc.to)] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if (!seen[static_cast<std::size_t>(sink)]) {
            return total;
        }
        double push = std::numeric_limits<double>::infinity();
        for (int x = sink; x != source;) {
            const int a = via[static_cast<std::size_t>(x)];
            push = std::min(push, arcs_[static_cast<std::size_t>(a)].residual);
            x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
        }
        for (int x = sink; x != source;) {
            const int a = via[static_cast<std::size_t>(x)];
            arcs_[static_cast<std::size_t>(a)].residual -= push;
            arcs_[static_cast<std::size_t>(a ^ 1)].residual += push;
            x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
        }
        total += push;
    }
}

std::vector<char> MaxFlow::source_side() const
{
    std::vector<char> seen(out_.size(), 0);
    if (source_ < 0) {
        return seen;
    }
    std::deque<int> queue{source_};
    seen[static_cast<std::size_t>(source_)] = 1;
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int a : out_[static_cast<std::size_t>(x)]) {
            const Arc& arc = arcs_[static_cast<std::size_t>(a)];
            if (arc.residual > kResidualTol && !seen[static_cast<std::size_t>(arc.to)]) {
                seen[static_cast<std::size_t>(arc.to)] = 1;
                queue.push_back(arc.to);
            }
        }
    }
    return seen;
}

} // namespace bulkrobust

#include "dpp/flow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dpp/error.hpp"

namespace dpp {

MinCostFlow::MinCostFlow(std::size_t nodes) : out_(nodes) {}

std::size_t MinCostFlow::add_arc(std::size_t from, std::size_t to, Flow capacity, double cost) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, cost});
    arcs_.push_back({from, 0, -cost});
    out_[from].push_back(id);
    out_[to].push_back(id + 1);
    return id;
}

MinCostFlow::Result MinCostFlow::solve(std::size_t s, std::size_t t, Flow limit) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Relaxations must beat the current label by more than this to count, so
    // rounding noise on zero-cost cycles cannot loop forever.
    constexpr double slack = 1e-12;
    const std::size_t n = out_.size();
    Result r;
    std::vector<double> dist(n);
    std::vector<std::size_t> via(n);
    while (r.flow < limit) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[s] = 0.0;
        for (std::size_t round = 0; round < n; ++round) {
            bool changed = false;
            for (std::size_t u = 0; u < n; ++u) {
                if (dist[u] == inf) continue;
                for (std::size_t a : out_[u]) {
                    const Arc& arc = arcs_[a];
                    if (arc.residual <= 0) continue;
                    const double cand = dist[u] + arc.cost;
                    if (cand < dist[arc.to] - slack) {
                        dist[arc.to] = cand;
                        via[arc.to] = a;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (dist[t] == inf) break;

        Flow push = limit - r.flow;
        for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].residual);
        for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
            arcs_[via[v]].residual -= push;
            arcs_[via[v] ^ 1].residual += push;
            r.cost += static_cast<double>(push) * arcs_[via[v]].cost;
        }
        r.flow += push;
    }
    return r;
}

TransportPlan solve_transport(std::span<const MinCostFlow::Flow> supply, std::span<const MinCostFlow::Flow> demand,
                              std::span<const double> cost) {
    const std::size_t m = supply.size(), k = demand.size();
    if (cost.size() != m * k) throw InvalidArgument("cost matrix has the wrong shape");
    const auto total = std::accumulate(supply.begin(), supply.end(), MinCostFlow::Flow{0});
    if (total != std::accumulate(demand.begin(), demand.end(), MinCostFlow::Flow{0}))
        throw InvalidArgument("supply and demand totals differ");

    const std::size_t s = m + k, t = m + k + 1;
    MinCostFlow g(m + k + 2);
    for (std::size_t i = 0; i < m; ++i)
        if (supply[i] > 0) g.add_arc(s, i, supply[i], 0.0);
    for (std::size_t j = 0; j < k; ++j)
        if (demand[j] > 0) g.add_arc(m + j, t, demand[j], 0.0);
    std::vector<std::size_t> arc_of(m * k, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < m; ++i) {
        if (supply[i] <= 0) continue;
        for (std::size_t j = 0; j < k; ++j)
            if (demand[j] > 0) arc_of[i * k + j] = g.add_arc(i, m + j, total, cost[i * k + j]);
    }
    const auto res = g.solve(s, t, total);
    if (res.flow != total) throw std::logic_error("transport network could not route all mass");

    TransportPlan plan{0.0, std::vector<MinCostFlow::Flow>(m * k, 0)};
    for (std::size_t e = 0; e < m * k; ++e) {
        if (arc_of[e] == std::numeric_limits<std::size_t>::max()) continue;
        plan.flow[e] = g.flow_on(arc_of[e]);
        plan.cost += static_cast<double>(plan.flow[e]) * cost[e];
    }
    return plan;
}

} // namespace dpp

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dpp {

/// Successive-shortest-path min-cost flow with integer capacities and real
/// arc costs. Sized for the small transport problems used here (tens of
/// nodes); shortest paths use Bellman-Ford on the residual graph.
class MinCostFlow {
public:
    using Flow = std::int64_t;

    explicit MinCostFlow(std::size_t nodes);

    /// Returns the arc index (its reverse is index ^ 1).
    std::size_t add_arc(std::size_t from, std::size_t to, Flow capacity, double cost);

    struct Result {
        Flow flow = 0;
        double cost = 0.0;
    };
    /// Pushes up to `limit` units from s to t at minimum cost.
    Result solve(std::size_t s, std::size_t t, Flow limit);

    Flow flow_on(std::size_t arc) const { return arcs_[arc ^ 1].residual; }

private:
    struct Arc {
        std::size_t to;
        Flow residual;
        double cost;
    };
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> out_;
};

/// Optimal transport between integer supplies and demands of equal total.
/// cost is row-major supply.size() x demand.size(). Returns the total cost
/// in the same integer units as the masses.
struct TransportPlan {
    double cost = 0.0;
    std::vector<MinCostFlow::Flow> flow; // row-major
};
TransportPlan solve_transport(std::span<const MinCostFlow::Flow> supply, std::span<const MinCostFlow::Flow> demand,
                              std::span<const double> cost);

} // namespace dpp

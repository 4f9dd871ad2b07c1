#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "dpp/error.hpp"
#include "dpp/flow.hpp"
#include "dpp/metrics.hpp"
#include "dpp/pursuit.hpp"
#include "support.hpp"

using namespace dpp;

namespace {

std::vector<std::string> two_ones(unsigned k) {
    std::vector<std::string> out;
    for (unsigned a = 0; a < k; ++a)
        for (unsigned b = a + 1; b < k; ++b) {
            std::string s(k, '0');
            s[a] = s[b] = '1';
            out.push_back(s);
        }
    return out;
}

// Minimum over every integer transport plan, enumerated cell by cell. With
// integer margins the LP optimum sits on an integer vertex, so this is exact.
double brute_force_transport(const std::vector<long>& supply, const std::vector<long>& demand,
                             const std::vector<double>& cost) {
    const std::size_t m = supply.size(), n = demand.size();
    std::vector<long> row = supply, col = demand;
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double)> go = [&](std::size_t cell, double acc) {
        if (acc >= best) return;
        if (cell == m * n) {
            best = acc;
            return;
        }
        const std::size_t i = cell / n, j = cell % n;
        const long cap = std::min(row[i], col[j]);
        // the last cell in a row or column is forced
        long lo = 0;
        if (j == n - 1) lo = row[i];
        if (i == m - 1) lo = std::max(lo, col[j]);
        if (lo > cap) return;
        for (long t = lo; t <= cap; ++t) {
            row[i] -= t;
            col[j] -= t;
            go(cell + 1, acc + t * cost[cell]);
            row[i] += t;
            col[j] += t;
        }
    };
    go(0, 0.0);
    return best;
}

std::vector<double> scaled(const std::vector<long>& v, double unit) {
    std::vector<double> out;
    for (long x : v) out.push_back(x / unit);
    return out;
}

} // namespace

TEST_CASE("adjacent transposition distance on two-one 5-tuples") {
    const auto tuples = two_ones(5);
    REQUIRE(tuples.size() == 10);
    const auto g = ground_adjacent_transposition(tuples);
    const auto at = [&](const std::string& a, const std::string& b) {
        const auto& l = g.labels();
        const auto i = std::find(l.begin(), l.end(), a) - l.begin(), j = std::find(l.begin(), l.end(), b) - l.begin();
        return g(i, j);
    };
    CHECK(at("11000", "00011") == 6.0);

    int pairs = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        for (std::size_t j = i + 1; j < tuples.size(); ++j) {
            const auto& s = tuples[i];
            const auto& t = tuples[j];
            const long a = s.find('1'), b = s.rfind('1'), a2 = t.find('1'), b2 = t.rfind('1');
            CHECK(at(s, t) == static_cast<double>(std::labs(a - a2) + std::labs(b - b2)));
            ++pairs;
        }
    CHECK(pairs == 45);
    CHECK(!g.triangle_warning());
}

TEST_CASE("ground metric validation and csv round trip") {
    CHECK_THROWS_AS(GroundMetric({"a", "b"}, {0, 1, 2, 0}), InvalidArgument);
    CHECK_THROWS_AS(GroundMetric({"a", "b"}, {1, 1, 1, 0}), InvalidArgument);
    CHECK_THROWS_AS(GroundMetric({"a", "b"}, {0, -1, -1, 0}), InvalidArgument);
    const GroundMetric bad({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0});
    CHECK(bad.triangle_warning());

    const auto g = ground_adjacent_transposition(two_ones(4));
    std::stringstream ss;
    g.write_csv(ss);
    const auto back = GroundMetric::read_csv(ss);
    CHECK(back.labels() == g.labels());
    CHECK(back.matrix() == g.matrix());
}

TEST_CASE("flow solver matches brute-force transport in eighths and quarters") {
    auto rng = testing::rng_for(21);
    std::uniform_int_distribution<int> cost_draw(0, 6);
    for (int rep = 0; rep < 200; ++rep) {
        const long units = rep % 2 ? 8 : 4;
        const std::size_t m = 1 + rep % 4;
        const auto supply = testing::random_composition(units, m, rng);
        const auto demand = testing::random_composition(units, m, rng);
        std::vector<double> dist(m * m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) dist[i * m + j] = dist[j * m + i] = 1 + cost_draw(rng);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < m; ++i) labels.push_back("p" + std::to_string(i));
        const GroundMetric g(labels, dist);

        const double oracle = brute_force_transport(supply, demand, dist) / units;
        const auto p = scaled(supply, units), q = scaled(demand, units);
        CHECK(std::abs(wasserstein(p, q, g) - oracle) < 1e-9);

        std::vector<MinCostFlow::Flow> s(supply.begin(), supply.end()), d(demand.begin(), demand.end());
        CHECK(std::abs(solve_transport(s, d, dist).cost - oracle * units) < 1e-9);
    }
}

TEST_CASE("transport plan respects margins") {
    const std::vector<MinCostFlow::Flow> s{3, 1, 4}, d{2, 2, 4};
    const std::vector<double> cost{0, 1, 2, 1, 0, 1, 2, 1, 0};
    const auto plan = solve_transport(s, d, cost);
    for (int i = 0; i < 3; ++i) CHECK(plan.flow[i * 3] + plan.flow[i * 3 + 1] + plan.flow[i * 3 + 2] == s[i]);
    for (int j = 0; j < 3; ++j) CHECK(plan.flow[j] + plan.flow[3 + j] + plan.flow[6 + j] == d[j]);
    CHECK(plan.cost == 1.0);
}

TEST_CASE("metric axioms on random probability vectors") {
    auto rng = testing::rng_for(22);
    const auto labels = two_ones(5);
    const auto ground = ground_adjacent_transposition(labels);
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = testing::random_probability(10, rng), q = testing::random_probability(10, rng),
                   r = testing::random_probability(10, rng);
        CHECK(tv(p, p) == 0.0);
        CHECK(hellinger(p, p) == 0.0);
        CHECK(wasserstein(p, p, ground) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(tv(p, q) == doctest::Approx(tv(q, p)));
        CHECK(hellinger(p, q) == doctest::Approx(hellinger(q, p)));
        CHECK(std::abs(wasserstein(p, q, ground) - wasserstein(q, p, ground)) < 1e-9);
        CHECK(tv(p, q) > 0.0);
        CHECK(hellinger(p, q) > 0.0);
        CHECK(tv(p, r) <= tv(p, q) + tv(q, r) + 1e-12);
        CHECK(wasserstein(p, r, ground) <= wasserstein(p, q, ground) + wasserstein(q, r, ground) + 1e-9);
        CHECK(hellinger_normalized(p, q) == doctest::Approx(std::sqrt(hellinger(p, q) / 2.0)));
        CHECK(tv(p, q) <= 1.0);
    }
}

TEST_CASE("total variation equals transport under the 0/1 ground metric") {
    auto rng = testing::rng_for(23);
    for (std::size_t m : {2u, 3u, 5u, 10u}) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i));
        const auto g = GroundMetric::discrete(labels);
        for (int rep = 0; rep < 50; ++rep) {
            const auto p = testing::random_probability(m, rng), q = testing::random_probability(m, rng);
            CHECK(std::abs(wasserstein(p, q, g) - tv(p, q)) < 1e-9);
        }
    }
}

TEST_CASE("hellinger as printed has no square root") {
    const std::vector<double> p{1.0, 0.0}, q{0.0, 1.0};
    CHECK(hellinger(p, q) == 2.0);
    CHECK(hellinger_normalized(p, q) == 1.0);
    CHECK(tv(p, q) == 1.0);
}

TEST_CASE("profile distance adds a mass penalty") {
    const std::vector<double> p{1.0, 1.0}, q{2.0, 2.0};
    auto r = profile_distance(p, q, Metric::tv);
    CHECK(r.normalized_distance == 0.0);
    CHECK(r.mass_penalty == 2.0);
    CHECK(r.total == r.normalized_distance + r.mass_penalty);
    auto h = profile_distance(p, q, Metric::hellinger, Penalty::sqrt_mass);
    CHECK(h.mass_penalty == doctest::Approx(std::pow(std::sqrt(2.0) - 2.0, 2)));
    CHECK_THROWS_AS(profile_distance(p, q, Metric::tv, Penalty::sqrt_mass), InvalidArgument);
    CHECK_THROWS_AS(profile_distance(p, q, Metric::wasserstein), InvalidArgument);
}

TEST_CASE("metric names parse both ways") {
    for (auto m : {Metric::tv, Metric::hellinger, Metric::wasserstein}) CHECK(parse_metric(to_string(m)) == m);
    for (auto p : {Penalty::abs_mass, Penalty::sqrt_mass}) CHECK(parse_penalty(to_string(p)) == p);
    CHECK_THROWS_AS(parse_metric("euclid"), InvalidArgument);
}

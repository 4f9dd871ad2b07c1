// One PASS/FAIL line per acceptance criterion. Tolerances are pinned here and
// never loosened to make a line pass; a red line is a finding.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dpp/base.hpp"
#include "dpp/metrics.hpp"
#include "dpp/plato.hpp"
#include "dpp/pursuit.hpp"
#include "dpp/radon.hpp"
#include "dpp/theory.hpp"
#include "dpp/verify.hpp"

using namespace dpp;

namespace {

constexpr double roundtrip_tol = 1e-9;
constexpr double roundtrip_seconds = 10.0;
constexpr double moment_tol = 1e-12;
constexpr double tables_seconds = 1.0;
constexpr double transport_tol = 1e-9;
constexpr double ks_limit = 0.03;
constexpr double thm45_seconds = 30.0;
constexpr double thm54_seconds = 20.0;
constexpr double balls_target = 0.5413, balls_tol = 0.02;
constexpr double fourier_tol = 1e-12;
constexpr std::uint64_t seed = 1;

int failures = 0;

void line(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> random_probability(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    double s = 0.0;
    for (auto& x : v) s += (x = e(rng));
    for (auto& x : v) x /= s;
    return v;
}

// Summary of the failing cells of a report, for the detail column.
std::string first_failures(const Report& r, std::size_t limit = 4) {
    std::string s;
    std::size_t shown = 0;
    for (const auto& c : r.cells)
        if (!c.pass() && shown++ < limit)
            s += fmt(" [%s paper %.6g got %.6g]", c.id.c_str(), *c.paper, c.computed);
    for (const auto& o : r.orders)
        if (!o.pass() && shown++ < limit) s += " [" + o.id + " order differs]";
    if (shown > limit) s += fmt(" ... %zu more", shown - limit);
    return s;
}

void criterion_roundtrip() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ProjectionBase> designs;
    for (unsigned k = 2; k <= 8; ++k) designs.push_back(base_affine_hyperplanes(k));
    for (auto [n, c] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {8, 3}, {10, 5}, {12, 4}, {12, 6}})
        designs.push_back(base_subsets(n, c));
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& base : designs)
        for (int rep = 0; rep < 100; ++rep) {
            const MassFunction f(base.space(), random_probability(base.space().size(), rng));
            const auto back = invert(transform(f, base), base);
            for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(back[i] - f[i]));
            ++count;
        }
    const double secs = seconds_since(t0);
    line(1, worst < roundtrip_tol && secs < roundtrip_seconds, "inversion round trip",
         fmt("%zu designs x 100 f, max abs error %.3g (< %g), %.2f s (< %g s)", designs.size(), worst, roundtrip_tol,
             secs, roundtrip_seconds));
}

void criterion_moments() {
    const auto r = verify_thm41();
    std::vector<std::string> designs;
    bool ok = true, has_affine_mean = false;
    double worst = 0.0;
    for (const auto& c : r.cells) {
        if (c.id.rfind("moments/", 0) != 0) continue;
        const bool affine_mean = c.id.find("/mean=1/2^j") != std::string::npos;
        has_affine_mean = has_affine_mean || affine_mean;
        const auto name = c.id.substr(8, (affine_mean ? c.id.find("/mean=1/2^j") : c.id.rfind('/')) - 8);
        if (std::find(designs.begin(), designs.end(), name) == designs.end()) designs.push_back(name);
        worst = std::max(worst, std::abs(c.delta()));
        ok = ok && std::abs(c.delta()) < moment_tol;
    }
    line(2, ok && designs.size() >= 5 && has_affine_mean, "design moments",
         fmt("%zu designs, max |formula - enumeration| %.3g (< %g), 1/2^j mean case %s", designs.size(), worst,
             moment_tol, has_affine_mean ? "present" : "missing"));
}

void criterion_tables() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto full = reproduce_margin_tables(load_table1());
    const double secs = seconds_since(t0);
    Report r;
    const std::vector<std::string> l1_kept{"L1/Laws-Phil", "L1/Laws-Pol", "L1/Rep-Tim"};
    for (const auto& c : full.cells) {
        const int number = c.id[0] == 'T' ? std::atoi(c.id.c_str() + 1) : 0;
        const bool table = number == 2 || (number >= 4 && number <= 14);
        const bool l1 = std::find(l1_kept.begin(), l1_kept.end(), c.id) != l1_kept.end();
        if (table || l1) r.cells.push_back(c);
    }
    line(3, r.pass() && secs < tables_seconds, "margin tables and L1 figures",
         fmt("%zu of %zu cells outside tolerance, %.3f s (< %g s);", r.failures(), r.cells.size(), secs,
             tables_seconds) +
             first_failures(r));
}

void criterion_rankings() {
    const auto r = reproduce_rankings(load_table1());
    std::size_t orders = 0, bad = 0;
    for (const auto& o : r.orders) {
        ++orders;
        bad += !o.pass();
    }
    line(4, bad == 0 && orders == 10, "appendix rankings",
         fmt("%zu of %zu orders differ (6 metric columns, top-3 z set, 3 scan columns);", bad, orders) +
             first_failures(r, 10));
}

void criterion_ground() {
    std::vector<std::string> tuples;
    std::vector<std::pair<long, long>> ones;
    for (long a = 0; a < 5; ++a)
        for (long b = a + 1; b < 5; ++b) {
            std::string s(5, '0');
            s[a] = s[b] = '1';
            tuples.push_back(s);
            ones.push_back({a, b});
        }
    const auto g = ground_adjacent_transposition(tuples);
    const double corner = g(0, tuples.size() - 1); // 11000 to 00011
    std::size_t pairs = 0, bad = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        for (std::size_t j = i + 1; j < tuples.size(); ++j) {
            ++pairs;
            const double want = std::labs(ones[i].first - ones[j].first) + std::labs(ones[i].second - ones[j].second);
            bad += g(i, j) != want;
        }
    line(5, corner == 6.0 && pairs == 45 && bad == 0, "ground metric",
         fmt("d(11000,00011) = %g, %zu of %zu pairs differ from |a-a'|+|b-b'|", corner, bad, pairs));
}

double brute_force_transport(std::vector<long> row, std::vector<long> col, const std::vector<double>& cost) {
    const std::size_t m = row.size(), n = col.size();
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double)> go = [&](std::size_t cell, double acc) {
        if (acc >= best) return;
        if (cell == m * n) {
            best = acc;
            return;
        }
        const std::size_t i = cell / n, j = cell % n;
        long lo = 0;
        if (j == n - 1) lo = row[i];
        if (i == m - 1) lo = std::max(lo, col[j]);
        for (long t = lo; t <= std::min(row[i], col[j]); ++t) {
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

void criterion_transport() {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cost_draw(1, 9);
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 1 + rep % 4;
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        std::vector<long> a(m, 0), b(m, 0);
        for (int u = 0; u < 8; ++u) {
            ++a[pick(rng)];
            ++b[pick(rng)];
        }
        std::vector<double> dist(m * m, 0.0);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < m; ++i) {
            labels.push_back(std::to_string(i));
            for (std::size_t j = i + 1; j < m; ++j) dist[i * m + j] = dist[j * m + i] = cost_draw(rng);
        }
        std::vector<double> p, q;
        for (std::size_t i = 0; i < m; ++i) {
            p.push_back(a[i] / 8.0);
            q.push_back(b[i] / 8.0);
        }
        const double flow = wasserstein(p, q, GroundMetric(labels, dist));
        worst = std::max(worst, std::abs(flow - brute_force_transport(a, b, dist) / 8.0));
    }
    line(6, worst <= transport_tol, "transport oracle",
         fmt("200 instances, supports <= 4, masses in eighths, max |flow - brute force| %.3g (<= %g)", worst,
             transport_tol));
}

void criterion_thm45() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = thm45_experiment(500, 10000, seed, Execution{4});
    const double secs = seconds_since(t0);
    double uniform_err = 0.0;
    for (std::size_t n : {4u, 500u}) {
        const std::vector<double> u(n, 1.0 / n);
        uniform_err = std::max(uniform_err, std::abs(thm45_statistic(u) + std::sqrt(static_cast<double>(n)) / 2.0));
    }
    line(7, s.ks_normal <= ks_limit && uniform_err < 1e-9 && secs < thm45_seconds, "sum of squares normal limit",
         fmt("n = 500, 10^4 samples, seed %llu: KS %.4f (<= %g), mean %.4f, variance %.4f; uniform input error "
             "%.2g; %.2f s",
             static_cast<unsigned long long>(seed), s.ks_normal, ks_limit, s.mean, s.variance, uniform_err, secs));
}

void criterion_thm52() {
    const auto s = s_minus_experiment(10000, 1000, seed, Execution{4});
    const double center = (1.0 - std::numbers::ln2) / 2.0, var = 1.5 - 2.0 * std::numbers::ln2;
    const bool mean_ok = std::abs(s.mean - center) <= 0.005;
    const bool var_ok = std::abs(s.scaled_variance - var) <= 0.15 * var;
    const bool disc_ok = std::abs(s.mean_discrepancy - std::numbers::ln2) <= 0.01;
    line(8, mean_ok && var_ok && disc_ok, "smallest-half sum",
         fmt("mean %.5f vs %.5f (%s), scaled variance %.5f vs %.5f +-15%% (%s), discrepancy %.4f vs ln 2 (%s); "
             "the printed .301 is log10 2",
             s.mean, center, mean_ok ? "ok" : "off", s.scaled_variance, var, var_ok ? "ok" : "off",
             s.mean_discrepancy, disc_ok ? "ok" : "off"));
}

void criterion_thm54() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto table = verify_table15();
    const double balls = balls_in_boxes(200000, 100000, seed);
    const double secs = seconds_since(t0);
    const bool balls_ok = std::abs(balls - balls_target) <= balls_tol;
    line(9, table.pass() && balls_ok && secs < thm54_seconds, "poisson half split",
         fmt("%zu of 10 table cells off by more than 0.005;", table.failures()) + first_failures(table) +
             fmt(" balls in boxes %.4f vs %.4f +- %g; %.2f s", balls, balls_target, balls_tol, secs));
}

void criterion_thm51() {
    const auto r = verify_thm51();
    double tail = 0.0;
    for (const auto& c : r.cells)
        if (c.id == "2049*beta") tail = c.computed;
    line(10, r.pass(), "beta tail example",
         fmt("2049 beta = %.4g vs 2.595e-7 (factor 3), Peizer-Pratt within factor 2 on 6 cases;", tail) +
             first_failures(r));
}

void criterion_republic() {
    const double cs = republic_centered_square();
    const auto r = verify_thm41();
    double exceed = -1.0, bound = -1.0;
    for (const auto& c : r.cells) {
        if (c.id == "remark/Rep/eps=0.04/empirical-exceedance") exceed = c.computed;
        if (c.id == "remark/Rep/eps=0.04/chebyshev-bound") bound = c.computed;
    }
    line(11, std::abs(cs - 0.0021) <= 0.0002 && exceed >= 0.0, "republic centered square",
         fmt("mu((f - 1/32)^2) = %.5f vs 0.0021 +- 0.0002; exceedance at .04 over 62 blocks %.4f (Chebyshev bound "
             "%.4f, reported not asserted)",
             cs, exceed, bound));
}

void criterion_properties() {
    std::mt19937_64 rng(seed);
    std::size_t bad = 0;
    std::string where;
    auto fail = [&](const char* what) {
        if (!bad++) where = what;
    };

    // Fourier identity: fhat(z) = 2 fbar(x.z = 0) - 1
    for (int rep = 0; rep < 1000; ++rep) {
        const unsigned k = 1 + rep % 6;
        const auto base = base_affine_hyperplanes(k);
        const MassFunction f(base.space(), random_probability(base.space().size(), rng));
        const auto fh = fourier_z2k(f);
        const auto fbar = transform(f, base);
        for (std::uint32_t z = 1; z < (1u << k); ++z)
            if (std::abs(fh[z] - (2.0 * fbar[2 * (z - 1)] - 1.0)) > fourier_tol) fail("fourier identity");
    }

    // sign coupling of the adjusted pair ratios
    const auto cube = DiscreteSpace::binary_cube(5);
    for (int rep = 0; rep < 500; ++rep) {
        const auto adj = adjusted_second_order(MassFunction(cube, random_probability(32, rng)));
        for (const auto& p : adj.pairs) {
            const bool below = *p.ratio[0] < 1.0;
            if ((*p.ratio[1] > 1.0) != below || (*p.ratio[2] > 1.0) != below || (*p.ratio[3] < 1.0) != below)
                fail("sign coupling");
        }
    }

    // metric axioms, and TV = transport under the 0/1 metric
    const auto ground = pair_position_ground(5);
    std::vector<std::string> labels;
    for (int i = 0; i < 10; ++i) labels.push_back(std::to_string(i));
    const auto discrete = GroundMetric::discrete(labels);
    for (int rep = 0; rep < 200; ++rep) {
        const auto p = random_probability(10, rng), q = random_probability(10, rng), r = random_probability(10, rng);
        if (tv(p, p) != 0.0 || hellinger(p, p) != 0.0 || wasserstein(p, p, ground) > 1e-12) fail("identity");
        if (tv(p, q) != tv(q, p) || std::abs(hellinger(p, q) - hellinger(q, p)) > 1e-15 ||
            std::abs(wasserstein(p, q, ground) - wasserstein(q, p, ground)) > 1e-9)
            fail("symmetry");
        if (tv(p, r) > tv(p, q) + tv(q, r) + 1e-12 ||
            wasserstein(p, r, ground) > wasserstein(p, q, ground) + wasserstein(q, r, ground) + 1e-9)
            fail("triangle inequality");
        if (std::abs(wasserstein(p, q, discrete) - tv(p, q)) > 1e-9) fail("TV = transport under 0/1");
    }

    // determinism under thread counts
    const auto base = base_affine(6, 2);
    const MassFunction f(base.space(), random_probability(64, rng));
    const auto t1 = transform(f, base, Execution{1});
    const auto lu1 = least_uniform(f, base, {}, Execution{1});
    const auto e1 = thm45_experiment(100, 500, seed, Execution{1});
    for (unsigned t : {2u, 3u, 8u}) {
        if (transform(f, base, Execution{t}).values != t1.values) fail("transform threads");
        if (least_uniform(f, base, {}, Execution{t}).scores != lu1.scores) fail("least uniform threads");
        const auto e = thm45_experiment(100, 500, seed, Execution{t});
        if (e.mean != e1.mean || e.ks_normal != e1.ks_normal) fail("monte carlo threads");
    }
    line(12, bad == 0, "property suites",
         bad ? fmt("%zu violations, first in %s", bad, where.c_str())
             : std::string("fourier identity (1000 f, k <= 6), sign coupling (500 tables), metric axioms, "
                           "TV = transport under 0/1, thread determinism"));
}

} // namespace

int main() {
    criterion_roundtrip();
    criterion_moments();
    criterion_tables();
    criterion_rankings();
    criterion_ground();
    criterion_transport();
    criterion_thm45();
    criterion_thm52();
    criterion_thm54();
    criterion_thm51();
    criterion_republic();
    criterion_properties();
    std::printf("%d of 12 criteria failed\n", failures);
    return failures ? 1 : 0;
}

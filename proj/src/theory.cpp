#include "dpp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "dpp/error.hpp"

namespace dpp {

namespace {

void fill_simplex(std::vector<double>& u, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    double s = 0.0;
    for (double& v : u) {
        v = expo(rng);
        s += v;
    }
    for (double& v : u) v /= s;
}

// Splits `total` trials into contiguous batches; batch b runs with derive_seed(seed, b).
std::vector<std::size_t> batch_sizes(std::size_t total, std::size_t batches) {
    batches = std::max<std::size_t>(1, std::min(batches, total));
    std::vector<std::size_t> sizes(batches, total / batches);
    for (std::size_t b = 0; b < total % batches; ++b) ++sizes[b];
    return sizes;
}

constexpr std::size_t default_batches = 16;

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

// Runs gen(rng) `samples` times in seeded batches and returns the values in a
// fixed order, whatever the thread count.
template <class Gen>
std::vector<double> batched_draws(std::size_t samples, std::uint64_t seed, Execution exec, Gen gen) {
    const auto sizes = batch_sizes(samples, default_batches);
    std::vector<std::size_t> offset(sizes.size() + 1, 0);
    std::partial_sum(sizes.begin(), sizes.end(), offset.begin() + 1);
    std::vector<double> out(samples);
    parallel_for(sizes.size(), exec, [&](std::size_t b) {
        std::mt19937_64 rng(derive_seed(seed, b));
        for (std::size_t i = offset[b]; i < offset[b + 1]; ++i) out[i] = gen(rng);
    });
    return out;
}

} // namespace

SimplexSample sample_simplex(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("simplex dimension must be >= 1");
    SimplexSample s{std::vector<double>(n), seed};
    std::mt19937_64 rng(seed);
    fill_simplex(s.u, rng);
    return s;
}

DesignMoments design_moments(const MassFunction& f, const ProjectionBase& base) {
    DesignMoments m;
    m.params = design_params(base);
    const double n = static_cast<double>(m.params.n), c = static_cast<double>(m.params.c);
    const double mu = f.total();
    for (double v : f.values()) m.centered_square += (v - mu / n) * (v - mu / n);
    m.exact_mean = c / n * mu;
    m.exact_variance = n > 1 ? c / n * (1.0 - (c - 1.0) / (n - 1.0)) * m.centered_square : 0.0;

    const auto fbar = transform(f, base);
    m.empirical_mean = mean_of(fbar.values);
    double s = 0.0;
    for (double v : fbar.values) s += (v - m.empirical_mean) * (v - m.empirical_mean);
    m.empirical_variance = s / static_cast<double>(fbar.values.size());
    return m;
}

ChebyshevReport chebyshev_fraction(const MassFunction& f, const ProjectionBase& base, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    ChebyshevReport r;
    r.epsilon = epsilon;
    r.moments = design_moments(f, base);
    r.bound = r.moments.exact_variance / (epsilon * epsilon);
    const auto fbar = transform(f, base);
    r.blocks = fbar.values.size();
    for (double v : fbar.values)
        if (std::abs(v - r.moments.exact_mean) >= epsilon) ++r.exceeding;
    r.empirical = static_cast<double>(r.exceeding) / static_cast<double>(r.blocks);
    return r;
}

double thm45_statistic(const std::vector<double>& u) {
    if (u.empty()) throw InvalidArgument("statistic needs n >= 1");
    const double n = static_cast<double>(u.size());
    double s = 0.0;
    for (double v : u) s += (v - 1.0 / n) * (v - 1.0 / n);
    return std::pow(n, 1.5) / 2.0 * (s - 1.0 / n);
}

double ks_distance_normal(std::vector<double> sample) {
    if (sample.empty()) throw InvalidArgument("empty sample");
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = 0.5 * std::erfc(-sample[i] / std::numbers::sqrt2);
        d = std::max({d, F - static_cast<double>(i) / m, static_cast<double>(i + 1) / m - F});
    }
    return d;
}

SampleSummary thm45_experiment(std::size_t n, std::size_t samples, std::uint64_t seed, Execution exec) {
    if (n == 0 || samples < 2) throw InvalidArgument("need n >= 1 and at least two samples");
    const auto stats = batched_draws(samples, seed, exec, [n](std::mt19937_64& rng) {
        std::vector<double> u(n);
        fill_simplex(u, rng);
        return thm45_statistic(u);
    });
    return SampleSummary{samples, mean_of(stats), variance_of(stats), ks_distance_normal(stats), seed};
}

double partition_failure_bound(std::size_t n, std::size_t c, double centered_square, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    const double nn = static_cast<double>(n), cc = static_cast<double>(c);
    return std::sqrt(nn / cc * (nn - cc) / (nn - 1.0) * centered_square) / epsilon;
}

double partition_failure_bound_printed(std::size_t n, std::size_t c, double centered_square, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    const double nn = static_cast<double>(n), cc = static_cast<double>(c);
    return std::sqrt(nn * (nn - cc) / (cc * (nn + 1.0)) * centered_square) / epsilon;
}

Thm46Report thm46_check(const ProjectionBase& base, double epsilon, std::size_t trials, std::uint64_t seed,
                        std::size_t batches, Execution exec) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (trials == 0) throw InvalidArgument("need at least one trial");
    const auto& parts = base.partitions();
    Thm46Report rep;
    rep.params = design_params(base);
    rep.epsilon = epsilon;
    rep.trials = trials;
    const std::size_t n = rep.params.n, c = rep.params.c;
    const double level = static_cast<double>(c) / static_cast<double>(n);

    const auto sizes = batch_sizes(trials, batches);
    rep.batches.resize(sizes.size());
    std::vector<double> printed(sizes.size(), 0.0);
    parallel_for(sizes.size(), exec, [&](std::size_t b) {
        std::mt19937_64 rng(derive_seed(seed, b));
        std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
        std::vector<double> u(n);
        Thm46Batch out;
        out.seed = derive_seed(seed, b);
        out.trials = sizes[b];
        std::size_t hits = 0;
        for (std::size_t t = 0; t < sizes[b]; ++t) {
            fill_simplex(u, rng);
            double centered = 0.0;
            for (double v : u) centered += (v - 1.0 / static_cast<double>(n)) * (v - 1.0 / static_cast<double>(n));
            const double lower = 1.0 - partition_failure_bound(n, c, centered, epsilon);
            printed[b] += std::max(0.0, 1.0 - partition_failure_bound_printed(n, c, centered, epsilon));

            std::size_t good = 0;
            const std::size_t chosen = pick(rng);
            for (std::size_t p = 0; p < parts.size(); ++p) {
                double s = 0.0;
                for (std::size_t blk : parts[p].blocks) {
                    double fb = 0.0;
                    for (std::size_t x : base.block(blk).members) fb += u[x];
                    s += std::abs(fb - level);
                }
                const bool ok = s <= epsilon;
                good += ok;
                if (p == chosen) hits += ok;
            }
            const double exact = static_cast<double>(good) / static_cast<double>(parts.size());
            out.mean_bound += std::max(0.0, lower);
            out.mean_exact += exact;
            if (exact < lower - 1e-12) ++out.violations;
        }
        const double m = static_cast<double>(sizes[b]);
        out.frequency = static_cast<double>(hits) / m;
        out.mean_bound /= m;
        out.mean_exact /= m;
        printed[b] /= m;
        rep.batches[b] = out;
    });
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        const double w = static_cast<double>(sizes[b]) / static_cast<double>(trials);
        rep.frequency += w * rep.batches[b].frequency;
        rep.mean_bound += w * rep.batches[b].mean_bound;
        rep.mean_bound_printed += w * printed[b];
        rep.violations += rep.batches[b].violations;
    }
    return rep;
}

PairPartitionReport pair_partition_experiment(std::size_t n, std::size_t trials, std::uint64_t seed, Execution exec) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("pair partitions need an even n >= 2");
    if (trials < 2) throw InvalidArgument("need at least two trials");
    const auto values = batched_draws(trials, seed, exec, [n](std::mt19937_64& rng) {
        std::vector<double> u(n);
        fill_simplex(u, rng);
        double s = 0.0;
        for (std::size_t i = 0; i < n; i += 2) s += std::abs(u[i] + u[i + 1] - 2.0 / static_cast<double>(n));
        return s;
    });
    return PairPartitionReport{n, trials, mean_of(values), std::sqrt(variance_of(values)), seed};
}

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300, eps = 1e-16;
    constexpr int max_iter = 100000;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw Error("incomplete beta continued fraction did not converge");
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("beta parameters must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete beta argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return x;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
    return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double beta_tail(std::size_t c, std::size_t n, double lo, double hi) {
    if (c < 1 || c >= n) throw InvalidArgument("beta_tail needs 1 <= c < n");
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) throw InvalidArgument("window must satisfy 0 <= lo < hi <= 1");
    const double a = static_cast<double>(c), b = static_cast<double>(n - c);
    // Both tails directly, so a tiny result is not lost to cancellation against 1.
    const double below = lo > 0.0 ? incomplete_beta(a, b, lo) : 0.0;
    const double above = hi < 1.0 ? incomplete_beta(b, a, 1.0 - hi) : 0.0;
    return below + above;
}

double peizer_pratt_tail(std::size_t c, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidArgument("epsilon must lie in (0, 1/2)");
    const double x = std::sqrt(2.0 * static_cast<double>(c) *
                               std::log(1.0 / (4.0 * (0.5 - epsilon) * (0.5 + epsilon))));
    return 2.0 / std::sqrt(2.0 * std::numbers::pi) * std::exp(-x * x / 2.0) / (1.0 + x);
}

double s_minus(const std::vector<double>& f) {
    if (f.empty() || f.size() % 2 != 0) throw InvalidArgument("S- needs a vector of even length");
    std::vector<double> v(f);
    const auto half = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), half, v.end());
    return std::accumulate(v.begin(), half, 0.0);
}

double max_half_split_discrepancy(const std::vector<double>& f) { return 2.0 * std::abs(s_minus(f) - 0.5); }

SMinusReport s_minus_experiment(std::size_t length, std::size_t samples, std::uint64_t seed, Execution exec) {
    if (length == 0 || length % 2 != 0) throw InvalidArgument("S- needs an even length");
    if (samples < 2) throw InvalidArgument("need at least two samples");
    const auto values = batched_draws(samples, seed, exec, [length](std::mt19937_64& rng) {
        std::vector<double> u(length);
        fill_simplex(u, rng);
        return s_minus(u);
    });
    SMinusReport r{length, samples, mean_of(values), 0.0, 0.0, seed};
    const double center = (1.0 - std::numbers::ln2) / 2.0, scale = std::sqrt(static_cast<double>(length));
    std::vector<double> scaled(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        scaled[i] = scale * (values[i] - center);
        r.mean_discrepancy += 2.0 * std::abs(values[i] - 0.5);
    }
    r.scaled_variance = variance_of(scaled);
    r.mean_discrepancy /= static_cast<double>(values.size());
    return r;
}

PoissonSplit poisson_split(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
    PoissonSplit s;
    s.lambda = lambda;
    auto log_pmf = [lambda](long j) { return -lambda + j * std::log(lambda) - std::lgamma(j + 1.0); };

    double cdf = 0.0;
    long j = 0;
    for (;; ++j) {
        const double p = std::exp(log_pmf(j));
        if (cdf + p > 0.5) break;
        cdf += p;
    }
    s.m = j - 1;
    s.cdf_m = cdf;
    s.pmf_next = std::exp(log_pmf(j));
    s.theta = (0.5 - cdf) / s.pmf_next;
    if (s.m < 0) {
        // All boxes in the lighter half are empty in the limit.
        s.value = 1.0;
    } else {
        s.value = 2.0 * std::exp(log_pmf(s.m)) * (1.0 + s.theta * (lambda / static_cast<double>(s.m + 1) - 1.0));
    }
    return s;
}

double balls_in_boxes(std::uint64_t balls, std::size_t boxes, std::uint64_t seed) {
    if (balls == 0) throw InvalidArgument("balls_in_boxes needs at least one ball");
    if (boxes < 2 || boxes % 2 != 0) throw InvalidArgument("balls_in_boxes needs an even number of boxes");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> box(0, boxes - 1);
    std::vector<std::uint64_t> counts(boxes, 0);
    for (std::uint64_t i = 0; i < balls; ++i) ++counts[box(rng)];
    const auto half = counts.begin() + static_cast<std::ptrdiff_t>(boxes / 2);
    std::nth_element(counts.begin(), half, counts.end());
    const auto lighter = std::accumulate(counts.begin(), half, std::uint64_t{0});
    return 2.0 * std::abs(static_cast<double>(lighter) / static_cast<double>(balls) - 0.5);
}

} // namespace dpp

#pragma once

#include <cstdint>
#include <vector>

#include "dpp/base.hpp"
#include "dpp/parallel.hpp"
#include "dpp/radon.hpp"

namespace dpp {

// ---- random probabilities -------------------------------------------------

struct SimplexSample {
    std::vector<double> u;
    std::uint64_t seed = 0;
};

/// Uniform point of the n-simplex: independent standard exponentials over their sum.
SimplexSample sample_simplex(std::size_t n, std::uint64_t seed);

// ---- design moments -------------------------------------------------------

struct DesignMoments {
    DesignParams params;
    double exact_mean = 0.0;
    double exact_variance = 0.0;
    double empirical_mean = 0.0;     // over all blocks, equally weighted
    double empirical_variance = 0.0; // population variance over all blocks
    double centered_square = 0.0;    // mu((f - mu(f)/n)^2)
};

/// Mean (c/n) mu(f) and variance (c/n)(1 - (c-1)/(n-1)) mu((f - mu(f)/n)^2)
/// of fbar(y) for y uniform in the design, and the same by enumeration.
DesignMoments design_moments(const MassFunction& f, const ProjectionBase& base);

struct ChebyshevReport {
    double epsilon = 0.0;
    double bound = 0.0;          // variance / eps^2
    double empirical = 0.0;      // fraction of blocks with |fbar - mean| >= eps
    std::size_t exceeding = 0;
    std::size_t blocks = 0;
    DesignMoments moments;
};

ChebyshevReport chebyshev_fraction(const MassFunction& f, const ProjectionBase& base, double epsilon);

// ---- sum of squares statistic ---------------------------------------------

/// (n^{3/2} / 2) (sum (u_i - 1/n)^2 - 1/n).
double thm45_statistic(const std::vector<double>& u);

/// Kolmogorov distance between a sample's empirical CDF and the standard normal.
double ks_distance_normal(std::vector<double> sample);

struct SampleSummary {
    std::size_t samples = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double ks_normal = 0.0;
    std::uint64_t seed = 0;
};

/// Statistic over `samples` simplex draws of size n, batch-seeded.
SampleSummary thm45_experiment(std::size_t n, std::size_t samples, std::uint64_t seed, Execution exec = {});

// ---- random partitions ----------------------------------------------------

/// sqrt((n/c)(n-c)/(n-1) mu((f - 1/n)^2)) / eps, the Markov bound on the
/// failure probability obtained from the proof.
double partition_failure_bound(std::size_t n, std::size_t c, double centered_square, double epsilon);
/// Same with the printed constant n(n-c) / (c(n+1)).
double partition_failure_bound_printed(std::size_t n, std::size_t c, double centered_square, double epsilon);

struct Thm46Batch {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double frequency = 0.0;      // success rate with random f and random partition
    double mean_bound = 0.0;     // mean over trials of 1 - proof bound (clamped at 0)
    double mean_exact = 0.0;     // mean over trials of the success fraction over all partitions
    std::size_t violations = 0;  // trials where the exact fraction fell below 1 - bound
};

struct Thm46Report {
    DesignParams params;
    double epsilon = 0.0;
    std::size_t trials = 0;
    double frequency = 0.0;
    double mean_bound = 0.0;
    double mean_bound_printed = 0.0;
    std::size_t violations = 0;
    std::vector<Thm46Batch> batches;
};

/// Monte Carlo over simplex-random f and uniformly chosen partitions of a
/// resolved design; success means sum_{y in p} |fbar(y) - c/n| <= eps.
Thm46Report thm46_check(const ProjectionBase& base, double epsilon, std::size_t trials, std::uint64_t seed,
                        std::size_t batches = 10, Execution exec = {});

struct PairPartitionReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    double mean = 0.0;   // of sum over the fixed pairs {0,1},{2,3},... of |fbar - 2/n|
    double stddev = 0.0;
    std::uint64_t seed = 0;
};

/// Fixed partition of an n-set (n even) into consecutive pairs, f simplex-random.
PairPartitionReport pair_partition_experiment(std::size_t n, std::size_t trials, std::uint64_t seed,
                                              Execution exec = {});

// ---- least uniform partitions ---------------------------------------------

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

/// 1 - P(lo <= B <= hi) for B ~ Beta(c, n - c).
double beta_tail(std::size_t c, std::size_t n, double lo, double hi);

/// (2/sqrt(2 pi)) e^{-x^2/2} / (1 + x), x = sqrt(2c log(1 / (4(1/2 - eps)(1/2 + eps)))),
/// the tail approximation for c/n = 1/2 and window 1/2 +- eps.
double peizer_pratt_tail(std::size_t c, double epsilon);

/// Sum of the half-length smallest entries. Throws on odd length.
double s_minus(const std::vector<double>& f);
/// 2 |S- - 1/2|, the largest half-split discrepancy of a probability vector.
double max_half_split_discrepancy(const std::vector<double>& f);

struct SMinusReport {
    std::size_t length = 0; // 2n
    std::size_t samples = 0;
    double mean = 0.0;
    double scaled_variance = 0.0;  // variance of sqrt(2n) (S- - (1 - ln 2)/2)
    double mean_discrepancy = 0.0;
    std::uint64_t seed = 0;
};

SMinusReport s_minus_experiment(std::size_t length, std::size_t samples, std::uint64_t seed, Execution exec = {});

struct PoissonSplit {
    double lambda = 0.0;
    long m = 0;          // largest j with P(j) <= 1/2; -1 when P(0) > 1/2
    double theta = 0.0;  // P(m) + theta p(m+1) = 1/2
    double value = 0.0;  // limiting least half-split discrepancy
    double cdf_m = 0.0;  // P(m)
    double pmf_next = 0.0; // p(m+1)
};

PoissonSplit poisson_split(double lambda);

/// Drops `balls` uniformly into `boxes` (even) boxes and returns the
/// discrepancy of the half split by the boxes/2 emptiest boxes.
double balls_in_boxes(std::uint64_t balls, std::size_t boxes, std::uint64_t seed);

} // namespace dpp

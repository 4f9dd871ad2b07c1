#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpp/base.hpp"
#include "dpp/metrics.hpp"
#include "dpp/parallel.hpp"
#include "dpp/radon.hpp"

namespace dpp {

/// The block sums of f over one partition ("direction") of a resolved base.
struct Projection {
    std::size_t partition = 0;
    std::string partition_id;
    std::vector<std::string> block_ids;
    std::vector<double> values;
    double reference = 0.0; // c / n
};

Projection projection_of(const MassFunction& f, const ProjectionBase& base, std::size_t partition);
Projection projection_of(const MassFunction& f, const ProjectionBase& base, const std::string& partition_id);

/// sum_{y in p} |fbar(y) - c/n|.
double discrepancy(const Projection& proj);

/// Non-uniformity index scored per partition by least_uniform.
struct UniformityIndex {
    enum class Kind { discrepancy, tv, hellinger, wasserstein } kind = Kind::discrepancy;
    /// Ground metric over the blocks of a partition (wasserstein only).
    std::optional<GroundMetric> ground;

    static UniformityIndex parse(const std::string& name);
};

/// Score of one projection: discrepancy directly, or the chosen distance
/// between the normalized projection and the uniform vector.
double uniformity_score(const Projection& proj, const UniformityIndex& index);

struct LeastUniform {
    std::size_t partition = 0;
    double score = 0.0;
    Projection projection;
    std::vector<double> scores; // per partition, in partition order
};

/// Exhaustive scan; ties go to the lowest partition index.
LeastUniform least_uniform(const MassFunction& f, const ProjectionBase& base, const UniformityIndex& index = {},
                           Execution exec = {});

/// Mass with a 1 at each position of Z_2^k (position 1 first). Not divided by mu(f).
std::vector<double> first_order(const MassFunction& f);

/// Cell order inside a pair: 11, 10, 01, 00 (U = 1).
inline constexpr int pattern_cells = 4;

struct PairMargins {
    unsigned i = 0, j = 0;                          // 1-based positions, i < j
    double raw[pattern_cells] = {};                 // mass with (x_i, x_j) = ab
    std::optional<double> ratio[pattern_cells];     // raw / (m_i(a) m_j(b)); empty when a margin is 0 or 1
};

struct AdjustedMargins {
    unsigned k = 0;
    std::vector<double> first;          // first_order(f)
    std::vector<PairMargins> pairs;     // (1,2), (1,3), ..., (k-1,k)

    bool has_undefined() const;
    /// The 11-cell ratios in pair order. Throws InvalidArgument on an undefined cell.
    std::vector<double> uu_vector() const;
    const PairMargins& pair(unsigned i, unsigned j) const;
};

/// Pair proportions divided by the product of first order margins, where
/// the margin of a 0 is one minus the margin of a 1.
AdjustedMargins adjusted_second_order(const MassFunction& f);

/// sum over pairs of |11-ratio difference|.
double l1_between_adjusted(const AdjustedMargins& a, const AdjustedMargins& b);

struct ScanEntry {
    std::uint32_t z = 0;
    std::string z_label;
    double statistic = 0.0;
};

struct ScanResult {
    std::vector<ScanEntry> ranked; // descending statistic, ties by ascending z
    std::vector<std::uint32_t> argmax;
};

/// D_z(h) = sum_{x.z=0} h(x) - sum_{x.z=1} h(x), evaluated directly.
double affine_contrast(const MassFunction& h, std::uint32_t z);

/// Ranks every nonzero z by D_z(f), or by D_z(f) - D_z(g) when g is given.
ScanResult affine_scan(const MassFunction& f, const MassFunction* g = nullptr, Execution exec = {});

struct NamedProfile {
    std::string name;
    std::vector<double> values;
};

struct RankEntry {
    std::string name;
    ProfileDistanceResult distance;
    int rank = 0; // 0 for the reference, then 1..m by ascending total
};

/// Ground metric on the C(k,2) pair positions, each embedded as the binary
/// k-tuple with ones at the pair, under adjacent transpositions.
GroundMetric pair_position_ground(unsigned k);

/// Distance of every profile to the reference; ties keep input order.
/// Wasserstein uses pair_position_ground() for vectors of length C(k,2).
std::vector<RankEntry> rank_profiles(const std::vector<NamedProfile>& profiles, const std::string& reference,
                                     Metric metric, Penalty penalty = Penalty::abs_mass);

} // namespace dpp

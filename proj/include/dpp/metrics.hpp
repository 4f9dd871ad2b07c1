#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dpp {

/// Symmetric nonnegative distance matrix with zero diagonal over named points.
class GroundMetric {
public:
    /// Throws InvalidArgument on shape, symmetry, sign or diagonal violations.
    /// A triangle-inequality failure is recorded, not fatal.
    GroundMetric(std::vector<std::string> labels, std::vector<double> dist);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    double operator()(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
    const std::vector<double>& matrix() const noexcept { return dist_; }

    /// Empty when the triangle inequality holds; otherwise a witness triple.
    const std::optional<std::string>& triangle_warning() const noexcept { return triangle_warning_; }

    /// 0/1 metric: distance 1 between distinct points.
    static GroundMetric discrete(std::vector<std::string> labels);

    /// CSV with a header row of labels and a label in front of every row.
    static GroundMetric read_csv(std::istream& in);
    void write_csv(std::ostream& out) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> dist_;
    std::optional<std::string> triangle_warning_;
};

/// Half the L1 distance.
double tv(std::span<const double> p, std::span<const double> q);

/// sum (sqrt p_i - sqrt q_i)^2, the squared form used for the book rankings.
double hellinger(std::span<const double> p, std::span<const double> q);
/// sqrt(hellinger / 2), the conventional [0, 1] scaled distance.
double hellinger_normalized(std::span<const double> p, std::span<const double> q);

/// Exact optimal transport cost between probability vectors on the ground
/// support, via min-cost flow on masses scaled to 2^40 integer units.
double wasserstein(std::span<const double> p, std::span<const double> q, const GroundMetric& ground);

/// Shortest-path distance under adjacent transpositions between binary
/// tuples of equal length and weight ("11000" to "00011" is 6).
GroundMetric ground_adjacent_transposition(const std::vector<std::string>& tuples);

enum class Metric { tv, hellinger, wasserstein };
enum class Penalty { abs_mass, sqrt_mass }; // |p - q| or (sqrt p - sqrt q)^2 on the totals

std::string to_string(Metric m);
std::string to_string(Penalty p);
Metric parse_metric(const std::string& s);
Penalty parse_penalty(const std::string& s);

struct ProfileDistanceResult {
    double normalized_distance = 0.0;
    double mass_penalty = 0.0;
    double total = 0.0;
    Metric metric = Metric::tv;
    Penalty penalty = Penalty::abs_mass;
};

/// Distance between nonnegative profiles of possibly different mass: metric on
/// the normalized profiles plus a penalty on the totals. The sqrt penalty is
/// only accepted with Hellinger. Wasserstein needs a ground metric.
ProfileDistanceResult profile_distance(std::span<const double> p, std::span<const double> q, Metric metric,
                                       Penalty penalty = Penalty::abs_mass,
                                       const GroundMetric* ground = nullptr);

} // namespace dpp

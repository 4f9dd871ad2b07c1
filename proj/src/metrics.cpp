#include "dpp/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "dpp/error.hpp"
#include "dpp/flow.hpp"
#include "dpp/space.hpp"

namespace dpp {

namespace {

void require_same_length(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw InvalidArgument("vectors have lengths " + std::to_string(p.size()) + " and " + std::to_string(q.size()));
}

void require_nonnegative(std::span<const double> v) {
    for (double x : v)
        if (!(x >= 0.0)) throw InvalidArgument("negative or NaN entry in a mass vector");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

GroundMetric::GroundMetric(std::vector<std::string> labels, std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw InvalidArgument("ground metric needs at least one point");
    if (dist_.size() != n * n) throw InvalidArgument("ground metric matrix is not square in its labels");
    for (std::size_t i = 0; i < n; ++i) {
        if ((*this)(i, i) != 0.0) throw InvalidArgument("ground metric diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            const double d = (*this)(i, j);
            if (!std::isfinite(d) || d < 0.0) throw InvalidArgument("ground distances must be finite and >= 0");
            if (d != (*this)(j, i)) throw InvalidArgument("ground metric is not symmetric");
        }
    }
    for (std::size_t i = 0; i < n && !triangle_warning_; ++i)
        for (std::size_t j = 0; j < n && !triangle_warning_; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if ((*this)(i, j) > (*this)(i, k) + (*this)(k, j) + 1e-12) {
                    triangle_warning_ = "d(" + labels_[i] + "," + labels_[j] + ") > d(" + labels_[i] + "," +
                                        labels_[k] + ") + d(" + labels_[k] + "," + labels_[j] + ")";
                    break;
                }
}

GroundMetric GroundMetric::discrete(std::vector<std::string> labels) {
    const std::size_t n = labels.size();
    std::vector<double> d(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
    return GroundMetric(std::move(labels), std::move(d));
}

GroundMetric GroundMetric::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("ground metric CSV is empty");
    auto header = split_csv_line(line);
    if (header.size() < 2) throw ParseError("ground metric CSV header needs labels");
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const std::size_t n = labels.size();
    std::vector<double> d(n * n);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (row >= n || cells.size() != n + 1) throw ParseError("ground metric CSV row " + std::to_string(row + 1) + " is malformed");
        if (cells[0] != labels[row]) throw ParseError("row label '" + cells[0] + "' does not match column '" + labels[row] + "'");
        for (std::size_t j = 0; j < n; ++j) {
            try {
                std::size_t used = 0;
                d[row * n + j] = std::stod(cells[j + 1], &used);
                if (used != cells[j + 1].size()) throw ParseError("");
            } catch (const std::exception&) {
                throw ParseError("bad distance '" + cells[j + 1] + "' in row " + std::to_string(row + 1));
            }
        }
        ++row;
    }
    if (row != n) throw ParseError("ground metric CSV has " + std::to_string(row) + " rows for " + std::to_string(n) + " labels");
    return GroundMetric(std::move(labels), std::move(d));
}

void GroundMetric::write_csv(std::ostream& out) const {
    out << "label";
    for (const auto& l : labels_) out << ',' << l;
    out << '\n';
    std::ostringstream cell;
    cell.precision(17);
    for (std::size_t i = 0; i < size(); ++i) {
        out << labels_[i];
        for (std::size_t j = 0; j < size(); ++j) {
            cell.str("");
            cell << (*this)(i, j);
            out << ',' << cell.str();
        }
        out << '\n';
    }
}

double tv(std::span<const double> p, std::span<const double> q) {
    require_same_length(p, q);
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double hellinger(std::span<const double> p, std::span<const double> q) {
    require_same_length(p, q);
    require_nonnegative(p);
    require_nonnegative(q);
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        s += d * d;
    }
    return s;
}

double hellinger_normalized(std::span<const double> p, std::span<const double> q) {
    return std::sqrt(0.5 * hellinger(p, q));
}

namespace {

constexpr MinCostFlow::Flow mass_scale = MinCostFlow::Flow{1} << 40;

// Rounds a probability vector to integers summing to exactly mass_scale; the
// rounding remainder goes to the largest entry.
std::vector<MinCostFlow::Flow> scale_masses(std::span<const double> p) {
    std::vector<MinCostFlow::Flow> out(p.size());
    MinCostFlow::Flow sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = static_cast<MinCostFlow::Flow>(std::llround(p[i] * static_cast<double>(mass_scale)));
        sum += out[i];
    }
    const auto largest = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    out[largest] += mass_scale - sum;
    if (out[largest] < 0) throw InvalidArgument("mass vector cannot be scaled");
    return out;
}

} // namespace

double wasserstein(std::span<const double> p, std::span<const double> q, const GroundMetric& ground) {
    require_same_length(p, q);
    if (p.size() != ground.size()) throw InvalidArgument("vectors do not match the ground metric support");
    require_nonnegative(p);
    require_nonnegative(q);
    const double sp = std::accumulate(p.begin(), p.end(), 0.0), sq = std::accumulate(q.begin(), q.end(), 0.0);
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
        throw InvalidArgument("wasserstein needs probability vectors (masses " + std::to_string(sp) + ", " +
                              std::to_string(sq) + ")");
    const auto a = scale_masses(p), b = scale_masses(q);
    const auto plan = solve_transport(a, b, ground.matrix());
    return plan.cost / static_cast<double>(mass_scale);
}

GroundMetric ground_adjacent_transposition(const std::vector<std::string>& tuples) {
    if (tuples.empty()) throw InvalidArgument("ground metric needs at least one tuple");
    const std::size_t len = tuples.front().size();
    if (len == 0 || len > 24) throw InvalidArgument("tuple length must be in [1, 24]");
    std::vector<std::uint32_t> codes;
    for (const auto& t : tuples) {
        auto v = parse_cube_label(t);
        if (!v || t.size() != len) throw InvalidArgument("'" + t + "' is not a binary tuple of length " + std::to_string(len));
        codes.push_back(*v);
    }
    const int weight = std::popcount(codes.front());
    for (std::size_t i = 0; i < codes.size(); ++i)
        if (std::popcount(codes[i]) != weight)
            throw InvalidArgument("tuple '" + tuples[i] + "' has a different number of ones; no transposition path");

    // BFS over all tuples of this length and weight from each support point
    const std::size_t n = tuples.size();
    std::vector<double> d(n * n, 0.0);
    std::unordered_map<std::uint32_t, int> dist;
    for (std::size_t i = 0; i < n; ++i) {
        dist.clear();
        std::deque<std::uint32_t> queue{codes[i]};
        dist[codes[i]] = 0;
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            for (std::size_t b = 0; b + 1 < len; ++b) {
                const std::uint32_t pair = 3u << b;
                const auto bits = u & pair;
                if (bits == 0 || bits == pair) continue;
                const auto v = u ^ pair;
                if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
            }
        }
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = dist.at(codes[j]);
    }
    return GroundMetric(tuples, std::move(d));
}

std::string to_string(Metric m) {
    switch (m) {
    case Metric::tv: return "tv";
    case Metric::hellinger: return "hellinger";
    case Metric::wasserstein: return "wasserstein";
    }
    return "?";
}

std::string to_string(Penalty p) { return p == Penalty::abs_mass ? "abs" : "sqrt"; }

Metric parse_metric(const std::string& s) {
    if (s == "tv") return Metric::tv;
    if (s == "hellinger" || s == "h") return Metric::hellinger;
    if (s == "wasserstein" || s == "vasserstein" || s == "v") return Metric::wasserstein;
    throw InvalidArgument("unknown metric '" + s + "'");
}

Penalty parse_penalty(const std::string& s) {
    if (s == "abs") return Penalty::abs_mass;
    if (s == "sqrt") return Penalty::sqrt_mass;
    throw InvalidArgument("unknown penalty '" + s + "'");
}

ProfileDistanceResult profile_distance(std::span<const double> p, std::span<const double> q, Metric metric,
                                       Penalty penalty, const GroundMetric* ground) {
    require_same_length(p, q);
    require_nonnegative(p);
    require_nonnegative(q);
    if (penalty == Penalty::sqrt_mass && metric != Metric::hellinger)
        throw InvalidArgument("the square-root mass penalty is defined for Hellinger only");
    const double pm = std::accumulate(p.begin(), p.end(), 0.0), qm = std::accumulate(q.begin(), q.end(), 0.0);
    if (pm <= 0.0 || qm <= 0.0) throw InvalidArgument("profile has zero total mass");

    std::vector<double> pn(p.begin(), p.end()), qn(q.begin(), q.end());
    for (double& x : pn) x /= pm;
    for (double& x : qn) x /= qm;

    ProfileDistanceResult r;
    r.metric = metric;
    r.penalty = penalty;
    switch (metric) {
    case Metric::tv: r.normalized_distance = tv(pn, qn); break;
    case Metric::hellinger: r.normalized_distance = hellinger(pn, qn); break;
    case Metric::wasserstein:
        if (!ground) throw InvalidArgument("wasserstein profile distance needs a ground metric");
        r.normalized_distance = wasserstein(pn, qn, *ground);
        break;
    }
    if (penalty == Penalty::abs_mass) {
        r.mass_penalty = std::abs(pm - qm);
    } else {
        const double d = std::sqrt(pm) - std::sqrt(qm);
        r.mass_penalty = d * d;
    }
    r.total = r.normalized_distance + r.mass_penalty;
    return r;
}

} // namespace dpp

#include "dpp/pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpp/error.hpp"

namespace dpp {

Projection projection_of(const MassFunction& f, const ProjectionBase& base, std::size_t partition) {
    if (!(f.space() == base.space())) throw SpaceMismatch("function and base live on different spaces");
    const auto& parts = base.partitions();
    if (partition >= parts.size()) throw InvalidArgument("unknown partition " + std::to_string(partition));
    const auto& p = parts[partition];

    Projection out;
    out.partition = partition;
    out.partition_id = p.id;
    for (std::size_t b : p.blocks) {
        double s = 0.0;
        for (std::size_t x : base.block(b).members) s += f[x];
        out.block_ids.push_back(base.block(b).id);
        out.values.push_back(s);
    }
    // With unequal blocks there is no single reference level; use the mean block share.
    const double c = base.block_size() ? static_cast<double>(*base.block_size())
                                       : static_cast<double>(base.space().size()) / static_cast<double>(p.blocks.size());
    out.reference = c / static_cast<double>(base.space().size());
    return out;
}

Projection projection_of(const MassFunction& f, const ProjectionBase& base, const std::string& partition_id) {
    auto i = base.partition_index(partition_id);
    if (!i) throw InvalidArgument("unknown partition '" + partition_id + "'");
    return projection_of(f, base, *i);
}

double discrepancy(const Projection& proj) {
    double s = 0.0;
    for (double v : proj.values) s += std::abs(v - proj.reference);
    return s;
}

UniformityIndex UniformityIndex::parse(const std::string& name) {
    UniformityIndex idx;
    if (name == "discrepancy") idx.kind = Kind::discrepancy;
    else if (name == "tv") idx.kind = Kind::tv;
    else if (name == "hellinger") idx.kind = Kind::hellinger;
    else if (name == "wasserstein") idx.kind = Kind::wasserstein;
    else throw InvalidArgument("unknown uniformity index '" + name + "'");
    return idx;
}

double uniformity_score(const Projection& proj, const UniformityIndex& index) {
    if (index.kind == UniformityIndex::Kind::discrepancy) return discrepancy(proj);
    const double total = std::accumulate(proj.values.begin(), proj.values.end(), 0.0);
    if (total <= 0.0) throw InvalidArgument("projection has no positive mass to normalize");
    std::vector<double> p(proj.values);
    for (double& v : p) v /= total;
    const std::vector<double> u(p.size(), 1.0 / static_cast<double>(p.size()));
    switch (index.kind) {
    case UniformityIndex::Kind::tv: return tv(p, u);
    case UniformityIndex::Kind::hellinger: return hellinger(p, u);
    case UniformityIndex::Kind::wasserstein:
        if (!index.ground) throw InvalidArgument("wasserstein index needs a ground metric over the blocks");
        return wasserstein(p, u, *index.ground);
    default: return discrepancy(proj);
    }
}

LeastUniform least_uniform(const MassFunction& f, const ProjectionBase& base, const UniformityIndex& index,
                           Execution exec) {
    const auto& parts = base.partitions();
    std::vector<double> scores(parts.size());
    parallel_for(parts.size(), exec, [&](std::size_t i) { scores[i] = uniformity_score(projection_of(f, base, i), index); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;
    return LeastUniform{best, scores[best], projection_of(f, base, best), std::move(scores)};
}

namespace {

unsigned require_cube(const MassFunction& f) {
    auto k = f.space().cube_dimension();
    if (!k) throw InvalidArgument("margins need a function on Z_2^k");
    return *k;
}

} // namespace

std::vector<double> first_order(const MassFunction& f) {
    const unsigned k = require_cube(f);
    if (f.total() == 0.0) throw InvalidArgument("margins of a zero-mass function are undefined");
    std::vector<double> m(k, 0.0);
    for (std::size_t x = 0; x < f.size(); ++x)
        for (unsigned i = 0; i < k; ++i)
            if ((x >> (k - 1 - i)) & 1u) m[i] += f[x];
    return m;
}

bool AdjustedMargins::has_undefined() const {
    for (const auto& p : pairs)
        for (const auto& r : p.ratio)
            if (!r) return true;
    return false;
}

std::vector<double> AdjustedMargins::uu_vector() const {
    std::vector<double> v;
    v.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (!p.ratio[0])
            throw InvalidArgument("adjusted margin (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") is undefined");
        v.push_back(*p.ratio[0]);
    }
    return v;
}

const PairMargins& AdjustedMargins::pair(unsigned i, unsigned j) const {
    for (const auto& p : pairs)
        if (p.i == i && p.j == j) return p;
    throw InvalidArgument("no pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

AdjustedMargins adjusted_second_order(const MassFunction& f) {
    const unsigned k = require_cube(f);
    if (k < 2) throw InvalidArgument("second order margins need k >= 2");
    AdjustedMargins out;
    out.k = k;
    out.first = first_order(f);
    for (unsigned i = 1; i <= k; ++i)
        for (unsigned j = i + 1; j <= k; ++j) {
            PairMargins pm;
            pm.i = i;
            pm.j = j;
            for (std::size_t x = 0; x < f.size(); ++x) {
                const unsigned a = (x >> (k - i)) & 1u, b = (x >> (k - j)) & 1u;
                pm.raw[(1 - a) * 2 + (1 - b)] += f[x];
            }
            const double mi = out.first[i - 1], mj = out.first[j - 1];
            const double margin_i[2] = {1.0 - mi, mi}, margin_j[2] = {1.0 - mj, mj};
            const bool degenerate = mi <= 0.0 || mi >= 1.0 || mj <= 0.0 || mj >= 1.0;
            for (int cell = 0; cell < pattern_cells; ++cell) {
                const int a = 1 - cell / 2, b = 1 - cell % 2;
                if (!degenerate) pm.ratio[cell] = pm.raw[cell] / (margin_i[a] * margin_j[b]);
            }
            out.pairs.push_back(pm);
        }
    return out;
}

double l1_between_adjusted(const AdjustedMargins& a, const AdjustedMargins& b) {
    if (a.k != b.k) throw InvalidArgument("adjusted margins of different dimension");
    const auto va = a.uu_vector(), vb = b.uu_vector();
    double s = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) s += std::abs(va[i] - vb[i]);
    return s;
}

double affine_contrast(const MassFunction& h, std::uint32_t z) {
    require_cube(h);
    double even = 0.0, odd = 0.0;
    for (std::size_t x = 0; x < h.size(); ++x) (parity(static_cast<std::uint32_t>(x) & z) ? odd : even) += h[x];
    return even - odd;
}

ScanResult affine_scan(const MassFunction& f, const MassFunction* g, Execution exec) {
    const unsigned k = require_cube(f);
    if (g && !(g->space() == f.space())) throw SpaceMismatch("scan functions live on different spaces");
    const std::size_t count = (std::size_t{1} << k) - 1;
    std::vector<ScanEntry> entries(count);
    parallel_for(count, exec, [&](std::size_t i) {
        const auto z = static_cast<std::uint32_t>(i + 1);
        double stat = affine_contrast(f, z);
        if (g) stat -= affine_contrast(*g, z);
        entries[i] = ScanEntry{z, cube_label(z, k), stat};
    });
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ScanEntry& a, const ScanEntry& b) { return a.statistic > b.statistic; });
    ScanResult r;
    r.ranked = std::move(entries);
    for (const auto& e : r.ranked)
        if (e.statistic == r.ranked.front().statistic) r.argmax.push_back(e.z);
    return r;
}

GroundMetric pair_position_ground(unsigned k) {
    if (k < 2) throw InvalidArgument("pair positions need k >= 2");
    std::vector<std::string> tuples;
    for (unsigned i = 1; i <= k; ++i)
        for (unsigned j = i + 1; j <= k; ++j) {
            std::string t(k, '0');
            t[i - 1] = t[j - 1] = '1';
            tuples.push_back(t);
        }
    return ground_adjacent_transposition(tuples);
}

std::vector<RankEntry> rank_profiles(const std::vector<NamedProfile>& profiles, const std::string& reference,
                                     Metric metric, Penalty penalty) {
    if (profiles.size() < 2) throw InvalidArgument("ranking needs at least two profiles");
    auto ref = std::find_if(profiles.begin(), profiles.end(), [&](const NamedProfile& p) { return p.name == reference; });
    if (ref == profiles.end()) throw InvalidArgument("reference profile '" + reference + "' is missing");

    std::optional<GroundMetric> ground;
    if (metric == Metric::wasserstein) {
        const std::size_t len = ref->values.size();
        unsigned k = 2;
        while (k * (k - 1) / 2 < len) ++k;
        if (k * (k - 1) / 2 != len)
            throw InvalidArgument("wasserstein ranking needs profiles of length C(k,2)");
        ground = pair_position_ground(k);
    }

    std::vector<RankEntry> out;
    for (const auto& p : profiles)
        out.push_back({p.name, profile_distance(ref->values, p.values, metric, penalty, ground ? &*ground : nullptr), 0});

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].name != reference) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out[a].distance.total < out[b].distance.total; });
    for (std::size_t r = 0; r < order.size(); ++r) out[order[r]].rank = static_cast<int>(r + 1);
    return out;
}

} // namespace dpp

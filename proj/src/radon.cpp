#include "dpp/radon.hpp"

#include <cmath>

#include "dpp/error.hpp"

namespace dpp {

MassFunction::MassFunction(DiscreteSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size())
        throw InvalidArgument("mass function has " + std::to_string(values_.size()) + " values for a space of " +
                              std::to_string(space_.size()));
    bool nonneg = true;
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("mass function values must be finite");
        nonneg = nonneg && v >= 0.0;
        total_ += v;
    }
    probability_ = nonneg && std::abs(total_ - 1.0) <= 1e-9;
}

MassFunction MassFunction::uniform(const DiscreteSpace& space) {
    return MassFunction(space, std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
}

MassFunction MassFunction::delta(const DiscreteSpace& space, std::size_t at) {
    if (at >= space.size()) throw InvalidArgument("delta point outside the space");
    std::vector<double> v(space.size(), 0.0);
    v[at] = 1.0;
    return MassFunction(space, std::move(v));
}

MassFunction MassFunction::normalized() const {
    if (total_ == 0.0) throw InvalidArgument("cannot normalize a function of zero mass");
    std::vector<double> v(values_);
    for (double& x : v) x /= total_;
    return MassFunction(space_, std::move(v));
}

double TransformValues::at(const ProjectionBase& base, const std::string& block_id) const {
    auto i = base.block_index(block_id);
    if (!i) throw InvalidArgument("unknown block '" + block_id + "'");
    return values.at(*i);
}

TransformValues transform(const MassFunction& f, const ProjectionBase& base, Execution exec) {
    if (!(f.space() == base.space())) throw SpaceMismatch("function and base live on different spaces");
    TransformValues out{std::vector<double>(base.num_blocks(), 0.0)};
    const auto& vals = f.values();
    parallel_for(base.num_blocks(), exec, [&](std::size_t b) {
        double s = 0.0;
        for (std::size_t x : base.block(b).members) s += vals[x];
        out.values[b] = s;
    });
    return out;
}

MassFunction invert(const TransformValues& fbar, const ProjectionBase& base) {
    if (fbar.values.size() != base.num_blocks())
        throw InvalidArgument("transform has " + std::to_string(fbar.values.size()) + " values for " +
                              std::to_string(base.num_blocks()) + " blocks");
    if (base.num_blocks() < 2)
        throw NotADesign(NotADesign::Condition::single_block, "inversion needs more than one block");
    const DesignParams d = design_params(base);
    if (d.k_rep <= d.l_pair) throw NotADesign(NotADesign::Condition::pair_balance, "k <= l");

    // sum_{y ni x} fbar(y) = (k - l) f(x) + l mu(f)  and  mu(f) = c / (k - l + n l) * sum_y fbar(y)
    const double kl = static_cast<double>(d.k_rep - d.l_pair);
    const double n = static_cast<double>(d.n), l = static_cast<double>(d.l_pair), c = static_cast<double>(d.c);
    double grand = 0.0;
    for (double v : fbar.values) grand += v;
    const double correction = l * c / (kl * kl + n * l * kl) * grand;

    std::vector<double> through(d.n, 0.0);
    for (std::size_t b = 0; b < base.num_blocks(); ++b)
        for (std::size_t x : base.block(b).members) through[x] += fbar.values[b];
    for (auto& v : through) v = v / kl - correction;
    return MassFunction(base.space(), std::move(through));
}

std::vector<double> fourier_z2k(const MassFunction& f) {
    if (!f.space().cube_dimension()) throw InvalidArgument("Fourier transform needs a Z_2^k space");
    // Walsh-Hadamard butterflies; x.z parity is invariant under the bit order
    std::vector<double> a = f.values();
    for (std::size_t h = 1; h < a.size(); h <<= 1)
        for (std::size_t i = 0; i < a.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const double u = a[j], v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
    return a;
}

} // namespace dpp

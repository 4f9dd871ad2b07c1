#pragma once

#include <span>
#include <string>
#include <vector>

#include "dpp/base.hpp"
#include "dpp/parallel.hpp"
#include "dpp/space.hpp"

namespace dpp {

/// A real weight per element of a space: counts, proportions or a probability.
class MassFunction {
public:
    /// Throws InvalidArgument when sizes differ or a value is not finite.
    MassFunction(DiscreteSpace space, std::vector<double> values);

    static MassFunction uniform(const DiscreteSpace& space);
    static MassFunction delta(const DiscreteSpace& space, std::size_t at);

    const DiscreteSpace& space() const noexcept { return space_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// mu(f) = sum of the values, in index order.
    double total() const noexcept { return total_; }
    /// All values >= 0 and total within 1e-9 of 1.
    bool is_probability() const noexcept { return probability_; }

    /// f / mu(f). Throws InvalidArgument when mu(f) == 0.
    MassFunction normalized() const;

private:
    DiscreteSpace space_;
    std::vector<double> values_;
    double total_ = 0.0;
    bool probability_ = false;
};

/// One value per block of a base, in block order.
struct TransformValues {
    std::vector<double> values;

    double operator[](std::size_t block) const { return values[block]; }
    double at(const ProjectionBase& base, const std::string& block_id) const;
};

/// fbar(y) = sum_{x in y} f(x) for every block y.
TransformValues transform(const MassFunction& f, const ProjectionBase& base, Execution exec = {});

/// Block-design inversion. Refuses (NotADesign) anything that is not a
/// 2-design with more than one block; the total mass is recovered from fbar.
MassFunction invert(const TransformValues& fbar, const ProjectionBase& base);

/// fhat(z) = sum_x (-1)^{x.z} f(x) for all z in Z_2^k, indexed like the space.
/// Throws InvalidArgument when f is not on a canonical binary cube.
std::vector<double> fourier_z2k(const MassFunction& f);

} // namespace dpp

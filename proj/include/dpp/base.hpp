#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dpp/space.hpp"

namespace dpp {

struct Block {
    std::string id;
    std::vector<std::size_t> members; // sorted element indices
};

/// One parallel class of a resolved base: blocks that partition the space.
struct Partition {
    std::string id;
    std::vector<std::size_t> blocks; // indices into ProjectionBase::blocks()
};

/// A class Y of blocks over a space, optionally resolved into partitions.
///
/// Construction checks that every block is a nonempty duplicate-free subset of
/// the space and that every partition covers the space exactly once. Constant
/// block size is recorded rather than enforced: quotient partitions with
/// unequal classes are representable, and design_params() rejects them.
class ProjectionBase {
public:
    ProjectionBase(DiscreteSpace space, std::vector<Block> blocks,
                   std::optional<std::vector<Partition>> resolution);

    const DiscreteSpace& space() const noexcept { return space_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& block(std::size_t i) const { return blocks_.at(i); }
    std::size_t num_blocks() const noexcept { return blocks_.size(); }

    bool resolved() const noexcept { return resolution_.has_value(); }
    /// Throws InvalidArgument on an unresolved base.
    const std::vector<Partition>& partitions() const;
    std::size_t num_partitions() const noexcept { return resolution_ ? resolution_->size() : 0; }
    std::optional<std::size_t> partition_index(const std::string& id) const;
    std::optional<std::size_t> block_index(const std::string& id) const;

    /// c, when every block has the same cardinality.
    std::optional<std::size_t> block_size() const noexcept { return block_size_; }

private:
    DiscreteSpace space_;
    std::vector<Block> blocks_;
    std::optional<std::vector<Partition>> resolution_;
    std::optional<std::size_t> block_size_;
};

/// Marginal base of Z_2^k: y_i^a = {x : x_i = a}, one partition per position.
ProjectionBase base_marginal_z2k(unsigned k);

/// Second order base of Z_2^k: y_ij^ab = {x : x_i = a, x_j = b}, i < j.
/// Partition ids are "i,j" (1-based); blocks inside follow ab = 11, 10, 01, 00.
ProjectionBase base_pairs_z2k(unsigned k);

/// Affine hyperplanes {x : x.z = a} of Z_2^k, z != 0 in increasing order.
ProjectionBase base_affine_hyperplanes(unsigned k);

/// Affine subspaces of codimension `codim` in Z_2^k, one partition (the
/// cosets) per linear subspace. codim = 1 gives the hyperplane base.
ProjectionBase base_affine(unsigned k, unsigned codim);

/// Number of codimension-j affine subspaces of Z_2^k (product formula).
std::uint64_t affine_plane_count(unsigned k, unsigned codim);

inline constexpr std::uint64_t default_block_budget = 1'000'000;

/// All c-subsets of an n-set, lexicographic, unresolved.
ProjectionBase base_subsets(std::size_t n, std::size_t c,
                            std::uint64_t budget = default_block_budget);

/// Partition of `space` into the classes of `label_fn`, in first-seen order.
struct QuotientPartition {
    ProjectionBase base;
    bool equal_classes;
};
QuotientPartition base_from_quotient(const DiscreteSpace& space,
                                     const std::function<std::string(std::size_t)>& label_fn);

/// Merges single-partition (or resolved) bases on the same space into one
/// resolved base. Partition ids must be unique across the inputs.
ProjectionBase combine_partitions(const std::vector<ProjectionBase>& bases);

struct DesignParams {
    std::size_t n = 0;
    std::size_t c = 0;
    std::size_t k_rep = 0;  // blocks through each point
    std::size_t l_pair = 0; // blocks through each pair
    std::size_t num_blocks = 0;
};

/// Returns (n, c, k, l) when the base is a 2-design; throws NotADesign with
/// the failing condition and a witness otherwise.
DesignParams design_params(const ProjectionBase& base);

} // namespace dpp

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dpp {

/// A finite ground set with a stable index <-> label bijection.
///
/// Spaces are immutable and cheap to copy (shared storage). Two spaces compare
/// equal when they hold the same labels in the same order.
class DiscreteSpace {
public:
    /// Builds a space from distinct labels, indexed in the given order.
    /// Throws InvalidArgument on an empty list or a duplicate label.
    static DiscreteSpace make(std::vector<std::string> labels);

    /// Z_2^k with labels "0...0" .. "1...1". Index = integer value of the
    /// tuple read with position 1 as the most significant bit.
    static DiscreteSpace binary_cube(unsigned k);

    /// Unlabelled set {0, ..., n-1}; labels are the decimal indices.
    static DiscreteSpace indexed(std::size_t n);

    std::size_t size() const noexcept { return impl_->labels.size(); }
    const std::string& label(std::size_t index) const { return impl_->labels.at(index); }
    const std::vector<std::string>& labels() const noexcept { return impl_->labels; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    /// k when this space is Z_2^k in canonical order, otherwise nullopt.
    std::optional<unsigned> cube_dimension() const noexcept { return impl_->cube_dim; }

    friend bool operator==(const DiscreteSpace& a, const DiscreteSpace& b);

private:
    struct Impl {
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::size_t> index;
        std::optional<unsigned> cube_dim;
    };
    explicit DiscreteSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
};

/// Bits of a Z_2^k element, position 1 first. Position i is bit (k - i).
std::vector<int> cube_bits(std::uint32_t x, unsigned k);
std::string cube_label(std::uint32_t x, unsigned k);
/// Parses "01011" style strings. Returns nullopt on any other character.
std::optional<std::uint32_t> parse_cube_label(const std::string& s);

inline int parity(std::uint32_t v) noexcept { return __builtin_parity(v); }

} // namespace dpp

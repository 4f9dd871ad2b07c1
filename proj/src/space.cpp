#include "dpp/space.hpp"

#include "dpp/error.hpp"

namespace dpp {

DiscreteSpace DiscreteSpace::make(std::vector<std::string> labels) {
    if (labels.empty()) throw InvalidArgument("space needs at least one label");
    auto impl = std::make_shared<Impl>();
    impl->index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!impl->index.emplace(labels[i], i).second)
            throw InvalidArgument("duplicate label '" + labels[i] + "'");
    }
    impl->labels = std::move(labels);

    // Recognise Z_2^k given in canonical order even when built by hand.
    const std::size_t n = impl->labels.size();
    const std::size_t k = impl->labels.front().size();
    if (k > 0 && k < 32 && n == (std::size_t{1} << k)) {
        bool canonical = true;
        for (std::size_t i = 0; i < n && canonical; ++i)
            canonical = impl->labels[i] == cube_label(static_cast<std::uint32_t>(i), static_cast<unsigned>(k));
        if (canonical) impl->cube_dim = static_cast<unsigned>(k);
    }
    return DiscreteSpace(std::move(impl));
}

DiscreteSpace DiscreteSpace::binary_cube(unsigned k) {
    if (k == 0 || k > 24) throw InvalidArgument("binary cube dimension must be in [1, 24]");
    std::vector<std::string> labels;
    labels.reserve(std::size_t{1} << k);
    for (std::uint32_t x = 0; x < (1u << k); ++x) labels.push_back(cube_label(x, k));
    return make(std::move(labels));
}

DiscreteSpace DiscreteSpace::indexed(std::size_t n) {
    if (n == 0) throw InvalidArgument("space needs at least one element");
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return make(std::move(labels));
}

std::optional<std::size_t> DiscreteSpace::index_of(const std::string& label) const {
    auto it = impl_->index.find(label);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
}

bool operator==(const DiscreteSpace& a, const DiscreteSpace& b) {
    return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
}

std::vector<int> cube_bits(std::uint32_t x, unsigned k) {
    std::vector<int> bits(k);
    for (unsigned i = 0; i < k; ++i) bits[i] = static_cast<int>((x >> (k - 1 - i)) & 1u);
    return bits;
}

std::string cube_label(std::uint32_t x, unsigned k) {
    std::string s(k, '0');
    for (unsigned i = 0; i < k; ++i)
        if ((x >> (k - 1 - i)) & 1u) s[i] = '1';
    return s;
}

std::optional<std::uint32_t> parse_cube_label(const std::string& s) {
    if (s.empty() || s.size() > 31) return std::nullopt;
    std::uint32_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') return std::nullopt;
        v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return v;
}

} // namespace dpp

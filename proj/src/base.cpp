#include "dpp/base.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "dpp/error.hpp"

namespace dpp {

ProjectionBase::ProjectionBase(DiscreteSpace space, std::vector<Block> blocks,
                               std::optional<std::vector<Partition>> resolution)
    : space_(std::move(space)), blocks_(std::move(blocks)), resolution_(std::move(resolution)) {
    const std::size_t n = space_.size();
    if (blocks_.empty()) throw InvalidArgument("projection base needs at least one block");

    std::unordered_set<std::string> ids;
    for (auto& b : blocks_) {
        if (b.members.empty()) throw InvalidArgument("block '" + b.id + "' is empty");
        std::sort(b.members.begin(), b.members.end());
        if (std::adjacent_find(b.members.begin(), b.members.end()) != b.members.end())
            throw InvalidArgument("block '" + b.id + "' has duplicate members");
        if (b.members.back() >= n) throw InvalidArgument("block '" + b.id + "' leaves the space");
        if (!ids.insert(b.id).second) throw InvalidArgument("duplicate block id '" + b.id + "'");
    }

    block_size_ = blocks_.front().members.size();
    for (const auto& b : blocks_)
        if (b.members.size() != *block_size_) {
            block_size_.reset();
            break;
        }

    if (resolution_) {
        std::vector<int> used(blocks_.size(), 0);
        std::unordered_set<std::string> pids;
        std::vector<int> cover(n);
        for (const auto& p : *resolution_) {
            if (!pids.insert(p.id).second) throw InvalidArgument("duplicate partition id '" + p.id + "'");
            std::fill(cover.begin(), cover.end(), 0);
            for (std::size_t bi : p.blocks) {
                if (bi >= blocks_.size()) throw InvalidArgument("partition '" + p.id + "' names an unknown block");
                if (used[bi]++) throw InvalidArgument("block '" + blocks_[bi].id + "' appears in two partitions");
                for (std::size_t x : blocks_[bi].members) {
                    if (cover[x]++)
                        throw InvalidArgument("partition '" + p.id + "' covers '" + space_.label(x) + "' twice");
                }
            }
            for (std::size_t x = 0; x < n; ++x)
                if (!cover[x])
                    throw InvalidArgument("partition '" + p.id + "' misses '" + space_.label(x) + "'");
        }
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
            if (!used[bi]) throw InvalidArgument("block '" + blocks_[bi].id + "' is in no partition");
    }
}

const std::vector<Partition>& ProjectionBase::partitions() const {
    if (!resolution_) throw InvalidArgument("projection base is not resolved into partitions");
    return *resolution_;
}

std::optional<std::size_t> ProjectionBase::partition_index(const std::string& id) const {
    if (!resolution_) return std::nullopt;
    for (std::size_t i = 0; i < resolution_->size(); ++i)
        if ((*resolution_)[i].id == id) return i;
    return std::nullopt;
}

std::optional<std::size_t> ProjectionBase::block_index(const std::string& id) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].id == id) return i;
    return std::nullopt;
}

namespace {

// Appends one partition whose blocks are the classes of `cls` (values in [0, m)).
template <class ClassFn>
void add_partition(std::vector<Block>& blocks, std::vector<Partition>& parts, std::size_t n,
                   std::string pid, const std::vector<std::string>& block_ids, ClassFn cls) {
    Partition p{std::move(pid), {}};
    const std::size_t first = blocks.size();
    for (const auto& bid : block_ids) {
        p.blocks.push_back(blocks.size());
        blocks.push_back(Block{bid, {}});
    }
    for (std::size_t x = 0; x < n; ++x) blocks[first + cls(x)].members.push_back(x);
    parts.push_back(std::move(p));
}

} // namespace

ProjectionBase base_marginal_z2k(unsigned k) {
    if (k == 0) throw InvalidArgument("marginal base needs k >= 1");
    auto space = DiscreteSpace::binary_cube(k);
    const std::size_t n = space.size();
    std::vector<Block> blocks;
    std::vector<Partition> parts;
    for (unsigned i = 1; i <= k; ++i) {
        const unsigned shift = k - i;
        const auto s = std::to_string(i);
        add_partition(blocks, parts, n, s, {"y" + s + "^0", "y" + s + "^1"},
                      [shift](std::size_t x) { return (x >> shift) & 1u; });
    }
    return ProjectionBase(std::move(space), std::move(blocks), std::move(parts));
}

ProjectionBase base_pairs_z2k(unsigned k) {
    if (k < 2) throw InvalidArgument("pair base needs k >= 2");
    auto space = DiscreteSpace::binary_cube(k);
    const std::size_t n = space.size();
    std::vector<Block> blocks;
    std::vector<Partition> parts;
    for (unsigned i = 1; i <= k; ++i) {
        for (unsigned j = i + 1; j <= k; ++j) {
            const unsigned si = k - i, sj = k - j;
            const auto pid = std::to_string(i) + "," + std::to_string(j);
            std::vector<std::string> ids;
            for (const char* ab : {"11", "10", "01", "00"}) ids.push_back("y" + pid + "^" + ab);
            // class 0 = (1,1), 1 = (1,0), 2 = (0,1), 3 = (0,0)
            add_partition(blocks, parts, n, pid, ids, [si, sj](std::size_t x) {
                const std::size_t a = (x >> si) & 1u, b = (x >> sj) & 1u;
                return (1 - a) * 2 + (1 - b);
            });
        }
    }
    return ProjectionBase(std::move(space), std::move(blocks), std::move(parts));
}

ProjectionBase base_affine_hyperplanes(unsigned k) {
    if (k == 0) throw InvalidArgument("hyperplane base needs k >= 1");
    auto space = DiscreteSpace::binary_cube(k);
    const std::size_t n = space.size();
    std::vector<Block> blocks;
    std::vector<Partition> parts;
    for (std::uint32_t z = 1; z < (1u << k); ++z) {
        const auto zl = cube_label(z, k);
        add_partition(blocks, parts, n, zl, {"z=" + zl + ",a=0", "z=" + zl + ",a=1"},
                      [z](std::size_t x) { return static_cast<std::size_t>(parity(static_cast<std::uint32_t>(x) & z)); });
    }
    return ProjectionBase(std::move(space), std::move(blocks), std::move(parts));
}

std::uint64_t affine_plane_count(unsigned k, unsigned codim) {
    if (codim == 0 || codim > k || k > 30) throw InvalidArgument("codimension out of range");
    // 2^j (2^k - 1)(2^k - 2)...(2^k - 2^{j-1}) / ((2^j - 1)(2^j - 2)...(2^j - 2^{j-1}))
    unsigned __int128 num = std::uint64_t{1} << codim, den = 1;
    for (unsigned r = 0; r < codim; ++r) {
        num *= (std::uint64_t{1} << k) - (std::uint64_t{1} << r);
        den *= (std::uint64_t{1} << codim) - (std::uint64_t{1} << r);
    }
    return static_cast<std::uint64_t>(num / den);
}

namespace {

// All codim x k binary matrices in reduced row echelon form, rows as bitmasks
// over the k positions (position 1 = most significant bit).
std::vector<std::vector<std::uint32_t>> rref_matrices(unsigned k, unsigned codim) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<unsigned> pivots(codim);
    // pivots are bit indices, strictly decreasing (left to right across the tuple)
    std::function<void(unsigned, int)> choose = [&](unsigned r, int max_bit) {
        if (r == codim) {
            std::uint32_t pivot_mask = 0;
            for (unsigned p : pivots) pivot_mask |= 1u << p;
            std::vector<std::vector<unsigned>> free(codim);
            unsigned total_free = 0;
            for (unsigned row = 0; row < codim; ++row) {
                for (unsigned b = 0; b < pivots[row]; ++b)
                    if (!(pivot_mask >> b & 1u)) free[row].push_back(b);
                total_free += static_cast<unsigned>(free[row].size());
            }
            for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << total_free); ++assign) {
                std::vector<std::uint32_t> rows(codim);
                unsigned used = 0;
                for (unsigned row = 0; row < codim; ++row) {
                    rows[row] = 1u << pivots[row];
                    for (unsigned b : free[row])
                        if (assign >> used++ & 1u) rows[row] |= 1u << b;
                }
                out.push_back(std::move(rows));
            }
            return;
        }
        for (int bit = max_bit; bit >= static_cast<int>(codim - r - 1); --bit) {
            pivots[r] = static_cast<unsigned>(bit);
            choose(r + 1, bit - 1);
        }
    };
    choose(0, static_cast<int>(k) - 1);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ProjectionBase base_affine(unsigned k, unsigned codim) {
    if (k == 0) throw InvalidArgument("affine base needs k >= 1");
    if (codim == 0 || codim > k) throw InvalidArgument("codimension must be in [1, k]");
    if (codim == 1) return base_affine_hyperplanes(k);
    if (affine_plane_count(k, codim) > default_block_budget)
        throw BudgetExceeded("affine base exceeds the block budget");

    auto space = DiscreteSpace::binary_cube(k);
    const std::size_t n = space.size();
    std::vector<Block> blocks;
    std::vector<Partition> parts;
    for (const auto& rows : rref_matrices(k, codim)) {
        std::string pid;
        for (auto z : rows) pid += (pid.empty() ? "" : ",") + cube_label(z, k);
        std::vector<std::string> ids;
        for (std::uint32_t b = 0; b < (1u << codim); ++b) ids.push_back("A=" + pid + ",b=" + cube_label(b, codim));
        add_partition(blocks, parts, n, pid, ids, [&rows, codim](std::size_t x) {
            std::size_t cls = 0;
            for (unsigned r = 0; r < codim; ++r)
                cls = (cls << 1) | static_cast<std::size_t>(parity(static_cast<std::uint32_t>(x) & rows[r]));
            return cls;
        });
    }
    return ProjectionBase(std::move(space), std::move(blocks), std::move(parts));
}

ProjectionBase base_subsets(std::size_t n, std::size_t c, std::uint64_t budget) {
    if (n == 0 || c == 0 || c > n) throw InvalidArgument("subset base needs 1 <= c <= n");
    // C(n, c) with early exit once the budget is passed
    unsigned __int128 count = 1;
    for (std::size_t i = 1; i <= c; ++i) {
        count = count * (n - c + i) / i;
        if (count > budget) throw BudgetExceeded("C(" + std::to_string(n) + "," + std::to_string(c) + ") exceeds the block budget");
    }

    auto space = DiscreteSpace::indexed(n);
    std::vector<Block> blocks;
    blocks.reserve(static_cast<std::size_t>(count));
    std::vector<std::size_t> comb(c);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    while (true) {
        std::string id = "{";
        for (std::size_t i = 0; i < c; ++i) id += (i ? "," : "") + std::to_string(comb[i]);
        blocks.push_back(Block{id + "}", comb});
        std::size_t i = c;
        while (i > 0 && comb[i - 1] == n - c + (i - 1)) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < c; ++j) comb[j] = comb[j - 1] + 1;
    }
    return ProjectionBase(std::move(space), std::move(blocks), std::nullopt);
}

QuotientPartition base_from_quotient(const DiscreteSpace& space,
                                     const std::function<std::string(std::size_t)>& label_fn) {
    std::vector<Block> blocks;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto cls = label_fn(x);
        auto [it, fresh] = seen.emplace(cls, blocks.size());
        if (fresh) blocks.push_back(Block{cls, {}});
        blocks[it->second].members.push_back(x);
    }
    Partition p{"quotient", {}};
    p.blocks.resize(blocks.size());
    std::iota(p.blocks.begin(), p.blocks.end(), std::size_t{0});
    ProjectionBase base(space, std::move(blocks), std::vector<Partition>{std::move(p)});
    const bool equal = base.block_size().has_value();
    return {std::move(base), equal};
}

ProjectionBase combine_partitions(const std::vector<ProjectionBase>& bases) {
    if (bases.empty()) throw InvalidArgument("nothing to combine");
    const auto& space = bases.front().space();
    std::vector<Block> blocks;
    std::vector<Partition> parts;
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
        const auto& b = bases[bi];
        if (!(b.space() == space)) throw SpaceMismatch("combined partitions live on different spaces");
        for (const auto& p : b.partitions()) {
            Partition np{p.id, {}};
            for (std::size_t blk : p.blocks) {
                np.blocks.push_back(blocks.size());
                const auto& src = b.block(blk);
                blocks.push_back(Block{p.id + ":" + src.id, src.members});
            }
            parts.push_back(std::move(np));
        }
    }
    return ProjectionBase(space, std::move(blocks), std::move(parts));
}

DesignParams design_params(const ProjectionBase& base) {
    using C = NotADesign::Condition;
    const auto& space = base.space();
    const std::size_t n = space.size();
    const auto& blocks = base.blocks();

    if (!base.block_size()) {
        std::size_t other = 1;
        while (blocks[other].members.size() == blocks[0].members.size()) ++other;
        throw NotADesign(C::block_size, "block '" + blocks[0].id + "' has " +
                                            std::to_string(blocks[0].members.size()) + " points but '" +
                                            blocks[other].id + "' has " +
                                            std::to_string(blocks[other].members.size()));
    }
    const std::size_t c = *base.block_size();

    // incidence rows as bitsets over blocks
    const std::size_t words = (blocks.size() + 63) / 64;
    std::vector<std::uint64_t> inc(n * words, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t x : blocks[b].members) inc[x * words + b / 64] |= std::uint64_t{1} << (b % 64);

    auto row = [&](std::size_t x) { return inc.data() + x * words; };
    auto reps = [&](std::size_t x) {
        std::size_t s = 0;
        for (std::size_t w = 0; w < words; ++w) s += static_cast<std::size_t>(std::popcount(row(x)[w]));
        return s;
    };
    const std::size_t k = reps(0);
    for (std::size_t x = 1; x < n; ++x) {
        const auto kx = reps(x);
        if (kx != k)
            throw NotADesign(C::replication, "point '" + space.label(x) + "' lies in " + std::to_string(kx) +
                                                 " blocks but '" + space.label(0) + "' in " + std::to_string(k));
    }

    std::size_t l = 0;
    if (n >= 2) {
        auto pair_count = [&](std::size_t x, std::size_t y) {
            std::size_t s = 0;
            const auto *a = row(x), *b = row(y);
            for (std::size_t w = 0; w < words; ++w) s += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
            return s;
        };
        l = pair_count(0, 1);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y) {
                const auto lxy = pair_count(x, y);
                if (lxy != l)
                    throw NotADesign(C::pair_balance, "pair {" + space.label(x) + "," + space.label(y) + "} lies in " +
                                                          std::to_string(lxy) + " blocks but {" + space.label(0) +
                                                          "," + space.label(1) + "} in " + std::to_string(l));
            }
    }

    DesignParams p{n, c, k, l, blocks.size()};
    // (7) |Y| c = n k and (8) (n - 1) l = k (c - 1) follow from the counts above
    if (p.num_blocks * c != n * k || (n - 1) * l != k * (c - 1))
        throw std::logic_error("design counting identities violated");
    return p;
}

} // namespace dpp

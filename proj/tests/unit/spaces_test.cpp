#include <doctest.h>

#include <set>

#include "dpp/base.hpp"
#include "dpp/error.hpp"

using namespace dpp;

TEST_CASE("binary cube labels put position 1 first") {
    const auto s = DiscreteSpace::binary_cube(5);
    CHECK(s.size() == 32);
    CHECK(s.label(2) == "00010");
    CHECK(s.label(24) == "11000");
    CHECK(s.cube_dimension() == 5u);
    CHECK(parse_cube_label("01100") == 12u);
    CHECK(!parse_cube_label("01a00"));
    CHECK(cube_bits(0b10110, 5) == std::vector<int>{1, 0, 1, 1, 0});
    CHECK(!DiscreteSpace::indexed(4).cube_dimension());
}

TEST_CASE("space construction rejects empty and duplicate labels") {
    CHECK_THROWS_AS(DiscreteSpace::make({}), InvalidArgument);
    CHECK_THROWS_AS(DiscreteSpace::make({"a", "b", "a"}), InvalidArgument);
    CHECK(DiscreteSpace::make({"a", "b"}).index_of("b") == 1u);
}

TEST_CASE("base sizes") {
    auto m1 = base_marginal_z2k(1);
    CHECK(m1.num_blocks() == 2);
    CHECK(m1.num_partitions() == 1);

    auto m5 = base_marginal_z2k(5);
    CHECK(m5.num_blocks() == 10);
    CHECK(m5.num_partitions() == 5);
    CHECK(m5.block_size() == 16u);

    auto p2 = base_pairs_z2k(2);
    CHECK(p2.num_blocks() == 4);
    CHECK(p2.block_size() == 1u);

    auto p5 = base_pairs_z2k(5);
    CHECK(p5.num_blocks() == 40);
    CHECK(p5.num_partitions() == 10);
    CHECK(p5.block_size() == 8u);

    auto h5 = base_affine_hyperplanes(5);
    CHECK(h5.num_blocks() == 62);
    CHECK(h5.num_partitions() == 31);
    CHECK(h5.block_size() == 16u);
}

TEST_CASE("affine plane counts match enumeration") {
    for (unsigned k = 2; k <= 5; ++k)
        for (unsigned j = 1; j <= k; ++j) {
            const auto b = base_affine(k, j);
            CHECK(b.num_blocks() == affine_plane_count(k, j));
            CHECK(b.block_size() == (std::size_t{1} << (k - j)));
        }
    CHECK(affine_plane_count(5, 1) == 62);
}

TEST_CASE("subset designs") {
    const auto d = design_params(base_subsets(4, 2));
    CHECK(d.num_blocks == 6);
    CHECK(d.k_rep == 3);
    CHECK(d.l_pair == 1);

    const auto d63 = design_params(base_subsets(6, 3));
    CHECK(d63.num_blocks == 20);
    CHECK(d63.num_blocks * d63.c == d63.n * d63.k_rep);
    CHECK(d63.l_pair * (d63.n - 1) == d63.k_rep * (d63.c - 1));

    CHECK_THROWS_AS(base_subsets(30, 15, 1000), BudgetExceeded);
}

TEST_CASE("hyperplanes of Z2^3 by exhaustive count") {
    const auto b = base_affine_hyperplanes(3);
    const auto d = design_params(b);
    CHECK(d.n == 8);
    CHECK(d.c == 4);
    CHECK(d.k_rep == 7);
    CHECK(d.l_pair == 3);
    CHECK(d.num_blocks == 14);

    // independent count over the block lists
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = x + 1; y < 8; ++y) {
            std::size_t both = 0;
            for (const auto& blk : b.blocks()) {
                std::set<std::size_t> m(blk.members.begin(), blk.members.end());
                both += m.count(x) && m.count(y);
            }
            CHECK(both == 3);
        }
}

TEST_CASE("coordinate bases are not 2-designs") {
    CHECK_THROWS_AS(design_params(base_marginal_z2k(5)), NotADesign);
    CHECK_THROWS_AS(design_params(base_pairs_z2k(5)), NotADesign);
    try {
        design_params(base_pairs_z2k(4));
    } catch (const NotADesign& e) {
        CHECK(e.condition() == NotADesign::Condition::pair_balance);
    }
}

TEST_CASE("every point lies in exactly one block of each partition") {
    for (const auto& base : {base_marginal_z2k(4), base_pairs_z2k(4), base_affine_hyperplanes(4), base_affine(4, 2),
                             base_affine(5, 3)}) {
        for (const auto& p : base.partitions()) {
            std::vector<int> hits(base.space().size(), 0);
            for (auto b : p.blocks)
                for (auto x : base.block(b).members) ++hits[x];
            for (int h : hits) CHECK(h == 1);
        }
    }
}

TEST_CASE("bad partitions are rejected") {
    const auto s = DiscreteSpace::indexed(4);
    std::vector<Block> blocks{{"a", {0, 1}}, {"b", {1, 2}}, {"c", {2, 3}}};
    CHECK_THROWS_AS(ProjectionBase(s, blocks, std::vector<Partition>{{"p", {0, 1}}}), InvalidArgument);
    CHECK_NOTHROW(ProjectionBase(s, blocks, std::nullopt));
    CHECK_THROWS_AS(ProjectionBase(s, {{"e", {}}}, std::nullopt), InvalidArgument);
    CHECK_THROWS_AS(ProjectionBase(s, {{"d", {0, 0}}}, std::nullopt), InvalidArgument);
}

TEST_CASE("quotient partitions") {
    const auto s = DiscreteSpace::indexed(6);
    auto q = base_from_quotient(s, [](std::size_t i) { return std::to_string(i % 3); });
    CHECK(q.equal_classes);
    CHECK(q.base.num_blocks() == 3);
    auto uneven = base_from_quotient(s, [](std::size_t i) { return i == 0 ? std::string("a") : std::string("b"); });
    CHECK(!uneven.equal_classes);
    CHECK_THROWS_AS(design_params(uneven.base), NotADesign);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qrg/qrg.hpp"

using namespace qrg;
namespace fs = std::filesystem;

namespace {

big_int factorial(int n) {
    big_int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<permutation> sym_gens(std::size_t n) {
    std::vector<std::uint32_t> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0u);
    return {permutation::from_cycles(n, {{0, 1}}), permutation::from_cycles(n, {cyc})};
}

}  // namespace

TEST(Permutation, CompositionAppliesRightFactorFirst) {
    auto a = permutation::from_cycles(3, {{0, 1}});
    auto b = permutation::from_cycles(3, {{1, 2}});
    auto ab = a * b;
    EXPECT_EQ(ab[1], a[b[1]]);
    EXPECT_EQ(ab[1], 2u);
    EXPECT_TRUE((ab * ab.inverse()).is_identity());
    EXPECT_THROW(permutation(std::vector<std::uint32_t>{0, 0, 1}), error);
    EXPECT_THROW(a * permutation(4), degree_mismatch);
}

TEST(Permutation, Parity) {
    EXPECT_FALSE(permutation::from_cycles(5, {{0, 1}}).is_even());
    EXPECT_TRUE(permutation::from_cycles(5, {{0, 1, 2}}).is_even());
    EXPECT_TRUE(permutation::from_cycles(5, {{0, 1}, {2, 3}}).is_even());
}

class SymmetricOrder : public ::testing::TestWithParam<int> {};

TEST_P(SymmetricOrder, MatchesFactorial) {
    int n = GetParam();
    auto g = schreier_sims(sym_gens(n), n);
    EXPECT_EQ(g.order(), factorial(n));
    EXPECT_EQ(perm_derived_subgroup(g).order(), n > 1 ? factorial(n) / 2 : big_int(1));
}

INSTANTIATE_TEST_SUITE_P(Sizes, SymmetricOrder, ::testing::Values(2, 3, 4, 5, 8, 12, 20));

TEST(Bsgs, AlternatingAndCyclic) {
    // A_n from 3-cycles (0 1 k)
    std::vector<permutation> gens;
    for (std::uint32_t k = 2; k < 9; ++k) gens.push_back(permutation::from_cycles(9, {{0, 1, k}}));
    EXPECT_EQ(schreier_sims(gens, 9).order(), factorial(9) / 2);
    std::vector<std::uint32_t> cyc(10);
    std::iota(cyc.begin(), cyc.end(), 0u);
    EXPECT_EQ(schreier_sims({permutation::from_cycles(10, {cyc})}, 10).order(), 10);
}

TEST(Bsgs, MembershipAgreesWithParity) {
    std::vector<permutation> gens;
    for (std::uint32_t k = 2; k < 7; ++k) gens.push_back(permutation::from_cycles(7, {{0, 1, k}}));
    auto a7 = schreier_sims(gens, 7);
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint32_t> img(7);
        std::iota(img.begin(), img.end(), 0u);
        std::shuffle(img.begin(), img.end(), rng);
        permutation p(img);
        EXPECT_EQ(a7.contains(p), p.is_even());
    }
}

TEST(Bsgs, RandomElementsAreMembers) {
    auto g = schreier_sims(sym_gens(6), 6);
    auto d = perm_derived_subgroup(g);
    std::mt19937 rng(4);
    for (int i = 0; i < 50; ++i) {
        auto p = d.random_element(rng);
        EXPECT_TRUE(p.is_even());
        EXPECT_TRUE(g.contains(p));
    }
}

TEST(Bsgs, ExtendGrowsTheGroup) {
    bsgs g(5);
    EXPECT_EQ(g.order(), 1);
    g.extend(permutation::from_cycles(5, {{0, 1, 2, 3, 4}}));
    EXPECT_EQ(g.order(), 5);
    g.extend(permutation::from_cycles(5, {{1, 4}, {2, 3}}));
    EXPECT_EQ(g.order(), 10);  // dihedral
    g.extend(permutation::from_cycles(5, {{0, 1}}));
    EXPECT_EQ(g.order(), 120);
}

TEST(Bsgs, CacheRoundTripAndAudit) {
    auto dir = fs::temp_directory_path() / "qrg-test-perm";
    fs::remove_all(dir);
    auto g = schreier_sims(sym_gens(9), 9);
    save_bsgs(dir / "s9.perm", g);
    auto back = load_bsgs(dir / "s9.perm", 9);
    ASSERT_TRUE(back);
    EXPECT_EQ(back->order(), factorial(9));
    EXPECT_THROW(load_bsgs(dir / "s9.perm", 8), cache_corruption);
    EXPECT_FALSE(load_bsgs(dir / "none.perm", 9));
    {
        // keep the header, drop all but one generator: the order audit fails
        std::ifstream in(dir / "s9.perm");
        std::string header, first;
        std::getline(in, header);
        std::getline(in, first);
        in.close();
        std::ofstream out(dir / "s9.perm", std::ios::trunc);
        out << header << '\n' << first << '\n';
    }
    EXPECT_THROW(load_bsgs(dir / "s9.perm", 9), cache_corruption);
    fs::remove_all(dir);
}

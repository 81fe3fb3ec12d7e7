#include <gtest/gtest.h>

#include "qrg/qrg.hpp"

using namespace qrg;

namespace {

big_int factorial(int n) {
    big_int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct type_case {
    const char* name;
    std::size_t roots;
    big_int order;
};

// root counts and |W| from the classical formulas n(n+1), 2n^2, 2n(n-1),
// (n+1)!, 2^n n!, 2^(n-1) n! and the exceptional values
std::vector<type_case> cases() {
    return {{"A1", 2, 2},          {"A2", 6, 6},         {"A4", 20, factorial(5)}, {"B3", 18, 48},
            {"B4", 32, 16 * 24},   {"D4", 24, 192},      {"D5", 40, 1920},         {"E6", 72, 51840},
            {"E7", 126, 2903040},  {"F4", 48, 1152},     {"G2", 12, 12}};
}

}  // namespace

TEST(CoxeterType, Parse) {
    EXPECT_EQ(parse_coxeter_type("E6").name(), "E6");
    EXPECT_EQ(parse_coxeter_type("A(3)").name(), "A3");
    EXPECT_EQ(parse_coxeter_type("I2(4)").name(), "I2(4)");
    EXPECT_THROW(parse_coxeter_type("E9"), error);
    EXPECT_THROW(parse_coxeter_type("Q2"), error);
}

TEST(RootSystem, CountsAndWeylOrders) {
    for (const auto& c : cases()) {
        auto t = parse_coxeter_type(c.name);
        auto rs = generate_root_system(t);
        EXPECT_EQ(rs.roots.size(), c.roots) << c.name;
        EXPECT_EQ(coxeter_group_order(t), c.order) << c.name;
        EXPECT_EQ(weyl_permutation_group(rs).order(), c.order) << c.name;
    }
}

TEST(RootSystem, ClosedUnderReflectionAndNegation) {
    auto rs = generate_root_system(parse_coxeter_type("F4"));
    for (const auto& a : rs.roots) {
        rvec neg = a;
        for (auto& x : neg) x = -x;
        EXPECT_NO_THROW(rs.find(neg));
        for (const auto& s : rs.simple) EXPECT_NO_THROW(rs.find(reflect(a, s)));
    }
}

TEST(Cartan, ClassicalMatrices) {
    EXPECT_EQ(cartan_matrix_of(parse_coxeter_type("A2")), (int_matrix{{2, -1}, {-1, 2}}));
    auto b2 = cartan_matrix_of(parse_coxeter_type("B2"));
    EXPECT_EQ(b2[0][1] * b2[1][0], 2);
    auto g2 = cartan_matrix_of(parse_coxeter_type("G2"));
    EXPECT_EQ(g2[0][1] * g2[1][0], 3);
    for (const char* n : {"D5", "E6", "E7", "F4"}) {
        auto c = cartan_matrix_of(parse_coxeter_type(n));
        for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i][i], 2);
    }
    EXPECT_THROW(cartan_matrix_of(parse_coxeter_type("H3")), not_crystallographic);
}

TEST(Cartan, PresentationOfE6HasOneBranchPoint) {
    auto p = coxeter_presentation_of(parse_coxeter_type("E6"));
    int braids = 0;
    std::vector<int> degree(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j && p.m[i][j] == 3) ++braids, ++degree[i];
    EXPECT_EQ(braids, 10);  // five edges, counted twice
    EXPECT_EQ(std::count(degree.begin(), degree.end(), 3), 1);
}

TEST(WeightLattice, DeterminantTimesInverse) {
    EXPECT_EQ(weight_lattice_matrix(parse_coxeter_type("A2")), (int_matrix{{2, 1}, {1, 2}}));
    // det C = n + 1 for A_n, and det(C) C^-1 C = det(C) I
    auto t = parse_coxeter_type("A4");
    auto c = cartan_matrix_of(t);
    auto w = weight_lattice_matrix(t);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            long long s = 0;
            for (std::size_t k = 0; k < 4; ++k) s += w[i][k] * c[k][j];
            EXPECT_EQ(s, i == j ? 5 : 0);
        }
}

TEST(Presentation, RelationsHoldForSimpleReflections) {
    for (const char* n : {"A3", "B3", "D5", "E6", "F4", "G2"}) {
        auto t = parse_coxeter_type(n);
        auto rs = generate_root_system(t);
        EXPECT_TRUE(coxeter_relations_hold(simple_reflection_permutations(rs), coxeter_presentation_of(t))) << n;
    }
}

TEST(Presentation, WitnessAfterRelabelling) {
    // E6 diagram with a different vertex numbering
    auto pres = presentation_from_edges(6, {{2, 0}, {3, 1}, {3, 2}, {4, 3}, {5, 4}});
    auto rs = generate_root_system(parse_coxeter_type("E6"));
    auto w = weyl_presentation_witness(rs, pres, 51840);
    ASSERT_TRUE(w);
    EXPECT_TRUE(coxeter_relations_hold(w->tuple, pres));
    // a wrong diagram (A6) never matches
    auto a6 = presentation_from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    EXPECT_FALSE(weyl_presentation_witness(rs, a6, 51840));
}

TEST(Presentation, TableWitnessInDihedralGroup) {
    auto d6 = dihedral_group(6);
    EXPECT_EQ(d6.order(), 12u);
    auto g2 = coxeter_presentation_of(parse_coxeter_type("G2"));
    auto w = table_presentation_witness(d6.table, g2, 12);
    ASSERT_TRUE(w);
    EXPECT_TRUE(coxeter_relations_hold(d6.table, w->tuple, g2));
    // I2(4) relations cannot generate a group of order 12
    bool exhausted = true;
    EXPECT_FALSE(table_presentation_witness(d6.table, coxeter_presentation_of(parse_coxeter_type("I2(4)")), 12,
                                            1'000'000, &exhausted));
    EXPECT_FALSE(exhausted);
}

TEST(Weyl, DerivedSubgroupsHaveIndexTwo) {
    for (const char* n : {"A4", "D5", "E6"}) {
        auto w = weyl_permutation_group(generate_root_system(parse_coxeter_type(n)));
        EXPECT_EQ(w.order(), 2 * perm_derived_subgroup(w).order()) << n;
    }
}

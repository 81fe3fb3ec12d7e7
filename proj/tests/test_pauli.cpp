#include <gtest/gtest.h>

#include "qrg/qrg.hpp"

using namespace qrg;

TEST(Pauli, LettersRoundTrip) {
    for (const char* s : {"X", "Y", "Z", "I", "XZ", "YY", "IXZ", "ZYXI"}) EXPECT_EQ(pauli_letters(pauli_from_letters(s)), s);
    EXPECT_THROW(pauli_from_letters("XQ"), parse_error);
    EXPECT_THROW(pauli_from_letters(""), parse_error);
    auto p = parse_pauli("i^3 XYZ");
    EXPECT_EQ(to_string(p), "i^3 XYZ");
    EXPECT_THROW(parse_pauli("XYZ"), parse_error);
}

TEST(Pauli, MatrixAgreesWithGates) {
    EXPECT_EQ(pauli_to_matrix(pauli_from_letters("X")), standard_gate("X"));
    EXPECT_EQ(pauli_to_matrix(pauli_from_letters("Y")), standard_gate("Y"));
    EXPECT_EQ(pauli_to_matrix(pauli_from_letters("Z")), standard_gate("Z"));
    EXPECT_EQ(pauli_to_matrix(pauli_from_letters("XZ")), tensor(standard_gate("X"), standard_gate("Z")));
    EXPECT_EQ(pauli_to_matrix(pauli_from_letters("YIX")),
              tensor(standard_gate("Y"), standard_gate("I"), standard_gate("X")));
}

TEST(Pauli, ProductMatchesMatrixProductExhaustively) {
    // all 64 * 64 products of two-qubit Pauli elements
    std::vector<pauli_element> all;
    for (unsigned ph = 0; ph < 4; ++ph)
        for (std::uint32_t x = 0; x < 4; ++x)
            for (std::uint32_t z = 0; z < 4; ++z) all.push_back({2, ph, x, z});
    for (const auto& a : all)
        for (const auto& b : all) {
            auto ma = pauli_to_matrix(a), mb = pauli_to_matrix(b);
            ASSERT_EQ(pauli_to_matrix(a * b), ma * mb);
            ASSERT_EQ(pauli_commutes(a, b), ma * mb == mb * ma);
        }
    for (const auto& a : all) EXPECT_EQ(matrix_to_pauli(pauli_to_matrix(a)), a);
}

TEST(Pauli, HermitianRepresentatives) {
    for (std::uint32_t x = 0; x < 8; ++x)
        for (std::uint32_t z = 0; z < 8; ++z) {
            auto p = hermitian_pauli(3, x, z);
            EXPECT_TRUE(p.is_hermitian());
            auto m = pauli_to_matrix(p);
            EXPECT_EQ(m, m.adjoint());
        }
    EXPECT_EQ(hermitian_pauli(1, 1, 1), pauli_from_letters("Y"));
}

TEST(Pauli, NonPauliMatrixRejected) {
    EXPECT_THROW(matrix_to_pauli(standard_gate("H")), not_pauli);
    EXPECT_THROW(matrix_to_pauli(exact_matrix::identity(3)), not_pauli);
}

TEST(Pauli, GroupOrders) {
    EXPECT_EQ(pauli_group_table(1).order(), 16u);
    EXPECT_EQ(pauli_group_table(2).order(), 64u);
    EXPECT_EQ(pauli_group_table(3).order(), 256u);
}

TEST(Pauli, CliffordActionPermutations) {
    auto h = clifford_action_permutation(standard_gate("H"), 1, false);
    // H swaps X and Z, fixes the Y class
    EXPECT_EQ(h[pauli_class_index(1, 1, 0)], pauli_class_index(1, 0, 1));
    EXPECT_EQ(h[pauli_class_index(1, 1, 1)], pauli_class_index(1, 1, 1));
    auto hs = clifford_action_permutation(standard_gate("H"), 1, true);
    // H Y H = -Y
    auto y = pauli_class_index(1, 1, 1);
    EXPECT_EQ(hs[2 * y], 2 * y + 1);
    EXPECT_EQ(hs.degree(), signed_pauli_points(1));
    // the pi/8 phase gate is not Clifford
    auto pi8 = exact_matrix::diagonal({cyc8(1), cyc8::zeta()});
    EXPECT_THROW(clifford_action_permutation(pi8, 1, false), not_clifford);
}

TEST(Pauli, SignedActionIsAHomomorphism) {
    auto gens = detail::clifford_generators(2);
    for (const auto& a : gens)
        for (const auto& b : gens)
            EXPECT_EQ(clifford_action_permutation(a * b, 2, true),
                      clifford_action_permutation(a, 2, true) * clifford_action_permutation(b, 2, true));
}

#include <gtest/gtest.h>

#include "qrg/qrg.hpp"

using namespace qrg;

TEST(Clifford, SingleQubitStructure) {
    auto c1 = clifford_group(1);
    ASSERT_TRUE(c1.table);
    const auto& t = c1.table->table;
    EXPECT_EQ(t.order(), 192u);
    auto z = center_of(t);
    EXPECT_EQ(z.order(), 8u);
    EXPECT_TRUE(is_cyclic(z.table));
    auto q = quotient(t, z);
    EXPECT_EQ(fingerprint_of(q.table), fingerprint_of(symmetric_group(4)));
    EXPECT_EQ(derived_subgroup_of(t).order(), 24u);
    for (const auto& g : c1.table->elements) EXPECT_TRUE(is_unitary(g));
}

TEST(Clifford, NormalizesThePauliGroup) {
    auto c1 = clifford_group(1);
    auto p = pauli_subgroup_of(*c1.table, 1);
    EXPECT_EQ(p.order(), 16u);
    EXPECT_TRUE(is_normal(c1.table->table, p));
    auto q = clifford_mod_pauli(c1, 1);
    EXPECT_EQ(q.order(), 12u);
    EXPECT_EQ(fingerprint_of(q.table), fingerprint_of(dihedral_group(6).table));
}

TEST(Clifford, MagicGroupIsGL23) {
    auto m = magic_group();
    ASSERT_TRUE(m.table);
    EXPECT_EQ(m.table->order(), 48u);
    EXPECT_EQ(fingerprint_of(m.table->table), fingerprint_of(detail::linear_group_mod(3, 2, false).table));
}

TEST(Clifford, ComplementSearch) {
    auto c1 = clifford_group(1);
    const auto& t = c1.table->table;
    // C1 / P1 does not split: an exhaustive search over lifts finds nothing
    auto r = split_check(t, pauli_subgroup_of(*c1.table, 1));
    EXPECT_EQ(r.outcome, split_outcome::non_split);
    // a direct factor always has a complement
    auto s4z2 = z2_times_symmetric(4);
    auto z = center_of(s4z2);
    auto s = split_check(s4z2, z);
    EXPECT_EQ(s.outcome, split_outcome::split);
    EXPECT_EQ(generate_subgroup(s4z2, std::span<const elem_id>(s.complement_generators)).order(), 24u);
    EXPECT_THROW(split_check(symmetric_group(3), generate_subgroup(symmetric_group(3), {1})), not_normal);
}

TEST(Clifford, TwoQubitWithPermutationRoute) {
    auto c2 = clifford_group(2);
    EXPECT_EQ(c2.order(), 92160);
    auto perm = detail::perm_handle("C2", detail::clifford_generators(2), 2);
    EXPECT_EQ(perm.signed_image->order(), 11520);
    EXPECT_EQ(perm.unsigned_image->order(), 720);
}

TEST(Bell, TwoQubitGroup) {
    auto b2 = bell_group(2);
    ASSERT_TRUE(b2.table);
    auto z = center_of(b2.table->table);
    EXPECT_EQ(b2.table->order() / z.order(), 1920u);
    auto c2 = clifford_group(2);
    for (const auto& g : b2.generators) EXPECT_TRUE(c2.table->contains(g));
}

TEST(YangBaxter, Checks) {
    auto r = yang_baxter_check(standard_gate("R"));
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.unitary);
    EXPECT_TRUE(yang_baxter_check(exact_matrix::identity(4)).holds);
    // CZ_12 CZ_23 CZ_12 = CZ_23 but CZ_23 CZ_12 CZ_23 = CZ_12
    auto cz = yang_baxter_check(standard_gate("CZ"));
    EXPECT_FALSE(cz.holds);
    EXPECT_TRUE(cz.unitary);
    // the swap matrix satisfies the braid relation
    auto swap = exact_matrix::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    EXPECT_TRUE(yang_baxter_check(swap).holds);
    EXPECT_THROW(yang_baxter_check(standard_gate("H")), error);
}

TEST(PauliAutomorphisms, OneQubit) {
    auto r = aut_of_pauli(1);
    EXPECT_EQ(r.aut, 48u);
    EXPECT_EQ(r.inn, 4u);
    EXPECT_EQ(r.out, 12u);
    EXPECT_TRUE(r.aut_witness);
    EXPECT_TRUE(r.out_witness);
    EXPECT_THROW(aut_of_pauli(3), too_large);
}

TEST(PauliAutomorphisms, CentralQuotientFormulaAgreesWithCount) {
    EXPECT_EQ(aut_of_central_quotient(1), 6);
    EXPECT_EQ(aut_of_central_quotient_direct(1), 6u);
    EXPECT_EQ(aut_of_central_quotient(2), 20160);
    EXPECT_EQ(aut_of_central_quotient(3), big_int(20158709760LL));
    // Z_2^2 has automorphism group S3, which is not abelian
    auto p = pauli_group_table(1);
    auto q = quotient(p.table, center_of(p.table));
    auto a = automorphisms_of(q.table, true);
    bsgs ag(q.order());
    ag.extend(a.automorphisms);
    EXPECT_EQ(ag.order(), 6);
    EXPECT_FALSE(is_abelian(table_of(ag)));
}

TEST(Chains, TwoQubitOvoid) {
    auto c = two_qubit_ovoid_chain();
    EXPECT_EQ(c.aut, (std::vector<std::size_t>{8, 48, 1920, 1920}));
    EXPECT_EQ(c.out, (std::vector<std::size_t>{2, 12, 120, 120}));
    EXPECT_EQ(c.orders[2], c.orders[3]);
    EXPECT_EQ(pauli_letters(c.points.front()), "IX");
}

TEST(NamedGroups, Lookup) {
    EXPECT_EQ(named_group("P2").order(), 64);
    EXPECT_EQ(named_group("magic").order(), 48);
    EXPECT_THROW(named_group("nope"), error);
}

#include <gtest/gtest.h>

#include "qrg/qrg.hpp"

using namespace qrg;

TEST(Gq2, PointsAndLines) {
    auto g = two_qubit_geometry();
    EXPECT_EQ(g.points.size(), 15u);
    EXPECT_EQ(g.lines.size(), 15u);
    // every line is a commuting triple whose product is +-I
    for (const auto& l : g.lines) {
        ASSERT_EQ(l.size(), 3u);
        EXPECT_TRUE(pauli_commutes(g.points[l[0]], g.points[l[1]]));
        EXPECT_NO_THROW(line_sign(g, l));
    }
    auto a = point_index(g, "IX"), b = point_index(g, "XI"), c = point_index(g, "XX");
    EXPECT_TRUE(g.collinear(a, b));
    EXPECT_TRUE(g.collinear(b, c));
    EXPECT_FALSE(g.collinear(a, point_index(g, "IZ")));
    EXPECT_THROW(point_index(g, "II"), error);
}

TEST(Gq2, AxiomsHold) {
    auto ax = check_gq_axioms(two_qubit_geometry(), 2, 2);
    EXPECT_TRUE(ax.line_size);
    EXPECT_TRUE(ax.point_degree);
    EXPECT_TRUE(ax.near_linear);
    EXPECT_TRUE(ax.antiflag);
    EXPECT_FALSE(check_gq_axioms(two_qubit_geometry(), 2, 3).all());
}

TEST(Gq2, CollinearityGraphIsStronglyRegular) {
    auto g = two_qubit_geometry();
    auto e = collinearity_edges(g);
    // each point sees s(t+1) = 6 others
    EXPECT_EQ(e.size(), 15u * 6 / 2);
    std::vector<int> deg(15);
    for (auto [a, b] : e) ++deg[a], ++deg[b];
    for (int d : deg) EXPECT_EQ(d, 6);
}

TEST(Axioms, DuplicatedLineBreaksNearLinearity) {
    auto g = two_qubit_geometry();
    g.lines.push_back(g.lines.front());
    auto ax = check_gq_axioms(g, 2, 2);
    EXPECT_FALSE(ax.near_linear);
    EXPECT_FALSE(ax.point_degree);
}

TEST(Axioms, TriangleFailsOnlyTheAntiflagAxiom) {
    incidence_geometry tri;
    tri.points = {pauli_from_letters("X"), pauli_from_letters("Y"), pauli_from_letters("Z")};
    tri.lines = {{0, 1}, {1, 2}, {0, 2}};
    auto ax = check_gq_axioms(tri, 1, 1);
    EXPECT_TRUE(ax.line_size);
    EXPECT_TRUE(ax.point_degree);
    EXPECT_TRUE(ax.near_linear);
    EXPECT_FALSE(ax.antiflag);
}

TEST(Axioms, SquareIsAGeneralizedQuadrangle) {
    incidence_geometry sq;
    sq.points.assign(4, pauli_from_letters("X"));
    sq.lines = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    EXPECT_TRUE(check_gq_axioms(sq, 1, 1).all());
}

TEST(Hyperplanes, Census) {
    auto g = two_qubit_geometry();
    auto hs = enumerate_hyperplanes(g);
    std::map<hyperplane_kind, int> n;
    for (const auto& h : hs) {
        ++n[h.kind];
        // each line meets the hyperplane in one point or lies inside it
        for (const auto& l : g.lines) {
            int in = 0;
            for (auto p : l) in += (h.mask >> p) & 1;
            EXPECT_TRUE(in == 1 || in == 3);
        }
    }
    EXPECT_EQ(n[hyperplane_kind::perp_set], 15);
    EXPECT_EQ(n[hyperplane_kind::grid], 10);
    EXPECT_EQ(n[hyperplane_kind::ovoid], 6);
    EXPECT_EQ(n[hyperplane_kind::other], 0);
    EXPECT_EQ(hs.size(), 31u);
}

TEST(Hyperplanes, PerpSetIsCentreAndItsNeighbours) {
    auto g = two_qubit_geometry();
    for (const auto& h : enumerate_hyperplanes(g)) {
        if (h.kind != hyperplane_kind::perp_set) continue;
        ASSERT_TRUE(h.center);
        for (std::size_t p = 0; p < g.points.size(); ++p) {
            bool in = (h.mask >> p) & 1;
            EXPECT_EQ(in, p == *h.center || g.collinear(p, *h.center));
        }
    }
}

TEST(Hyperplanes, OvoidsArePairwiseAnticommuting) {
    auto g = two_qubit_geometry();
    for (const auto& h : enumerate_hyperplanes(g)) {
        if (h.kind != hyperplane_kind::ovoid) continue;
        EXPECT_EQ(h.points.size(), 5u);
        for (auto a : h.points)
            for (auto b : h.points)
                if (a != b) EXPECT_FALSE(pauli_commutes(g.points[a], g.points[b]));
    }
}

TEST(Hyperplanes, TooManyPoints) {
    incidence_geometry big;
    big.points.assign(25, pauli_from_letters("X"));
    EXPECT_THROW(enumerate_hyperplanes(big), too_many_points);
}

TEST(Mermin, EntangledGridSigns) {
    auto g = two_qubit_geometry();
    int entangled = 0;
    for (const auto& h : enumerate_hyperplanes(g)) {
        if (h.kind != hyperplane_kind::grid) continue;
        auto m = mermin_square_signs(g, h);
        // an odd number of -I lines in every grid: no sign assignment exists
        EXPECT_EQ(m.product, -1);
        if (!m.entangled) continue;
        ++entangled;
        EXPECT_EQ(m.signs[0], (std::array<int, 3>{-1, -1, -1}));
        EXPECT_EQ(m.signs[1], (std::array<int, 3>{1, 1, 1}));
    }
    EXPECT_EQ(entangled, 1);
}

TEST(Mermin, RejectsNonGrid) {
    auto g = two_qubit_geometry();
    for (const auto& h : enumerate_hyperplanes(g))
        if (h.kind == hyperplane_kind::ovoid) {
            EXPECT_THROW(mermin_square_signs(g, h), not_a_grid);
            break;
        }
}

TEST(SubGeometry, PairOfAnticommutingPointsGivesDihedral) {
    auto g = two_qubit_geometry();
    auto r = sub_geometry_group_analysis(g, {point_index(g, "IX"), point_index(g, "IZ")});
    EXPECT_EQ(r.order, 8u);
    EXPECT_EQ(r.center, 2u);
    EXPECT_EQ(r.aut, 8u);
    EXPECT_EQ(r.out, 2u);
    EXPECT_EQ(r.fingerprint, fingerprint_of(dihedral_group(4).table));
}

TEST(SubGeometry, LineGivesKleinFourGroup) {
    auto g = two_qubit_geometry();
    auto r = sub_geometry_group_analysis(g, {point_index(g, "IX"), point_index(g, "XI"), point_index(g, "XX")});
    EXPECT_EQ(r.order, 4u);
    EXPECT_EQ(r.exponent, 2u);
    EXPECT_EQ(r.aut, 6u);
}

TEST(IndependentSet, ChainOrdersAndErrors) {
    auto pts = std::vector{pauli_from_letters("X"), pauli_from_letters("Z"), pauli_from_letters("Y")};
    auto chain = independent_set_chain(pts, 3);
    ASSERT_EQ(chain.size(), 2u);
    EXPECT_EQ(chain[0].order(), 8u);
    EXPECT_EQ(chain[1].order(), 16u);
    EXPECT_THROW(independent_set_chain({pauli_from_letters("XI"), pauli_from_letters("IX")}, 2), not_independent);
    EXPECT_THROW(independent_set_chain(pts, 4), not_independent);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qrg/qrg.hpp"

using namespace qrg;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    auto d = fs::temp_directory_path() / ("qrg-test-" + tag + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST(ExactMatrix, StandardGatesAreUnitary) {
    for (const char* g : {"I", "X", "Y", "Z", "H", "P", "T", "CZ", "R"}) EXPECT_TRUE(is_unitary(standard_gate(g))) << g;
    EXPECT_THROW(standard_gate("Q"), unknown_gate);
}

TEST(ExactMatrix, PauliAlgebra) {
    auto X = standard_gate("X"), Y = standard_gate("Y"), Z = standard_gate("Z");
    auto i = cyc8::imag_unit();
    EXPECT_EQ(X * Y, Z.scaled(i));
    EXPECT_EQ(X * X, exact_matrix::identity(2));
    auto H = standard_gate("H");
    EXPECT_EQ(H * X * H.adjoint(), Z);
    EXPECT_EQ(H * H, exact_matrix::identity(2));
}

TEST(ExactMatrix, TensorIsMixedProductCompatible) {
    auto A = standard_gate("H"), B = standard_gate("T"), C = standard_gate("X"), D = standard_gate("P");
    EXPECT_EQ(tensor(A, B) * tensor(C, D), tensor(A * C, B * D));
    auto xz = tensor(standard_gate("X"), standard_gate("Z"));
    EXPECT_EQ(xz.dim(), 4u);
    // qubit 0 is the most significant index bit
    EXPECT_FALSE(xz(2, 0).is_zero());
}

TEST(ExactMatrix, ParseRoundTrip) {
    auto m = tensor(standard_gate("T"), standard_gate("H"));
    EXPECT_EQ(exact_matrix::parse(m.to_string()), m);
    EXPECT_THROW(exact_matrix::parse("garbage"), parse_error);
}

TEST(MatrixGroup, SingleQubitCliffordHas192Elements) {
    auto g = enumerate_matrix_group({standard_gate("H"), standard_gate("P")}, group_mode::full);
    EXPECT_EQ(g.order(), 192u);
    EXPECT_EQ(clifford_group(1).order(), 192);
}

TEST(MatrixGroup, ProjectiveModeDividesOutScalars) {
    auto full = enumerate_matrix_group(detail::clifford_generators(1), group_mode::full);
    auto proj = enumerate_matrix_group(detail::clifford_generators(1), group_mode::projective);
    EXPECT_EQ(full.order(), 192u);
    EXPECT_EQ(proj.order(), 24u);
}

TEST(MatrixGroup, TableIsAGroup) {
    auto g = enumerate_matrix_group({standard_gate("T"), standard_gate("H")}, group_mode::full);
    ASSERT_EQ(g.order(), 48u);
    const auto& t = g.table;
    for (elem_id a = 0; a < t.order(); ++a) {
        EXPECT_EQ(t.mul(a, t.inv(a)), group_table::identity());
        for (elem_id b = 0; b < t.order(); b += 7) EXPECT_EQ(g.elements[t.mul(a, b)], g.elements[a] * g.elements[b]);
    }
}

TEST(MatrixGroup, RejectsNonUnitaryAndCap) {
    EXPECT_THROW(enumerate_matrix_group({exact_matrix::from_rows({{1, 1}, {0, 1}})}, group_mode::full), error);
    EXPECT_THROW(enumerate_matrix_group(detail::clifford_generators(1), group_mode::full, 100), cap_exceeded);
}

TEST(MatrixGroup, CacheRoundTrip) {
    auto dir = scratch_dir("matrep");
    auto gens = detail::clifford_generators(1);
    auto g = enumerate_matrix_group(gens, group_mode::full);
    save_matrix_group(dir / "c1.group", 42, group_mode::full, g);
    auto back = load_matrix_group(dir / "c1.group", 42, group_mode::full, gens);
    ASSERT_TRUE(back);
    ASSERT_EQ(back->order(), g.order());
    for (elem_id a = 0; a < g.order(); ++a) {
        EXPECT_EQ(back->elements[a], g.elements[a]);
        EXPECT_EQ(back->find(g.elements[a]), a);
    }
    EXPECT_FALSE(load_matrix_group(dir / "absent.group", 42, group_mode::full, gens));
    EXPECT_THROW(load_matrix_group(dir / "c1.group", 43, group_mode::full, gens), cache_corruption);
    fs::remove_all(dir);
}

TEST(MatrixGroup, CorruptCacheIsDetected) {
    auto dir = scratch_dir("matrep-corrupt");
    auto gens = detail::clifford_generators(1);
    auto g = enumerate_matrix_group(gens, group_mode::full);
    save_matrix_group(dir / "c1.group", 7, group_mode::full, g);
    {
        // flip one element line into something that is not that group element
        std::ifstream in(dir / "c1.group");
        std::vector<std::string> lines;
        for (std::string l; std::getline(in, l);) lines.push_back(l);
        lines[5] = lines[9];
        std::ofstream out(dir / "c1.group", std::ios::trunc);
        for (auto& l : lines) out << l << '\n';
    }
    EXPECT_THROW(load_matrix_group(dir / "c1.group", 7, group_mode::full, gens), cache_corruption);
    {
        std::ofstream out(dir / "c1.group", std::ios::trunc);
        out << "qrg-group 7 full 192 3\n1,0\n";
    }
    EXPECT_THROW(load_matrix_group(dir / "c1.group", 7, group_mode::full, gens), cache_corruption);

    // the claim runner recovers by recomputing
    verify_context cx(dir);
    EXPECT_EQ(cx.table("c1", gens).order(), 192u);
    fs::remove_all(dir);
}

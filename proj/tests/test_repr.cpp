#include "qexlab/repr.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qexlab;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<FiniteGroup>(std::move(g)); }

Complex root_of_unity(double k, double n) { return std::polar(1.0, 2 * std::numbers::pi * k / n); }

std::vector<std::size_t> sorted_dims(const std::vector<Irrep>& irreps) {
  std::vector<std::size_t> d;
  for (const auto& r : irreps) d.push_back(r.dim);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST(RegularRepresentation, PermutationMatrices) {
  auto z3 = make_cyclic(3);
  EXPECT_LE((regular_representation(z3, 0) - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.0);
  CMatrix shift = CMatrix::Zero(3, 3);
  for (int x = 0; x < 3; ++x) shift((x + 1) % 3, x) = 1.0;
  EXPECT_LE((regular_representation(z3, 1) - shift).cwiseAbs().maxCoeff(), 0.0);

  auto d4 = make_dihedral(4);
  for (Element g = 0; g < d4.order(); ++g) {
    CMatrix m = regular_representation(d4, g);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      EXPECT_DOUBLE_EQ(m.row(i).cwiseAbs().sum(), 1.0);
      EXPECT_DOUBLE_EQ(m.col(i).cwiseAbs().sum(), 1.0);
    }
    auto perm = left_permutation(d4, g);
    for (Element x = 0; x < d4.order(); ++x) EXPECT_EQ(m(perm[x], x), Complex(1.0));
  }
}

TEST(CharacterTable, CyclicCharacters) {
  const std::uint32_t n = 6;
  auto z = make_cyclic(n);
  auto t = character_table(z);
  ASSERT_EQ(t.size(), n);
  // every row is some exp(2 pi i k j / n), and each k appears once
  std::vector<bool> seen(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    bool found = false;
    for (std::uint32_t k = 0; k < n && !found; ++k) {
      double err = 0.0;
      for (Element j = 0; j < n; ++j) err = std::max(err, std::abs(t.value(r, j) - root_of_unity(k * j, n)));
      if (err < 1e-9 && !seen[k]) found = seen[k] = true;
    }
    EXPECT_TRUE(found) << "row " << r;
  }
  EXPECT_LE(character_orthogonality_residual(z, t), 1e-12);
}

TEST(CharacterTable, Dimensions) {
  EXPECT_EQ(character_table(make_dihedral(3)).dims, (std::vector<std::size_t>{1, 1, 2}));
  EXPECT_EQ(character_table(make_dihedral(4)).dims, (std::vector<std::size_t>{1, 1, 1, 1, 2}));
  auto pgl3 = make_pgl2(3);
  auto t3 = character_table(*pgl3.group);
  EXPECT_EQ(t3.dims, (std::vector<std::size_t>{1, 1, 2, 3, 3}));
  EXPECT_LE(character_orthogonality_residual(*pgl3.group, t3), 1e-9);
  auto t5 = character_table(*make_pgl2(5).group);
  EXPECT_EQ(t5.dims, (std::vector<std::size_t>{1, 1, 4, 4, 5, 5, 6}));
  // trivial character first
  for (std::size_t c = 0; c < t5.classes.size(); ++c) EXPECT_NEAR(std::abs(t5.characters(0, c) - 1.0), 0.0, 1e-9);
}

TEST(Irreps, CyclicFour) {
  auto z4 = make_cyclic(4);
  auto irreps = explicit_irreps(z4);
  ASSERT_EQ(irreps.size(), 4u);
  std::vector<bool> seen(4, false);
  for (const auto& r : irreps) {
    ASSERT_EQ(r.dim, 1u);
    // rho(1) = i^k for some k
    for (int k = 0; k < 4; ++k)
      if (std::abs(r.matrices[1](0, 0) - std::pow(Complex(0, 1), k)) < 1e-12) seen[k] = true;
  }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST(Irreps, DihedralRotation) {
  auto d5 = make_dihedral(5);
  auto irreps = explicit_irreps(d5);
  EXPECT_EQ(sorted_dims(irreps), (std::vector<std::size_t>{1, 1, 2, 2}));
  // first two-dimensional irrep: r acts as rotation by 2 pi / 5
  const auto it = std::find_if(irreps.begin(), irreps.end(), [](const Irrep& r) { return r.dim == 2; });
  ASSERT_NE(it, irreps.end());
  const CMatrix& rot = it->matrices[1];
  EXPECT_NEAR(std::abs(rot.trace() - 2 * std::cos(2 * std::numbers::pi / 5)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rot.determinant() - 1.0), 0.0, 1e-12);
  for (const auto& r : irreps) {
    auto chk = check_irrep(d5, r);
    EXPECT_LE(chk.homomorphism_residual, 1e-12);
    EXPECT_LE(chk.unitarity_residual, 1e-12);
    EXPECT_NEAR(chk.character_norm, 1.0, 1e-12);
  }
}

TEST(Irreps, Pgl2Numerical) {
  auto p = make_pgl2(3);
  auto irreps = explicit_irreps(*p.group);
  EXPECT_EQ(sorted_dims(irreps), (std::vector<std::size_t>{1, 1, 2, 3, 3}));
  for (const auto& r : irreps) {
    auto chk = check_irrep(*p.group, r);
    EXPECT_TRUE(chk.exhaustive);
    EXPECT_LE(chk.homomorphism_residual, 1e-8);
    EXPECT_LE(chk.unitarity_residual, 1e-8);
    EXPECT_NEAR(chk.character_norm, 1.0, 1e-8);
    EXPECT_NEAR(restricted_character_norm(r, p.tower.levels[3]), 1.0, 1e-8);
  }
  // dims 3 restricted to the dihedral subgroup D_6 of order 6 split
  const auto three = std::find_if(irreps.begin(), irreps.end(), [](const Irrep& r) { return r.dim == 3; });
  EXPECT_GT(restricted_character_norm(*three, p.tower.levels[2]), 1.0 + 1e-6);
  EXPECT_LE(schur_orthogonality_check(*p.group, irreps), 1e-8);
}

TEST(Schur, ExactAndNegative) {
  auto z3 = make_cyclic(3);
  EXPECT_LE(schur_orthogonality_check(z3, explicit_irreps(z3)), 1e-12);
  auto d3 = make_dihedral(3);
  auto irreps = explicit_irreps(d3);
  EXPECT_LE(schur_orthogonality_check(d3, irreps), 1e-9);
  for (auto& m : irreps.back().matrices) m *= 2.0;
  EXPECT_GE(schur_orthogonality_check(d3, irreps), 0.1);
}

TEST(Fourier, HadamardAndDft) {
  auto z2 = share(make_cyclic(2));
  auto f2 = fourier_transform(z2, explicit_irreps(*z2));
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  EXPECT_LE((f2.matrix - h).cwiseAbs().maxCoeff(), 1e-15);

  const std::uint32_t n = 7;
  auto z = share(make_cyclic(n));
  auto f = fourier_transform(z, explicit_irreps(*z));
  // each row is a DFT row
  for (Eigen::Index r = 0; r < f.matrix.rows(); ++r) {
    const std::uint32_t k = [&] {
      for (std::uint32_t kk = 0; kk < n; ++kk)
        if (std::abs(f.matrix(r, 1) - root_of_unity(kk, n) / std::sqrt(double(n))) < 1e-12) return kk;
      return n;
    }();
    ASSERT_LT(k, n);
    for (Element j = 0; j < n; ++j)
      EXPECT_NEAR(std::abs(f.matrix(r, j) - root_of_unity(double(k) * j, n) / std::sqrt(double(n))), 0.0, 1e-12);
  }
}

TEST(Fourier, UnitaryAndBlockDiagonal) {
  for (auto g : {share(make_dihedral(7)), make_pgl2(3).group, make_pgl2(5).group}) {
    auto f = fourier_transform(g, explicit_irreps(*g));
    EXPECT_LE(unitarity_residual(f.matrix), 1e-8) << g->label();
    EXPECT_LE(block_structure_residual(f), 1e-8) << g->label();
    ASSERT_EQ(f.rows.size(), g->order());
    for (std::size_t r = 0; r < f.rows.size(); ++r) EXPECT_EQ(f.row(f.rows[r].rho, f.rows[r].i, f.rows[r].j), r);
  }
}

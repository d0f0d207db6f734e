#include "qexlab/cayley.hpp"
#include "qexlab/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qexlab;

namespace {

std::shared_ptr<const FiniteGroup> cyclic(std::uint32_t n) { return std::make_shared<FiniteGroup>(make_cyclic(n)); }

GeneratingSet gens(std::vector<Element> e) { return GeneratingSet{std::move(e)}; }

}  // namespace

TEST(CayleyOperator, SmallMatrices) {
  auto c2 = cayley_operator(cyclic(2), gens({1, 1}));
  RMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_LE((c2.matrix - swap).cwiseAbs().maxCoeff(), 1e-15);

  auto c3 = cayley_operator(cyclic(3), gens({1, 2}));
  RMatrix circ(3, 3);
  circ << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  EXPECT_LE((c3.matrix - 0.5 * circ).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CayleyOperator, DoublyStochastic) {
  auto d = std::make_shared<FiniteGroup>(make_dihedral(7));
  auto c = cayley_operator(d, random_symmetric_generators(*d, 4, 3));
  for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
    EXPECT_NEAR(c.matrix.row(i).sum(), 1.0, 1e-15);
    EXPECT_NEAR(c.matrix.col(i).sum(), 1.0, 1e-15);
  }
  EXPECT_LE((c.matrix - c.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CayleyOperator, RightMultiplication) {
  auto d = make_dihedral(4);
  auto perm = right_multiplication(d, 5);
  for (Element x = 0; x < d.order(); ++x) EXPECT_EQ(perm[x], d.mul(x, 5));
  auto left = left_multiplication(d, 5);
  for (Element x = 0; x < d.order(); ++x) EXPECT_EQ(left[x], d.mul(5, x));
}

TEST(Spectrum, ClosedFormCirculants) {
  auto s2 = spectrum(cayley_operator(cyclic(2), gens({1, 1})));
  EXPECT_NEAR(s2.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s2.eigenvalues(1), -1.0, 1e-14);
  EXPECT_NEAR(s2.lambda_bar, 1.0, 1e-14);

  auto s3 = spectrum(cayley_operator(cyclic(3), gens({1, 2})));
  EXPECT_NEAR(s3.eigenvalues(1), -0.5, 1e-14);
  EXPECT_NEAR(s3.eigenvalues(2), -0.5, 1e-14);
  EXPECT_NEAR(s3.lambda_bar, 0.5, 1e-14);

  // Z_n with {a, -a}: eigenvalues cos(2 pi k a / n)
  for (std::uint32_t n : {8u, 11u, 12u}) {
    auto s = spectrum(cayley_operator(cyclic(n), gens({3, n - 3})));
    std::vector<double> expect;
    for (std::uint32_t k = 0; k < n; ++k) expect.push_back(std::cos(2 * std::numbers::pi * k * 3 / n));
    std::sort(expect.rbegin(), expect.rend());
    for (std::uint32_t k = 0; k < n; ++k) EXPECT_NEAR(s.eigenvalues(k), expect[k], 1e-12);
  }
  // the 8-cycle is bipartite: -1 is an eigenvalue, so cos(pi/4) appears only
  // once the trivial -1 is set aside
  auto s8 = spectrum(cayley_operator(cyclic(8), gens({1, 7})));
  EXPECT_NEAR(s8.lambda_bar, 1.0, 1e-12);
  EXPECT_NEAR(lambda_bar_nontrivial(s8, true), std::cos(std::numbers::pi / 4), 1e-12);
}

TEST(Spectrum, EigenvectorsOrthonormal) {
  auto d = std::make_shared<FiniteGroup>(make_dihedral(5));
  auto c = cayley_operator(d, random_symmetric_generators(*d, 4, 9));
  auto s = spectrum(c, true);
  ASSERT_TRUE(s.eigenvectors.has_value());
  const RMatrix& v = *s.eigenvectors;
  EXPECT_LE((v.transpose() * v - RMatrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((c.matrix * v - v * s.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Graph, ConnectivityAndBipartiteness) {
  auto z6 = make_cyclic(6);
  EXPECT_TRUE(is_connected(z6, gens({1, 5})));
  EXPECT_TRUE(is_bipartite(z6, gens({1, 5})));
  EXPECT_FALSE(is_connected(z6, gens({2, 4})));
  auto z5 = make_cyclic(5);
  EXPECT_FALSE(is_bipartite(z5, gens({1, 4})));
  // a bipartite graph has -1 in its spectrum
  auto s = spectrum(cayley_operator(cyclic(6), gens({1, 5})));
  EXPECT_NEAR(s.eigenvalues(5), -1.0, 1e-12);
  EXPECT_NEAR(lambda_bar_nontrivial(s, true), 0.5, 1e-12);
}

TEST(Lps, GeneratorCounts) {
  EXPECT_EQ(lps_quaternions(5).size(), 6u);
  EXPECT_EQ(lps_quaternions(13).size(), 14u);
  for (const auto& v : lps_quaternions(13)) {
    EXPECT_EQ(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3], 13);
    EXPECT_GT(v[0], 0);
    EXPECT_EQ(v[0] % 2, 1);
  }
}

TEST(Lps, SmallInstance) {
  // 5 is not a square mod 13, so the graph lives on PGL(2,13) and is bipartite.
  auto l = lps_generators(5, 13);
  EXPECT_FALSE(l.on_psl);
  EXPECT_EQ(l.group->order(), 2184u);
  EXPECT_EQ(l.generators.degree(), 6u);
  EXPECT_TRUE(is_inverse_closed(*l.group, l.generators));
  EXPECT_TRUE(is_connected(*l.group, l.generators));
  EXPECT_TRUE(is_bipartite(*l.group, l.generators));
  EXPECT_THROW(lps_generators(5, 7), Error);
}

TEST(Ramanujan, Threshold) {
  auto v = ramanujan_check(0.5, 6);
  EXPECT_NEAR(v.threshold, 2 * std::sqrt(5.0) / 6, 1e-15);
  EXPECT_NEAR(v.threshold, 0.745356, 1e-6);
  EXPECT_TRUE(v.pass);
  EXPECT_FALSE(ramanujan_check(1.0, 6).pass);
  EXPECT_LT(ramanujan_check(1.0, 6).margin, 0.0);
}

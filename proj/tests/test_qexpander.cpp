#include "qexlab/error.hpp"
#include "qexlab/qexpander.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qexlab;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<FiniteGroup>(std::move(g)); }

GeneratingSet all_of(const FiniteGroup& g) {
  GeneratingSet s;
  for (Element x = 0; x < g.order(); ++x) s.elements.push_back(x);
  return s;
}

CMatrix ket_bra(std::size_t n, std::size_t a, std::size_t b) {
  CMatrix m = CMatrix::Zero(n, n);
  m(a, b) = 1.0;
  return m;
}

CMatrix tilde_i(std::size_t n) { return CMatrix::Identity(n, n) / double(n); }

std::vector<double> sorted_real_eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  std::vector<double> v;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    EXPECT_NEAR(es.eigenvalues()(i).imag(), 0.0, 1e-10);
    v.push_back(es.eigenvalues()(i).real());
  }
  std::sort(v.rbegin(), v.rend());
  return v;
}

ExpanderBuild build(const std::string& spec, const GeneratingSet& gamma) {
  auto b = build_group(parse_group_spec(spec));
  return build_expander(b.group, b.tower, gamma, default_mapping(*b.group), 1);
}

}  // namespace

TEST(StepSuperoperator, ActionOnBasis) {
  auto d = make_dihedral(4);
  GeneratingSet gamma{{1, 3, 4, 4}};
  auto t = step_superoperator(d, gamma);
  const std::size_t n = d.order();
  for (Element g1 : {0u, 2u, 5u})
    for (Element g2 : {1u, 7u}) {
      CMatrix expect = CMatrix::Zero(n, n);
      for (Element y : gamma.elements) expect += ket_bra(n, d.mul(g1, y), d.mul(g2, y)) / 4.0;
      EXPECT_LE((t.apply(ket_bra(n, g1, g2)) - expect).cwiseAbs().maxCoeff(), 1e-15);
    }
  EXPECT_LE((t.apply(tilde_i(n)) - tilde_i(n)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StepSuperoperator, ClassicalStatesFollowM) {
  auto g = share(make_dihedral(5));
  auto gamma = random_symmetric_generators(*g, 4, 2);
  auto t = step_superoperator(*g, gamma);
  auto c = cayley_operator(g, gamma);
  Rng rng(5);
  RVector p = RVector::NullaryExpr(10, [&] { return std::uniform_real_distribution<double>(0, 1)(rng); });
  p /= p.sum();
  CMatrix out = t.apply(p.cast<Complex>().asDiagonal().toDenseMatrix());
  EXPECT_LE((out.diagonal().real() - c.matrix * p).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TSpectrum, CyclicThree) {
  auto z3 = share(make_cyclic(3));
  GeneratingSet gamma{{1, 2}};
  auto t = step_superoperator(*z3, gamma);
  auto cert = t_spectrum_certificate(t, cayley_operator(z3, gamma));
  EXPECT_TRUE(cert.pass);
  EXPECT_TRUE(cert.dense_checked);
  ASSERT_EQ(cert.eigenvalues.size(), 2u);
  EXPECT_NEAR(cert.eigenvalues[0].value, 1.0, 1e-12);
  EXPECT_EQ(cert.eigenvalues[0].multiplicity, 3u);
  EXPECT_NEAR(cert.eigenvalues[1].value, -0.5, 1e-12);
  EXPECT_EQ(cert.eigenvalues[1].multiplicity, 6u);
  // independent: eigenvalues of the 9 x 9 matrix
  auto ev = sorted_real_eigenvalues(t.dense_matrix());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev[i], 1.0, 1e-12);
  for (int i = 3; i < 9; ++i) EXPECT_NEAR(ev[i], -0.5, 1e-12);
}

TEST(TSpectrum, CompleteGenerators) {
  auto z4 = share(make_cyclic(4));
  auto t = step_superoperator(*z4, all_of(*z4));
  auto ev = sorted_real_eigenvalues(t.dense_matrix());
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(ev[i], i < 4 ? 1.0 : 0.0, 1e-12);
  auto cert = t_spectrum_certificate(t, cayley_operator(z4, all_of(*z4)));
  EXPECT_TRUE(cert.pass);
}

TEST(ProductMapping, ClosedForms) {
  auto z6 = share(make_cyclic(6));
  auto m = product_mapping(z6, std::vector<std::size_t>(6, 1), MappingKind::abelian);
  EXPECT_TRUE(is_bijective(m));
  for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(m.f1[r][0], z6->identity());

  auto d7 = share(make_dihedral(7));
  auto fd = fourier_transform(d7, explicit_irreps(*d7));
  std::vector<std::size_t> dims;
  for (const auto& r : fd.irreps) dims.push_back(r.dim);
  auto md = product_mapping(d7, dims, MappingKind::dihedral);
  EXPECT_TRUE(is_bijective(md));
  EXPECT_FALSE(md.fallback);

  auto p = make_pgl2(3);
  auto fp = fourier_transform(p.group, explicit_irreps(*p.group));
  dims.clear();
  for (const auto& r : fp.irreps) dims.push_back(r.dim);
  auto mp = product_mapping(p.group, dims, MappingKind::pgl2, &p.tower);
  EXPECT_TRUE(is_bijective(mp));
  std::vector<bool> hit(24, false);
  for (std::size_t r = 0; r < dims.size(); ++r)
    for (std::size_t i = 0; i < dims[r]; ++i)
      for (std::size_t j = 0; j < dims[r]; ++j) hit[mp.image(r, i, j)] = true;
  EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));

  EXPECT_THROW(product_mapping(p.group, dims, MappingKind::pgl2, nullptr), Error);
}

TEST(BasisChange, PhasesAndUnitarity) {
  auto z5 = share(make_cyclic(5));
  auto f = fourier_transform(z5, explicit_irreps(*z5));
  auto m = product_mapping(z5, std::vector<std::size_t>(5, 1), MappingKind::abelian);
  auto bc = basis_change(f, m);
  // all d = 1: U is F with rows permuted, no phases
  for (std::size_t r = 0; r < 5; ++r)
    EXPECT_LE((bc.u.row(m.image(r, 0, 0)) - f.matrix.row(r)).cwiseAbs().maxCoeff(), 1e-15);

  auto d3 = share(make_dihedral(3));
  auto fd = fourier_transform(d3, explicit_irreps(*d3));
  std::vector<std::size_t> dims;
  for (const auto& r : fd.irreps) dims.push_back(r.dim);
  auto md = product_mapping(d3, dims, MappingKind::dihedral);
  auto bd = basis_change(fd, md);
  EXPECT_LE(bd.unitarity_residual, 1e-8);
  const std::size_t rho = 2;
  ASSERT_EQ(dims[rho], 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double sign = ((i + 1) * (j + 1)) % 2 ? -1.0 : 1.0;
      EXPECT_LE((bd.u.row(md.image(rho, i, j)) - sign * fd.matrix.row(fd.row(rho, i, j))).cwiseAbs().maxCoeff(),
                1e-12);
    }
}

TEST(GoodBasis, PositiveAndNegative) {
  auto z8 = build("cyclic:8", GeneratingSet{{1, 7}});
  EXPECT_LE(good_basis_check(z8.basis.u, *z8.group).max_residual, 1e-9);
  auto d7 = build("dihedral:7", GeneratingSet{{1, 6}});
  EXPECT_LE(good_basis_check(d7.basis.u, *d7.group).max_residual, 1e-8);
  auto ident = good_basis_check(CMatrix::Identity(14, 14), *d7.group);
  EXPECT_FALSE(ident.pass);
  EXPECT_NEAR(ident.max_residual, 14.0, 1e-12);
  EXPECT_EQ(d7.group->mul(ident.worst_g1, ident.worst_g2), d7.group->identity());
}

TEST(Expander, FixedPointAndCounting) {
  auto e = build("dihedral:4", GeneratingSet{{1, 3, 4, 4}});
  EXPECT_LE((e.e.apply(tilde_i(8)) - tilde_i(8)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(e.e.term_count(), 16u);
  EXPECT_NEAR(e.e.apply(ket_bra(8, 0, 0)).trace().real(), 1.0, 1e-14);
  EXPECT_TRUE(regularity_check(e.e).pass);
  EXPECT_EQ(regularity_check(e.e).degree, 16u);
}

TEST(SpectralGap, KnownValues) {
  auto z3 = build("cyclic:3", GeneratingSet{{1, 2}});
  EXPECT_LE(spectral_gap(z3.e).sigma2, 0.5 + 1e-8);

  auto z8 = share(make_cyclic(8));
  auto full = build("cyclic:8", all_of(*z8));
  EXPECT_LE(spectral_gap(full.e).sigma2, 1e-8);

  auto t = step_superoperator(*z8, GeneratingSet{{1, 7, 3, 5}});
  auto plain = expander(t, CMatrix::Identity(8, 8));
  EXPECT_GE(spectral_gap(plain).sigma2, 1 - 1e-6);
}

TEST(SpectralGap, MethodsAgree) {
  auto g = share(make_dihedral(9));
  auto e = build("dihedral:9", expanding_generators(*g, 4, 1));
  const double dense = spectral_gap(e.e, GapMethod::dense).sigma2;
  const double lanczos = spectral_gap(e.e, GapMethod::lanczos, 3).sigma2;
  EXPECT_NEAR(dense, lanczos, 1e-8);
  EXPECT_LE(dense, e.classical.lambda_bar + 1e-7);
  // independent oracle: SVD of the projected N^2 x N^2 matrix
  const std::size_t n = 18;
  CMatrix p = CMatrix::Identity(n * n, n * n);
  CVector vec_i = CMatrix::Identity(n, n).reshaped() / std::sqrt(double(n));
  p -= vec_i * vec_i.adjoint();
  Eigen::BDCSVD<CMatrix> svd(p * e.e.dense_matrix() * p);
  EXPECT_NEAR(svd.singularValues()(0), dense, 1e-10);
}

TEST(Regularity, Rejections) {
  auto z2 = make_cyclic(2);
  std::vector<ConjugationTerm> terms(2);
  terms[0].weight = 0.6;
  terms[0].perm = {0, 1};
  terms[1].weight = 0.4;
  terms[1].perm = {1, 0};
  EXPECT_FALSE(regularity_check(Superoperator::from_terms(2, terms)).pass);
  terms[0].weight = terms[1].weight = 0.5;
  EXPECT_TRUE(regularity_check(Superoperator::from_terms(2, terms)).pass);
  terms[1].perm.clear();
  terms[1].unitary = CMatrix::Identity(2, 2) * 1.5;
  EXPECT_FALSE(regularity_check(Superoperator::from_terms(2, terms)).pass);
  EXPECT_TRUE(regularity_check(step_superoperator(z2, GeneratingSet{{1, 1}})).pass);
}

TEST(LowerBound, Arithmetic) {
  auto b4 = lower_bound_check(4, 0.5, 120);
  EXPECT_NEAR(b4.bound, 0.192450, 1e-6);
  EXPECT_NEAR(b4.bound, 2 / (3 * std::sqrt(12.0)), 1e-15);
  EXPECT_TRUE(b4.pass);
  EXPECT_FALSE(b4.vacuous);
  EXPECT_NEAR(lower_bound_check(36, 0.5, 120).bound, 0.064150, 1e-6);
  EXPECT_FALSE(lower_bound_check(4, 0.1, 120).pass);
  auto vac = lower_bound_check(64, 0.0, 8);
  EXPECT_TRUE(vac.vacuous);
  EXPECT_TRUE(vac.pass);
}

TEST(Mapping, Defaults) {
  EXPECT_EQ(default_mapping(make_cyclic(5)), MappingKind::abelian);
  EXPECT_EQ(default_mapping(make_dihedral(7)), MappingKind::dihedral);
  EXPECT_EQ(default_mapping(*make_pgl2(3).group), MappingKind::pgl2);
  EXPECT_EQ(parse_mapping_kind("searched"), MappingKind::searched);
  EXPECT_THROW(parse_mapping_kind("bogus"), Error);
}

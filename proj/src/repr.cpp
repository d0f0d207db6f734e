#include "qexlab/repr.hpp"

#include "qexlab/error.hpp"
#include "qexlab/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qexlab {

CMatrix regular_representation(const FiniteGroup& g, Element x) {
  const std::size_t n = g.order();
  CMatrix m = CMatrix::Zero(n, n);
  for (Element y = 0; y < n; ++y) m(g.mul(x, y), y) = 1.0;
  return m;
}

std::vector<Element> left_permutation(const FiniteGroup& g, Element x) {
  std::vector<Element> p(g.order());
  for (Element y = 0; y < g.order(); ++y) p[y] = g.mul(x, y);
  return p;
}

// ---------------------------------------------------------------------------
// Character table

namespace {

// Lexicographic on (dim asc, Re chi desc, Im chi desc) with a tolerance.
bool character_less(const CMatrix& chars, const std::vector<std::size_t>& dims, std::size_t a, std::size_t b) {
  if (dims[a] != dims[b]) return dims[a] < dims[b];
  constexpr double eps = 1e-6;
  for (Eigen::Index k = 0; k < chars.cols(); ++k) {
    const double ra = chars(a, k).real(), rb = chars(b, k).real();
    if (std::abs(ra - rb) > eps) return ra > rb;
  }
  for (Eigen::Index k = 0; k < chars.cols(); ++k) {
    const double ia = chars(a, k).imag(), ib = chars(b, k).imag();
    if (std::abs(ia - ib) > eps) return ia > ib;
  }
  return a < b;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed) {
  const std::size_t n = g.order();
  require(n <= kDenseTableLimit, ErrorKind::invalid_input, "character table needs |G| <= 360");
  CharacterTable t;
  t.classes = conjugacy_classes(g);
  const std::size_t k = t.classes.size();
  t.class_of.assign(n, 0);
  for (std::size_t c = 0; c < k; ++c)
    for (auto x : t.classes[c]) t.class_of[x] = c;

  // c[i][j][l] = #{(x, y) : x in C_i, y in C_j, x y = z_l}
  std::vector<RMatrix> coeff(k, RMatrix::Zero(k, k));
  for (std::size_t l = 0; l < k; ++l) {
    const Element z = t.classes[l][0];
    for (Element x = 0; x < n; ++x) {
      const Element y = g.mul(g.inv(x), z);
      coeff[t.class_of[x]](t.class_of[y], l) += 1.0;
    }
  }

  for (std::size_t attempt = 0; attempt < 6; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::normal_distribution<double> normal;
    RMatrix a = RMatrix::Zero(k, k);
    for (std::size_t i = 0; i < k; ++i) a += normal(rng) * coeff[i];
    Eigen::ComplexEigenSolver<CMatrix> es(a.cast<Complex>());
    if (es.info() != Eigen::Success) continue;
    const CVector& ev = es.eigenvalues();
    double scale = 1.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev(i)));
    bool distinct = true;
    for (Eigen::Index i = 0; i < ev.size() && distinct; ++i)
      for (Eigen::Index j = i + 1; j < ev.size(); ++j)
        if (std::abs(ev(i) - ev(j)) < 1e-6 * scale) {
          distinct = false;
          break;
        }
    if (!distinct) continue;

    CMatrix chars(k, k);
    std::vector<std::size_t> dims(k);
    bool ok = true;
    for (std::size_t r = 0; r < k && ok; ++r) {
      CVector w = es.eigenvectors().col(r);
      if (std::abs(w(0)) < 1e-12) {
        ok = false;
        break;
      }
      w /= w(0);
      // Every class-sum matrix must share this eigenvector.
      for (std::size_t i = 0; i < k; ++i) {
        const CVector lhs = coeff[i].cast<Complex>() * w;
        if ((lhs - w(i) * w).cwiseAbs().maxCoeff() > 1e-6 * std::max(1.0, w.cwiseAbs().maxCoeff())) ok = false;
      }
      double denom = 0.0;
      for (std::size_t c = 0; c < k; ++c) denom += std::norm(w(c)) / static_cast<double>(t.classes[c].size());
      const double d = std::sqrt(static_cast<double>(n) / denom);
      const double rounded = std::round(d);
      if (std::abs(d - rounded) > 1e-6 || rounded < 1) ok = false;
      dims[r] = static_cast<std::size_t>(rounded);
      for (std::size_t c = 0; c < k; ++c) chars(r, c) = rounded * w(c) / static_cast<double>(t.classes[c].size());
    }
    if (!ok) continue;

    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return character_less(chars, dims, a, b); });
    t.characters.resize(k, k);
    t.dims.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      t.characters.row(i) = chars.row(order[i]);
      t.dims[i] = dims[order[i]];
    }
    t.reseeds = attempt;
    std::size_t total = 0;
    for (auto d : t.dims) total += d * d;
    require(total == n, ErrorKind::numerical, "character table dimensions do not sum to |G|");
    return t;
  }
  fail(ErrorKind::numerical, "class-sum eigenvalues stayed degenerate after reseeding");
}

double character_orthogonality_residual(const FiniteGroup& g, const CharacterTable& t) {
  const double n = static_cast<double>(g.order());
  double worst = 0.0;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t s = 0; s < t.size(); ++s) {
      Complex sum = 0.0;
      for (std::size_t c = 0; c < t.classes.size(); ++c)
        sum += static_cast<double>(t.classes[c].size()) * t.characters(r, c) * std::conj(t.characters(s, c));
      worst = std::max(worst, std::abs(sum / n - (r == s ? 1.0 : 0.0)));
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Irreps

IrrepCheck check_irrep(const FiniteGroup& g, const Irrep& irrep, std::uint64_t seed) {
  IrrepCheck c;
  const std::size_t n = g.order();
  require(irrep.matrices.size() == n, ErrorKind::invalid_input, "irrep must have one matrix per element");
  auto hom = [&](Element a, Element b) {
    const CMatrix diff = irrep.matrices[g.mul(a, b)] - irrep.matrices[a] * irrep.matrices[b];
    c.homomorphism_residual = std::max(c.homomorphism_residual, diff.cwiseAbs().maxCoeff());
  };
  if (n <= 120) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) hom(a, b);
  } else {
    c.exhaustive = false;
    Rng rng(seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (int s = 0; s < 10000; ++s) hom(pick(rng), pick(rng));
  }
  double norm = 0.0;
  for (Element a = 0; a < n; ++a) {
    c.unitarity_residual = std::max(c.unitarity_residual, unitarity_residual(irrep.matrices[a]));
    norm += std::norm(irrep.matrices[a].trace());
  }
  c.character_norm = norm / static_cast<double>(n);
  return c;
}

double restricted_character_norm(const Irrep& irrep, const std::vector<Element>& subgroup) {
  double norm = 0.0;
  for (auto h : subgroup) norm += std::norm(irrep.matrices[h].trace());
  return norm / static_cast<double>(subgroup.size());
}

namespace {

std::vector<Irrep> cyclic_irreps(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Irrep> out;
  for (std::size_t k = 0; k < n; ++k) {
    Irrep r{"chi" + std::to_string(k), 1, {}};
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      r.matrices.push_back(CMatrix::Constant(1, 1, std::polar(1.0, phase)));
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Element k + m b is r^k s^b.
std::vector<Irrep> dihedral_irreps(const FiniteGroup& g) {
  const std::uint32_t m = g.parameter();
  const std::size_t n = g.order();
  auto one_dim = [&](const std::string& label, auto sign) {
    Irrep r{label, 1, {}};
    for (Element x = 0; x < n; ++x) r.matrices.push_back(CMatrix::Constant(1, 1, sign(x % m, x / m)));
    return r;
  };
  std::vector<Irrep> out;
  out.push_back(one_dim("trivial", [](std::uint32_t, std::uint32_t) { return 1.0; }));
  out.push_back(one_dim("sign", [](std::uint32_t, std::uint32_t b) { return b ? -1.0 : 1.0; }));
  if (m % 2 == 0) {
    out.push_back(one_dim("alt_r", [](std::uint32_t k, std::uint32_t) { return k % 2 ? -1.0 : 1.0; }));
    out.push_back(one_dim("alt_rs", [](std::uint32_t k, std::uint32_t b) { return (k + b) % 2 ? -1.0 : 1.0; }));
  }
  const std::uint32_t count = m % 2 ? (m - 1) / 2 : m / 2 - 1;
  for (std::uint32_t l = 1; l <= count; ++l) {
    Irrep r{"rho" + std::to_string(l), 2, {}};
    for (Element x = 0; x < n; ++x) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>((l * (x % m)) % m) / static_cast<double>(m);
      CMatrix rot(2, 2);
      rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      if (x / m) rot.col(1) *= -1.0;  // R(th) * diag(1,-1)
      r.matrices.push_back(rot);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<Irrep> numerical_irreps(const FiniteGroup& g, const CharacterTable& table, std::uint64_t seed) {
  const std::size_t n = g.order();
  require(n <= 120, ErrorKind::invalid_input, "numerical irrep extraction needs |G| <= 120");
  std::vector<Irrep> out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const std::size_t d = table.dims[r];
    // Isotypic projector P(y, x) = (d/N) conj chi(y x^-1).
    CMatrix p(n, n);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        p(y, x) = static_cast<double>(d) / static_cast<double>(n) * std::conj(table.value(r, g.mul(y, g.inv(x))));
    Eigen::SelfAdjointEigenSolver<CMatrix> pes(0.5 * (p + p.adjoint()));
    require(pes.info() == Eigen::Success, ErrorKind::numerical, "projector eigensolver failed");
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < pes.eigenvalues().size(); ++i) {
      const double ev = pes.eigenvalues()(i);
      require(std::abs(ev) < tol::projector_rank || std::abs(ev - 1.0) < tol::projector_rank, ErrorKind::numerical,
              "isotypic operator is not a projector");
      if (ev > 0.5) cols.push_back(i);
    }
    require(cols.size() == d * d, ErrorKind::numerical,
            "isotypic projector rank " + std::to_string(cols.size()) + " != d^2 = " + std::to_string(d * d));
    CMatrix basis(n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) basis.col(c) = pes.eigenvectors().col(cols[c]);

    bool done = false;
    for (std::size_t attempt = 0; attempt < 6 && !done; ++attempt) {
      Rng rng(derive_seed(seed, 1000 * r + attempt));
      const CMatrix z = random_complex_matrix(n, n, rng);
      const CMatrix h = z + z.adjoint();
      // Average over the left action: H'(gx, gy) += H(x, y).
      CMatrix sym = CMatrix::Zero(n, n);
      for (Element a = 0; a < n; ++a) {
        const auto perm = left_permutation(g, a);
        for (Element x = 0; x < n; ++x)
          for (Element y = 0; y < n; ++y) sym(perm[x], perm[y]) += h(x, y);
      }
      const CMatrix k = basis.adjoint() * sym * basis;
      Eigen::SelfAdjointEigenSolver<CMatrix> kes(0.5 * (k + k.adjoint()));
      if (kes.info() != Eigen::Success) continue;
      const RVector& ev = kes.eigenvalues();  // ascending
      const Eigen::Index m = ev.size();
      const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
      // Top eigenvalue must have multiplicity exactly d.
      if (std::abs(ev(m - 1) - ev(m - static_cast<Eigen::Index>(d))) > 1e-7 * scale) continue;
      if (static_cast<Eigen::Index>(d) < m && ev(m - static_cast<Eigen::Index>(d)) - ev(m - 1 - static_cast<Eigen::Index>(d)) < 1e-4 * scale)
        continue;
      CMatrix w = kes.eigenvectors().rightCols(static_cast<Eigen::Index>(d));
      CMatrix v = basis * w;
      Eigen::HouseholderQR<CMatrix> qr(v);
      v = qr.householderQ() * CMatrix::Identity(n, d);

      Irrep irrep{"rho" + std::to_string(r), d, {}};
      irrep.matrices.reserve(n);
      for (Element a = 0; a < n; ++a) {
        const auto perm = left_permutation(g, a);
        CMatrix lv(n, d);
        for (Element x = 0; x < n; ++x) lv.row(perm[x]) = v.row(x);
        irrep.matrices.push_back(v.adjoint() * lv);
      }
      // The subspace must actually be invariant.
      double leak = 0.0;
      for (Element a = 0; a < n; ++a) leak = std::max(leak, unitarity_residual(irrep.matrices[a]));
      if (leak > tol::construction) continue;
      out.push_back(std::move(irrep));
      done = true;
    }
    require(done, ErrorKind::numerical, "eigenspace splitting failed after 5 reseeds");
  }
  return out;
}

std::vector<Irrep> explicit_irreps(const FiniteGroup& g, std::uint64_t seed) {
  switch (g.family()) {
    case GroupFamily::cyclic:
      return cyclic_irreps(g);
    case GroupFamily::dihedral:
      return dihedral_irreps(g);
    default:
      return numerical_irreps(g, character_table(g, seed), seed);
  }
}

// ---------------------------------------------------------------------------
// Fourier transform

std::string row_label(const FourierRow& r) {
  return "rho" + std::to_string(r.rho) + ":" + std::to_string(r.i) + ":" + std::to_string(r.j);
}

namespace {

CMatrix coefficient_matrix(std::size_t n, const std::vector<Irrep>& irreps, std::vector<FourierRow>* rows,
                           std::vector<std::size_t>* offsets) {
  std::size_t total = 0;
  for (const auto& r : irreps) total += r.dim * r.dim;
  CMatrix f(total, n);
  std::size_t row = 0;
  for (std::size_t k = 0; k < irreps.size(); ++k) {
    const auto& ir = irreps[k];
    require(ir.matrices.size() == n, ErrorKind::invalid_input, "irrep must have one matrix per element");
    if (offsets) offsets->push_back(row);
    const double scale = std::sqrt(static_cast<double>(ir.dim) / static_cast<double>(n));
    for (std::size_t i = 0; i < ir.dim; ++i)
      for (std::size_t j = 0; j < ir.dim; ++j, ++row) {
        if (rows) rows->push_back({k, i, j});
        for (std::size_t x = 0; x < n; ++x) f(row, x) = scale * ir.matrices[x](i, j);
      }
  }
  return f;
}

}  // namespace

FourierTransform fourier_transform(std::shared_ptr<const FiniteGroup> g, std::vector<Irrep> irreps) {
  require(g != nullptr, ErrorKind::invalid_input, "null group");
  const std::size_t n = g->order();
  std::size_t total = 0;
  for (const auto& r : irreps) total += r.dim * r.dim;
  require(total == n, ErrorKind::precondition,
          "irrep list is incomplete: sum d^2 = " + std::to_string(total) + ", |G| = " + std::to_string(n));
  FourierTransform f;
  f.group = std::move(g);
  f.matrix = coefficient_matrix(n, irreps, &f.rows, &f.offsets);
  f.irreps = std::move(irreps);
  require(unitarity_residual(f.matrix) <= tol::construction, ErrorKind::numerical,
          "Fourier transform is not unitary; an irrep upstream is not unitary");
  return f;
}

double block_structure_residual(const FourierTransform& f) {
  const FiniteGroup& g = *f.group;
  const std::size_t n = g.order();
  const CMatrix fadj = f.matrix.adjoint();
  double worst = 0.0;
  CMatrix fl(n, n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) fl.col(y) = f.matrix.col(g.mul(x, y));
    CMatrix block = fl * fadj;
    for (std::size_t a = 0; a < n; ++a) {
      const auto& r = f.rows[a];
      const std::size_t d = f.irreps[r.rho].dim;
      // Expected nonzeros in row (rho,i,j): columns (rho,i',j) with value rho_{i i'}(x).
      for (std::size_t ip = 0; ip < d; ++ip) block(a, f.row(r.rho, ip, r.j)) -= f.irreps[r.rho].matrices[x](r.i, ip);
    }
    worst = std::max(worst, block.cwiseAbs().maxCoeff());
  }
  return worst;
}

double schur_orthogonality_check(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
  const CMatrix f = coefficient_matrix(g.order(), irreps, nullptr, nullptr);
  const CMatrix gram = f * f.adjoint();
  return (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace qexlab

#include "qexlab/qexpander.hpp"

#include "qexlab/error.hpp"
#include "qexlab/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace qexlab {

Superoperator step_superoperator(const FiniteGroup& g, const GeneratingSet& gamma) {
  require(!gamma.elements.empty(), ErrorKind::invalid_input, "empty generating set");
  require(is_inverse_closed(g, gamma), ErrorKind::invalid_input, "generating set is not closed under inverse");
  std::vector<ConjugationTerm> terms;
  const double w = 1.0 / static_cast<double>(gamma.degree());
  for (auto y : gamma.elements) {
    ConjugationTerm t;
    t.weight = w;
    t.perm = right_multiplication(g, y);
    terms.push_back(std::move(t));
  }
  return Superoperator::from_terms(g.order(), std::move(terms));
}

// ---------------------------------------------------------------------------
// T spectrum

TSpectrumCertificate t_spectrum_certificate(const Superoperator& t, const CayleyOperator& c, std::uint64_t seed) {
  const FiniteGroup& g = *c.group;
  const std::size_t n = g.order();
  require(t.dim() == n, ErrorKind::invalid_input, "superoperator and Cayley operator sizes differ");
  const SpectrumReport spec = spectrum(c, true);
  const RMatrix& vecs = *spec.eigenvectors;

  TSpectrumCertificate cert;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double v = spec.eigenvalues(i);
    if (!cert.eigenvalues.empty() && std::abs(cert.eigenvalues.back().value - v) <= tol::t_certificate)
      cert.eigenvalues.back().multiplicity += n;
    else
      cert.eigenvalues.push_back({v, n});
  }

  auto mu = [&](std::size_t i, Element x) {
    CMatrix m = CMatrix::Zero(n, n);
    for (Element y = 0; y < n; ++y) m(g.mul(x, y), y) = vecs(y, i);
    return m;
  };

  std::vector<std::pair<std::size_t, Element>> pairs;
  if (n <= 32) {
    for (std::size_t i = 0; i < n; ++i)
      for (Element x = 0; x < n; ++x) pairs.emplace_back(i, x);
  } else {
    cert.exhaustive = false;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int s = 0; s < 256; ++s) pairs.emplace_back(pick(rng), static_cast<Element>(pick(rng)));
  }
  for (const auto& [i, x] : pairs) {
    const CMatrix m = mu(i, x);
    const CMatrix tm = t.apply(m);
    cert.eigen_residual = std::max(cert.eigen_residual, (tm - spec.eigenvalues(i) * m).cwiseAbs().maxCoeff());
  }

  if (n <= 24) {
    CMatrix stacked(n * n, n * n);
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (Element x = 0; x < n; ++x, ++col) {
        const CMatrix m = mu(i, x);
        stacked.col(col) = Eigen::Map<const CVector>(m.data(), static_cast<Eigen::Index>(n * n));
      }
    const CMatrix gram = stacked.adjoint() * stacked;
    cert.orthonormality_residual = (gram - CMatrix::Identity(n * n, n * n)).cwiseAbs().maxCoeff();
  } else {
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = a; b < std::min(pairs.size(), a + 8); ++b) {
        const Complex ip = hs_inner(mu(pairs[a].first, pairs[a].second), mu(pairs[b].first, pairs[b].second));
        const double expect = pairs[a] == pairs[b] ? 1.0 : 0.0;
        cert.orthonormality_residual = std::max(cert.orthonormality_residual, std::abs(ip - expect));
      }
  }

  if (n * n <= 1024) {
    cert.dense_checked = true;
    const CMatrix d = t.dense_matrix();
    const RVector got = hermitian_eigenvalues(0.5 * (d + d.adjoint()));
    cert.dense_spectrum_residual = (d - d.adjoint()).cwiseAbs().maxCoeff();
    std::vector<double> expect;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) expect.push_back(spec.eigenvalues(i));
    std::sort(expect.begin(), expect.end(), std::greater<>());
    for (std::size_t k = 0; k < expect.size(); ++k)
      cert.dense_spectrum_residual = std::max(cert.dense_spectrum_residual, std::abs(got(k) - expect[k]));
  }
  cert.pass = cert.eigen_residual <= tol::t_certificate && cert.orthonormality_residual <= tol::t_certificate &&
              (!cert.dense_checked || cert.dense_spectrum_residual <= tol::t_certificate);
  return cert;
}

// ---------------------------------------------------------------------------
// Product mappings

std::string to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::abelian: return "abelian";
    case MappingKind::dihedral: return "dihedral";
    case MappingKind::pgl2: return "pgl2";
    case MappingKind::searched: return "searched";
  }
  return "unknown";
}

MappingKind parse_mapping_kind(const std::string& text) {
  if (text == "abelian") return MappingKind::abelian;
  if (text == "dihedral") return MappingKind::dihedral;
  if (text == "pgl2") return MappingKind::pgl2;
  if (text == "searched") return MappingKind::searched;
  fail(ErrorKind::invalid_input, "unknown mapping kind '" + text + "'");
}

MappingKind default_mapping(const FiniteGroup& g) {
  switch (g.family()) {
    case GroupFamily::cyclic: return MappingKind::abelian;
    case GroupFamily::dihedral: return g.parameter() % 2 ? MappingKind::dihedral : MappingKind::searched;
    case GroupFamily::pgl2: return MappingKind::pgl2;
    default: return MappingKind::searched;
  }
}

bool is_bijective(const ProductMapping& f) {
  const std::size_t n = f.group->order();
  std::vector<char> hit(n, 0);
  std::size_t count = 0;
  for (std::size_t r = 0; r < f.dims.size(); ++r) {
    if (f.f1[r].size() != f.dims[r] || f.f2[r].size() != f.dims[r]) return false;
    for (std::size_t i = 0; i < f.dims[r]; ++i)
      for (std::size_t j = 0; j < f.dims[r]; ++j) {
        const Element x = f.image(r, i, j);
        if (x >= n || hit[x]) return false;
        hit[x] = 1;
        ++count;
      }
  }
  return count == n;
}

namespace {

ProductMapping empty_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims,
                             MappingKind kind) {
  ProductMapping f;
  f.group = std::move(g);
  f.kind = kind;
  f.dims = dims;
  f.f1.resize(dims.size());
  f.f2.resize(dims.size());
  return f;
}

ProductMapping abelian_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims) {
  require(g->is_abelian(), ErrorKind::precondition, "abelian mapping needs an abelian group");
  require(dims.size() == g->order() && std::all_of(dims.begin(), dims.end(), [](auto d) { return d == 1; }),
          ErrorKind::precondition, "abelian mapping needs |G| one-dimensional irreps");
  auto f = empty_mapping(g, dims, MappingKind::abelian);
  for (std::size_t r = 0; r < dims.size(); ++r) {
    f.f1[r] = {g->identity()};
    f.f2[r] = {static_cast<Element>(r)};
  }
  return f;
}

// Irreps in the order trivial, sign, rho_1, ..., rho_{(m-1)/2}.
ProductMapping dihedral_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims) {
  require(g->family() == GroupFamily::dihedral && g->parameter() % 2 == 1, ErrorKind::precondition,
          "dihedral mapping needs D_m with odd m");
  const Element m = g->parameter();
  require(dims.size() == 2 + (m - 1) / 2 && dims[0] == 1 && dims[1] == 1, ErrorKind::precondition,
          "dihedral mapping expects irreps (trivial, sign, rho_1, ...)");
  auto f = empty_mapping(g, dims, MappingKind::dihedral);
  const Element s = m;
  f.f1[0] = {g->identity()};
  f.f2[0] = {g->identity()};
  f.f1[1] = {g->identity()};
  f.f2[1] = {s};
  for (std::size_t l = 1; l + 1 < dims.size(); ++l) {
    require(dims[l + 1] == 2, ErrorKind::precondition, "dihedral mapping expects two-dimensional rho_l");
    // f(rho_l, i, j) = r^{2(l-1)+i} s^j with 1-based i, j.
    f.f1[l + 1] = {static_cast<Element>(2 * (l - 1) + 1), static_cast<Element>(2 * (l - 1) + 2)};
    f.f2[l + 1] = {s, g->identity()};
  }
  return f;
}

ProductMapping pgl2_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims,
                            const SubgroupTower& tower) {
  require(g->family() == GroupFamily::pgl2, ErrorKind::precondition, "pgl2 mapping needs PGL(2,q)");
  const std::size_t q = g->parameter();
  const std::size_t ell = (q * q - 1) / 2;
  const std::size_t off = (q - 3) * (q + 1) / 2;
  require(tower.transversal2.size() == ell, ErrorKind::precondition, "transversal T2 has the wrong size");
  const FiniteGroup& gr = *g;
  auto t = [&](std::size_t k) { return tower.transversal2.at(k - 1); };  // 1-based
  auto rpow = [&](std::size_t k) { return gr.pow(tower.r, static_cast<long long>(k)); };
  const Element s = tower.s;

  auto f = empty_mapping(g, dims, MappingKind::pgl2);
  std::size_t x1 = 0, xm = 0, xq = 0, xp = 0;
  for (std::size_t r = 0; r < dims.size(); ++r) {
    const std::size_t d = dims[r];
    if (d == 1) {
      const std::size_t x = ++x1;
      require(x <= 2, ErrorKind::precondition, "too many one-dimensional irreps for PGL(2,q)");
      f.f1[r] = {s};
      f.f2[r] = {t(x + off)};
    } else if (d == q - 1) {
      const std::size_t x = ++xm;
      require(x <= (q - 1) / 2, ErrorKind::precondition, "too many (q-1)-dimensional irreps");
      for (std::size_t i = 1; i <= q - 1; ++i) f.f1[r].push_back(gr.mul(rpow(i), s));
      for (std::size_t j = 1; j <= q - 1; ++j) f.f2[r].push_back(t((x - 1) * (q - 1) + j));
    } else if (d == q) {
      const std::size_t x = ++xq;
      require(x <= 2, ErrorKind::precondition, "too many q-dimensional irreps");
      for (std::size_t i = 1; i <= q; ++i) f.f1[r].push_back(rpow(i - 1));
      for (std::size_t j = 1; j <= q; ++j) {
        const std::size_t idx = (x - 1) * q + j;
        f.f2[r].push_back(idx <= q + 1 ? t(idx + off) : gr.mul(s, t(idx - q + 1 + off)));
      }
    } else if (d == q + 1) {
      const std::size_t x = ++xp;
      require(x <= (q - 3) / 2, ErrorKind::precondition, "too many (q+1)-dimensional irreps");
      for (std::size_t i = 1; i <= q; ++i) f.f1[r].push_back(rpow(i - 1));
      f.f1[r].push_back(s);
      for (std::size_t j = 1; j <= q + 1; ++j) f.f2[r].push_back(t((x - 1) * (q + 1) + j));
    } else {
      fail(ErrorKind::precondition, "irrep dimension " + std::to_string(d) + " does not occur in PGL(2,q)");
    }
  }
  return f;
}

// Depth-first tiling: irreps by descending dimension, f1(0) = e without loss
// of generality (shift f2 by f1(0)), then rows of f1.
class MappingSearch {
 public:
  MappingSearch(const FiniteGroup& g, const std::vector<std::size_t>& dims, std::size_t budget)
      : g_(g), dims_(dims), budget_(budget), used_(g.order(), 0), f1_(dims.size()), f2_(dims.size()) {
    for (std::size_t r = 0; r < dims.size(); ++r) order_.push_back(r);
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return dims[a] > dims[b]; });
  }

  bool run() { return irrep(0); }
  std::size_t nodes() const { return nodes_; }
  std::vector<std::vector<Element>>& f1() { return f1_; }
  std::vector<std::vector<Element>>& f2() { return f2_; }

 private:
  bool tick() { return ++nodes_ <= budget_; }

  bool irrep(std::size_t pos) {
    if (pos == order_.size()) return true;
    const std::size_t r = order_[pos];
    f1_[r] = {g_.identity()};
    f2_[r].clear();
    return choose_f2(pos, 0);
  }

  bool choose_f2(std::size_t pos, Element start) {
    const std::size_t r = order_[pos];
    if (f2_[r].size() == dims_[r]) return choose_row(pos, 1, 0);
    for (Element x = start; x < g_.order(); ++x) {
      if (used_[x]) continue;
      if (!tick()) return false;
      used_[x] = 1;
      f2_[r].push_back(x);
      if (choose_f2(pos, x + 1)) return true;
      f2_[r].pop_back();
      used_[x] = 0;
      if (nodes_ > budget_) return false;
    }
    return false;
  }

  bool choose_row(std::size_t pos, std::size_t i, Element start) {
    const std::size_t r = order_[pos];
    const std::size_t d = dims_[r];
    if (i == d) return irrep(pos + 1);
    for (Element a = start; a < g_.order(); ++a) {
      if (a == g_.identity()) continue;
      bool free = true;
      for (auto b : f2_[r])
        if (used_[g_.mul(a, b)]) {
          free = false;
          break;
        }
      if (!free) continue;
      if (!tick()) return false;
      for (auto b : f2_[r]) used_[g_.mul(a, b)] = 1;
      f1_[r].push_back(a);
      if (choose_row(pos, i + 1, a + 1)) return true;
      f1_[r].pop_back();
      for (auto b : f2_[r]) used_[g_.mul(a, b)] = 0;
      if (nodes_ > budget_) return false;
    }
    return false;
  }

  const FiniteGroup& g_;
  std::vector<std::size_t> dims_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<char> used_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Element>> f1_, f2_;
};

ProductMapping searched_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims,
                                std::size_t budget) {
  require(g->order() <= 60, ErrorKind::precondition, "searched mapping needs |G| <= 60");
  std::size_t total = 0;
  for (auto d : dims) total += d * d;
  require(total == g->order(), ErrorKind::precondition, "irrep census does not sum to |G|");
  MappingSearch search(*g, dims, budget);
  const bool ok = search.run();
  require(ok, ErrorKind::numerical,
          "product-mapping search exhausted after " + std::to_string(search.nodes()) + " nodes");
  auto f = empty_mapping(g, dims, MappingKind::searched);
  f.f1 = std::move(search.f1());
  f.f2 = std::move(search.f2());
  f.search_nodes = search.nodes();
  return f;
}

}  // namespace

ProductMapping product_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims,
                               MappingKind kind, const SubgroupTower* tower, std::size_t search_budget) {
  require(g != nullptr, ErrorKind::invalid_input, "null group");
  ProductMapping f;
  switch (kind) {
    case MappingKind::abelian: f = abelian_mapping(g, dims); break;
    case MappingKind::dihedral: f = dihedral_mapping(g, dims); break;
    case MappingKind::pgl2:
      require(tower != nullptr, ErrorKind::precondition, "pgl2 mapping needs the subgroup tower");
      f = pgl2_mapping(g, dims, *tower);
      break;
    case MappingKind::searched: f = searched_mapping(g, dims, search_budget); break;
  }
  if (is_bijective(f)) return f;
  require(kind != MappingKind::searched && g->order() <= 60, ErrorKind::verification,
          to_string(kind) + " product mapping is not a bijection");
  auto fb = searched_mapping(g, dims, search_budget);
  fb.kind = kind;
  fb.fallback = true;
  return fb;
}

// ---------------------------------------------------------------------------
// Basis change

BasisChange basis_change(const FourierTransform& f, const ProductMapping& mapping) {
  const std::size_t n = f.group->order();
  require(mapping.group->order() == n, ErrorKind::precondition, "mapping and transform use different groups");
  require(mapping.dims.size() == f.irreps.size(), ErrorKind::precondition, "irrep census mismatch");
  for (std::size_t r = 0; r < f.irreps.size(); ++r)
    require(mapping.dims[r] == f.irreps[r].dim, ErrorKind::precondition, "irrep census mismatch");
  require(is_bijective(mapping), ErrorKind::precondition, "product mapping is not a bijection");
  BasisChange b;
  b.u = CMatrix::Zero(n, n);
  for (std::size_t r = 0; r < f.irreps.size(); ++r) {
    const std::size_t d = f.irreps[r].dim;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(((i + 1) * (j + 1)) % d) / static_cast<double>(d);
        b.u.row(mapping.image(r, i, j)) = std::polar(1.0, phase) * f.matrix.row(f.row(r, i, j));
      }
  }
  b.unitarity_residual = unitarity_residual(b.u);
  require(b.unitarity_residual <= tol::construction, ErrorKind::numerical, "basis change is not unitary");
  return b;
}

GoodBasisReport good_basis_check(const CMatrix& u, const FiniteGroup& g, double tolerance) {
  const std::size_t n = g.order();
  require(u.rows() == static_cast<Eigen::Index>(n) && u.cols() == u.rows(), ErrorKind::invalid_input,
          "basis change has the wrong size");
  GoodBasisReport rep;
  const CMatrix uadj = u.adjoint();
  CMatrix ul(n, n);
  for (Element g1 = 0; g1 < n; ++g1) {
    if (g1 == g.identity()) continue;
    for (Element y = 0; y < n; ++y) ul.col(y) = u.col(g.mul(g1, y));
    const CMatrix a = ul * uadj;
    for (Element g2 = 0; g2 < n; ++g2) {
      Complex tr = 0.0;
      for (Element x = 0; x < n; ++x) tr += a(x, g.mul(g2, x));
      if (std::abs(tr) > rep.max_residual) {
        rep.max_residual = std::abs(tr);
        rep.worst_g1 = g1;
        rep.worst_g2 = g2;
      }
    }
  }
  rep.pass = rep.max_residual <= tolerance;
  return rep;
}

Superoperator expander(const Superoperator& t, const CMatrix& u) {
  require(u.rows() == static_cast<Eigen::Index>(t.dim()) && u.cols() == u.rows(), ErrorKind::invalid_input,
          "basis change and superoperator sizes differ");
  auto layers = t.layers();
  layers.push_back(SuperoperatorLayer{{ConjugationTerm{1.0, {}, u}}});
  layers.insert(layers.end(), t.layers().begin(), t.layers().end());
  return Superoperator(t.dim(), std::move(layers));
}

// ---------------------------------------------------------------------------
// Spectral gap

std::string to_string(GapMethod m) {
  switch (m) {
    case GapMethod::automatic: return "automatic";
    case GapMethod::dense: return "dense";
    case GapMethod::lanczos: return "lanczos";
    case GapMethod::power: return "power-iteration";
  }
  return "unknown";
}

namespace {

CMatrix traceless(const CMatrix& x) {
  CMatrix y = x;
  const Complex shift = x.trace() / static_cast<double>(x.rows());
  y.diagonal().array() -= shift;
  return y;
}

struct ProjectedMap {
  const Superoperator& e;
  Superoperator eadj;
  std::size_t n;

  explicit ProjectedMap(const Superoperator& op) : e(op), eadj(op.adjoint()), n(op.dim()) {}

  CVector run(const Superoperator& op, const CVector& v) const {
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    const CMatrix x = traceless(Eigen::Map<const CMatrix>(v.data(), nn, nn));
    const CMatrix y = traceless(op.apply(x));
    return Eigen::Map<const CVector>(y.data(), nn * nn);
  }
  CVector forward(const CVector& v) const { return run(e, v); }
  CVector backward(const CVector& v) const { return run(eadj, v); }
};

CVector random_start(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CMatrix x = traceless(random_complex_matrix(n, n, rng));
  CVector v = Eigen::Map<const CVector>(x.data(), static_cast<Eigen::Index>(n * n));
  return v / v.norm();
}

GapReport dense_gap(const Superoperator& e) {
  const std::size_t n = e.dim();
  const std::size_t n2 = n * n;
  const CMatrix m = e.dense_matrix();
  CVector w = CVector::Zero(n2);
  for (std::size_t a = 0; a < n; ++a) w(a + n * a) = 1.0 / std::sqrt(static_cast<double>(n));
  const CMatrix p = CMatrix::Identity(n2, n2) - w * w.adjoint();
  const CMatrix a = p * m * p;
  Eigen::BDCSVD<CMatrix> svd(a);
  GapReport r;
  r.method = GapMethod::dense;
  r.sigma2 = svd.singularValues()(0);
  return r;
}

// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization,
// restarted from the current top Ritz vector when the basis is full.
GapReport lanczos_gap(const Superoperator& e, std::uint64_t seed, std::size_t cap) {
  const ProjectedMap op(e);
  const std::size_t n2 = e.dim() * e.dim();
  const std::size_t kmax = std::min<std::size_t>(n2, 120);
  constexpr double breakdown = 1e-13;
  CVector start = random_start(e.dim(), seed);

  GapReport rep;
  rep.method = GapMethod::lanczos;
  while (rep.iterations < cap) {
    CMatrix vb(n2, kmax + 1), ub(n2, kmax);
    std::vector<double> alpha, beta;
    vb.col(0) = start;
    double sigma = 0.0, res = 0.0;
    CVector xs, ys;
    std::size_t k = 0;
    bool stop = false;
    for (; k < kmax && !stop && rep.iterations < cap; ++k) {
      ++rep.iterations;
      CVector u = op.forward(vb.col(k));
      if (k > 0) u -= beta[k - 1] * ub.col(k - 1);
      for (int pass = 0; pass < 2; ++pass)
        if (k > 0) u -= ub.leftCols(k) * (ub.leftCols(k).adjoint() * u);
      double a = u.norm();
      if (a < breakdown) {
        a = 0.0;
        stop = true;
        ub.col(k).setZero();
      } else {
        ub.col(k) = u / a;
      }
      alpha.push_back(a);
      double b = 0.0;
      if (!stop) {
        CVector w = op.backward(ub.col(k)) - a * vb.col(k);
        for (int pass = 0; pass < 2; ++pass) w -= vb.leftCols(k + 1) * (vb.leftCols(k + 1).adjoint() * w);
        b = w.norm();
        if (b < breakdown) {
          b = 0.0;
          stop = true;
        } else {
          vb.col(k + 1) = w / b;
        }
      }
      beta.push_back(b);

      const std::size_t m = k + 1;
      if (stop || m % 5 == 0 || m == kmax) {
        RMatrix bd = RMatrix::Zero(m, m);
        for (std::size_t i = 0; i < m; ++i) {
          bd(i, i) = alpha[i];
          if (i + 1 < m) bd(i, i + 1) = beta[i];
        }
        Eigen::JacobiSVD<RMatrix> svd(bd, Eigen::ComputeFullU | Eigen::ComputeFullV);
        sigma = svd.singularValues()(0);
        xs = svd.matrixU().col(0).cast<Complex>();
        ys = svd.matrixV().col(0).cast<Complex>();
        res = beta[k] * std::abs(xs(m - 1));
        // Ritz values bound sigma from below and the map is a contraction, so
        // a Ritz value at 1 settles it even inside a degenerate cluster.
        if (sigma >= 1.0 - 1e-11) {
          rep.sigma2 = std::min(sigma, 1.0);
          rep.residual = 1.0 - rep.sigma2;
          return rep;
        }
        if (stop || res <= tol::gap_relative_residual * std::max(sigma, 1e-3)) {
          stop = true;
          ++k;
          break;
        }
      }
    }
    const std::size_t m = alpha.size();
    const CVector v = vb.leftCols(m) * ys.head(m);
    rep.sigma2 = sigma;
    rep.residual = sigma > 0 ? res / sigma : res;
    if (stop) {
      // Confirm with an explicit residual of the Ritz triplet.
      const CVector av = op.forward(v);
      const double s = av.norm();
      if (s > breakdown) {
        const CVector u = av / s;
        const double r2 = (op.backward(u) - s * v).norm();
        rep.residual = r2 / s;
        rep.sigma2 = std::max(rep.sigma2, s);
        if (rep.residual <= 1e-6) return rep;
        start = v / v.norm();
        continue;
      }
      rep.residual = s;
      return rep;
    }
    start = v / v.norm();
  }
  fail(ErrorKind::numerical, "Lanczos iteration cap exceeded (residual " + std::to_string(rep.residual) + ")");
}

GapReport power_gap(const Superoperator& e, std::uint64_t seed, std::size_t cap) {
  const ProjectedMap op(e);
  CVector v = random_start(e.dim(), seed);
  GapReport rep;
  rep.method = GapMethod::power;
  double last = -1.0;
  std::size_t stagnant = 0;
  for (; rep.iterations < cap; ++rep.iterations) {
    const CVector w = op.backward(op.forward(v));
    const double rq = std::real(v.dot(w));
    if (rq <= 1e-30) {
      rep.sigma2 = 0.0;
      rep.residual = 0.0;
      return rep;
    }
    rep.residual = (w - rq * v).norm() / rq;
    rep.sigma2 = std::sqrt(rq);
    if (rep.residual <= tol::gap_relative_residual) return rep;
    // Eigenvalue stalled while the vector keeps turning inside a cluster.
    if (std::abs(rq - last) <= 1e-15 * rq) {
      if (++stagnant > 1000) return rep;
    } else {
      stagnant = 0;
    }
    last = rq;
    v = w / w.norm();
  }
  fail(ErrorKind::numerical, "power iteration cap exceeded (residual " + std::to_string(rep.residual) + ")");
}

}  // namespace

GapReport spectral_gap(const Superoperator& e, GapMethod method, std::uint64_t seed, std::size_t cap) {
  if (method == GapMethod::automatic) method = e.dim() * e.dim() <= 1024 ? GapMethod::dense : GapMethod::lanczos;
  switch (method) {
    case GapMethod::dense:
      require(e.dim() * e.dim() <= 4096, ErrorKind::invalid_input, "dense gap limited to N^2 <= 4096");
      return dense_gap(e);
    case GapMethod::lanczos: return lanczos_gap(e, seed, cap);
    case GapMethod::power: return power_gap(e, seed, cap);
    default: break;
  }
  fail(ErrorKind::invalid_input, "unknown gap method");
}

// Layer-wise: the expanded weights are products of layer weights and the
// expanded terms products of layer unitaries, so uniform unitary layers give a
// regular superoperator of degree prod |layer|.
RegularityReport regularity_check(const Superoperator& e) {
  RegularityReport rep;
  rep.degree = e.term_count();
  double sum_ok = 0.0;
  for (const auto& layer : e.layers()) {
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (const auto& t : layer.terms) {
      lo = std::min(lo, t.weight);
      hi = std::max(hi, t.weight);
      sum += t.weight;
      if (!t.is_permutation()) rep.unitarity_residual = std::max(rep.unitarity_residual, unitarity_residual(t.unitary));
    }
    rep.weight_spread = std::max(rep.weight_spread, hi - lo);
    sum_ok = std::max(sum_ok, std::abs(sum - 1.0));
  }
  rep.pass = rep.weight_spread <= 1e-12 && sum_ok <= 1e-12 && rep.unitarity_residual <= tol::unitary;
  return rep;
}

LowerBoundVerdict lower_bound_check(std::size_t degree, double sigma2, std::size_t dim) {
  require(degree >= 1, ErrorKind::invalid_input, "degree must be positive");
  LowerBoundVerdict v;
  const double d = static_cast<double>(degree);
  v.bound = 2.0 / (3.0 * std::sqrt(3.0 * d));
  v.margin = sigma2 - v.bound;
  v.vacuous = static_cast<double>(dim) / (3.0 * d) < 1.0;
  v.pass = v.vacuous || sigma2 >= v.bound - tol::lower_bound;
  return v;
}

// ---------------------------------------------------------------------------

ExpanderBuild build_expander(std::shared_ptr<const FiniteGroup> g, std::optional<SubgroupTower> tower,
                             const GeneratingSet& gamma, MappingKind kind, std::uint64_t seed) {
  auto cay = cayley_operator(g, gamma);
  auto classical = spectrum(cay);
  auto irreps = explicit_irreps(*g, seed);
  std::vector<std::size_t> dims;
  for (const auto& r : irreps) dims.push_back(r.dim);
  auto fourier = fourier_transform(g, std::move(irreps));
  auto mapping = product_mapping(g, dims, kind, tower ? &*tower : nullptr);
  auto basis = basis_change(fourier, mapping);
  auto t = step_superoperator(*g, gamma);
  auto e = expander(t, basis.u);
  return ExpanderBuild{g,
                       std::move(tower),
                       gamma,
                       std::move(cay),
                       std::move(classical),
                       std::move(fourier),
                       std::move(mapping),
                       std::move(basis),
                       std::move(t),
                       std::move(e)};
}

GeneratingSet expanding_generators(const FiniteGroup& g, std::size_t k, std::uint64_t seed, std::uint64_t* used) {
  for (std::uint64_t s = seed; s < seed + 10000; ++s) {
    auto gamma = random_symmetric_generators(g, k, s);
    if (is_connected(g, gamma) && !is_bipartite(g, gamma)) {
      if (used) *used = s;
      return gamma;
    }
  }
  fail(ErrorKind::numerical, "no connected non-bipartite generating set found");
}

}  // namespace qexlab

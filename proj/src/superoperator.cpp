#include "qexlab/superoperator.hpp"

#include "qexlab/error.hpp"

namespace qexlab {

CMatrix ConjugationTerm::dense(std::size_t dim) const {
  if (!is_permutation()) return unitary;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) m(perm[x], x) = 1.0;
  return m;
}

CMatrix apply_term(const ConjugationTerm& t, const CMatrix& x) {
  if (!t.is_permutation()) return t.unitary * x * t.unitary.adjoint();
  const Eigen::Index n = x.rows();
  CMatrix y(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const Eigen::Index pb = t.perm[b];
    for (Eigen::Index a = 0; a < n; ++a) y(t.perm[a], pb) = x(a, b);
  }
  return y;
}

Superoperator::Superoperator(std::size_t dim, std::vector<SuperoperatorLayer> layers)
    : dim_(dim), layers_(std::move(layers)) {
  require(dim_ >= 1, ErrorKind::invalid_input, "superoperator dimension must be positive");
  for (const auto& layer : layers_) {
    require(!layer.terms.empty(), ErrorKind::invalid_input, "empty superoperator layer");
    for (const auto& t : layer.terms) {
      require(t.weight >= 0.0, ErrorKind::invalid_input, "negative conjugation weight");
      if (t.is_permutation())
        require(t.perm.size() == dim_, ErrorKind::invalid_input, "permutation size mismatch");
      else
        require(t.unitary.rows() == static_cast<Eigen::Index>(dim_) && t.unitary.cols() == t.unitary.rows(),
                ErrorKind::invalid_input, "unitary size mismatch");
    }
  }
}

Superoperator Superoperator::from_terms(std::size_t dim, std::vector<ConjugationTerm> terms) {
  return Superoperator(dim, {SuperoperatorLayer{std::move(terms)}});
}

CMatrix Superoperator::apply(const CMatrix& x) const {
  require(x.rows() == static_cast<Eigen::Index>(dim_) && x.cols() == x.rows(), ErrorKind::invalid_input,
          "operator size does not match the superoperator");
  CMatrix cur = x;
  for (const auto& layer : layers_) {
    CMatrix next = CMatrix::Zero(dim_, dim_);
    for (const auto& t : layer.terms) next += t.weight * apply_term(t, cur);
    cur = std::move(next);
  }
  return cur;
}

Superoperator Superoperator::adjoint() const {
  std::vector<SuperoperatorLayer> rev;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    SuperoperatorLayer layer;
    for (const auto& t : it->terms) {
      ConjugationTerm a;
      a.weight = t.weight;
      if (t.is_permutation()) {
        a.perm.resize(t.perm.size());
        for (std::size_t x = 0; x < t.perm.size(); ++x) a.perm[t.perm[x]] = static_cast<std::uint32_t>(x);
      } else {
        a.unitary = t.unitary.adjoint();
      }
      layer.terms.push_back(std::move(a));
    }
    rev.push_back(std::move(layer));
  }
  return Superoperator(dim_, std::move(rev));
}

CMatrix Superoperator::adjoint_apply(const CMatrix& x) const { return adjoint().apply(x); }

Superoperator Superoperator::then(const Superoperator& next) const {
  require(next.dim_ == dim_, ErrorKind::invalid_input, "superoperator dimension mismatch");
  auto layers = layers_;
  layers.insert(layers.end(), next.layers_.begin(), next.layers_.end());
  return Superoperator(dim_, std::move(layers));
}

std::size_t Superoperator::term_count() const {
  std::size_t c = 1;
  for (const auto& l : layers_) c *= l.terms.size();
  return c;
}

std::vector<ConjugationTerm> Superoperator::expanded_terms() const {
  std::vector<ConjugationTerm> acc{ConjugationTerm{1.0, {}, CMatrix::Identity(dim_, dim_)}};
  for (const auto& layer : layers_) {
    std::vector<ConjugationTerm> next;
    next.reserve(acc.size() * layer.terms.size());
    for (const auto& a : acc)
      for (const auto& t : layer.terms) next.push_back(ConjugationTerm{a.weight * t.weight, {}, t.dense(dim_) * a.unitary});
    acc = std::move(next);
  }
  return acc;
}

CMatrix Superoperator::dense_matrix() const {
  const std::size_t n2 = dim_ * dim_;
  CMatrix m(n2, n2);
  CMatrix e = CMatrix::Zero(dim_, dim_);
  for (std::size_t b = 0; b < dim_; ++b)
    for (std::size_t a = 0; a < dim_; ++a) {
      e(a, b) = 1.0;
      const CMatrix y = apply(e);
      m.col(a + dim_ * b) = Eigen::Map<const CVector>(y.data(), static_cast<Eigen::Index>(n2));
      e(a, b) = 0.0;
    }
  return m;
}

}  // namespace qexlab

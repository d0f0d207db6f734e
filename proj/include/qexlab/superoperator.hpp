#pragma once

#include "qexlab/linalg.hpp"

#include <cstdint>
#include <vector>

namespace qexlab {

/// One conjugation X -> w V X V^dagger. V is either a permutation
/// (V|x> = |perm[x]>) or a dense unitary.
struct ConjugationTerm {
  double weight = 0.0;
  std::vector<std::uint32_t> perm;
  CMatrix unitary;

  bool is_permutation() const { return !perm.empty(); }
  CMatrix dense(std::size_t dim) const;
};

/// Mixture of conjugations applied as a single step.
struct SuperoperatorLayer {
  std::vector<ConjugationTerm> terms;
};

/// Composition of layers, applied in list order. A one-layer superoperator is
/// the plain Kraus-like form sum_d w_d U_d X U_d^dagger; longer chains expand
/// to that form with one term per choice of a term in every layer.
class Superoperator {
 public:
  Superoperator(std::size_t dim, std::vector<SuperoperatorLayer> layers);

  static Superoperator from_terms(std::size_t dim, std::vector<ConjugationTerm> terms);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<SuperoperatorLayer>& layers() const noexcept { return layers_; }

  CMatrix apply(const CMatrix& x) const;
  CMatrix adjoint_apply(const CMatrix& x) const;
  Superoperator adjoint() const;
  /// this followed by `next`.
  Superoperator then(const Superoperator& next) const;

  /// Number of terms of the expanded form.
  std::size_t term_count() const;
  /// Expanded single-layer form with dense unitaries.
  std::vector<ConjugationTerm> expanded_terms() const;
  /// N^2 x N^2 matrix acting on column-major vec(X).
  CMatrix dense_matrix() const;

 private:
  std::size_t dim_;
  std::vector<SuperoperatorLayer> layers_;
};

CMatrix apply_term(const ConjugationTerm& t, const CMatrix& x);

}  // namespace qexlab

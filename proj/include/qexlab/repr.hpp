#pragma once

#include "qexlab/groups.hpp"
#include "qexlab/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qexlab {

/// Permutation matrix of left multiplication |x> -> |g x>.
CMatrix regular_representation(const FiniteGroup& g, Element x);

/// Index permutation x -> g x (the sparse form of the same operator).
std::vector<Element> left_permutation(const FiniteGroup& g, Element x);

struct CharacterTable {
  std::vector<std::vector<Element>> classes;  // class 0 = {e}
  std::vector<std::size_t> class_of;          // element -> class index
  CMatrix characters;                         // rows: irreps, cols: classes
  std::vector<std::size_t> dims;
  std::size_t reseeds = 0;

  std::size_t size() const { return dims.size(); }
  /// chi_r evaluated on element g.
  Complex value(std::size_t r, Element g) const { return characters(r, class_of[g]); }
};

/// Burnside class-sum method. Rows are sorted by dimension, then by
/// descending real part of the character values, so the trivial character
/// comes first.
CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed = 1);

/// max |(1/|G|) sum_g chi_r(g) conj(chi_s(g)) - delta_rs|
double character_orthogonality_residual(const FiniteGroup& g, const CharacterTable& table);

struct Irrep {
  std::string label;
  std::size_t dim = 0;
  std::vector<CMatrix> matrices;  // indexed by group element
};

struct IrrepCheck {
  double homomorphism_residual = 0.0;
  double unitarity_residual = 0.0;
  double character_norm = 0.0;  // (1/|G|) sum |tr rho(g)|^2, 1 for irreducible
  bool exhaustive = true;
};

IrrepCheck check_irrep(const FiniteGroup& g, const Irrep& irrep, std::uint64_t seed = 1);

/// (1/|H|) sum_{h in H} |tr rho(h)|^2 over a subset H (a subgroup for the
/// restriction test).
double restricted_character_norm(const Irrep& irrep, const std::vector<Element>& subgroup);

/// Closed forms for cyclic and dihedral groups, numerical isotypic splitting
/// for everything else (|G| <= 120).
std::vector<Irrep> explicit_irreps(const FiniteGroup& g, std::uint64_t seed = 1);

/// Numerical path only, regardless of family.
std::vector<Irrep> numerical_irreps(const FiniteGroup& g, const CharacterTable& table, std::uint64_t seed);

struct FourierRow {
  std::size_t rho;
  std::size_t i;
  std::size_t j;
};

struct FourierTransform {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Irrep> irreps;
  CMatrix matrix;                // F[(rho,i,j), g] = sqrt(d/N) rho_ij(g)
  std::vector<FourierRow> rows;  // row index -> (rho,i,j)
  std::vector<std::size_t> offsets;  // first row of each irrep

  std::size_t row(std::size_t rho, std::size_t i, std::size_t j) const {
    return offsets[rho] + i * irreps[rho].dim + j;
  }
};

FourierTransform fourier_transform(std::shared_ptr<const FiniteGroup> g, std::vector<Irrep> irreps);

/// Max entrywise deviation of F L(x) F^dagger from the block form
/// delta_{rho rho'} delta_{j j'} rho_{i i'}(x), maximised over all x.
double block_structure_residual(const FourierTransform& f);

/// max |sqrt(d d')/|G| sum_x rho_ij(x) conj(rho'_i'j'(x)) - delta delta delta|
double schur_orthogonality_check(const FiniteGroup& g, const std::vector<Irrep>& irreps);

std::string row_label(const FourierRow& r);

}  // namespace qexlab

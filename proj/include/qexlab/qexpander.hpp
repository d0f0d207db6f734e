#pragma once

#include "qexlab/cayley.hpp"
#include "qexlab/repr.hpp"
#include "qexlab/superoperator.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qexlab {

/// T = (1/|Gamma|) sum_gamma P_gamma . P_gamma^dagger with P_gamma|x> = |x gamma>.
Superoperator step_superoperator(const FiniteGroup& g, const GeneratingSet& gamma);

struct TEigenvalue {
  double value;
  std::size_t multiplicity;
};

struct TSpectrumCertificate {
  std::vector<TEigenvalue> eigenvalues;  // classical eigenvalues, multiplicity N each
  double eigen_residual = 0.0;           // max ||T(mu) - lambda mu||_max
  double orthonormality_residual = 0.0;  // max |<mu, mu'> - delta|
  bool exhaustive = true;                // every mu_{i,g} checked
  bool dense_checked = false;            // full N^2 x N^2 spectrum compared
  double dense_spectrum_residual = 0.0;
  bool pass = false;
};

/// Verifies that mu_{i,g} = L(g) diag(v_i) are eigen-operators of T with the
/// classical eigenvalues. The dense comparison runs when N^2 <= 1024.
TSpectrumCertificate t_spectrum_certificate(const Superoperator& t, const CayleyOperator& c,
                                            std::uint64_t seed = 1);

enum class MappingKind { abelian, dihedral, pgl2, searched };

std::string to_string(MappingKind kind);
MappingKind parse_mapping_kind(const std::string& text);

/// f(rho, i, j) = f1[rho][i] * f2[rho][j] (0-based indices).
struct ProductMapping {
  std::shared_ptr<const FiniteGroup> group;
  MappingKind kind = MappingKind::abelian;
  std::vector<std::size_t> dims;
  std::vector<std::vector<Element>> f1;
  std::vector<std::vector<Element>> f2;
  bool fallback = false;  // the requested closed form failed and a search filled in
  std::size_t search_nodes = 0;

  Element image(std::size_t rho, std::size_t i, std::size_t j) const { return group->mul(f1[rho][i], f2[rho][j]); }
};

/// True if (rho,i,j) -> f(rho,i,j) hits every group element exactly once.
bool is_bijective(const ProductMapping& f);

/// Builds the requested mapping for irreps with the given dimensions (in the
/// order of the Fourier transform rows). pgl2 needs the subgroup tower.
ProductMapping product_mapping(std::shared_ptr<const FiniteGroup> g, const std::vector<std::size_t>& dims,
                               MappingKind kind, const SubgroupTower* tower = nullptr,
                               std::size_t search_budget = 2000000);

/// Natural mapping kind for a group family.
MappingKind default_mapping(const FiniteGroup& g);

struct BasisChange {
  CMatrix u;  // U = S F
  double unitarity_residual = 0.0;
};

/// U[f(rho,i,j), :] = omega_d^{(i+1)(j+1)} F[(rho,i,j), :], omega_d = exp(2 pi i / d).
BasisChange basis_change(const FourierTransform& f, const ProductMapping& mapping);

struct GoodBasisReport {
  double max_residual = 0.0;
  Element worst_g1 = 0;
  Element worst_g2 = 0;
  bool pass = false;
};

/// max over g1 != e and all g2 of |Tr(U L(g1) U^dagger L(g2))|.
GoodBasisReport good_basis_check(const CMatrix& u, const FiniteGroup& g, double tolerance = 1e-7);

/// E(rho) = T(U T(rho) U^dagger).
Superoperator expander(const Superoperator& t, const CMatrix& u);

enum class GapMethod { automatic, dense, lanczos, power };

std::string to_string(GapMethod m);

struct GapReport {
  double sigma2 = 0.0;
  GapMethod method = GapMethod::dense;
  std::size_t iterations = 0;
  double residual = 0.0;  // relative residual of the reported singular triplet
};

/// Largest singular value of P E P with P(X) = X - Tr(X)/N I.
GapReport spectral_gap(const Superoperator& e, GapMethod method = GapMethod::automatic, std::uint64_t seed = 1,
                       std::size_t iteration_cap = 100000);

struct RegularityReport {
  bool pass = false;
  std::size_t degree = 0;
  double weight_spread = 0.0;
  double unitarity_residual = 0.0;
};

RegularityReport regularity_check(const Superoperator& e);

struct LowerBoundVerdict {
  double bound = 0.0;   // 2 / (3 sqrt(3 D))
  double margin = 0.0;  // sigma2 - bound
  bool vacuous = false; // floor(N delta^2 / D) < 1 at delta = 1/sqrt(3)
  bool pass = false;    // holds, or vacuous
};

LowerBoundVerdict lower_bound_check(std::size_t degree, double sigma2, std::size_t dim);

/// Everything the expander pipeline builds for one (G, Gamma).
struct ExpanderBuild {
  std::shared_ptr<const FiniteGroup> group;
  std::optional<SubgroupTower> tower;
  GeneratingSet generators;
  CayleyOperator cayley;
  SpectrumReport classical;
  FourierTransform fourier;
  ProductMapping mapping;
  BasisChange basis;
  Superoperator t;
  Superoperator e;
};

ExpanderBuild build_expander(std::shared_ptr<const FiniteGroup> g, std::optional<SubgroupTower> tower,
                             const GeneratingSet& gamma, MappingKind kind, std::uint64_t seed);

/// First seed from `seed` upward whose random_symmetric_generators(k) give a
/// connected, non-bipartite Cayley graph.
GeneratingSet expanding_generators(const FiniteGroup& g, std::size_t k, std::uint64_t seed,
                                   std::uint64_t* used_seed = nullptr);

}  // namespace qexlab

#pragma once

#include "qexlab/groups.hpp"
#include "qexlab/linalg.hpp"

#include <array>
#include <memory>
#include <optional>

namespace qexlab {

/// Normalized adjacency operator M = (1/|Gamma|) sum_gamma |x gamma><x| of the
/// Cayley graph C(G, Gamma). Generators act from the right.
struct CayleyOperator {
  std::shared_ptr<const FiniteGroup> group;
  GeneratingSet generators;
  RMatrix matrix;
};

/// Permutation x -> x * gamma.
std::vector<Element> right_multiplication(const FiniteGroup& g, Element gamma);

/// Permutation x -> gamma * x.
std::vector<Element> left_multiplication(const FiniteGroup& g, Element gamma);

CayleyOperator cayley_operator(std::shared_ptr<const FiniteGroup> g, const GeneratingSet& gamma);

/// Eigen-decomposition of a Cayley operator.
struct SpectrumReport {
  RVector eigenvalues;  // descending
  double lambda_bar = 0.0;  // max_{i>1} |lambda_i|
  std::optional<RMatrix> eigenvectors;  // orthonormal columns, matching `eigenvalues`
};

SpectrumReport spectrum(const CayleyOperator& c, bool with_vectors = false);

/// max_{i>1} |lambda_i| ignoring a single trivial eigenvalue -1 when the graph
/// is bipartite.
double lambda_bar_nontrivial(const SpectrumReport& report, bool bipartite);

bool is_connected(const FiniteGroup& g, const GeneratingSet& gamma);
bool is_bipartite(const FiniteGroup& g, const GeneratingSet& gamma);

/// LPS generators of degree p+1 over PGL(2,q), or over PSL(2,q) when p is a
/// quadratic residue mod q.
struct LpsGenerators {
  std::shared_ptr<const FiniteGroup> group;
  GeneratingSet generators;
  bool on_psl = false;
  std::uint32_t p = 0;
  std::uint32_t q = 0;
};

/// Integer solutions of a^2+b^2+c^2+d^2 = p with a odd positive and b, c, d even.
std::vector<std::array<int, 4>> lps_quaternions(std::uint32_t p);

LpsGenerators lps_generators(std::uint32_t p, std::uint32_t q);

struct RamanujanVerdict {
  bool pass = false;
  double threshold = 0.0;  // 2 sqrt(D-1) / D
  double margin = 0.0;     // threshold - lambda_bar
};

RamanujanVerdict ramanujan_check(double lambda_bar, std::size_t degree);

}  // namespace qexlab

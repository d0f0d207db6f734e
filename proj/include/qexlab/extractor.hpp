#pragma once

#include "qexlab/density.hpp"
#include "qexlab/superoperator.hpp"

#include <cstdint>
#include <vector>

namespace qexlab {

/// Entropies in bits of a probability vector or density matrix spectrum.
struct EntropyReport {
  double von_neumann = 0.0;
  double renyi2 = 0.0;
  double min_entropy = 0.0;
  RVector eigenvalues;  // descending, clipped at zero
};

EntropyReport spectrum_entropies(const RVector& probabilities);
EntropyReport entropies(const DensityMatrix& rho);

/// Shannon entropy in bits; zero entries contribute nothing.
double shannon_entropy(const RVector& p);
double binary_entropy(double p);
/// von Neumann entropy in bits of a (not re-validated) Hermitian matrix.
double von_neumann_entropy(const CMatrix& rho);

struct ExtractorParams {
  double epsilon = 0.0;  // 2^{t/2} lambda_bar
  bool vacuous = false;  // epsilon >= 1: no trace-distance content
};

ExtractorParams expander_to_extractor_params(double lambda_bar, double t);

struct ExtractorCheck {
  double k = 0.0;
  std::size_t support = 0;      // rank of the flat test states, ceil(2^k)
  double epsilon = 0.0;
  double worst_distance = 0.0;  // max trace distance of E(rho) to I/N
  std::size_t samples = 0;
  bool pass = false;
};

/// Samples flat states of min-entropy >= k (random subspaces, classical
/// subsets, and a flat state aligned with the slowest-decaying operator of E)
/// and checks 1/2 ||E(rho) - I/N||_1 <= epsilon. E must be 2^d-regular.
ExtractorCheck extractor_check(const Superoperator& e, double k, double epsilon, std::size_t trials, std::uint64_t seed);

struct EntropyGrowth {
  double before = 0.0;
  double after = 0.0;
  double d = 0.0;  // log2 of the degree
  bool pass = false;
};

/// S(E(rho)) <= S(rho) + log2 D.
EntropyGrowth entropy_growth_check(const Superoperator& e, const DensityMatrix& rho);

struct RankExperiment {
  std::size_t dim = 0;
  std::size_t degree = 0;
  double delta = 0.0;
  double sigma2 = 0.0;
  std::size_t input_rank = 0;
  std::size_t output_rank = 0;
  double distance = 0.0;     // 1/2 ||E(rho) - I/N||_1
  double rank_lower = 0.0;   // (1 - 2^{d/2} sigma2 / delta) N
  double rank_upper = 0.0;   // N delta^2
  bool lower_holds = false;
  bool upper_holds = false;
  bool degree_bound_holds = false;  // rank E(rho) <= D rank(rho)
};

/// Flat classical input of rank floor(N delta^2 / D) pushed through E.
RankExperiment rank_experiment(const Superoperator& e, double sigma2, double delta);

bool is_power_of_two(std::size_t x);

}  // namespace qexlab

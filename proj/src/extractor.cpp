#include "qexlab/extractor.hpp"

#include "qexlab/error.hpp"
#include "qexlab/qexpander.hpp"
#include "qexlab/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qexlab {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

double shannon_entropy(const RVector& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) h -= p(i) * std::log2(p(i));
  return h;
}

double binary_entropy(double p) {
  RVector v(2);
  v << p, 1.0 - p;
  return shannon_entropy(v.cwiseMax(0.0));
}

double von_neumann_entropy(const CMatrix& rho) {
  return shannon_entropy(hermitian_eigenvalues(0.5 * (rho + rho.adjoint())).cwiseMax(0.0));
}

EntropyReport spectrum_entropies(const RVector& probabilities) {
  EntropyReport r;
  r.eigenvalues = probabilities.cwiseMax(0.0);
  std::sort(r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size(), std::greater<>());
  r.von_neumann = shannon_entropy(r.eigenvalues);
  const double col = r.eigenvalues.squaredNorm();
  r.renyi2 = col > 0 ? -std::log2(col) : 0.0;
  r.min_entropy = r.eigenvalues.size() && r.eigenvalues(0) > 0 ? -std::log2(r.eigenvalues(0)) : 0.0;
  return r;
}

EntropyReport entropies(const DensityMatrix& rho) { return spectrum_entropies(rho.spectrum()); }

ExtractorParams expander_to_extractor_params(double lambda_bar, double t) {
  require(t > 0, ErrorKind::invalid_input, "t must be positive");
  ExtractorParams p;
  p.epsilon = std::pow(2.0, t / 2.0) * lambda_bar;
  p.vacuous = p.epsilon >= 1.0;
  return p;
}

namespace {

std::size_t flat_support(double k, std::size_t n) {
  const double s = std::ceil(std::pow(2.0, k) - 1e-9);
  require(s >= 1.0 && s <= static_cast<double>(n), ErrorKind::invalid_input,
          "min-entropy " + std::to_string(k) + " is out of range for dimension " + std::to_string(n));
  return static_cast<std::size_t>(s);
}

CMatrix flat_on(const CMatrix& basis_cols) {
  return basis_cols * basis_cols.adjoint() / static_cast<double>(basis_cols.cols());
}

// Hermitian operator that E shrinks the least, by a few power steps on E^dagger E.
CMatrix slow_direction(const Superoperator& e, std::uint64_t seed) {
  const std::size_t n = e.dim();
  Rng rng(seed);
  CMatrix x = random_complex_matrix(n, n, rng);
  x = 0.5 * (x + x.adjoint());
  const Superoperator adj = e.adjoint();
  for (int it = 0; it < 60; ++it) {
    x.diagonal().array() -= x.trace() / static_cast<double>(n);
    x = adj.apply(e.apply(x));
    x.diagonal().array() -= x.trace() / static_cast<double>(n);
    const double nrm = x.norm();
    if (nrm < 1e-300) break;
    x /= nrm;
  }
  return 0.5 * (x + x.adjoint());
}

}  // namespace

ExtractorCheck extractor_check(const Superoperator& e, double k, double epsilon, std::size_t trials,
                               std::uint64_t seed) {
  const auto reg = regularity_check(e);
  require(reg.pass, ErrorKind::precondition, "extractor check needs a regular superoperator");
  require(is_power_of_two(reg.degree), ErrorKind::precondition, "extractor check needs degree 2^d");
  const std::size_t n = e.dim();
  ExtractorCheck c;
  c.k = k;
  c.epsilon = epsilon;
  c.support = flat_support(k, n);
  const CMatrix mixed = CMatrix::Identity(n, n) / static_cast<double>(n);
  auto probe = [&](const CMatrix& rho) {
    c.worst_distance = std::max(c.worst_distance, trace_distance(e.apply(rho), mixed));
    ++c.samples;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    if (t % 2 == 0) {
      probe(flat_on(random_unitary(n, rng).leftCols(static_cast<Eigen::Index>(c.support))));
    } else {
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      CMatrix cols = CMatrix::Zero(n, c.support);
      for (std::size_t i = 0; i < c.support; ++i) cols(idx[i], i) = 1.0;
      probe(flat_on(cols));
    }
  }
  // Classical prefix and the flat state on the top eigenvectors of the slowest direction.
  probe(flat_on(CMatrix::Identity(n, n).leftCols(static_cast<Eigen::Index>(c.support))));
  const CMatrix slow = slow_direction(e, derive_seed(seed, trials + 1));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(slow);
  probe(flat_on(es.eigenvectors().rightCols(static_cast<Eigen::Index>(c.support))));
  probe(flat_on(es.eigenvectors().leftCols(static_cast<Eigen::Index>(c.support))));
  c.pass = c.worst_distance <= epsilon + 1e-7;
  return c;
}

EntropyGrowth entropy_growth_check(const Superoperator& e, const DensityMatrix& rho) {
  const auto reg = regularity_check(e);
  require(reg.pass, ErrorKind::precondition, "entropy growth check needs a regular superoperator");
  EntropyGrowth g;
  g.d = std::log2(static_cast<double>(reg.degree));
  g.before = von_neumann_entropy(rho.matrix());
  g.after = von_neumann_entropy(e.apply(rho.matrix()));
  g.pass = g.after <= g.before + g.d + 1e-7;
  return g;
}

RankExperiment rank_experiment(const Superoperator& e, double sigma2, double delta) {
  require(delta > 0 && delta <= 1, ErrorKind::invalid_input, "delta must lie in (0, 1]");
  const auto reg = regularity_check(e);
  require(reg.pass, ErrorKind::precondition, "rank experiment needs a regular superoperator");
  RankExperiment r;
  r.dim = e.dim();
  r.degree = reg.degree;
  r.delta = delta;
  r.sigma2 = sigma2;
  const double n = static_cast<double>(r.dim);
  const double support = std::floor(n * delta * delta / static_cast<double>(r.degree) + 1e-9);
  require(support >= 1.0, ErrorKind::precondition, "empty support: N delta^2 / D < 1");
  r.input_rank = static_cast<std::size_t>(support);
  CMatrix rho = CMatrix::Zero(r.dim, r.dim);
  for (std::size_t i = 0; i < r.input_rank; ++i) rho(i, i) = 1.0 / support;
  const CMatrix out = e.apply(rho);
  r.output_rank = numerical_rank(out, tol::numerical_rank);
  r.distance = trace_distance(out, CMatrix::Identity(r.dim, r.dim) / n);
  const double d = std::log2(static_cast<double>(r.degree));
  r.rank_lower = (1.0 - std::pow(2.0, d / 2.0) * sigma2 / delta) * n;
  r.rank_upper = n * delta * delta;
  r.lower_holds = static_cast<double>(r.output_rank) >= r.rank_lower - 1e-9;
  r.upper_holds = static_cast<double>(r.output_rank) <= r.rank_upper + 1e-9;
  r.degree_bound_holds = r.output_rank <= r.degree * r.input_rank;
  return r;
}

}  // namespace qexlab

#include "qexlab/cayley.hpp"

#include "qexlab/error.hpp"
#include "qexlab/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace qexlab {

std::vector<Element> right_multiplication(const FiniteGroup& g, Element gamma) {
  std::vector<Element> perm(g.order());
  for (Element x = 0; x < g.order(); ++x) perm[x] = g.mul(x, gamma);
  return perm;
}

std::vector<Element> left_multiplication(const FiniteGroup& g, Element gamma) {
  std::vector<Element> perm(g.order());
  for (Element x = 0; x < g.order(); ++x) perm[x] = g.mul(gamma, x);
  return perm;
}

CayleyOperator cayley_operator(std::shared_ptr<const FiniteGroup> g, const GeneratingSet& gamma) {
  require(g != nullptr, ErrorKind::invalid_input, "null group");
  require(!gamma.elements.empty(), ErrorKind::invalid_input, "empty generating set");
  require(is_inverse_closed(*g, gamma), ErrorKind::invalid_input, "generating set is not closed under inverse");
  const std::size_t n = g->order();
  CayleyOperator c{g, gamma, RMatrix::Zero(n, n)};
  const double w = 1.0 / static_cast<double>(gamma.degree());
  for (auto y : gamma.elements)
    for (Element x = 0; x < n; ++x) c.matrix(g->mul(x, y), x) += w;
  return c;
}

SpectrumReport spectrum(const CayleyOperator& c, bool with_vectors) {
  const RMatrix& m = c.matrix;
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= tol::symmetric, ErrorKind::precondition,
          "Cayley operator is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::numerical, "symmetric eigensolver did not converge");
  // Eigen returns ascending order.
  const Eigen::Index n = m.rows();
  SpectrumReport r;
  r.eigenvalues = es.eigenvalues().reverse();
  if (with_vectors) r.eigenvectors = es.eigenvectors().rowwise().reverse();
  r.lambda_bar = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) r.lambda_bar = std::max(r.lambda_bar, std::abs(r.eigenvalues(i)));
  return r;
}

double lambda_bar_nontrivial(const SpectrumReport& report, bool bipartite) {
  const Eigen::Index n = report.eigenvalues.size();
  const Eigen::Index last = bipartite ? n - 1 : n;
  double lb = 0.0;
  for (Eigen::Index i = 1; i < last; ++i) lb = std::max(lb, std::abs(report.eigenvalues(i)));
  return lb;
}

namespace {

// BFS two-colouring of the undirected graph x -- x*gamma. Colour -1 = unseen.
std::vector<int> bfs_colouring(const FiniteGroup& g, const GeneratingSet& gamma, bool& bipartite) {
  std::vector<int> colour(g.order(), -1);
  bipartite = true;
  std::queue<Element> queue;
  colour[g.identity()] = 0;
  queue.push(g.identity());
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop();
    for (auto y : gamma.elements) {
      const Element z = g.mul(x, y);
      if (colour[z] < 0) {
        colour[z] = 1 - colour[x];
        queue.push(z);
      } else if (colour[z] == colour[x]) {
        bipartite = false;
      }
    }
  }
  return colour;
}

}  // namespace

bool is_connected(const FiniteGroup& g, const GeneratingSet& gamma) {
  bool bip = false;
  const auto colour = bfs_colouring(g, gamma, bip);
  return std::none_of(colour.begin(), colour.end(), [](int c) { return c < 0; });
}

bool is_bipartite(const FiniteGroup& g, const GeneratingSet& gamma) {
  // Cayley graphs are vertex transitive, so the component of e decides.
  bool bip = false;
  bfs_colouring(g, gamma, bip);
  return bip;
}

std::vector<std::array<int, 4>> lps_quaternions(std::uint32_t p) {
  std::vector<std::array<int, 4>> out;
  const int bound = static_cast<int>(std::sqrt(static_cast<double>(p))) + 1;
  for (int a = 1; a <= bound; a += 2)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        for (int d = -bound; d <= bound; ++d) {
          if (b % 2 != 0 || c % 2 != 0 || d % 2 != 0) continue;
          if (a * a + b * b + c * c + d * d == static_cast<int>(p)) out.push_back({a, b, c, d});
        }
  return out;
}

LpsGenerators lps_generators(std::uint32_t p, std::uint32_t q) {
  require(is_prime(p) && is_prime(q) && p != q && p % 2 == 1 && q % 2 == 1, ErrorKind::invalid_input,
          "LPS needs distinct odd primes p, q");
  require(p % 4 == 1 && q % 4 == 1, ErrorKind::invalid_input, "LPS needs p = q = 1 mod 4");
  require(static_cast<double>(q) > 2.0 * std::sqrt(static_cast<double>(p)), ErrorKind::invalid_input,
          "LPS needs q > 2 sqrt(p)");

  LpsGenerators out;
  out.p = p;
  out.q = q;
  out.on_psl = legendre_symbol(p, q) == 1;
  std::vector<ProjectiveMat2> elements;
  const std::size_t cap = std::size_t{q} * q * q;
  if (out.on_psl) {
    auto psl = make_psl2(q, cap);
    out.group = psl.group;
    elements = std::move(psl.elements);
  } else {
    auto pgl = make_pgl2(q, cap);
    out.group = pgl.group;
    elements = std::move(pgl.elements);
  }

  const std::int64_t i = sqrt_minus_one(q);
  const std::int64_t qq = q;
  auto mod = [qq](std::int64_t v) { return static_cast<std::uint32_t>(((v % qq) + qq) % qq); };
  for (const auto& [a, b, c, d] : lps_quaternions(p)) {
    ProjectiveMat2 m(mod(a + i * b), mod(c + i * d), mod(-c + i * d), mod(a - i * b), q);
    auto idx = find_element(elements, m);
    require(idx.has_value(), ErrorKind::numerical, "LPS generator outside the expected group");
    out.generators.elements.push_back(*idx);
  }
  require(out.generators.degree() == p + 1, ErrorKind::numerical,
          "expected p+1 LPS generators, found " + std::to_string(out.generators.degree()));
  require(is_inverse_closed(*out.group, out.generators), ErrorKind::numerical, "LPS generators not inverse-closed");
  return out;
}

RamanujanVerdict ramanujan_check(double lambda_bar, std::size_t degree) {
  require(degree >= 3, ErrorKind::precondition, "Ramanujan check needs degree >= 3");
  RamanujanVerdict v;
  const double d = static_cast<double>(degree);
  v.threshold = 2.0 * std::sqrt(d - 1.0) / d;
  v.margin = v.threshold - lambda_bar;
  v.pass = lambda_bar <= v.threshold + tol::ramanujan;
  return v;
}

}  // namespace qexlab

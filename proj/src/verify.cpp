#include "qexlab/verify.hpp"

#include "qexlab/cayley.hpp"
#include "qexlab/channel.hpp"
#include "qexlab/extractor.hpp"
#include "qexlab/groups.hpp"
#include "qexlab/qexpander.hpp"
#include "qexlab/qszk.hpp"
#include "qexlab/repr.hpp"

#include <cmath>

namespace qexlab {

namespace {

class Suite {
 public:
  Suite(VerifySummary& s) : s_(s) {}

  // value <= default tolerance (or the override)
  void residual(const std::string& module, const std::string& op, const std::string& measure, double value,
                double default_tol) {
    const double tol = s_.tolerance.value_or(default_tol);
    s_.checks.push_back({module, op, measure, value, tol, "<=", value <= tol});
  }
  // value <= bound + slack
  void at_most(const std::string& module, const std::string& op, const std::string& measure, double value,
               double bound, double slack) {
    const double thr = bound + s_.tolerance.value_or(slack);
    s_.checks.push_back({module, op, measure, value, thr, "<=", value <= thr});
  }
  void at_least(const std::string& module, const std::string& op, const std::string& measure, double value,
                double bound, double slack) {
    const double thr = bound - s_.tolerance.value_or(slack);
    s_.checks.push_back({module, op, measure, value, thr, ">=", value >= thr});
  }
  void flag(const std::string& module, const std::string& op, const std::string& measure, bool ok) {
    s_.checks.push_back({module, op, measure, ok ? 1.0 : 0.0, 1.0, ">=", ok});
  }

 private:
  VerifySummary& s_;
};

std::shared_ptr<const FiniteGroup> shared(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

}  // namespace

VerifySummary verify_all(std::uint64_t seed, std::optional<double> tolerance) {
  VerifySummary s;
  s.seed = seed;
  s.tolerance = tolerance;
  Suite v(s);

  // groups
  auto c8 = shared(make_cyclic(8));
  auto d7 = shared(make_dihedral(7));
  auto pgl3 = make_pgl2(3, 1000);
  v.flag("groups", "check_group_axioms", "cyclic:8", check_group_axioms(*c8, seed).ok());
  v.flag("groups", "check_group_axioms", "dihedral:7", check_group_axioms(*d7, seed).ok());
  v.flag("groups", "check_group_axioms", "pgl2:3", check_group_axioms(*pgl3.group, seed).ok());

  // cayley
  {
    auto c3 = shared(make_cyclic(3));
    GeneratingSet g{{1, 2}};
    auto rep = spectrum(cayley_operator(c3, g));
    v.residual("cayley", "spectrum", "cyclic:3 {1,2} |lambda_bar - 1/2|", std::abs(rep.lambda_bar - 0.5), 1e-12);
  }

  // repr
  {
    auto table = character_table(*pgl3.group, seed);
    v.residual("repr", "character_table", "pgl2:3 orthogonality", character_orthogonality_residual(*pgl3.group, table),
               1e-9);
    auto irreps = explicit_irreps(*pgl3.group, seed);
    v.residual("repr", "explicit_irreps", "pgl2:3 Schur orthogonality", schur_orthogonality_check(*pgl3.group, irreps),
               1e-9);
    auto f = fourier_transform(pgl3.group, irreps);
    v.residual("repr", "fourier_transform", "pgl2:3 unitarity", unitarity_residual(f.matrix), 1e-9);
    v.residual("repr", "fourier_transform", "pgl2:3 block structure", block_structure_residual(f), 1e-8);
  }

  // qexpander
  {
    auto z5 = shared(make_cyclic(5));
    GeneratingSet g{{1, 4}};
    auto c = cayley_operator(z5, g);
    auto cert = t_spectrum_certificate(step_superoperator(*z5, g), c, seed);
    v.residual("qexpander", "t_spectrum_certificate", "cyclic:5 eigen residual", cert.eigen_residual, 1e-7);
    v.residual("qexpander", "t_spectrum_certificate", "cyclic:5 dense spectrum residual",
               cert.dense_spectrum_residual, 1e-7);

    std::uint64_t used = 0;
    auto gamma = expanding_generators(*d7, 4, seed, &used);
    auto build = build_expander(d7, std::nullopt, gamma, MappingKind::dihedral, seed);
    v.residual("qexpander", "good_basis_check", "dihedral:7", good_basis_check(build.basis.u, *d7).max_residual, 1e-7);
    const auto gap = spectral_gap(build.e, GapMethod::automatic, seed);
    v.at_most("qexpander", "spectral_gap", "dihedral:7 sigma2 <= lambda_bar", gap.sigma2, build.classical.lambda_bar,
              1e-7);
    const auto lb = lower_bound_check(gamma.degree() * gamma.degree(), gap.sigma2, d7->order());
    v.flag("qexpander", "lower_bound_check", "dihedral:7", lb.pass);
    const auto reg = regularity_check(build.e);
    v.flag("qexpander", "regularity_check", "dihedral:7", reg.pass);
  }

  // extractor
  {
    GeneratingSet all;
    for (Element x = 0; x < c8->order(); ++x) all.elements.push_back(x);
    auto build = build_expander(c8, std::nullopt, all, MappingKind::abelian, seed);
    const auto gap = spectral_gap(build.e, GapMethod::automatic, seed);
    v.residual("extractor", "spectral_gap", "cyclic:8 Gamma=G sigma2", gap.sigma2, 1e-8);
    const double eps = expander_to_extractor_params(gap.sigma2, 2.0).epsilon;
    const auto chk = extractor_check(build.e, 1.0, eps, 8, seed);
    v.at_most("extractor", "extractor_check", "cyclic:8 worst distance", chk.worst_distance, eps, 1e-7);
    Rng rng(derive_seed(seed, 11));
    const auto growth = entropy_growth_check(build.e, DensityMatrix(random_density(8, rng)));
    v.flag("extractor", "entropy_growth_check", "cyclic:8 random input", growth.pass);
  }

  // qszk
  {
    RVector base(2);
    base << 0.75, 0.25;
    const auto flat = flatness_report(base, 64, {1.0, 2.0, 3.0});
    for (const auto& row : flat.rows)
      v.at_least("qszk", "flatness_report", "typical mass t=" + std::to_string(static_cast<int>(row.t)),
                 row.typical_mass, row.bound, 1e-12);
    const auto grid = entropy_distance_grid(3, 64);
    v.flag("qszk", "entropy_distance_bound", "n=3 grid step 1/64", grid.pass);
    const auto ext = entropy_distance_bound(extremal_state(3, 0.3), 0.3);
    v.residual("qszk", "entropy_distance_bound", "extremal family",
               std::abs(ext.distance - (0.3 + 0.7 / 8.0 - 1.0 / 8.0)), 1e-12);

    const auto phi = to_nnf(parse_formula("(v1 & !v2) | (v3 & (v1 | v2))"));
    const Assignment yes{{1, Tri::one}, {2, Tri::zero}, {3, Tri::zero}};
    const auto bc = build_circuit_check(phi, yes, 8);
    v.at_least("qszk", "build_circuit", "YES Delta", bc.delta, 2.0 / 3.0, 0.0);
    double product = 0.0;
    for (const auto& row : bc.rows) product = std::max(product, row.product_residual);
    v.residual("qszk", "build_circuit", "AND multiplicativity", product, 1e-9);

    auto [a0, a1] = qubit_pair_at_distance(1.0);
    auto [b0, b1] = qubit_pair_at_distance(0.0);
    const auto far = qsd_to_qed(tensor({a0, a0, a0}), tensor({a1, a1, a1}), 8);
    v.at_most("qszk", "qsd_to_qed", "far gap", far.gap, -0.8, 0.0);
    const auto near = qsd_to_qed(tensor({b0, a0, a1}), tensor({b1, a0, a1}), 8);
    v.at_least("qszk", "qsd_to_qed", "near gap", near.gap, 0.8, 0.0);

    Rng rng(derive_seed(seed, 23));
    const DensityMatrix r0(random_density(2, rng)), r1(random_density(2, rng));
    const auto ineq = inequality_checks(r0, r1, {0.5, 0.5});
    v.residual("qszk", "inequality_checks", "joint entropy", std::abs(ineq.joint_lhs - ineq.joint_rhs), 1e-8);
    v.at_least("qszk", "inequality_checks", "Holevo-type bound", ineq.holevo_lhs, ineq.holevo_rhs, 1e-8);
    v.residual("qszk", "inequality_checks", "Helstrom success",
               std::abs(ineq.helstrom_success - ineq.helstrom_expected), 1e-8);
  }

  s.pass = true;
  for (const auto& c : s.checks) s.pass = s.pass && c.pass;
  return s;
}

}  // namespace qexlab

#pragma once

#include "qexlab/channel.hpp"
#include "qexlab/density.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qexlab {

// ---------------------------------------------------------------------------
// Flattening

struct FlatnessRow {
  double t = 0.0;
  double typical_mass = 0.0;
  double bound = 0.0;  // 1 - 2^{-t^2 + 1}
  bool pass = false;
};

struct FlatnessReport {
  std::size_t k = 0;
  double m = 0.0;      // max -log2 of a non-zero base eigenvalue
  double delta = 0.0;  // sqrt(k) m
  double entropy = 0.0;
  std::size_t classes = 0;  // distinct eigenvalue classes of rho^{(x)k}
  std::vector<FlatnessRow> rows;
  bool pass = false;
};

/// Exact tally over compositions of k; rho^{(x)k} is never materialised.
FlatnessReport flatness_report(const RVector& base_spectrum, std::size_t k, const std::vector<double>& t_values);
FlatnessReport flatness_report(const DensityMatrix& rho, std::size_t k, const std::vector<double>& t_values);

// ---------------------------------------------------------------------------
// Entropy versus distance to the maximally mixed state

struct EntropyDistanceVerdict {
  std::size_t qubits = 0;
  double entropy = 0.0;
  double distance = 0.0;  // 1/2 ||rho - I/2^n||_1
  double epsilon = 0.0;
  double bound = 0.0;     // epsilon - 2^{-n}
  bool premise = false;   // S <= (1 - epsilon) n
  bool pass = false;      // premise implies distance >= bound
};

EntropyDistanceVerdict entropy_distance_bound(const DensityMatrix& rho, double epsilon);

/// Mass epsilon on one basis state, the rest uniform.
DensityMatrix extremal_state(std::size_t qubits, double epsilon);

struct EntropyDistanceGrid {
  std::size_t qubits = 0;
  std::size_t step_denominator = 0;
  std::size_t spectra = 0;
  std::size_t counterexamples = 0;
  double worst_margin = 0.0;  // min over spectra of distance - (1 - S/n - 2^{-n})
  bool pass = false;
};

/// Every diagonal spectrum with entries in (1/denominator) Z, each checked at
/// the largest epsilon its entropy admits.
EntropyDistanceGrid entropy_distance_grid(std::size_t qubits, std::size_t denominator);

struct LocalChange {
  double before = 0.0;
  double after = 0.0;
  bool pass = false;
};

/// Moves epsilon from lambda_j onto lambda_1 (j is 1-based, j > 1) and checks
/// that the entropy does not increase.
LocalChange local_change_check(const RVector& spectrum, std::size_t j, double epsilon);

// ---------------------------------------------------------------------------
// Three-valued formulas

enum class Tri { zero, one, star };

std::string to_string(Tri v);
Tri parse_tri(const std::string& text);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Op { var, neg, conj, disj };
  Op op = Op::var;
  std::size_t var = 0;  // variable index for Op::var
  FormulaPtr a;
  FormulaPtr b;
};

FormulaPtr fvar(std::size_t index);
FormulaPtr fneg(FormulaPtr a);
FormulaPtr fand(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);

/// Grammar: or := and ('|' and)*, and := unary ('&' unary)*,
/// unary := '!' unary | '(' or ')' | 'v' digits.
FormulaPtr parse_formula(const std::string& text);
std::string to_string(const Formula& f);

/// Negations pushed onto variables.
FormulaPtr to_nnf(const FormulaPtr& f);
bool is_nnf(const Formula& f);
/// Literals plus binary connectives (negated variables count as one literal).
std::size_t formula_size(const Formula& f);
std::size_t connective_count(const Formula& f);
std::vector<std::size_t> formula_variables(const Formula& f);

using Assignment = std::map<std::size_t, Tri>;

Tri eval_formula(const Formula& f, const Assignment& a);

// ---------------------------------------------------------------------------
// Formula closure

/// Pair of circuits for one literal: (Y^0, Y^1) for v, (Z^0, Z^1) for not v.
struct LeafPair {
  ChannelExpression y0, y1;
  ChannelExpression z0, z1;
};

/// One-qubit pure pair at trace distance d.
std::pair<ChannelExpression, ChannelExpression> qubit_pair_at_distance(double d);

/// Leaves already polarised to m0: a 1-variable has Y far (1 - 2^{-m0}) and Z
/// near (2^{-m0}), a 0-variable the reverse, a star-variable both at 1/2.
LeafPair polarized_leaf(Tri value, std::size_t m0);

struct BuildCircuitResult {
  ChannelExpression expr;
  std::vector<std::array<std::size_t, 2>> roots;  // per subformula: node of BC(psi, 0), BC(psi, 1)
  std::vector<FormulaPtr> subformulas;           // post-order, last is the whole formula
};

/// The recursive construction, memoised on (subformula, b).
BuildCircuitResult build_circuit(const FormulaPtr& phi, const std::map<std::size_t, LeafPair>& leaves);

/// Output of BC(phi, b) alone.
ChannelExpression build_circuit(const FormulaPtr& phi, int b, const std::map<std::size_t, LeafPair>& leaves);

struct SubformulaRow {
  std::string text;
  std::size_t size = 0;
  Tri value = Tri::star;
  double delta = 0.0;
  double bound = 0.0;          // 1 - |psi|/(3|phi|) for value 1, |psi|/(3|phi|) for value 0
  double product_residual = 0.0;  // |Delta - Delta_a Delta_b| on conjunctions
  bool or_bounds = true;          // max(Delta_a, Delta_b) <= Delta <= Delta_a + Delta_b on disjunctions
  bool pass = false;
};

struct BuildCircuitReport {
  std::string formula;
  std::size_t size = 0;
  std::size_t nodes = 0;
  std::size_t qubits = 0;
  Tri value = Tri::star;
  double delta = 0.0;
  Tri verdict = Tri::star;  // 1 if Delta > 2/3, 0 if Delta < 1/3, star otherwise
  std::vector<SubformulaRow> rows;
  bool pass = false;
};

/// Builds the circuit for `phi` over polarised leaves for `a` and checks the
/// inductive bounds on every subformula. Non-NNF input is rejected.
BuildCircuitReport build_circuit_check(const FormulaPtr& phi, const Assignment& a, std::size_t m0 = 8);

// ---------------------------------------------------------------------------
// Reductions

enum class PolarizeMode { identity, tensor_power, full };

std::string to_string(PolarizeMode m);
PolarizeMode parse_polarize_mode(const std::string& text);

/// identity returns the inputs, tensor_power k copies of each; full
/// polarisation is not provided.
std::pair<ChannelExpression, ChannelExpression> polarize(const ChannelExpression& q0, const ChannelExpression& q1,
                                                         PolarizeMode mode, std::size_t copies = 1);

struct QsdToQed {
  ChannelExpression z0;     // coin traced out
  ChannelExpression z1;     // coin kept
  ChannelExpression left;   // Z0 (x) Z0 (x) C
  ChannelExpression right;  // Z1 (x) Z1
  double distance = 0.0;    // trace distance of R0, R1
  bool far = false;
  double s_z0 = 0.0;
  double s_z1 = 0.0;
  double s_left = 0.0;
  double s_right = 0.0;
  double gap = 0.0;         // S(right) - S(left)
  double margin = 0.8;
  bool pass = false;        // far: gap <= -margin, near: gap >= margin
};

/// Distances strictly between 2^{-m0} and 1 - 2^{-m0} are rejected.
QsdToQed qsd_to_qed(const ChannelExpression& r0, const ChannelExpression& r1, std::size_t m0 = 8);

/// Plain QEA membership with the 1/2 promise gap: 1 if S >= t + 1/2,
/// 0 if S <= t - 1/2, star otherwise.
Tri qea_membership(double entropy, double t);

struct QedToFormula {
  std::size_t n = 0;          // output qubits per circuit
  double s0 = 0.0;
  double s1 = 0.0;
  double s_xi0 = 0.0;         // 6 S0
  double s_xi1 = 0.0;
  double additivity_residual = 0.0;
  std::string promise;        // "yes", "no" or "violated"
  std::string formula;
  Assignment assignment;      // v_{2(t-1)+b+1} = [(xi_b, t) in QEA]
  Tri value = Tri::star;
  bool pass = false;          // yes -> 1, no -> 0, violated -> anything (flagged)
};

QedToFormula qed_to_formula(const ChannelExpression& q0, const ChannelExpression& q1);

struct QeaToQsdParams {
  double epsilon = 1.0 / 256.0;
  std::size_t copies = 2;
  double c0 = 2.0;                        // pinned O(1) of the seed length
  std::optional<std::size_t> seed_bits;   // overrides the derived seed length
  std::size_t max_qubits = 6;             // q m cap, dense superoperator reach
  bool strict = false;                    // violated constraints raise an error
  std::uint64_t seed = 1;
};

struct Constraint {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct QeaToQsd {
  std::size_t t = 0;
  std::size_t m = 0;       // output qubits of Q
  std::size_t n = 0;       // widest node of Q
  std::size_t copies = 0;
  double entropy = 0.0;    // S(<Q>)
  std::string promise;     // "yes" (S >= t+1), "no" (S <= t-1), "outside"
  double epsilon = 0.0;
  double c0 = 0.0;
  double seed_bits_required = 0.0;
  std::size_t seed_bits = 0;      // log2 of the expander degree actually used
  std::size_t generators = 0;
  double sigma2 = 0.0;
  double extractor_epsilon = 0.0; // 2^{q(m-t)/2} sigma2
  bool extractor_ok = false;
  std::vector<Constraint> constraints;
  bool feasible = false;
  DensityMatrix xi = DensityMatrix::maximally_mixed(1);
  double entropy_xi = 0.0;
  double distance = 0.0;          // 1/2 ||xi - I||_1
  double yes_bound = 0.0;         // 5 epsilon
  double no_bound = 0.0;          // 1/(qm) - 2^{-qm}
  std::string outcome;            // "close", "far", "between"
  bool consistent = false;        // outcome matches the promise
  bool growth_ok = false;         // S(xi) <= q S + seed bits
  bool chain_ok = false;          // S(xi) <= qm - 1 implies distance >= no_bound
  bool pass = false;
};

QeaToQsd qea_to_qsd(const ChannelExpression& q, std::size_t t, const QeaToQsdParams& params);

// ---------------------------------------------------------------------------
// Supporting inequalities

struct InequalityReport {
  double joint_lhs = 0.0, joint_rhs = 0.0;
  bool joint_pass = false;
  double fannes_t = 0.0;       // full trace norm
  double fannes_lhs = 0.0, fannes_rhs = 0.0;  // nats
  bool fannes_applicable = false;
  bool fannes_pass = false;
  double holevo_lhs = 0.0, holevo_rhs = 0.0;
  bool holevo_pass = false;
  double helstrom_success = 0.0, helstrom_expected = 0.0;
  bool helstrom_pass = false;
  bool pass = false;
};

/// p weights the two states in the joint-entropy check.
InequalityReport inequality_checks(const DensityMatrix& r0, const DensityMatrix& r1, const std::vector<double>& p,
                                   double tolerance = 1e-8);

}  // namespace qexlab

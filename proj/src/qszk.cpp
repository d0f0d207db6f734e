#include "qexlab/qszk.hpp"

#include "qexlab/error.hpp"
#include "qexlab/extractor.hpp"
#include "qexlab/qexpander.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace qexlab {

// ---------------------------------------------------------------------------
// Flattening

FlatnessReport flatness_report(const RVector& base_spectrum, std::size_t k, const std::vector<double>& t_values) {
  require(k >= 1, ErrorKind::invalid_input, "flattening needs k >= 1");
  require(base_spectrum.size() >= 1, ErrorKind::invalid_input, "empty spectrum");
  std::vector<double> lam;
  for (Eigen::Index i = 0; i < base_spectrum.size(); ++i) {
    require(base_spectrum(i) >= -1e-12, ErrorKind::invalid_input, "negative eigenvalue");
    if (base_spectrum(i) > 1e-15) lam.push_back(base_spectrum(i));
  }
  const double total = std::accumulate(lam.begin(), lam.end(), 0.0);
  require(std::abs(total - 1.0) <= 1e-9, ErrorKind::invalid_input, "spectrum must sum to 1");

  FlatnessReport r;
  r.k = k;
  std::vector<double> info(lam.size());  // -log2 lambda_i
  for (std::size_t i = 0; i < lam.size(); ++i) {
    info[i] = -std::log2(lam[i]);
    r.m = std::max(r.m, info[i]);
    r.entropy += lam[i] * info[i];
  }
  r.delta = std::sqrt(static_cast<double>(k)) * r.m;

  // Classes of rho^{(x)k} are compositions c of k; multiplicity k!/prod c_i!.
  const double kd = static_cast<double>(k);
  const double log_kfact = std::lgamma(kd + 1.0);
  std::vector<double> deviation;  // |sum c_i info_i - k S|
  std::vector<double> mass;
  std::vector<std::size_t> c(lam.size(), 0);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t idx, std::size_t left) {
    if (idx + 1 == lam.size()) {
      c[idx] = left;
      double log_mult = log_kfact, log_p = 0.0, surprise = 0.0;
      for (std::size_t i = 0; i < lam.size(); ++i) {
        const double ci = static_cast<double>(c[i]);
        log_mult -= std::lgamma(ci + 1.0);
        log_p += ci * std::log(lam[i]);
        surprise += ci * info[i];
      }
      mass.push_back(std::exp(log_mult + log_p));
      deviation.push_back(std::abs(surprise - kd * r.entropy));
      require(mass.size() <= 5000000, ErrorKind::invalid_input, "too many eigenvalue classes for an exact tally");
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      c[idx] = v;
      walk(idx + 1, left - v);
    }
  };
  walk(0, k);
  r.classes = mass.size();

  r.pass = true;
  for (double t : t_values) {
    FlatnessRow row;
    row.t = t;
    row.bound = 1.0 - std::pow(2.0, -t * t + 1.0);
    const double window = t * r.delta;
    for (std::size_t i = 0; i < mass.size(); ++i)
      if (deviation[i] <= window + 1e-9 * std::max(1.0, kd * r.m)) row.typical_mass += mass[i];
    row.pass = row.typical_mass >= row.bound - 1e-12;
    r.pass = r.pass && row.pass;
    r.rows.push_back(row);
  }
  return r;
}

FlatnessReport flatness_report(const DensityMatrix& rho, std::size_t k, const std::vector<double>& t_values) {
  return flatness_report(rho.spectrum(), k, t_values);
}

// ---------------------------------------------------------------------------
// Entropy versus distance

EntropyDistanceVerdict entropy_distance_bound(const DensityMatrix& rho, double epsilon) {
  EntropyDistanceVerdict v;
  v.qubits = qubit_count(rho.dim());
  v.epsilon = epsilon;
  const double n = static_cast<double>(v.qubits);
  v.entropy = von_neumann_entropy(rho.matrix());
  v.distance = trace_distance(rho.matrix(), DensityMatrix::maximally_mixed(rho.dim()).matrix());
  v.bound = epsilon - std::pow(2.0, -n);
  v.premise = v.entropy <= (1.0 - epsilon) * n + 1e-12;
  v.pass = !v.premise || v.distance >= v.bound - 1e-12;
  return v;
}

DensityMatrix extremal_state(std::size_t qubits, double epsilon) {
  require(epsilon >= 0.0 && epsilon <= 1.0, ErrorKind::invalid_input, "epsilon must lie in [0,1]");
  const std::size_t dim = std::size_t{1} << qubits;
  RVector p = RVector::Constant(static_cast<Eigen::Index>(dim), (1.0 - epsilon) / static_cast<double>(dim));
  p(0) += epsilon;
  return DensityMatrix::classical(p);
}

EntropyDistanceGrid entropy_distance_grid(std::size_t qubits, std::size_t denominator) {
  require(qubits >= 1 && qubits <= 4, ErrorKind::invalid_input, "grid check supports 1..4 qubits");
  require(denominator >= 1 && denominator <= 256, ErrorKind::invalid_input, "grid denominator out of range");
  EntropyDistanceGrid g;
  g.qubits = qubits;
  g.step_denominator = denominator;
  g.worst_margin = std::numeric_limits<double>::infinity();
  const std::size_t dim = std::size_t{1} << qubits;
  const double n = static_cast<double>(qubits);
  const double uniform = 1.0 / static_cast<double>(dim);
  const double den = static_cast<double>(denominator);
  // Diagonal spectra up to permutation: partitions of `denominator` into at
  // most `dim` parts. Entropy and distance are permutation invariant.
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t left, std::size_t max_part) {
    if (left == 0) {
      double s = 0.0, dist = 0.0;
      for (auto p : parts) {
        const double l = static_cast<double>(p) / den;
        s -= l * std::log2(l);
        dist += std::max(l - uniform, 0.0);
      }
      const double eps = 1.0 - s / n;  // largest epsilon with S <= (1-eps) n
      const double margin = dist - (eps - uniform);
      ++g.spectra;
      g.worst_margin = std::min(g.worst_margin, margin);
      if (margin < -1e-12) ++g.counterexamples;
      return;
    }
    if (parts.size() == dim) return;
    for (std::size_t p = std::min(left, max_part); p >= 1; --p) {
      parts.push_back(p);
      walk(left - p, p);
      parts.pop_back();
    }
  };
  walk(denominator, denominator);
  g.pass = g.counterexamples == 0;
  return g;
}

LocalChange local_change_check(const RVector& spectrum, std::size_t j, double epsilon) {
  require(j > 1 && j <= static_cast<std::size_t>(spectrum.size()), ErrorKind::precondition, "need 1 < j <= length");
  const double lj = spectrum(static_cast<Eigen::Index>(j - 1));
  require(lj > epsilon && epsilon > 0.0, ErrorKind::precondition, "need lambda_j > epsilon > 0");
  require(spectrum(0) >= lj, ErrorKind::precondition, "lambda_1 must be at least lambda_j");
  LocalChange r;
  r.before = shannon_entropy(spectrum);
  RVector moved = spectrum;
  moved(0) += epsilon;
  moved(static_cast<Eigen::Index>(j - 1)) -= epsilon;
  r.after = shannon_entropy(moved);
  r.pass = r.after <= r.before + 1e-10;
  return r;
}

// ---------------------------------------------------------------------------
// Formulas

std::string to_string(Tri v) {
  switch (v) {
    case Tri::zero: return "0";
    case Tri::one: return "1";
    case Tri::star: return "*";
  }
  return "*";
}

Tri parse_tri(const std::string& text) {
  if (text == "0") return Tri::zero;
  if (text == "1") return Tri::one;
  if (text == "*") return Tri::star;
  fail(ErrorKind::invalid_input, "truth value must be 0, 1 or *");
}

FormulaPtr fvar(std::size_t index) {
  require(index >= 1, ErrorKind::invalid_input, "variables are numbered from 1");
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::var;
  f->var = index;
  return f;
}

FormulaPtr fneg(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::neg;
  f->a = std::move(a);
  return f;
}

FormulaPtr fand(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::conj;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::disj;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& s) : s_(s) {}

  FormulaPtr parse() {
    auto f = parse_or();
    skip();
    require(pos_ == s_.size(), ErrorKind::invalid_input, "trailing input in formula at position " + std::to_string(pos_));
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  FormulaPtr parse_or() {
    auto f = parse_and();
    while (eat('|')) f = f_or(f, parse_and());
    return f;
  }
  FormulaPtr parse_and() {
    auto f = parse_unary();
    while (eat('&')) f = fand(f, parse_unary());
    return f;
  }
  FormulaPtr parse_unary() {
    if (eat('!')) return fneg(parse_unary());
    if (eat('(')) {
      auto f = parse_or();
      require(eat(')'), ErrorKind::invalid_input, "missing ')' in formula");
      return f;
    }
    require(eat('v'), ErrorKind::invalid_input, "expected variable at position " + std::to_string(pos_));
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    require(pos_ > start, ErrorKind::invalid_input, "variable needs an index");
    return fvar(std::stoul(s_.substr(start, pos_ - start)));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return FormulaParser(text).parse(); }

std::string to_string(const Formula& f) {
  switch (f.op) {
    case Formula::Op::var: return "v" + std::to_string(f.var);
    case Formula::Op::neg: return "!" + to_string(*f.a);
    case Formula::Op::conj: return "(" + to_string(*f.a) + " & " + to_string(*f.b) + ")";
    case Formula::Op::disj: return "(" + to_string(*f.a) + " | " + to_string(*f.b) + ")";
  }
  return "";
}

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negate) {
  switch (f->op) {
    case Formula::Op::var: return negate ? fneg(f) : f;
    case Formula::Op::neg: return nnf(f->a, !negate);
    case Formula::Op::conj:
      return negate ? f_or(nnf(f->a, true), nnf(f->b, true)) : fand(nnf(f->a, false), nnf(f->b, false));
    case Formula::Op::disj:
      return negate ? fand(nnf(f->a, true), nnf(f->b, true)) : f_or(nnf(f->a, false), nnf(f->b, false));
  }
  return f;
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f.op) {
    case Formula::Op::var: return true;
    case Formula::Op::neg: return f.a->op == Formula::Op::var;
    default: return is_nnf(*f.a) && is_nnf(*f.b);
  }
}

std::size_t formula_size(const Formula& f) {
  switch (f.op) {
    case Formula::Op::var: return 1;
    case Formula::Op::neg: return f.a->op == Formula::Op::var ? 1 : 1 + formula_size(*f.a);
    default: return 1 + formula_size(*f.a) + formula_size(*f.b);
  }
}

std::size_t connective_count(const Formula& f) {
  switch (f.op) {
    case Formula::Op::var: return 0;
    case Formula::Op::neg: return 1 + connective_count(*f.a);
    default: return 1 + connective_count(*f.a) + connective_count(*f.b);
  }
}

std::vector<std::size_t> formula_variables(const Formula& f) {
  std::set<std::size_t> vars;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op == Formula::Op::var) vars.insert(g.var);
    if (g.a) walk(*g.a);
    if (g.b) walk(*g.b);
  };
  walk(f);
  return {vars.begin(), vars.end()};
}

Tri eval_formula(const Formula& f, const Assignment& a) {
  switch (f.op) {
    case Formula::Op::var: {
      auto it = a.find(f.var);
      require(it != a.end(), ErrorKind::invalid_input, "unbound variable v" + std::to_string(f.var));
      return it->second;
    }
    case Formula::Op::neg: {
      const Tri v = eval_formula(*f.a, a);
      return v == Tri::one ? Tri::zero : v == Tri::zero ? Tri::one : Tri::star;
    }
    case Formula::Op::conj: {
      const Tri x = eval_formula(*f.a, a), y = eval_formula(*f.b, a);
      if (x == Tri::zero || y == Tri::zero) return Tri::zero;
      if (x == Tri::one && y == Tri::one) return Tri::one;
      return Tri::star;
    }
    case Formula::Op::disj: {
      const Tri x = eval_formula(*f.a, a), y = eval_formula(*f.b, a);
      if (x == Tri::one || y == Tri::one) return Tri::one;
      if (x == Tri::zero && y == Tri::zero) return Tri::zero;
      return Tri::star;
    }
  }
  return Tri::star;
}

// ---------------------------------------------------------------------------
// BuildCircuit

std::pair<ChannelExpression, ChannelExpression> qubit_pair_at_distance(double d) {
  require(d >= 0.0 && d <= 1.0, ErrorKind::invalid_input, "distance must lie in [0,1]");
  // RY(theta)|0> has overlap cos(theta/2) with |0>; pure-state distance sqrt(1 - overlap^2).
  return {prepare_zeros(1), apply_unitary(prepare_zeros(1), {0}, gate_ry(2.0 * std::asin(d)))};
}

LeafPair polarized_leaf(Tri value, std::size_t m0) {
  const double small = std::pow(2.0, -static_cast<double>(m0));
  double dy = 0.5, dz = 0.5;
  if (value == Tri::one) {
    dy = 1.0 - small;
    dz = small;
  } else if (value == Tri::zero) {
    dy = small;
    dz = 1.0 - small;
  }
  LeafPair leaf;
  std::tie(leaf.y0, leaf.y1) = qubit_pair_at_distance(dy);
  std::tie(leaf.z0, leaf.z1) = qubit_pair_at_distance(dz);
  return leaf;
}

BuildCircuitResult build_circuit(const FormulaPtr& phi, const std::map<std::size_t, LeafPair>& leaves) {
  require(phi != nullptr, ErrorKind::invalid_input, "null formula");
  require(is_nnf(*phi), ErrorKind::invalid_input, "BuildCircuit needs a negation-normal formula");
  BuildCircuitResult out;
  std::map<const Formula*, std::size_t> index;  // subformula -> row in roots

  std::function<std::size_t(const FormulaPtr&)> visit = [&](const FormulaPtr& f) -> std::size_t {
    if (auto it = index.find(f.get()); it != index.end()) return it->second;
    std::array<std::size_t, 2> node{};
    if (f->op == Formula::Op::var || f->op == Formula::Op::neg) {
      const bool negated = f->op == Formula::Op::neg;
      const std::size_t v = negated ? f->a->var : f->var;
      auto it = leaves.find(v);
      require(it != leaves.end(), ErrorKind::invalid_input, "no leaf circuits for v" + std::to_string(v));
      node[0] = out.expr.splice(negated ? it->second.z0 : it->second.y0);
      node[1] = out.expr.splice(negated ? it->second.z1 : it->second.y1);
    } else {
      const std::size_t ia = visit(f->a);
      const std::size_t ib = visit(f->b);
      const std::array<std::size_t, 2> ta = out.roots[ia], tb = out.roots[ib];
      for (int b = 0; b < 2; ++b) {
        ChannelNode n;
        if (f->op == Formula::Op::disj) {
          n.kind = NodeKind::tensor;
          n.children = {ta[b], tb[b]};
          node[b] = out.expr.add(std::move(n));
        } else {
          ChannelNode first, second;
          first.kind = second.kind = NodeKind::tensor;
          first.children = {ta[0], tb[b]};
          second.children = {ta[1], tb[1 - b]};
          const std::size_t i0 = out.expr.add(std::move(first));
          const std::size_t i1 = out.expr.add(std::move(second));
          n.kind = NodeKind::mixture;
          n.weights = {0.5, 0.5};
          n.children = {i0, i1};
          node[b] = out.expr.add(std::move(n));
        }
      }
    }
    out.roots.push_back(node);
    out.subformulas.push_back(f);
    index[f.get()] = out.roots.size() - 1;
    return out.roots.size() - 1;
  };
  visit(phi);
  return out;
}

ChannelExpression build_circuit(const FormulaPtr& phi, int b, const std::map<std::size_t, LeafPair>& leaves) {
  require(b == 0 || b == 1, ErrorKind::invalid_input, "b must be 0 or 1");
  auto r = build_circuit(phi, leaves);
  r.expr.root = r.roots.back()[static_cast<std::size_t>(b)];
  return r.expr;
}

BuildCircuitReport build_circuit_check(const FormulaPtr& phi, const Assignment& a, std::size_t m0) {
  require(phi != nullptr && is_nnf(*phi), ErrorKind::invalid_input, "BuildCircuit needs a negation-normal formula");
  std::map<std::size_t, LeafPair> leaves;
  for (auto v : formula_variables(*phi)) {
    auto it = a.find(v);
    require(it != a.end(), ErrorKind::invalid_input, "unbound variable v" + std::to_string(v));
    leaves[v] = polarized_leaf(it->second, m0);
  }
  auto built = build_circuit(phi, leaves);
  const auto widths = node_qubits(built.expr);
  const auto values = evaluate_all(built.expr);

  BuildCircuitReport rep;
  rep.formula = to_string(*phi);
  rep.size = formula_size(*phi);
  rep.nodes = built.expr.nodes.size();
  rep.qubits = widths[built.roots.back()[0]];
  const double total = static_cast<double>(rep.size);

  std::map<const Formula*, double> delta;
  rep.pass = true;
  for (std::size_t k = 0; k < built.subformulas.size(); ++k) {
    const auto& f = built.subformulas[k];
    SubformulaRow row;
    row.text = to_string(*f);
    row.size = formula_size(*f);
    row.value = eval_formula(*f, a);
    row.delta = trace_distance(values[built.roots[k][0]], values[built.roots[k][1]]);
    delta[f.get()] = row.delta;
    const double share = static_cast<double>(row.size) / (3.0 * total);
    bool ok = true;
    if (row.value == Tri::one) {
      row.bound = 1.0 - share;
      ok = row.delta >= row.bound - 1e-9;
    } else if (row.value == Tri::zero) {
      row.bound = share;
      ok = row.delta <= row.bound + 1e-9;
    }
    if (f->op == Formula::Op::conj) {
      row.product_residual = std::abs(row.delta - delta.at(f->a.get()) * delta.at(f->b.get()));
      ok = ok && row.product_residual <= 1e-9;
    } else if (f->op == Formula::Op::disj) {
      const double da = delta.at(f->a.get()), db = delta.at(f->b.get());
      row.or_bounds = row.delta >= std::max(da, db) - 1e-9 && row.delta <= da + db + 1e-9;
      ok = ok && row.or_bounds;
    }
    row.pass = ok;
    rep.pass = rep.pass && ok;
    rep.rows.push_back(row);
  }
  rep.value = rep.rows.back().value;
  rep.delta = rep.rows.back().delta;
  // Boundary values count as undecided.
  rep.verdict = rep.delta > 2.0 / 3.0 ? Tri::one : rep.delta < 1.0 / 3.0 ? Tri::zero : Tri::star;
  if (rep.value != Tri::star) rep.pass = rep.pass && rep.verdict == rep.value;
  return rep;
}

// ---------------------------------------------------------------------------
// Reductions

std::string to_string(PolarizeMode m) {
  switch (m) {
    case PolarizeMode::identity: return "identity";
    case PolarizeMode::tensor_power: return "tensor-power";
    case PolarizeMode::full: return "full";
  }
  return "identity";
}

PolarizeMode parse_polarize_mode(const std::string& text) {
  if (text == "identity") return PolarizeMode::identity;
  if (text == "tensor-power") return PolarizeMode::tensor_power;
  if (text == "full") return PolarizeMode::full;
  fail(ErrorKind::invalid_input, "unknown polarisation mode '" + text + "'");
}

std::pair<ChannelExpression, ChannelExpression> polarize(const ChannelExpression& q0, const ChannelExpression& q1,
                                                         PolarizeMode mode, std::size_t copies) {
  switch (mode) {
    case PolarizeMode::identity: return {q0, q1};
    case PolarizeMode::tensor_power: {
      require(copies >= 1, ErrorKind::invalid_input, "tensor-power needs copies >= 1");
      return {tensor(std::vector<ChannelExpression>(copies, q0)), tensor(std::vector<ChannelExpression>(copies, q1))};
    }
    case PolarizeMode::full: break;
  }
  fail(ErrorKind::unsupported, "full polarisation (alpha < beta^2) is not implemented; supply pre-polarised circuits");
}

QsdToQed qsd_to_qed(const ChannelExpression& r0, const ChannelExpression& r1, std::size_t m0) {
  require(output_qubits(r0) == output_qubits(r1), ErrorKind::invalid_input, "QSD circuits differ in output width");
  QsdToQed r;
  r.distance = trace_distance(evaluate_matrix(r0), evaluate_matrix(r1));
  const double small = std::pow(2.0, -static_cast<double>(m0));
  const bool near = r.distance <= small + 1e-12;
  r.far = r.distance >= 1.0 - small - 1e-12;
  require(near || r.far, ErrorKind::invalid_input,
          "QSD pair is not polarised: distance " + std::to_string(r.distance) + " lies in the dead zone");

  r.z1 = coin_conditioned(r0, r1);
  r.z0 = trace_out(r.z1, {0});
  r.left = tensor({r.z0, r.z0, maximally_mixed_qubit()});
  r.right = tensor({r.z1, r.z1});
  r.s_z0 = von_neumann_entropy(evaluate_matrix(r.z0));
  r.s_z1 = von_neumann_entropy(evaluate_matrix(r.z1));
  r.s_left = von_neumann_entropy(evaluate_matrix(r.left));
  r.s_right = von_neumann_entropy(evaluate_matrix(r.right));
  r.gap = r.s_right - r.s_left;
  r.pass = r.far ? r.gap <= -r.margin : r.gap >= r.margin;
  return r;
}

Tri qea_membership(double entropy, double t) {
  if (entropy >= t + 0.5 - 1e-12) return Tri::one;
  if (entropy <= t - 0.5 + 1e-12) return Tri::zero;
  return Tri::star;
}

QedToFormula qed_to_formula(const ChannelExpression& q0, const ChannelExpression& q1) {
  QedToFormula r;
  r.n = output_qubits(q0);
  require(output_qubits(q1) == r.n, ErrorKind::invalid_input, "QED circuits differ in output width");
  const CMatrix rho0 = evaluate_matrix(q0), rho1 = evaluate_matrix(q1);
  r.s0 = von_neumann_entropy(rho0);
  r.s1 = von_neumann_entropy(rho1);
  // xi_b = <Q_b>^{(x)6}; its entropy is 6 S_b. Spot-check additivity on two copies.
  r.s_xi0 = 6.0 * r.s0;
  r.s_xi1 = 6.0 * r.s1;
  if (2 * r.n <= kQubitCap) {
    r.additivity_residual = std::max(std::abs(von_neumann_entropy(kron(rho0, rho0)) - 2.0 * r.s0),
                                     std::abs(von_neumann_entropy(kron(rho1, rho1)) - 2.0 * r.s1));
  }
  if (r.s0 - r.s1 >= 0.5 - 1e-12)
    r.promise = "yes";
  else if (r.s1 - r.s0 >= 0.5 - 1e-12)
    r.promise = "no";
  else
    r.promise = "violated";

  FormulaPtr phi;
  for (std::size_t t = 1; t <= 6 * r.n; ++t) {
    const std::size_t v0 = 2 * (t - 1) + 1, v1 = v0 + 1;
    r.assignment[v0] = qea_membership(r.s_xi0, static_cast<double>(t));
    r.assignment[v1] = qea_membership(r.s_xi1, static_cast<double>(t));
    auto term = fand(fvar(v0), fneg(fvar(v1)));
    phi = phi ? f_or(phi, term) : term;
  }
  r.formula = to_string(*phi);
  r.value = eval_formula(*phi, r.assignment);
  if (r.promise == "yes")
    r.pass = r.value == Tri::one;
  else if (r.promise == "no")
    r.pass = r.value == Tri::zero;
  else
    r.pass = true;
  r.pass = r.pass && r.additivity_residual <= 1e-9;
  return r;
}

namespace {

std::size_t max_node_width(const ChannelExpression& q) {
  const auto w = node_qubits(q);
  return *std::max_element(w.begin(), w.end());
}

}  // namespace

QeaToQsd qea_to_qsd(const ChannelExpression& q, std::size_t t, const QeaToQsdParams& params) {
  require(params.epsilon > 0.0 && params.epsilon < 1.0, ErrorKind::invalid_input, "epsilon must lie in (0,1)");
  require(params.copies >= 1, ErrorKind::invalid_input, "copies must be >= 1");
  QeaToQsd r;
  r.t = t;
  r.m = output_qubits(q);
  r.n = max_node_width(q);
  r.copies = params.copies;
  r.epsilon = params.epsilon;
  r.c0 = params.c0;
  require(t <= r.m, ErrorKind::invalid_input, "threshold t exceeds the output width");
  const std::size_t qm = r.copies * r.m;
  require(qm <= params.max_qubits, ErrorKind::invalid_input,
          "q*m = " + std::to_string(qm) + " exceeds the cap of " + std::to_string(params.max_qubits) + " qubits");

  const CMatrix rho = evaluate_matrix(q);
  r.entropy = von_neumann_entropy(rho);
  const double td = static_cast<double>(t);
  r.promise = r.entropy >= td + 1.0 - 1e-9 ? "yes" : r.entropy <= td - 1.0 + 1e-9 ? "no" : "outside";

  const double qd = static_cast<double>(r.copies), qmd = static_cast<double>(qm);
  const double log_inv_eps = std::log2(1.0 / params.epsilon);
  r.seed_bits_required = qd * static_cast<double>(r.m - t) + 2.0 * log_inv_eps + std::log2(qmd) + params.c0;
  const std::size_t want_bits = params.seed_bits ? *params.seed_bits
                                                 : static_cast<std::size_t>(std::ceil(r.seed_bits_required - 1e-12));

  // Extractor from the Abelian expander on Z_{2^{qm}}: |Gamma| = 2^{ceil(d/2)},
  // capped at the group order; degree |Gamma|^2.
  const std::size_t big_n = std::size_t{1} << qm;
  auto group = std::make_shared<const FiniteGroup>(make_cyclic(static_cast<std::uint32_t>(big_n)));
  const std::size_t half = (want_bits + 1) / 2;
  GeneratingSet gamma;
  if (half >= qm) {
    for (Element x = 0; x < big_n; ++x) gamma.elements.push_back(x);
  } else {
    const std::size_t k = std::size_t{1} << half;
    gamma = k >= 2 ? random_symmetric_generators(*group, k, params.seed) : GeneratingSet{{group->identity()}};
  }
  r.generators = gamma.degree();
  r.seed_bits = 2 * static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(r.generators))));
  auto build = build_expander(group, std::nullopt, gamma, MappingKind::abelian, params.seed);
  r.sigma2 = spectral_gap(build.e, GapMethod::automatic, params.seed).sigma2;
  r.extractor_epsilon = std::pow(2.0, qd * static_cast<double>(r.m - t) / 2.0) * r.sigma2;
  r.extractor_ok = r.extractor_epsilon <= params.epsilon + 1e-12;

  const double r_param = std::sqrt(log_inv_eps);
  const double flat_delta = std::sqrt(qd) * static_cast<double>(r.n);
  r.yes_bound = 5.0 * params.epsilon;
  r.no_bound = 1.0 / qmd - std::pow(2.0, -qmd);
  r.constraints = {
      {"q >= r*Delta + 1", qd, r_param * flat_delta + 1.0, qd >= r_param * flat_delta + 1.0 - 1e-12},
      {"q > 2log(1/eps) + log(qm) + c0", qd, 2.0 * log_inv_eps + std::log2(qmd) + params.c0,
       qd > 2.0 * log_inv_eps + std::log2(qmd) + params.c0},
      {"5eps < (1/(qm) - 2^-qm)^2", r.yes_bound, r.no_bound * r.no_bound, r.yes_bound < r.no_bound * r.no_bound},
      {"extractor eps <= eps", r.extractor_epsilon, params.epsilon, r.extractor_ok},
      {"seed bits >= required", static_cast<double>(r.seed_bits), r.seed_bits_required,
       static_cast<double>(r.seed_bits) >= r.seed_bits_required - 1e-9},
  };
  r.feasible = std::all_of(r.constraints.begin(), r.constraints.end(), [](const Constraint& c) { return c.satisfied; });
  if (params.strict && !r.feasible) {
    std::string msg = "QEA reduction parameters infeasible:";
    for (const auto& c : r.constraints)
      if (!c.satisfied) msg += " [" + c.name + ": " + std::to_string(c.lhs) + " vs " + std::to_string(c.rhs) + "]";
    fail(ErrorKind::precondition, msg);
  }

  CMatrix power = rho;
  for (std::size_t i = 1; i < r.copies; ++i) power = kron(power, rho);
  CMatrix xi = build.e.apply(power);
  xi = 0.5 * (xi + xi.adjoint());
  r.xi = DensityMatrix(xi);
  r.entropy_xi = von_neumann_entropy(xi);
  r.distance = trace_distance(xi, DensityMatrix::maximally_mixed(big_n).matrix());

  r.outcome = r.distance <= r.yes_bound ? "close" : r.distance >= r.no_bound ? "far" : "between";
  r.consistent = r.promise == "yes" ? r.outcome == "close" : r.promise == "no" ? r.outcome == "far" : true;
  r.growth_ok = r.entropy_xi <= qd * r.entropy + static_cast<double>(r.seed_bits) + 1e-9;
  r.chain_ok = r.entropy_xi > qmd - 1.0 + 1e-12 || r.distance >= r.no_bound - 1e-12;
  r.pass = r.growth_ok && r.chain_ok && (r.consistent || !r.feasible);
  return r;
}

// ---------------------------------------------------------------------------
// Inequalities

InequalityReport inequality_checks(const DensityMatrix& r0, const DensityMatrix& r1, const std::vector<double>& p,
                                   double tolerance) {
  require(r0.dim() == r1.dim(), ErrorKind::invalid_input, "states differ in dimension");
  require(p.size() == 2 && p[0] >= 0 && p[1] >= 0 && std::abs(p[0] + p[1] - 1.0) <= 1e-12, ErrorKind::invalid_input,
          "p must be a probability pair");
  InequalityReport r;
  const CMatrix& a = r0.matrix();
  const CMatrix& b = r1.matrix();
  const auto d = static_cast<Eigen::Index>(r0.dim());
  const double s0 = von_neumann_entropy(a), s1 = von_neumann_entropy(b);

  // Joint entropy with orthogonal flags.
  CMatrix joint = CMatrix::Zero(2 * d, 2 * d);
  joint.topLeftCorner(d, d) = p[0] * a;
  joint.bottomRightCorner(d, d) = p[1] * b;
  RVector pv(2);
  pv << p[0], p[1];
  r.joint_lhs = von_neumann_entropy(joint);
  r.joint_rhs = shannon_entropy(pv) + p[0] * s0 + p[1] * s1;
  r.joint_pass = std::abs(r.joint_lhs - r.joint_rhs) <= tolerance;

  // Fannes, natural logarithms, full trace norm.
  const double dist = trace_distance(a, b);
  r.fannes_t = 2.0 * dist;
  r.fannes_applicable = r.fannes_t <= 1.0 / std::exp(1.0);
  r.fannes_lhs = std::abs(s0 - s1) * std::log(2.0);
  if (r.fannes_applicable) {
    const double t = r.fannes_t;
    r.fannes_rhs = t * std::log(static_cast<double>(d)) - (t > 0.0 ? t * std::log(t) : 0.0);
    r.fannes_pass = r.fannes_lhs <= r.fannes_rhs + tolerance;
  } else {
    r.fannes_pass = true;  // skipped
  }

  // Holevo-type lower bound on the entropy of the even mixture.
  r.holevo_lhs = von_neumann_entropy(0.5 * (a + b));
  r.holevo_rhs = 0.5 * (s0 + s1) + 1.0 - binary_entropy(0.5 + dist / 2.0);
  r.holevo_pass = r.holevo_lhs >= r.holevo_rhs - tolerance;

  // Optimal two-outcome measurement: projector onto the positive part of a - b.
  const CMatrix diff = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff);
  require(es.info() == Eigen::Success, ErrorKind::numerical, "eigensolver failed");
  CMatrix proj = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (es.eigenvalues()(i) > 0.0) proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  const CMatrix id = CMatrix::Identity(d, d);
  r.helstrom_success = 0.5 * (proj * a).trace().real() + 0.5 * ((id - proj) * b).trace().real();
  r.helstrom_expected = 0.5 + dist / 2.0;
  r.helstrom_pass = std::abs(r.helstrom_success - r.helstrom_expected) <= tolerance;

  r.pass = r.joint_pass && r.fannes_pass && r.holevo_pass && r.helstrom_pass;
  return r;
}

}  // namespace qexlab

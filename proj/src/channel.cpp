#include "qexlab/channel.hpp"

#include "qexlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qexlab {

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::prepare_zeros: return "prepare-zeros";
    case NodeKind::unitary_gate: return "unitary-gate";
    case NodeKind::measure_dephase: return "measure-dephase";
    case NodeKind::coin_conditioned: return "coin-conditioned";
    case NodeKind::tensor: return "tensor";
    case NodeKind::mixture: return "mixture";
    case NodeKind::trace_out: return "trace-out";
    case NodeKind::output_select: return "output-select";
  }
  return "unknown";
}

NodeKind parse_node_kind(const std::string& text) {
  for (auto k : {NodeKind::prepare_zeros, NodeKind::unitary_gate, NodeKind::measure_dephase,
                 NodeKind::coin_conditioned, NodeKind::tensor, NodeKind::mixture, NodeKind::trace_out,
                 NodeKind::output_select})
    if (to_string(k) == text) return k;
  fail(ErrorKind::invalid_input, "unknown node kind '" + text + "'");
}

std::size_t ChannelExpression::add(ChannelNode node) {
  for (auto c : node.children)
    require(c < nodes.size(), ErrorKind::invalid_input, "child index must refer to an earlier node");
  nodes.push_back(std::move(node));
  root = nodes.size() - 1;
  return root;
}

std::size_t ChannelExpression::splice(const ChannelExpression& other) {
  const std::size_t base = nodes.size();
  for (auto node : other.nodes) {
    for (auto& c : node.children) c += base;
    nodes.push_back(std::move(node));
  }
  root = base + other.root;
  return root;
}

std::vector<std::size_t> node_qubits(const ChannelExpression& expr) {
  require(!expr.nodes.empty() && expr.root < expr.nodes.size(), ErrorKind::invalid_input, "empty channel expression");
  std::vector<std::size_t> q(expr.nodes.size(), 0);
  for (std::size_t i = 0; i < expr.nodes.size(); ++i) {
    const auto& n = expr.nodes[i];
    for (auto c : n.children) require(c < i, ErrorKind::invalid_input, "malformed DAG: child after parent");
    auto one_child = [&] {
      require(n.children.size() == 1, ErrorKind::invalid_input, to_string(n.kind) + " needs exactly one child");
      return q[n.children[0]];
    };
    auto check_targets = [&](std::size_t width) {
      std::vector<bool> seen(width, false);
      for (auto t : n.targets) {
        require(t < width, ErrorKind::invalid_input, "qubit index out of range");
        require(!seen[t], ErrorKind::invalid_input, "repeated qubit index");
        seen[t] = true;
      }
    };
    switch (n.kind) {
      case NodeKind::prepare_zeros:
        require(n.children.empty() && n.qubits >= 1, ErrorKind::invalid_input, "prepare-zeros needs qubits >= 1");
        q[i] = n.qubits;
        break;
      case NodeKind::unitary_gate: {
        q[i] = one_child();
        check_targets(q[i]);
        require(!n.targets.empty(), ErrorKind::invalid_input, "gate without targets");
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n.targets.size());
        require(n.matrix.rows() == dim && n.matrix.cols() == dim, ErrorKind::invalid_input, "gate size mismatch");
        require(unitarity_residual(n.matrix) <= 1e-9, ErrorKind::invalid_input, "gate is not unitary");
        break;
      }
      case NodeKind::measure_dephase:
        q[i] = one_child();
        check_targets(q[i]);
        break;
      case NodeKind::coin_conditioned:
        require(n.children.size() == 2, ErrorKind::invalid_input, "coin-conditioned needs two branches");
        require(q[n.children[0]] == q[n.children[1]], ErrorKind::invalid_input, "branches differ in width");
        q[i] = q[n.children[0]] + 1;
        break;
      case NodeKind::tensor:
        require(!n.children.empty(), ErrorKind::invalid_input, "tensor needs children");
        for (auto c : n.children) q[i] += q[c];
        break;
      case NodeKind::mixture: {
        require(!n.children.empty() && n.weights.size() == n.children.size(), ErrorKind::invalid_input,
                "mixture needs one weight per child");
        double sum = 0.0;
        for (auto w : n.weights) {
          require(w >= 0.0, ErrorKind::invalid_input, "negative mixture weight");
          sum += w;
        }
        require(std::abs(sum - 1.0) <= 1e-12, ErrorKind::invalid_input, "mixture weights must sum to 1");
        q[i] = q[n.children[0]];
        for (auto c : n.children) require(q[c] == q[i], ErrorKind::invalid_input, "mixture children differ in width");
        break;
      }
      case NodeKind::trace_out:
        q[i] = one_child();
        check_targets(q[i]);
        require(n.targets.size() < q[i], ErrorKind::invalid_input, "cannot trace out every qubit");
        q[i] -= n.targets.size();
        break;
      case NodeKind::output_select:
        q[i] = one_child();
        check_targets(q[i]);
        require(!n.targets.empty(), ErrorKind::invalid_input, "output-select needs qubits");
        q[i] = n.targets.size();
        break;
    }
    require(q[i] <= kQubitCap, ErrorKind::invalid_input,
            "node " + std::to_string(i) + " has " + std::to_string(q[i]) + " qubits, above the cap of 10");
  }
  return q;
}

std::size_t output_qubits(const ChannelExpression& expr) { return node_qubits(expr)[expr.root]; }

namespace {

std::vector<CMatrix> evaluate_live(const ChannelExpression& expr, std::vector<char> live) {
  const auto q = node_qubits(expr);
  for (std::size_t i = expr.nodes.size(); i-- > 0;)
    if (live[i])
      for (auto c : expr.nodes[i].children) live[c] = 1;
  std::vector<CMatrix> val(expr.nodes.size());
  for (std::size_t i = 0; i < expr.nodes.size(); ++i) {
    if (!live[i]) continue;
    const auto& n = expr.nodes[i];
    auto child = [&](std::size_t k) -> const CMatrix& { return val[n.children[k]]; };
    switch (n.kind) {
      case NodeKind::prepare_zeros: {
        const std::size_t dim = std::size_t{1} << n.qubits;
        val[i] = CMatrix::Zero(dim, dim);
        val[i](0, 0) = 1.0;
        break;
      }
      case NodeKind::unitary_gate: val[i] = apply_gate(child(0), q[i], n.targets, n.matrix); break;
      case NodeKind::measure_dephase: val[i] = dephase(child(0), q[i], n.targets); break;
      case NodeKind::coin_conditioned: {
        const Eigen::Index d = child(0).rows();
        val[i] = CMatrix::Zero(2 * d, 2 * d);
        val[i].topLeftCorner(d, d) = 0.5 * child(0);
        val[i].bottomRightCorner(d, d) = 0.5 * child(1);
        break;
      }
      case NodeKind::tensor:
        val[i] = child(0);
        for (std::size_t k = 1; k < n.children.size(); ++k) val[i] = kron(val[i], child(k));
        break;
      case NodeKind::mixture:
        val[i] = n.weights[0] * child(0);
        for (std::size_t k = 1; k < n.children.size(); ++k) val[i] += n.weights[k] * child(k);
        break;
      case NodeKind::trace_out: val[i] = partial_trace(child(0), q[n.children[0]], n.targets); break;
      case NodeKind::output_select: {
        const std::size_t w = q[n.children[0]];
        std::vector<std::size_t> traced;
        for (std::size_t b = 0; b < w; ++b)
          if (std::find(n.targets.begin(), n.targets.end(), b) == n.targets.end()) traced.push_back(b);
        require(std::is_sorted(n.targets.begin(), n.targets.end()), ErrorKind::invalid_input,
                "output-select qubits must be ascending");
        val[i] = traced.empty() ? child(0) : partial_trace(child(0), w, traced);
        break;
      }
    }
  }
  return val;
}

}  // namespace

CMatrix evaluate_matrix(const ChannelExpression& expr) {
  // Only nodes reachable from the root are evaluated.
  std::vector<char> live(expr.nodes.size(), 0);
  require(expr.root < expr.nodes.size(), ErrorKind::invalid_input, "empty channel expression");
  live[expr.root] = 1;
  return evaluate_live(expr, std::move(live))[expr.root];
}

std::vector<CMatrix> evaluate_all(const ChannelExpression& expr) {
  return evaluate_live(expr, std::vector<char>(expr.nodes.size(), 1));
}

DensityMatrix evaluate(const ChannelExpression& expr) {
  CMatrix m = evaluate_matrix(expr);
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

namespace {

ChannelExpression wrap(const ChannelExpression& in, ChannelNode node) {
  ChannelExpression out = in;
  node.children = {in.root};
  out.add(std::move(node));
  return out;
}

ChannelExpression combine(const std::vector<ChannelExpression>& parts, ChannelNode node) {
  ChannelExpression out;
  node.children.clear();
  for (const auto& p : parts) node.children.push_back(out.splice(p));
  out.add(std::move(node));
  return out;
}

}  // namespace

ChannelExpression prepare_zeros(std::size_t qubits) {
  ChannelExpression e;
  ChannelNode n;
  n.kind = NodeKind::prepare_zeros;
  n.qubits = qubits;
  e.add(std::move(n));
  return e;
}

ChannelExpression apply_unitary(const ChannelExpression& in, std::vector<std::size_t> targets, CMatrix gate) {
  ChannelNode n;
  n.kind = NodeKind::unitary_gate;
  n.targets = std::move(targets);
  n.matrix = std::move(gate);
  return wrap(in, std::move(n));
}

ChannelExpression measure_dephase(const ChannelExpression& in, std::vector<std::size_t> targets) {
  ChannelNode n;
  n.kind = NodeKind::measure_dephase;
  n.targets = std::move(targets);
  return wrap(in, std::move(n));
}

ChannelExpression coin_conditioned(const ChannelExpression& c0, const ChannelExpression& c1) {
  ChannelNode n;
  n.kind = NodeKind::coin_conditioned;
  return combine({c0, c1}, std::move(n));
}

ChannelExpression tensor(const std::vector<ChannelExpression>& parts) {
  require(!parts.empty(), ErrorKind::invalid_input, "tensor of nothing");
  if (parts.size() == 1) return parts[0];
  ChannelNode n;
  n.kind = NodeKind::tensor;
  return combine(parts, std::move(n));
}

ChannelExpression mixture(const std::vector<double>& weights, const std::vector<ChannelExpression>& parts) {
  ChannelNode n;
  n.kind = NodeKind::mixture;
  n.weights = weights;
  return combine(parts, std::move(n));
}

ChannelExpression trace_out(const ChannelExpression& in, std::vector<std::size_t> targets) {
  ChannelNode n;
  n.kind = NodeKind::trace_out;
  n.targets = std::move(targets);
  return wrap(in, std::move(n));
}

ChannelExpression output_select(const ChannelExpression& in, std::vector<std::size_t> targets) {
  ChannelNode n;
  n.kind = NodeKind::output_select;
  n.targets = std::move(targets);
  return wrap(in, std::move(n));
}

ChannelExpression maximally_mixed_qubit() { return measure_dephase(apply_unitary(prepare_zeros(1), {0}, gate_h()), {0}); }

CMatrix gate_h() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

CMatrix gate_x() {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

CMatrix gate_z() {
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

CMatrix gate_ry(double theta) {
  CMatrix r(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  r << c, -s, s, c;
  return r;
}

CMatrix gate_cnot() {
  CMatrix c = CMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

}  // namespace qexlab

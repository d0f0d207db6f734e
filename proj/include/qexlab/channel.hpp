#pragma once

#include "qexlab/density.hpp"

#include <string>
#include <vector>

namespace qexlab {

inline constexpr std::size_t kQubitCap = 10;

enum class NodeKind {
  prepare_zeros,    // |0^n><0^n|
  unitary_gate,     // child, gate on `targets`
  measure_dephase,  // child, computational-basis dephasing of `targets`
  coin_conditioned, // two children: 1/2 |0><0| (x) c0 + 1/2 |1><1| (x) c1, coin kept as qubit 0
  tensor,           // children in order, first child on the most significant qubits
  mixture,          // children with `weights`
  trace_out,        // child, `targets` traced out
  output_select,    // child, keep only `targets` (ascending), trace the rest
};

std::string to_string(NodeKind kind);
NodeKind parse_node_kind(const std::string& text);

struct ChannelNode {
  NodeKind kind = NodeKind::prepare_zeros;
  std::size_t qubits = 0;              // prepare_zeros only
  std::vector<std::size_t> targets;
  CMatrix matrix;                      // unitary_gate only
  std::vector<double> weights;         // mixture only
  std::vector<std::size_t> children;   // indices of earlier nodes
};

/// Node list in topological order; `root` is the output node. Children must
/// precede their parents, so the list is a DAG by construction.
struct ChannelExpression {
  std::vector<ChannelNode> nodes;
  std::size_t root = 0;

  std::size_t add(ChannelNode node);
  /// Copies `other` into this node list; returns the index of its root.
  std::size_t splice(const ChannelExpression& other);
};

/// Qubit count of every node, checking structure and the qubit cap.
std::vector<std::size_t> node_qubits(const ChannelExpression& expr);
std::size_t output_qubits(const ChannelExpression& expr);

/// Exact dense evaluation, one pass over the node list.
CMatrix evaluate_matrix(const ChannelExpression& expr);
DensityMatrix evaluate(const ChannelExpression& expr);
/// Every node's state, each computed once.
std::vector<CMatrix> evaluate_all(const ChannelExpression& expr);

// Builders. Each returns a fresh expression whose root is the new node.
ChannelExpression prepare_zeros(std::size_t qubits);
ChannelExpression apply_unitary(const ChannelExpression& in, std::vector<std::size_t> targets, CMatrix gate);
ChannelExpression measure_dephase(const ChannelExpression& in, std::vector<std::size_t> targets);
ChannelExpression coin_conditioned(const ChannelExpression& c0, const ChannelExpression& c1);
ChannelExpression tensor(const std::vector<ChannelExpression>& parts);
ChannelExpression mixture(const std::vector<double>& weights, const std::vector<ChannelExpression>& parts);
ChannelExpression trace_out(const ChannelExpression& in, std::vector<std::size_t> targets);
ChannelExpression output_select(const ChannelExpression& in, std::vector<std::size_t> targets);

/// One maximally mixed qubit: H then dephase.
ChannelExpression maximally_mixed_qubit();

// Common gates.
CMatrix gate_h();
CMatrix gate_x();
CMatrix gate_z();
CMatrix gate_ry(double theta);
CMatrix gate_cnot();

}  // namespace qexlab

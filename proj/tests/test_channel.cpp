#include "qexlab/channel.hpp"
#include "qexlab/error.hpp"
#include "qexlab/instance.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qexlab;

namespace {

CMatrix proj(std::size_t dim, std::size_t k) {
  CMatrix m = CMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return m;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ChannelExpression plus_state() { return apply_unitary(prepare_zeros(1), {0}, gate_h()); }

}  // namespace

TEST(Evaluate, Basics) {
  EXPECT_LE(max_abs(evaluate_matrix(prepare_zeros(1)) - proj(2, 0)), 0.0);
  EXPECT_LE(max_abs(evaluate_matrix(measure_dephase(plus_state(), {0})) - CMatrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LE(max_abs(evaluate_matrix(maximally_mixed_qubit()) - CMatrix::Identity(2, 2) / 2.0), 1e-15);
  // |+><+| is pure with all entries 1/2
  EXPECT_LE(max_abs(evaluate_matrix(plus_state()) - CMatrix::Constant(2, 2, 0.5)), 1e-15);
}

TEST(Evaluate, BellPairAndPartialTrace) {
  auto bell = apply_unitary(apply_unitary(prepare_zeros(2), {0}, gate_h()), {0, 1}, gate_cnot());
  CMatrix rho = evaluate_matrix(bell);
  EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(0, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(3, 3).real(), 0.5, 1e-15);
  EXPECT_LE(max_abs(evaluate_matrix(trace_out(bell, {1})) - CMatrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LE(max_abs(evaluate_matrix(output_select(bell, {0})) - CMatrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_EQ(output_qubits(bell), 2u);
}

TEST(Evaluate, TensorOrdering) {
  auto one = apply_unitary(prepare_zeros(1), {0}, gate_x());
  CMatrix rho = evaluate_matrix(tensor({one, prepare_zeros(1)}));
  // first part is the most significant qubit: |10>
  EXPECT_LE(max_abs(rho - proj(4, 2)), 0.0);
  auto selected = output_select(tensor({one, prepare_zeros(1), one}), {0, 2});
  EXPECT_LE(max_abs(evaluate_matrix(selected) - proj(4, 3)), 0.0);
}

TEST(Evaluate, MixtureAndCoin) {
  auto one = apply_unitary(prepare_zeros(1), {0}, gate_x());
  CMatrix m = evaluate_matrix(mixture({0.25, 0.75}, {prepare_zeros(1), one}));
  EXPECT_NEAR(m(0, 0).real(), 0.25, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 0.75, 1e-15);
  EXPECT_THROW(evaluate(mixture({0.5, 0.6}, {prepare_zeros(1), one})), Error);

  // coin_conditioned gives 1/2 |0><0| (x) R0 + 1/2 |1><1| (x) R1
  auto r0 = plus_state();
  auto r1 = apply_unitary(prepare_zeros(1), {0}, gate_ry(0.7));
  CMatrix expect = 0.5 * kron(proj(2, 0), evaluate_matrix(r0)) + 0.5 * kron(proj(2, 1), evaluate_matrix(r1));
  EXPECT_LE(max_abs(evaluate_matrix(coin_conditioned(r0, r1)) - expect), 1e-15);
}

TEST(Evaluate, DagSharing) {
  ChannelExpression e = plus_state();
  const std::size_t leaf = e.root;
  ChannelNode t;
  t.kind = NodeKind::tensor;
  t.children = {leaf, leaf};
  e.root = e.add(t);
  CMatrix rho = evaluate_matrix(e);
  EXPECT_LE(max_abs(rho - CMatrix::Constant(4, 4, 0.25)), 1e-15);
  auto all = evaluate_all(e);
  EXPECT_EQ(all.size(), e.nodes.size());
}

TEST(Evaluate, Validation) {
  EXPECT_THROW(evaluate(prepare_zeros(kQubitCap + 1)), Error);
  EXPECT_NO_THROW(node_qubits(prepare_zeros(kQubitCap)));
  // builders defer validation to evaluation
  EXPECT_THROW(evaluate(apply_unitary(prepare_zeros(1), {0}, gate_cnot())), Error);
  EXPECT_THROW(evaluate(apply_unitary(prepare_zeros(1), {0}, CMatrix::Identity(2, 2) * 2.0)), Error);
  EXPECT_THROW(evaluate(trace_out(prepare_zeros(2), {2})), Error);
  EXPECT_THROW(evaluate(trace_out(prepare_zeros(2), {0, 1})), Error);
  ChannelExpression bad = prepare_zeros(1);
  ChannelNode forward;
  forward.kind = NodeKind::trace_out;
  forward.children = {5};
  EXPECT_THROW(bad.add(forward), Error);
}

TEST(TraceDistance, Examples) {
  CMatrix a = proj(2, 0), b = proj(2, 1);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-15);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  EXPECT_NEAR(trace_distance(d, CMatrix::Identity(2, 2) / 2.0), 0.25, 1e-15);
  // pure states: sqrt(1 - |<a|b>|^2)
  CMatrix plus = evaluate_matrix(plus_state());
  EXPECT_NEAR(trace_distance(a, plus), std::sqrt(0.5), 1e-14);
  // RY(2 asin d)|0> sits at distance d from |0>
  for (double dist : {0.1, 0.5, 0.9}) {
    CMatrix r = evaluate_matrix(apply_unitary(prepare_zeros(1), {0}, gate_ry(2 * std::asin(dist))));
    EXPECT_NEAR(trace_distance(a, r), dist, 1e-14);
  }
}

TEST(Gates, Unitary) {
  for (const CMatrix& g : {gate_h(), gate_x(), gate_z(), gate_ry(1.3), gate_cnot()})
    EXPECT_LE(unitarity_residual(g), 1e-15);
}

TEST(Json, ChannelRoundTrip) {
  auto r1 = apply_unitary(prepare_zeros(2), {1}, gate_ry(0.4));
  auto expr = coin_conditioned(measure_dephase(apply_unitary(prepare_zeros(2), {0}, gate_h()), {0}), r1);
  Json j = channel_to_json(expr);
  auto back = channel_from_json(j);
  EXPECT_LE(max_abs(evaluate_matrix(back) - evaluate_matrix(expr)), 1e-15);
  EXPECT_EQ(channel_to_json(back).dump(), j.dump());
}

TEST(Json, NamedGatesAndErrors) {
  Json j = Json::parse(R"({"nodes": [
      {"kind": "prepare-zeros", "qubits": 2},
      {"kind": "unitary-gate", "child": 0, "gate": "H", "targets": [0]},
      {"kind": "unitary-gate", "child": 1, "gate": "CNOT", "targets": [0, 1]},
      {"kind": "trace-out", "child": 2, "targets": [1]}]})");
  auto e = channel_from_json(j);
  EXPECT_LE(max_abs(evaluate_matrix(e) - CMatrix::Identity(2, 2) / 2.0), 1e-15);

  EXPECT_THROW(channel_from_json(Json::parse(R"({"nodes": [{"kind": "teleport"}]})")), Error);
  EXPECT_THROW(channel_from_json(Json::parse(R"({"nodes": []})")), Error);
  EXPECT_THROW(channel_from_json(Json::parse(
                   R"({"nodes": [{"kind": "prepare-zeros", "qubits": 1},
                                  {"kind": "unitary-gate", "child": 0, "gate": "RY", "targets": [0]}]})")),
               Error);
}

TEST(Json, InstanceRoundTrip) {
  PromiseInstance inst;
  inst.kind = ProblemKind::qsd;
  inst.circuits = {plus_state(), prepare_zeros(1)};
  inst.alpha = 0.1;
  inst.beta = 0.9;
  inst.params = Json{{"m0", 8}};
  Json j = instance_to_json(inst);
  EXPECT_EQ(j["problem"], "QSD");
  auto back = instance_from_json(j);
  EXPECT_EQ(back.kind, ProblemKind::qsd);
  ASSERT_EQ(back.circuits.size(), 2u);
  EXPECT_DOUBLE_EQ(back.alpha, 0.1);
  EXPECT_EQ(back.params["m0"], 8);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"problem": "QXX", "circuits": []})")), Error);
}

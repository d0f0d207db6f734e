#include "qexlab/instance.hpp"

#include "qexlab/error.hpp"

#include <cmath>

namespace qexlab {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  require(j.contains(key), ErrorKind::invalid_input, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::invalid_input, std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

CMatrix named_gate(const std::string& name, const Json& node) {
  if (name == "H") return gate_h();
  if (name == "X") return gate_x();
  if (name == "Z") return gate_z();
  if (name == "CNOT") return gate_cnot();
  if (name == "RY") return gate_ry(field<double>(node, "angle"));
  fail(ErrorKind::invalid_input, "unknown gate '" + name + "'");
}

CMatrix matrix_from_json(const Json& rows) {
  require(rows.is_array() && !rows.empty(), ErrorKind::invalid_input, "matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n, ErrorKind::invalid_input,
            "matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else {
        require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(), ErrorKind::invalid_input,
                "matrix entries are numbers or [re, im] pairs");
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
  }
  return m;
}

}  // namespace

ChannelExpression channel_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::invalid_input, "circuit must be an object");
  const auto& nodes = j.contains("nodes") ? j.at("nodes") : Json();
  require(nodes.is_array() && !nodes.empty(), ErrorKind::invalid_input, "circuit needs a non-empty node list");
  ChannelExpression e;
  for (const auto& nj : nodes) {
    require(nj.is_object(), ErrorKind::invalid_input, "node must be an object");
    ChannelNode n;
    n.kind = parse_node_kind(field<std::string>(nj, "kind"));
    n.qubits = field_or<std::size_t>(nj, "qubits", 0);
    n.children = field_or<std::vector<std::size_t>>(nj, "children", {});
    if (nj.contains("child")) n.children.push_back(field<std::size_t>(nj, "child"));
    n.targets = field_or<std::vector<std::size_t>>(nj, "targets", {});
    n.weights = field_or<std::vector<double>>(nj, "weights", {});
    if (n.kind == NodeKind::unitary_gate) {
      if (nj.contains("gate"))
        n.matrix = named_gate(field<std::string>(nj, "gate"), nj);
      else
        n.matrix = matrix_from_json(nj.contains("matrix") ? nj.at("matrix") : Json());
    }
    e.add(std::move(n));
  }
  e.root = field_or<std::size_t>(j, "root", e.nodes.size() - 1);
  require(e.root < e.nodes.size(), ErrorKind::invalid_input, "root index out of range");
  node_qubits(e);  // structural validation
  return e;
}

Json channel_to_json(const ChannelExpression& e) {
  Json nodes = Json::array();
  for (const auto& n : e.nodes) {
    Json nj;
    nj["kind"] = to_string(n.kind);
    if (n.kind == NodeKind::prepare_zeros) nj["qubits"] = n.qubits;
    if (!n.children.empty()) nj["children"] = n.children;
    if (!n.targets.empty()) nj["targets"] = n.targets;
    if (!n.weights.empty()) nj["weights"] = n.weights;
    if (n.kind == NodeKind::unitary_gate) {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < n.matrix.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < n.matrix.cols(); ++c) row.push_back({n.matrix(r, c).real(), n.matrix(r, c).imag()});
        rows.push_back(row);
      }
      nj["matrix"] = rows;
    }
    nodes.push_back(nj);
  }
  return Json{{"nodes", nodes}, {"root", e.root}};
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::qsd: return "QSD";
    case ProblemKind::qea: return "QEA";
    case ProblemKind::qed: return "QED";
  }
  return "QED";
}

PromiseInstance instance_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::invalid_input, "instance must be an object");
  PromiseInstance inst;
  const auto problem = field<std::string>(j, "problem");
  if (problem == "QSD")
    inst.kind = ProblemKind::qsd;
  else if (problem == "QEA")
    inst.kind = ProblemKind::qea;
  else if (problem == "QED")
    inst.kind = ProblemKind::qed;
  else
    fail(ErrorKind::invalid_input, "unknown problem '" + problem + "'");
  const auto& circuits = j.contains("circuits") ? j.at("circuits") : Json();
  require(circuits.is_array(), ErrorKind::invalid_input, "missing circuit list");
  for (const auto& c : circuits) inst.circuits.push_back(channel_from_json(c));
  const std::size_t want = inst.kind == ProblemKind::qea ? 1 : 2;
  require(inst.circuits.size() == want, ErrorKind::invalid_input,
          problem + " needs " + std::to_string(want) + " circuit(s)");
  if (inst.kind == ProblemKind::qsd) {
    inst.alpha = field_or<double>(j, "alpha", 0.0);
    inst.beta = field_or<double>(j, "beta", 1.0);
    require(0.0 <= inst.alpha && inst.alpha < inst.beta && inst.beta <= 1.0, ErrorKind::invalid_input,
            "QSD needs 0 <= alpha < beta <= 1");
  }
  if (inst.kind == ProblemKind::qea) {
    require(j.contains("t") && j.at("t").is_number_integer() && j.at("t").get<long long>() >= 0,
            ErrorKind::invalid_input, "QEA needs a non-negative integer t");
    inst.t = j.at("t").get<std::size_t>();
  }
  if (j.contains("params")) {
    require(j.at("params").is_object(), ErrorKind::invalid_input, "params must be an object");
    inst.params = j.at("params");
  }
  return inst;
}

Json instance_to_json(const PromiseInstance& inst) {
  Json j;
  j["problem"] = to_string(inst.kind);
  Json circuits = Json::array();
  for (const auto& c : inst.circuits) circuits.push_back(channel_to_json(c));
  j["circuits"] = circuits;
  if (inst.kind == ProblemKind::qsd) {
    j["alpha"] = inst.alpha;
    j["beta"] = inst.beta;
  }
  if (inst.kind == ProblemKind::qea) j["t"] = inst.t;
  if (!inst.params.empty()) j["params"] = inst.params;
  return j;
}

}  // namespace qexlab

#pragma once

#include "qexlab/channel.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace qexlab {

using Json = nlohmann::ordered_json;

/// {"nodes": [...], "root": k}; root defaults to the last node. Node fields:
/// kind, qubits (prepare-zeros), children, targets, weights, gate ("H", "X",
/// "Z", "CNOT", "RY" with "angle") or matrix (rows of [re, im] pairs).
ChannelExpression channel_from_json(const Json& j);
Json channel_to_json(const ChannelExpression& e);

enum class ProblemKind { qsd, qea, qed };

std::string to_string(ProblemKind k);

struct PromiseInstance {
  ProblemKind kind = ProblemKind::qed;
  std::vector<ChannelExpression> circuits;  // one for QEA, two otherwise
  double alpha = 0.0;                       // QSD thresholds
  double beta = 1.0;
  std::size_t t = 0;                        // QEA threshold
  Json params = Json::object();             // reduction parameters, passed through
};

/// {"problem": "QSD"|"QEA"|"QED", "circuits": [...], "alpha", "beta", "t", "params"}.
PromiseInstance instance_from_json(const Json& j);
Json instance_to_json(const PromiseInstance& inst);

}  // namespace qexlab

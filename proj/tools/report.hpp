#ifndef SEPPATH_TOOLS_REPORT_HPP
#define SEPPATH_TOOLS_REPORT_HPP

#include <json.hpp>

#include "seppath/exact.hpp"
#include "seppath/strategies.hpp"
#include "seppath/verification.hpp"

namespace seppath::report {

using nlohmann::ordered_json;

inline ordered_json edge_json(const Graph& g, EdgeId e) {
  return {{"index", e}, {"u", g.edge(e).u}, {"v", g.edge(e).v}};
}

inline ordered_json to_json(const Graph& g, const SeparationReport& r) {
  ordered_json j;
  j["separating"] = r.separating;
  if (r.witness) {
    j["witness"] = {edge_json(g, r.witness->first), edge_json(g, r.witness->second)};
  } else {
    j["witness"] = nullptr;
  }
  j["uncovered"] = ordered_json::array();
  for (EdgeId e : r.uncovered) j["uncovered"].push_back(edge_json(g, e));
  j["signatures"] = ordered_json::array();
  for (EdgeId e = 0; e < r.signatures.size(); ++e) {
    ordered_json row = edge_json(g, e);
    row["paths"] = r.signatures[e];
    j["signatures"].push_back(std::move(row));
  }
  return j;
}

inline ordered_json to_json(const ExactResult& r) {
  return {{"value", r.value},
          {"proved_optimal", r.proved_optimal},
          {"nodes_explored", r.nodes_explored},
          {"witness", serialize(r.witness)}};
}

inline ordered_json to_json(const StrategyOutcome& o) {
  ordered_json diag = ordered_json::object();
  for (const auto& [k, v] : o.diagnostics) diag[k] = v;
  return {{"strategy", o.strategy_name},
          {"size", o.size},
          {"verified", o.verified},
          {"diagnostics", std::move(diag)},
          {"warnings", o.warnings}};
}

}  // namespace seppath::report

#endif  // SEPPATH_TOOLS_REPORT_HPP

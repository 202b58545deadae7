#pragma once

// Structured (JSON) forms of reports and search results. Requires nlohmann/json.

#include <nlohmann/json.hpp>

#include "protoalg/check.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/group_bridge.hpp"
#include "protoalg/search.hpp"

namespace protoalg {

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["verdict"] = to_string(r.verdict);
  j["tuples_checked"] = r.tuples_checked;
  if (r.counterexample) {
    nlohmann::json ce = nlohmann::json::object();
    for (std::size_t i = 0; i < r.counterexample->names.size(); ++i)
      ce[r.counterexample->names[i]] = r.counterexample->values[i];
    j["counterexample"] = ce;
    j["counterexample_order"] = r.counterexample->names;
  } else {
    j["counterexample"] = nullptr;
  }
  j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline nlohmann::json to_json(const std::vector<CheckReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(to_json(r));
  return j;
}

inline nlohmann::json to_json(const SearchStats& s) {
  return {{"free_cells", s.free_cells}, {"space_log10", s.space_log10}, {"instances", s.instances},
          {"nodes", s.nodes},           {"conflicts", s.conflicts},     {"forced", s.forced}};
}

inline nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json j;
  j["goal"] = to_string(r.goal);
  j["outcome"] = to_string(r.outcome);
  j["goal_met"] = r.goal_met();
  j["count"] = r.count;
  j["witness"] = r.witness ? nlohmann::json(serialize(*r.witness)) : nlohmann::json(nullptr);
  j["stats"] = to_json(r.stats);
  return j;
}

inline nlohmann::json to_json(const GroupTable& g) {
  return {{"carrier", g.carrier}, {"product", g.product}, {"unit", g.unit}, {"inverse", g.inverse}};
}

}  // namespace protoalg

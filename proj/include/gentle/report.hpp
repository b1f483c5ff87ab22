#pragma once

// JSON report schema:
//   {"gentle": bool,
//    "invariant": [{"p": int, "q": int, "mult": int}, ...]   sorted by (p, q),
//    "sums": {"p": int, "q": int, "ok": bool},
//    "classification": {...},
//    "trace": [{"kind": ..., ...}, ...]}                     present only with a trace
// All numbers are integers.

#include <json.hpp>

#include "gentle/classification.hpp"
#include "gentle/threads.hpp"
#include "gentle/transforms.hpp"

namespace gentle {

using json = nlohmann::ordered_json;

inline json to_json(const AagInvariant& f) {
  json arr = json::array();
  for (const auto& [pq, mult] : f.support())
    arr.push_back({{"p", pq.first}, {"q", pq.second}, {"mult", mult}});
  return arr;
}

inline json to_json(const SumIdentityReport& r) {
  return {{"p", r.pSum}, {"q", r.qSum}, {"ok", r.ok}};
}

inline json to_json(const Classification& c) {
  json j;
  j["treeType"] = c.treeType;
  j["oneCycle"] = c.oneCycle;
  j["typeAtilde"] = c.typeAtilde ? json(*c.typeAtilde) : json(nullptr);
  if (c.classA)
    j["classA"] = {{"m", c.classA->m}, {"p", c.classA->p}};
  else
    j["classA"] = nullptr;
  if (c.classAtilde)
    j["classAtilde"] = {{"m1", c.classAtilde->m1},
                        {"m2", c.classAtilde->m2},
                        {"p", c.classAtilde->p},
                        {"q", c.classAtilde->q}};
  else
    j["classAtilde"] = nullptr;
  if (c.clusterTilted)
    j["clusterTilted"] =
        *c.clusterTilted == ClusterTiltedType::TypeA ? "A" : "Atilde";
  else
    j["clusterTilted"] = nullptr;
  if (c.gorenstein.exact)
    j["gorenstein"] = {{"kind", "exact"}, {"value", c.gorenstein.value}};
  else
    j["gorenstein"] = {{"kind", "at_most_one"}};
  return j;
}

inline json to_json(const RewriteStep& s) {
  json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case StepKind::Reflect:
    case StepKind::Coreflect:
      j["vertex"] = s.vertex;
      break;
    case StepKind::Complete: {
      json rels = json::array();
      for (const Relation& r : s.relations)
        rels.push_back({{"first", r.first}, {"second", r.second}});
      j["relations"] = rels;
      break;
    }
    case StepKind::RemoveArrows:
      j["arrows"] = s.arrows;
      break;
  }
  return j;
}

inline json to_json(const std::vector<RewriteStep>& steps) {
  json arr = json::array();
  for (const RewriteStep& s : steps) arr.push_back(to_json(s));
  return arr;
}

inline json report_json(const GentleQuiver& g,
                        const std::vector<RewriteStep>* trace = nullptr) {
  json j;
  j["gentle"] = true;
  j["invariant"] = to_json(aag_invariant(g));
  j["sums"] = to_json(check_sum_identities(g));
  j["classification"] = to_json(classify(g));
  if (trace) j["trace"] = to_json(*trace);
  return j;
}

}  // namespace gentle

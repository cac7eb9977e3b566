#pragma once

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "blowup.hpp"
#include "bounds.hpp"
#include "cayley.hpp"
#include "certify.hpp"
#include "errors.hpp"
#include "graph6.hpp"

namespace inducilab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string started, finished;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["toolkit_version"] = kToolkitVersion;
    j["workers"] = workers;
    j["started"] = started;
    j["finished"] = finished;
    return j;
  }
  static RunManifest from_json(const Json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.workers = j.value("workers", 1U);
    m.started = j.value("started", "");
    m.finished = j.value("finished", "");
    return m;
  }
};

/// Wraps a report body with the schema version and its manifest.
inline Json make_report(const std::string& kind, Json body, const RunManifest& manifest) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["manifest"] = manifest.to_json();
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  return j;
}

inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline void check_schema(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw ParseError("expected a JSON object", 0);
  if (j.value("schema_version", -1) != kSchemaVersion) throw ParseError("unsupported schema_version", 0);
  if (j.value("kind", std::string()) != kind) throw ParseError("expected kind '" + kind + "'", 0);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what(), e.byte);
  }
}

// Cayley graphs -------------------------------------------------------------

inline Json cayley_to_json(const CayleyGraph& h, double p = 0, std::uint64_t seed = 0) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "cayley";
  j["factors"] = h.group.factor_orders();
  Json elems = Json::array();
  for (const auto& e : h.lambda.elements()) elems.push_back(e.coordinates);
  j["connection_set"] = elems;
  j["member_indices"] = h.lambda.members();
  if (p > 0) j["p"] = p;
  if (p > 0) j["seed"] = seed;
  j["order"] = h.graph.order();
  j["graph6"] = graph6_encode(h.graph);
  return j;
}

inline CayleyGraph cayley_from_json(const Json& j) {
  check_schema(j, "cayley");
  try {
    AbelianGroup g(j.at("factors").get<std::vector<std::size_t>>());
    std::vector<GroupElement> elems;
    for (const auto& c : j.at("connection_set")) elems.push_back(g.element(std::span<const std::size_t>(c.get<std::vector<std::size_t>>())));
    auto h = build_cayley(g, ConnectionSet::from_elements(g, elems));
    if (j.contains("graph6") && graph6_decode(j["graph6"].get<std::string>()) != h.graph)
      throw ParseError("graph6 field does not match the connection set", 0);
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed Cayley JSON: ") + e.what(), 0);
  }
}

// Blow-up trees -------------------------------------------------------------

inline Json blowup_tree_body(const BlowupTree& t) {
  Json j;
  if (t.is_leaf()) {
    j["node"] = "leaf";
    j["graph6"] = graph6_encode(t.graph);
    return j;
  }
  j["node"] = "blowup";
  j["base"] = graph6_encode(t.graph);
  Json parts = Json::array();
  for (const auto& p : t.parts) parts.push_back(blowup_tree_body(p));
  j["parts"] = std::move(parts);
  return j;
}

inline Json blowup_tree_to_json(const BlowupTree& t) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "blowup_tree";
  j["order"] = t.size();
  j["balanced"] = t.is_balanced();
  j["tree"] = blowup_tree_body(t);
  return j;
}

inline BlowupTree blowup_tree_from_body(const Json& j) {
  const auto node = j.at("node").get<std::string>();
  if (node == "leaf") return BlowupTree::leaf(graph6_decode(j.at("graph6").get<std::string>()));
  if (node != "blowup") throw ParseError("unknown blow-up node '" + node + "'", 0);
  std::vector<BlowupTree> parts;
  for (const auto& p : j.at("parts")) parts.push_back(blowup_tree_from_body(p));
  return BlowupTree::blowup(graph6_decode(j.at("base").get<std::string>()), std::move(parts));
}

inline BlowupTree blowup_tree_from_json(const Json& j) {
  check_schema(j, "blowup_tree");
  try {
    return blowup_tree_from_body(j.at("tree"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed blow-up tree JSON: ") + e.what(), 0);
  }
}

// Verdicts and witnesses ----------------------------------------------------

inline const char* to_string(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::Vertex: return "vertex";
    case Witness::Kind::Pair: return "pair";
    case Witness::Kind::SetPair: return "set_pair";
    case Witness::Kind::Map: return "map";
    default: return "none";
  }
}

inline Json witness_to_json(const Witness& w) {
  if (w.kind == Witness::Kind::None) return nullptr;
  Json j;
  j["type"] = to_string(w.kind);
  switch (w.kind) {
    case Witness::Kind::Vertex:
    case Witness::Kind::Pair: j["vertices"] = w.vertices; break;
    case Witness::Kind::SetPair:
      j["x"] = w.set_x;
      if (!w.set_y.empty()) j["y"] = w.set_y;
      break;
    case Witness::Kind::Map: {
      Json m = Json::array();
      for (auto [x, fx] : w.map) m.push_back({x, fx});
      j["map"] = std::move(m);
      break;
    }
    default: break;
  }
  return j;
}

inline Witness witness_from_json(const Json& j) {
  Witness w;
  if (j.is_null()) return w;
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "vertex" || type == "pair") {
      w.kind = type == "vertex" ? Witness::Kind::Vertex : Witness::Kind::Pair;
      w.vertices = j.at("vertices").get<std::vector<std::size_t>>();
    } else if (type == "set_pair") {
      w.kind = Witness::Kind::SetPair;
      w.set_x = j.at("x").get<std::vector<std::size_t>>();
      w.set_y = j.value("y", std::vector<std::size_t>{});
    } else if (type == "map") {
      w.kind = Witness::Kind::Map;
      for (const auto& e : j.at("map")) w.map.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    } else {
      throw ParseError("unknown witness type '" + type + "'", 0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed witness: ") + e.what(), 0);
  }
  return w;
}

inline Json verdict_to_json(const ConditionVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["witness"] = witness_to_json(v.witness);
  j["exact"] = v.exact;
  j["elapsed_ms"] = v.elapsed_ms;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline Json typicality_to_json(const TypicalityReport& r) {
  Json j;
  j["ktilde"] = r.ktilde;
  j["q0"] = to_string(r.q0);
  j["delta0"] = to_string(r.delta0);
  Json c;
  for (const auto* v : r.verdicts()) c[v->condition] = verdict_to_json(*v);
  j["conditions"] = std::move(c);
  j["exit_code"] = r.exit_code();
  return j;
}

inline Json reasonable_to_json(const ReasonableReport& r) {
  Json j;
  j["ktilde"] = r.ktilde;
  j["k"] = r.k;
  j["q"] = to_string(r.q);
  j["delta"] = to_string(r.delta);
  j["size_hypothesis"] = r.size_hypothesis;
  Json c;
  for (const auto* v : r.verdicts()) c[v->condition] = verdict_to_json(*v);
  j["conditions"] = std::move(c);
  j["exit_code"] = r.exit_code();
  return j;
}

// Bounds --------------------------------------------------------------------

inline Json precondition_to_json(const PreconditionReport& r) {
  Json j;
  j["ktilde"] = r.ktilde.to_string();
  j["p"] = to_string(r.p);
  j["p_prime"] = to_string(r.p_prime);
  j["q"] = to_string(r.q);
  j["delta"] = to_string(r.delta);
  j["deleted"] = r.deleted;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["statement"] = c.statement;
    e["verdict"] = to_string(c.verdict);
    e["log_margin"] = number_or_null(c.log_margin);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["chain"] = to_string(r.chain());
  return j;
}

inline Json epsilon_ledger_to_json(const EpsilonLedger& l) {
  Json j;
  j["q"] = to_string(l.q);
  j["delta"] = to_string(l.delta);
  j["k"] = l.k.to_string();
  Json eps;
  for (const auto& [name, iv] : l.eps) eps[name] = iv.to_string(17);
  j["eps"] = std::move(eps);
  Json ineq = Json::array();
  for (const auto& v : l.inequalities) {
    Json e;
    e["name"] = v.name;
    e["verdict"] = to_string(v.verdict());
    Json links = Json::array();
    for (const auto& c : v.links)
      links.push_back({{"lhs", c.lhs}, {"rhs", c.rhs}, {"relation", c.relation == Relation::Less ? "<" : "<="}, {"verdict", to_string(c.verdict)},
                       {"log_margin", number_or_null(c.log_margin)}});
    e["links"] = std::move(links);
    ineq.push_back(std::move(e));
  }
  j["inequalities"] = std::move(ineq);
  j["all_hold"] = l.all_hold();
  return j;
}

/// One CSV row per q: q, eps1..eps5 midpoints, and a verdict bitmap with one character per inequality
/// (T true, F false, U undecided).
inline std::string epsilon_ledger_csv(const std::vector<EpsilonLedger>& rows) {
  std::ostringstream os;
  os << "q,eps1,eps2,eps3,eps4,eps5,verdicts\n";
  os << std::setprecision(10);
  for (const auto& l : rows) {
    os << to_string(l.q);
    for (const auto& e : l.eps) os << ',' << e.second.mid();
    os << ',';
    for (const auto& v : l.inequalities) os << (v.verdict() == Certainty::True ? 'T' : v.verdict() == Certainty::False ? 'F' : 'U');
    os << '\n';
  }
  return os.str();
}

// Blow-up counts and optimization -------------------------------------------

inline Json bounds_to_json(const CountBounds& b) {
  if (b.exact()) return to_string(b.lower);
  return Json{{"lower", to_string(b.lower)}, {"upper", to_string(b.upper)}};
}

inline Json partition_to_json(const PartitionReport& r, const LeafPolicy& policy) {
  Json j;
  j["n"] = r.n;
  j["ktilde"] = r.ktilde;
  j["leaf_policy"] = policy.name();
  j["compositions"] = r.compositions;
  j["evaluated"] = r.evaluated;
  if (!r.reduction.empty()) j["reduction"] = r.reduction;
  Json ms = Json::array();
  for (const auto& c : r.maximizers) ms.push_back({{"sizes", c.sizes}, {"value", bounds_to_json(c.value)}, {"balanced", c.balanced}});
  j["maximizers"] = std::move(ms);
  j["all_balanced"] = r.all_balanced;
  j["certified"] = r.certified;
  j["balanced_value"] = bounds_to_json(r.balanced_value);
  j["balanced_attains_max"] = r.balanced_attains_max ? Json(*r.balanced_attains_max) : Json(nullptr);
  return j;
}

// Sweeps --------------------------------------------------------------------

inline std::string sweep_csv(const std::vector<SweepCell>& cells, double alpha) {
  std::ostringstream os;
  os << "ktilde,p,q0,delta0,samples,degree,distinguishers,homogeneous_pair,rigidity,all,aut_2k,skipped,wilson_lo,wilson_hi,alpha,verdict\n";
  os << std::setprecision(6);
  for (const auto& c : cells) {
    os << c.ktilde << ',' << c.p << ',' << to_string(c.q0) << ',' << to_string(c.delta0) << ',' << c.samples;
    for (const char* name : {"degree", "distinguishers", "homogeneous_pair", "rigidity", "all", "aut_2k"}) os << ',' << c.count(name);
    os << ',' << c.skipped << ',' << c.all_interval.lo << ',' << c.all_interval.hi << ',' << alpha << ','
       << (c.consistent ? "Consistent" : "Inconsistent") << '\n';
  }
  return os.str();
}

}  // namespace inducilab

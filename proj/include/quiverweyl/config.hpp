#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quiverweyl/reduction.hpp"
#include "quiverweyl/systems.hpp"

namespace quiverweyl {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cocycle",  "symplectic", "quantum-action",
                                              "comoment", "reduction",  "flatness"};
  return names;
}

struct VerificationJob {
  QuiverData quiver;
  Embedding embedding;
  std::vector<GroupElement> group;
  OrbitSpec orbit;
  std::optional<HamiltonianSystem> system;
  std::vector<std::string> suites;
  // −1 selects degree + 2 per query.
  int degree_bound = -1;
  std::uint64_t seed = 0;
  // Random instances per sampled check; 0 keeps the per-check defaults.
  int samples = 0;
};

namespace detail {

using nlohmann::json;

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline std::string where(const std::string& path) { return path.empty() ? "config" : path; }

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(where(path) + ": missing field '" + key + "'");
  return j.at(key);
}

inline void only_keys(const json& j, std::initializer_list<const char*> keys,
                      const std::string& path) {
  if (!j.is_object()) throw ValidationError(where(path) + ": expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ValidationError(where(path) + ": unknown field '" + k + "'");
}

inline std::string text(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ValidationError(path + ": expected a string or integer");
}

inline Rational rational(const json& j, const std::string& path) {
  try {
    return Rational::parse(text(j, path));
  } catch (const SyntaxError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Scalar scalar(const json& j, const std::string& path, const ParameterSet& names) {
  try {
    return parse_scalar(text(j, path), names);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline QuiverData parse_quiver(const json& j) {
  only_keys(j, {"parts", "dims", "part_labels", "edges"}, "quiver");
  auto parts = member(j, "parts", "quiver").get<std::vector<std::vector<std::string>>>();
  std::map<std::string, int> dims;
  for (const auto& [k, v] : member(j, "dims", "quiver").items()) {
    if (!v.is_number_integer() || v.get<int>() < 0)
      throw ValidationError("quiver.dims." + k + ": expected a non-negative integer");
    dims[k] = v.get<int>();
  }
  std::optional<std::vector<std::pair<std::string, std::string>>> edges;
  if (j.contains("edges")) edges = j.at("edges").get<std::vector<std::pair<std::string, std::string>>>();
  std::vector<std::string> labels;
  if (j.contains("part_labels")) labels = j.at("part_labels").get<std::vector<std::string>>();
  try {
    return QuiverData::build(parts, dims, edges, labels);
  } catch (const Error& e) {
    throw ValidationError(std::string("quiver: ") + e.what());
  }
}

inline Embedding parse_embedding(const json& j) {
  if (!j.is_array()) throw ValidationError("embedding: expected an array of points");
  std::vector<ProjPoint> pts;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string path = "embedding[" + std::to_string(k) + "]";
    try {
      pts.push_back(ProjPoint::parse(text(j[k], path)));
    } catch (const SyntaxError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return Embedding(std::move(pts));
}

inline std::vector<GroupElement> parse_group(const json& j) {
  if (!j.is_array()) throw ValidationError("group: expected an array of [a, b, c, d]");
  std::vector<GroupElement> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string path = "group[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 4) throw ValidationError(path + ": expected [a, b, c, d]");
    try {
      out.emplace_back(rational(j[k][0], path), rational(j[k][1], path), rational(j[k][2], path),
                       rational(j[k][3], path));
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return out;
}

inline OrbitSpec parse_orbit(const json& j, const QuiverData& q) {
  only_keys(j, {"scalars"}, "orbit");
  OrbitSpec o;
  for (const auto& [k, v] : member(j, "scalars", "orbit").items()) {
    auto node = q.find_node(k);
    if (!node) throw ValidationError("orbit.scalars: unknown node '" + k + "'");
    Scalar s = scalar(v, "orbit.scalars." + k, {});
    if (!s.is_zero()) o.scalars[*node] = s;
  }
  return o;
}

inline HamiltonianSystem parse_system(const json& j, const QuiverData& q, const Embedding& a) {
  if (j.is_string() || (j.is_object() && j.contains("builtin"))) {
    std::string name = j.is_string() ? j.get<std::string>() : text(j.at("builtin"), "system.builtin");
    if (j.is_object()) only_keys(j, {"builtin"}, "system");
    if (name != "schlesinger") throw ValidationError("system: unknown built-in '" + name + "'");
    try {
      return build_schlesinger(q, a);
    } catch (const UnsupportedShape& e) {
      throw ValidationError(std::string("system: ") + e.what());
    }
  }
  only_keys(j, {"times", "potentials"}, "system");
  HamiltonianSystem sys{q, {}, {}, {}};
  // Declared in node order so that time indices do not depend on key order.
  const json& times = member(j, "times", "system");
  if (!times.is_object()) throw ValidationError("system.times: expected node -> time name");
  for (const auto& [k, v] : times.items())
    if (!q.find_node(k)) throw ValidationError("system.times: unknown node '" + k + "'");
  for (NodeId i = 0; i < q.node_count(); ++i) {
    const std::string& label = q.node_label(i);
    if (!times.contains(label)) continue;
    std::string name = text(times.at(label), "system.times." + label);
    if (sys.times.find(name)) throw ValidationError("system.times: duplicate time '" + name + "'");
    sys.times.declare(name);
    sys.time_nodes.push_back(i);
  }
  const json& pots = member(j, "potentials", "system");
  if (!pots.is_object()) throw ValidationError("system.potentials: expected time -> terms");
  for (const auto& [t, terms] : pots.items()) {
    std::string path = "system.potentials." + t;
    if (!sys.times.find(t)) throw ValidationError(path + ": undeclared time");
    if (!terms.is_array()) throw ValidationError(path + ": expected an array of terms");
    Potential w;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      std::string tp = path + "[" + std::to_string(k) + "]";
      only_keys(terms[k], {"cycle", "coefficient"}, tp);
      std::vector<ArrowId> arrows;
      try {
        for (const auto& label : member(terms[k], "cycle", tp).get<std::vector<std::string>>())
          arrows.push_back(q.arrow_by_label(label));
        w.add(Cycle(q, arrows), scalar(member(terms[k], "coefficient", tp), tp, sys.times));
      } catch (const ValidationError&) {
        throw;
      } catch (const Error& e) {
        throw ValidationError(tp + ": " + e.what());
      }
    }
    sys.hamiltonians[sys.times.find(t)->index] = w;
  }
  validate_system(sys);
  return sys;
}

inline std::vector<std::string> parse_suites(const json& j) {
  std::vector<std::string> out;
  for (const auto& name : j.get<std::vector<std::string>>()) {
    if (name == "all") {
      out = suite_names();
      return out;
    }
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw ValidationError("run.suites: unknown suite '" + name + "'");
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

}  // namespace detail

// Suite list with "all" expanded; throws ValidationError on unknown names.
inline std::vector<std::string> resolve_suites(const std::vector<std::string>& names) {
  return detail::parse_suites(nlohmann::json(names));
}

inline VerificationJob parse_config_text(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, column);
  }
  try {
    detail::only_keys(j, {"quiver", "embedding", "group", "orbit", "system", "run"}, "");
    QuiverData q = detail::parse_quiver(detail::member(j, "quiver", ""));
    Embedding a = detail::parse_embedding(detail::member(j, "embedding", ""));
    require_compatible(q, a);
    VerificationJob job{q, a, {}, {}, std::nullopt, suite_names(), -1, 0, 0};
    if (j.contains("group")) job.group = detail::parse_group(j.at("group"));
    if (j.contains("orbit")) job.orbit = detail::parse_orbit(j.at("orbit"), q);
    if (j.contains("system")) job.system = detail::parse_system(j.at("system"), q, a);
    if (j.contains("run")) {
      const json& run = j.at("run");
      detail::only_keys(run, {"suites", "degree_bound", "seed", "samples"}, "run");
      if (run.contains("suites")) job.suites = detail::parse_suites(run.at("suites"));
      if (run.contains("degree_bound")) job.degree_bound = run.at("degree_bound").get<int>();
      if (run.contains("seed")) job.seed = run.at("seed").get<std::uint64_t>();
      if (run.contains("samples")) job.samples = run.at("samples").get<int>();
      if (job.samples < 0) throw ValidationError("run.samples: expected a non-negative integer");
    }
    return job;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

inline VerificationJob parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace quiverweyl

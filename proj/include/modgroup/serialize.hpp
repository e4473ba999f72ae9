#pragma once

// Canonical JSON and DOT encodings of ModularGraph.
//
// JSON: {"n":N,"alpha":[[v,w],...],"beta":[[v,w],...],"root":r|null}
// with vertex labels in pairs, pairs sorted ascending, alpha pairs listed once
// with v <= w. Weakly labeled graphs carry an extra "labels" array.

#include <algorithm>
#include <regex>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"

namespace modgroup {

using Json = nlohmann::ordered_json;

inline Json to_json(const ModularGraph& g) {
  Json alpha = Json::array();
  Json beta = Json::array();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (const Vertex w = g.alpha(v); w != kNone && w >= v) alpha.push_back({g.label(v), g.label(w)});
    if (const Vertex w = g.beta(v); w != kNone) beta.push_back({g.label(v), g.label(w)});
  }
  Json j;
  j["n"] = g.n();
  if (!g.is_labeled()) j["labels"] = g.labels();
  j["alpha"] = std::move(alpha);
  j["beta"] = std::move(beta);
  j["root"] = g.has_root() ? Json(g.label(*g.root())) : Json(nullptr);
  return j;
}

inline std::string encode(const ModularGraph& g) { return to_json(g).dump(); }

namespace detail {

inline Label json_label(const Json& x, const char* what) {
  if (!x.is_number_integer()) throw GraphError(std::string(what) + " must be an integer vertex label");
  return x.get<Label>();
}

inline Vertex json_vertex(const ModularGraph& g, const Json& x, const char* what) {
  const Label l = json_label(x, what);
  const Vertex v = g.find_label(l);
  if (v == kNone) throw GraphError(std::string(what) + " refers to unknown vertex " + std::to_string(l));
  return v;
}

inline std::vector<std::pair<Vertex, Vertex>> json_pairs(const ModularGraph& g, const Json& j, const char* key) {
  std::vector<std::pair<Vertex, Vertex>> out;
  if (!j.contains(key)) return out;
  const Json& arr = j.at(key);
  if (!arr.is_array()) throw GraphError(std::string("\"") + key + "\" must be an array of pairs");
  for (const Json& p : arr) {
    if (!p.is_array() || p.size() != 2) throw GraphError(std::string("\"") + key + "\" entries must be pairs");
    out.emplace_back(json_vertex(g, p[0], key), json_vertex(g, p[1], key));
  }
  return out;
}

}  // namespace detail

// Builds the graph described by `j`; structural conflicts throw GraphError.
// The result is not validated against any mode.
inline ModularGraph from_json(const Json& j) {
  if (!j.is_object()) throw GraphError("graph JSON must be an object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) throw GraphError("graph JSON needs an integer \"n\"");
  const auto n = j.at("n").get<long long>();
  if (n <= 0) throw GraphError("\"n\" must be positive");
  if (n > 100'000'000) throw GraphError("\"n\" is too large");
  ModularGraph g;
  if (j.contains("labels")) {
    const Json& ls = j.at("labels");
    if (!ls.is_array() || static_cast<long long>(ls.size()) != n) throw GraphError("\"labels\" must list n labels");
    std::vector<Label> labels;
    for (const Json& x : ls) labels.push_back(detail::json_label(x, "labels"));
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) throw GraphError("duplicate vertex label");
    g = ModularGraph(std::move(labels));
  } else {
    g = ModularGraph(static_cast<std::size_t>(n));
  }
  for (auto [v, w] : detail::json_pairs(g, j, "alpha")) {
    if (g.alpha(v) == w) throw GraphError("a-edge listed twice at vertex " + std::to_string(g.label(v)));
    g.set_alpha(v, w);
  }
  for (auto [v, w] : detail::json_pairs(g, j, "beta")) {
    if (g.beta(v) == w) throw GraphError("b-edge listed twice at vertex " + std::to_string(g.label(v)));
    g.set_beta(v, w);
  }
  if (j.contains("root") && !j.at("root").is_null()) g.set_root(detail::json_vertex(g, j.at("root"), "root"));
  return g;
}

inline ModularGraph decode(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw GraphError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

// a-edges undirected, b-edges directed, root double-circled.
inline std::string to_dot(const ModularGraph& g) {
  std::ostringstream os;
  os << "digraph G {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < g.n(); ++v) {
    os << "  " << g.label(v);
    if (g.has_root() && *g.root() == v) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (const Vertex w = g.alpha(v); w != kNone && w >= v) {
      os << "  " << g.label(v) << " -> " << g.label(w) << " [label=\"a\", dir=none];\n";
    }
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (const Vertex w = g.beta(v); w != kNone) {
      os << "  " << g.label(v) << " -> " << g.label(w) << " [label=\"b\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

// Reads the DOT dialect written by to_dot.
inline ModularGraph from_dot(const std::string& text) {
  static const std::regex node_re(R"re(^\s*(\d+)\s*(\[\s*shape\s*=\s*(\w+)\s*\])?\s*;?\s*$)re");
  static const std::regex edge_re(R"re(^\s*(\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*"([ab])"[^\]]*\]\s*;?\s*$)re");
  static const std::regex skip_re(R"re(^\s*(digraph\b.*\{|node\s*\[.*\]\s*;?|\}|)\s*$)re");
  std::vector<Label> labels;
  Label root = 0;
  std::vector<std::tuple<Label, Label, char>> edges;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::smatch m;
    if (std::regex_match(line, m, edge_re)) {
      edges.emplace_back(std::stoi(m[1]), std::stoi(m[2]), m[3].str()[0]);
    } else if (std::regex_match(line, m, node_re)) {
      labels.push_back(std::stoi(m[1]));
      if (m[3].matched && m[3] == "doublecircle") root = labels.back();
    } else if (!std::regex_match(line, skip_re)) {
      throw GraphError("unrecognized DOT line " + std::to_string(line_no) + ": " + line);
    }
  }
  if (labels.empty()) throw GraphError("DOT input declares no vertices");
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) throw GraphError("duplicate DOT vertex");
  ModularGraph g(std::move(labels));
  auto vertex = [&](Label l) {
    const Vertex v = g.find_label(l);
    if (v == kNone) throw GraphError("DOT edge refers to undeclared vertex " + std::to_string(l));
    return v;
  };
  for (auto [x, y, c] : edges) {
    if (c == 'a') g.set_alpha(vertex(x), vertex(y));
    else g.set_beta(vertex(x), vertex(y));
  }
  if (root != 0) g.set_root(vertex(root));
  return g;
}

}  // namespace modgroup

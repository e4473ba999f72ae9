#pragma once

// Edge-labeled graphs over {a, b}: the common carrier for PSL2(Z)-reduced,
// cyclically reduced and silhouette graphs.
//
// Vertices are stored at indices 0..n-1 in increasing order of their labels.
// Labels are positive integers; a graph is "labeled" when its labels are
// exactly 1..n and "weakly labeled" otherwise. a-edges form a partial
// involution (alpha(v) == v is an a-loop). b-edges form a partial injection
// beta, kept together with its inverse.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace modgroup {

using Vertex = std::int32_t;
using Label = std::int32_t;
inline constexpr Vertex kNone = -1;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModularGraph {
 public:
  ModularGraph() = default;

  // Labeled graph on 1..n with no edges.
  explicit ModularGraph(std::size_t n)
      : labels_(n), alpha_(n, kNone), beta_(n, kNone), beta_inv_(n, kNone) {
    std::iota(labels_.begin(), labels_.end(), Label{1});
  }

  // Weakly labeled graph; labels must be positive and strictly increasing.
  explicit ModularGraph(std::vector<Label> labels)
      : labels_(std::move(labels)),
        alpha_(labels_.size(), kNone),
        beta_(labels_.size(), kNone),
        beta_inv_(labels_.size(), kNone) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] <= 0) throw GraphError("vertex labels must be positive");
      if (i > 0 && labels_[i] <= labels_[i - 1]) throw GraphError("vertex labels must be strictly increasing");
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  Vertex n() const noexcept { return static_cast<Vertex>(labels_.size()); }

  Label label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  bool is_labeled() const noexcept {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] != static_cast<Label>(i + 1)) return false;
    }
    return true;
  }

  // Index of the vertex carrying `l`, or kNone.
  Vertex find_label(Label l) const noexcept {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return kNone;
    return static_cast<Vertex>(it - labels_.begin());
  }

  Vertex alpha(Vertex v) const { return alpha_[static_cast<std::size_t>(v)]; }
  Vertex beta(Vertex v) const { return beta_[static_cast<std::size_t>(v)]; }
  Vertex beta_inv(Vertex v) const { return beta_inv_[static_cast<std::size_t>(v)]; }

  bool has_a_edge(Vertex v) const { return alpha(v) != kNone; }
  bool has_b_edge(Vertex v) const { return beta(v) != kNone || beta_inv(v) != kNone; }

  bool has_a_loop(Vertex v) const { return alpha(v) == v; }
  bool has_b_loop(Vertex v) const { return beta(v) == v; }

  // v lies on a directed b-triangle.
  bool on_b_triangle(Vertex v) const {
    const Vertex w = beta(v);
    return w != kNone && w != v && beta(w) != kNone;
  }

  // v is an endpoint of an isolated b-edge (no b-loop, not on a triangle).
  bool on_isolated_b_edge(Vertex v) const {
    const Vertex w = beta(v);
    if (w != kNone) return w != v && beta(w) == kNone;
    return beta_inv(v) != kNone;
  }

  // The other endpoint of the isolated b-edge at v.
  Vertex isolated_b_partner(Vertex v) const { return beta(v) != kNone ? beta(v) : beta_inv(v); }

  std::optional<Vertex> root() const noexcept {
    if (root_ == kNone) return std::nullopt;
    return root_;
  }
  bool has_root() const noexcept { return root_ != kNone; }

  void set_root(Vertex v) {
    check_vertex(v);
    root_ = v;
  }
  void clear_root() noexcept { root_ = kNone; }

  // Adds the a-edge v -- w (an a-loop when v == w).
  void set_alpha(Vertex v, Vertex w) {
    check_vertex(v);
    check_vertex(w);
    if ((alpha(v) != kNone && alpha(v) != w) || (alpha(w) != kNone && alpha(w) != v)) {
      throw GraphError("two a-edges at vertex " + std::to_string(label(alpha(v) != kNone && alpha(v) != w ? v : w)));
    }
    alpha_[static_cast<std::size_t>(v)] = w;
    alpha_[static_cast<std::size_t>(w)] = v;
  }

  void clear_alpha(Vertex v) {
    const Vertex w = alpha(v);
    if (w == kNone) return;
    alpha_[static_cast<std::size_t>(v)] = kNone;
    alpha_[static_cast<std::size_t>(w)] = kNone;
  }

  // Adds the directed b-edge v -> w (a b-loop when v == w).
  void set_beta(Vertex v, Vertex w) {
    check_vertex(v);
    check_vertex(w);
    if (beta(v) != kNone && beta(v) != w) throw GraphError("two outgoing b-edges at vertex " + std::to_string(label(v)));
    if (beta_inv(w) != kNone && beta_inv(w) != v) {
      throw GraphError("two incoming b-edges at vertex " + std::to_string(label(w)));
    }
    beta_[static_cast<std::size_t>(v)] = w;
    beta_inv_[static_cast<std::size_t>(w)] = v;
  }

  // Removes the b-edge leaving v.
  void clear_beta(Vertex v) {
    const Vertex w = beta(v);
    if (w == kNone) return;
    beta_[static_cast<std::size_t>(v)] = kNone;
    beta_inv_[static_cast<std::size_t>(w)] = kNone;
  }

  // Relabels vertices onto 1..n, preserving order.
  void normalize_labels() noexcept { std::iota(labels_.begin(), labels_.end(), Label{1}); }

  // Copy without the vertices flagged in `dead`; surviving labels are kept.
  // Edges into dead vertices are dropped.
  ModularGraph without(const std::vector<bool>& dead) const {
    std::vector<Vertex> remap(size(), kNone);
    std::vector<Label> kept;
    for (std::size_t v = 0; v < size(); ++v) {
      if (!dead[v]) {
        remap[v] = static_cast<Vertex>(kept.size());
        kept.push_back(labels_[v]);
      }
    }
    ModularGraph out;
    out.labels_ = std::move(kept);
    out.alpha_.assign(out.size(), kNone);
    out.beta_.assign(out.size(), kNone);
    out.beta_inv_.assign(out.size(), kNone);
    for (std::size_t v = 0; v < size(); ++v) {
      const Vertex nv = remap[v];
      if (nv == kNone) continue;
      auto map = [&](Vertex w) { return w == kNone ? kNone : remap[static_cast<std::size_t>(w)]; };
      out.alpha_[static_cast<std::size_t>(nv)] = map(alpha_[v]);
      const Vertex b = map(beta_[v]);
      if (b != kNone) {
        out.beta_[static_cast<std::size_t>(nv)] = b;
        out.beta_inv_[static_cast<std::size_t>(b)] = nv;
      }
    }
    if (root_ != kNone) out.root_ = remap[static_cast<std::size_t>(root_)];
    return out;
  }

  friend bool operator==(const ModularGraph&, const ModularGraph&) = default;

 private:
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n()) throw GraphError("vertex index " + std::to_string(v) + " out of range");
  }

  std::vector<Label> labels_;
  std::vector<Vertex> alpha_;
  std::vector<Vertex> beta_;
  std::vector<Vertex> beta_inv_;
  Vertex root_ = kNone;
};

// (n, k2, k3, l2, l3): vertices, isolated a-edges, isolated b-edges, a-loops, b-loops.
struct CombinatorialType {
  int n = 0;
  int k2 = 0;
  int k3 = 0;
  int l2 = 0;
  int l3 = 0;

  friend bool operator==(const CombinatorialType&, const CombinatorialType&) = default;
  friend auto operator<=>(const CombinatorialType&, const CombinatorialType&) = default;

  // Counts are realizable by some a-involution and some b-structure on n vertices
  // (with at most one vertex uncovered on each side).
  bool consistent() const noexcept {
    if (n < 1 || k2 < 0 || k3 < 0 || l2 < 0 || l3 < 0) return false;
    const int a_covered = 2 * k2 + l2;
    const int b_rest = n - 2 * k3 - l3;
    if (a_covered > n || a_covered < n - 1) return false;
    if (b_rest < 0) return false;
    return b_rest % 3 == 0 || (b_rest - 1 >= 0 && (b_rest - 1) % 3 == 0);
  }
};

struct TypeDelta {
  int dn = 0;
  int dk2 = 0;
  int dk3 = 0;
  int dl2 = 0;
  int dl3 = 0;

  static constexpr TypeDelta lambda3() { return {-1, -1, 0, 1, -1}; }
  static constexpr TypeDelta lambda21() { return {-1, 0, 1, -1, 0}; }
  static constexpr TypeDelta lambda22() { return {-2, -1, -1, 0, 0}; }
  static constexpr TypeDelta kappa3() { return {-2, -1, -1, 0, 0}; }

  static constexpr TypeDelta between(const CombinatorialType& from, const CombinatorialType& to) {
    return {to.n - from.n, to.k2 - from.k2, to.k3 - from.k3, to.l2 - from.l2, to.l3 - from.l3};
  }

  friend bool operator==(const TypeDelta&, const TypeDelta&) = default;
};

constexpr CombinatorialType operator+(CombinatorialType t, const TypeDelta& d) {
  return {t.n + d.dn, t.k2 + d.dk2, t.k3 + d.dk3, t.l2 + d.dl2, t.l3 + d.dl3};
}
constexpr CombinatorialType operator-(CombinatorialType t, const TypeDelta& d) {
  return {t.n - d.dn, t.k2 - d.dk2, t.k3 - d.dk3, t.l2 - d.dl2, t.l3 - d.dl3};
}

inline std::string to_string(const CombinatorialType& t) {
  return "(" + std::to_string(t.n) + "," + std::to_string(t.k2) + "," + std::to_string(t.k3) + "," +
         std::to_string(t.l2) + "," + std::to_string(t.l3) + ")";
}

inline CombinatorialType combinatorial_type(const ModularGraph& g) {
  CombinatorialType t;
  t.n = g.n();
  for (Vertex v = 0; v < g.n(); ++v) {
    const Vertex a = g.alpha(v);
    if (a == v) ++t.l2;
    else if (a != kNone && v < a) ++t.k2;
    const Vertex b = g.beta(v);
    if (b == v) ++t.l3;
    else if (b != kNone && g.beta(b) == kNone) ++t.k3;
  }
  return t;
}

inline bool is_connected(const ModularGraph& g) {
  if (g.size() == 0) return false;
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : {g.alpha(v), g.beta(v), g.beta_inv(v)}) {
      if (w != kNone && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.size();
}

// Named small graphs.
inline bool is_delta1(const ModularGraph& g) { return g.size() == 1 && g.has_a_loop(0) && g.has_b_loop(0); }

// Two vertices joined by an a-edge and a b-edge.
inline bool is_delta2(const ModularGraph& g) {
  return g.size() == 2 && g.alpha(0) == 1 && (g.beta(0) == 1 || g.beta(1) == 0);
}

// Two a-loops joined by a b-edge.
inline bool is_delta3(const ModularGraph& g) {
  return g.size() == 2 && g.has_a_loop(0) && g.has_a_loop(1) && (g.beta(0) == 1 || g.beta(1) == 0);
}

// Two b-loops joined by an a-edge.
inline bool is_delta4(const ModularGraph& g) {
  return g.size() == 2 && g.alpha(0) == 1 && g.has_b_loop(0) && g.has_b_loop(1);
}

inline ModularGraph make_delta1() {
  ModularGraph g(1);
  g.set_alpha(0, 0);
  g.set_beta(0, 0);
  return g;
}

// The preferred labeling: b from 1 to 2, a joining 2 and 1.
inline ModularGraph make_delta2() {
  ModularGraph g(2);
  g.set_beta(0, 1);
  g.set_alpha(0, 1);
  return g;
}

inline ModularGraph make_delta3(bool b_from_first = true) {
  ModularGraph g(2);
  g.set_alpha(0, 0);
  g.set_alpha(1, 1);
  if (b_from_first) g.set_beta(0, 1);
  else g.set_beta(1, 0);
  return g;
}

inline ModularGraph make_delta4() {
  ModularGraph g(2);
  g.set_alpha(0, 1);
  g.set_beta(0, 0);
  g.set_beta(1, 1);
  return g;
}

enum class Mode { Reduced, CyclicallyReduced, Silhouette };

struct Validation {
  bool ok = true;
  std::string message;
  Vertex vertex = kNone;

  explicit operator bool() const noexcept { return ok; }

  static Validation failure(std::string msg, Vertex v = kNone) { return {false, std::move(msg), v}; }
};

// Checks the structural invariants and the coverage condition for `mode`.
// Reduced mode without a root is the same as cyclically reduced.
inline Validation validate(const ModularGraph& g, Mode mode) {
  const Vertex n = g.n();
  if (n == 0) return Validation::failure("graph has no vertices");
  auto at = [&](Vertex v) { return " at vertex " + std::to_string(g.label(v)); };
  for (Vertex v = 0; v < n; ++v) {
    const Vertex a = g.alpha(v);
    if (a != kNone && (a < 0 || a >= n || g.alpha(a) != v)) {
      return Validation::failure("a-edges do not form an involution" + at(v), v);
    }
    const Vertex b = g.beta(v);
    if (b != kNone && (b < 0 || b >= n || g.beta_inv(b) != v)) {
      return Validation::failure("b-edges are not injective" + at(v), v);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    const Vertex w = g.beta(v);
    if (w == kNone || w == v) continue;
    const Vertex u = g.beta(w);
    if (u == kNone) continue;
    if (u == v || g.beta(u) != v) {
      return Validation::failure("b-path of length 2 not closed into a triangle" + at(v), v);
    }
  }
  if (!is_connected(g)) return Validation::failure("graph is not connected");

  const Vertex exempt = (mode == Mode::Reduced && g.has_root()) ? *g.root() : kNone;
  for (Vertex v = 0; v < n; ++v) {
    if (v == exempt) continue;
    if (!g.has_a_edge(v)) return Validation::failure("vertex without a-edge" + at(v), v);
    if (!g.has_b_edge(v)) return Validation::failure("vertex without b-edge" + at(v), v);
  }
  if (mode == Mode::Silhouette && !is_delta1(g) && !is_delta2(g)) {
    const CombinatorialType t = combinatorial_type(g);
    if (t.n % 2 != 0 || t.k2 != t.n / 2 || t.k3 != 0 || t.l2 != 0 || t.l3 != 0) {
      return Validation::failure("combinatorial type " + to_string(t) + " is not that of a silhouette graph");
    }
  }
  return {};
}

// Adds the missing a-loop and/or b-loop at the root. Identity on cyclically reduced graphs.
inline ModularGraph complete(const ModularGraph& g) {
  ModularGraph out = g;
  for (Vertex v = 0; v < out.n(); ++v) {
    if (!out.has_a_edge(v)) out.set_alpha(v, v);
    if (!out.has_b_edge(v)) out.set_beta(v, v);
  }
  return out;
}

// Order-preserving relabeling onto 1..n.
inline ModularGraph relabel_normalize(ModularGraph g) {
  g.normalize_labels();
  return g;
}

// Breadth-first numbering from `start`, exploring a, b, b^-1 in that order.
// Two connected graphs admit an isomorphism sending s to s' iff their codes
// from s and s' coincide: every step is deterministic.
inline std::vector<std::int32_t> canonical_code(const ModularGraph& g, Vertex start) {
  std::vector<std::int32_t> order(g.size(), -1);
  std::vector<Vertex> queue;
  queue.reserve(g.size());
  order[static_cast<std::size_t>(start)] = 0;
  queue.push_back(start);
  std::vector<std::int32_t> code;
  code.reserve(3 * g.size() + 1);
  code.push_back(g.n());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex w : {g.alpha(v), g.beta(v), g.beta_inv(v)}) {
      if (w == kNone) {
        code.push_back(-1);
        continue;
      }
      auto& o = order[static_cast<std::size_t>(w)];
      if (o < 0) {
        o = static_cast<std::int32_t>(queue.size());
        queue.push_back(w);
      }
      code.push_back(o);
    }
  }
  return code;
}

// Lexicographically smallest code over all start vertices (or the root code when rooted).
inline std::vector<std::int32_t> canonical_form(const ModularGraph& g, bool rooted) {
  if (rooted) {
    if (!g.has_root()) throw GraphError("rooted canonical form requires a root");
    return canonical_code(g, *g.root());
  }
  std::vector<std::int32_t> best;
  for (Vertex v = 0; v < g.n(); ++v) {
    auto c = canonical_code(g, v);
    if (best.empty() || c < best) best = std::move(c);
  }
  return best;
}

inline bool is_isomorphic(const ModularGraph& g1, const ModularGraph& g2, bool rooted) {
  if (g1.size() != g2.size()) return false;
  if (rooted) {
    if (g1.has_root() != g2.has_root()) return false;
    if (!g1.has_root()) return is_isomorphic(g1, g2, false);
    return canonical_code(g1, *g1.root()) == canonical_code(g2, *g2.root());
  }
  if (g1.size() == 0) return true;
  const auto target = canonical_code(g1, 0);
  for (Vertex v = 0; v < g2.n(); ++v) {
    if (canonical_code(g2, v) == target) return true;
  }
  return false;
}

// Graph with vertices relabeled so that BFS order from the root is 1..n.
inline ModularGraph bfs_relabel(const ModularGraph& g) {
  if (!g.has_root()) throw GraphError("bfs_relabel requires a root");
  std::vector<Vertex> pos(g.size(), kNone);
  std::vector<Vertex> queue{*g.root()};
  pos[static_cast<std::size_t>(*g.root())] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex w : {g.alpha(v), g.beta(v), g.beta_inv(v)}) {
      if (w != kNone && pos[static_cast<std::size_t>(w)] == kNone) {
        pos[static_cast<std::size_t>(w)] = static_cast<Vertex>(queue.size());
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != g.size()) throw GraphError("bfs_relabel requires a connected graph");
  ModularGraph out(g.size());
  for (Vertex v = 0; v < g.n(); ++v) {
    const Vertex p = pos[static_cast<std::size_t>(v)];
    if (g.alpha(v) != kNone) out.set_alpha(p, pos[static_cast<std::size_t>(g.alpha(v))]);
    if (g.beta(v) != kNone) out.set_beta(p, pos[static_cast<std::size_t>(g.beta(v))]);
  }
  out.set_root(0);
  return out;
}

}  // namespace modgroup

#pragma once

// The silhouetting rewriting system on cyclically reduced graphs.
//
// Moves (v, w, v', w' are vertices, x' = alpha(x)):
//   Lambda3  (v)    b-loop at v, a-edge v--w with w != v: delete v, a-loop at w.
//   Lambda21 (v)    a-loop at v on a b-triangle u -> v -> x: delete v, b-edge x -> u.
//   Lambda22 (v,w)  a-loop at v, isolated b-edge v--w, w' != w: delete v, w, a-loop at w'.
//   Kappa3   (v,w)  isolated b-edge v -> w, v, w, v', w' distinct: delete v, w, a-edge v'--w'.
//   Exceptional     weakly labeled Delta1 / Delta2 / any Delta3 become labeled Delta1 or
//                   the preferred Delta2.
// Deleted vertices leave their labels vacant.

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "graph.hpp"

namespace modgroup {

enum class MoveKind { Lambda3, Lambda21, Lambda22, Kappa3, Exceptional };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Lambda3: return "Lambda3";
    case MoveKind::Lambda21: return "Lambda21";
    case MoveKind::Lambda22: return "Lambda22";
    case MoveKind::Kappa3: return "Kappa3";
    default: return "Exceptional";
  }
}

// 0: lambda3, 1: lambda2 (both kinds), 2: kappa3, 3: exceptional.
constexpr int stage_of(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::Lambda3: return 0;
    case MoveKind::Lambda21:
    case MoveKind::Lambda22: return 1;
    case MoveKind::Kappa3: return 2;
    default: return 3;
  }
}

inline TypeDelta delta_of(MoveKind k) {
  switch (k) {
    case MoveKind::Lambda3: return TypeDelta::lambda3();
    case MoveKind::Lambda21: return TypeDelta::lambda21();
    case MoveKind::Lambda22: return TypeDelta::lambda22();
    case MoveKind::Kappa3: return TypeDelta::kappa3();
    default: throw GraphError("exceptional moves have no fixed type delta");
  }
}

struct MoveRecord {
  MoveKind kind = MoveKind::Exceptional;
  std::vector<Label> pivots;  // (v) or (v, w); the smallest label for exceptional moves
  TypeDelta delta;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

// Priority used by the deterministic strategy: stage, then pivots.
inline bool move_before(const MoveRecord& x, const MoveRecord& y) {
  const int sx = stage_of(x.kind);
  const int sy = stage_of(y.kind);
  if (sx != sy) return sx < sy;
  return x.pivots < y.pivots;
}

namespace detail {

// Exceptional target for a 1- or 2-vertex graph, or nullopt when none applies.
inline std::optional<ModularGraph> exceptional_target(const ModularGraph& g) {
  if (is_delta1(g)) {
    if (g.label(0) == 1) return std::nullopt;
    return make_delta1();
  }
  if (is_delta3(g)) return make_delta1();
  if (is_delta2(g)) {
    if (g.label(0) == 1 && g.label(1) == 2 && g.beta(0) == 1) return std::nullopt;
    return make_delta2();
  }
  return std::nullopt;
}

inline bool lambda3_at(const ModularGraph& g, Vertex v) {
  return g.has_b_loop(v) && g.alpha(v) != kNone && g.alpha(v) != v;
}

// Partner w for a lambda22 move at v, or kNone.
inline Vertex lambda22_partner(const ModularGraph& g, Vertex v) {
  if (!g.has_a_loop(v) || !g.on_isolated_b_edge(v)) return kNone;
  const Vertex w = g.isolated_b_partner(v);
  const Vertex wp = g.alpha(w);
  return (wp != kNone && wp != w) ? w : kNone;
}

inline bool lambda21_at(const ModularGraph& g, Vertex v) { return g.has_a_loop(v) && g.on_b_triangle(v); }

// v is the source of an isolated b-edge admitting a kappa3 move.
inline bool kappa3_at(const ModularGraph& g, Vertex v) {
  const Vertex w = g.beta(v);
  if (w == kNone || w == v || g.beta(w) != kNone || g.beta_inv(v) != kNone) return false;
  const Vertex vp = g.alpha(v);
  const Vertex wp = g.alpha(w);
  return vp != kNone && wp != kNone && vp != v && vp != w && wp != w && wp != v;
}

inline void erase_vertex(ModularGraph& g, std::vector<bool>& dead, Vertex v) {
  g.clear_alpha(v);
  g.clear_beta(v);
  if (const Vertex u = g.beta_inv(v); u != kNone) g.clear_beta(u);
  dead[static_cast<std::size_t>(v)] = true;
}

// Applies a non-exceptional move in place; returns the failed pattern on mismatch.
inline std::optional<std::string> apply_in_place(ModularGraph& g, std::vector<bool>& dead, MoveKind kind, Vertex v,
                                                 Vertex w) {
  switch (kind) {
    case MoveKind::Lambda3: {
      if (!lambda3_at(g, v)) return "Lambda3 needs a b-loop at v and an a-edge from v to another vertex";
      const Vertex t = g.alpha(v);
      erase_vertex(g, dead, v);
      g.set_alpha(t, t);
      return std::nullopt;
    }
    case MoveKind::Lambda21: {
      if (!lambda21_at(g, v)) return "Lambda21 needs an a-loop at v and v on a b-triangle";
      const Vertex u = g.beta_inv(v);
      const Vertex x = g.beta(v);
      g.clear_beta(x);
      erase_vertex(g, dead, v);
      g.set_beta(x, u);
      return std::nullopt;
    }
    case MoveKind::Lambda22: {
      if (w == kNone || lambda22_partner(g, v) != w) {
        return "Lambda22 needs an a-loop at v, an isolated b-edge v--w and an a-edge from w to another vertex";
      }
      const Vertex wp = g.alpha(w);
      erase_vertex(g, dead, v);
      erase_vertex(g, dead, w);
      g.set_alpha(wp, wp);
      return std::nullopt;
    }
    case MoveKind::Kappa3: {
      if (w == kNone || g.beta(v) != w || !kappa3_at(g, v)) {
        return "Kappa3 needs an isolated b-edge v -> w with a-edges to two further distinct vertices";
      }
      const Vertex vp = g.alpha(v);
      const Vertex wp = g.alpha(w);
      erase_vertex(g, dead, v);
      erase_vertex(g, dead, w);
      g.set_alpha(vp, wp);
      return std::nullopt;
    }
    default: return "exceptional moves are applied to the whole graph";
  }
}

inline MoveRecord record(const ModularGraph& g, MoveKind kind, Vertex v, Vertex w = kNone) {
  MoveRecord m;
  m.kind = kind;
  m.pivots.push_back(g.label(v));
  if (w != kNone) m.pivots.push_back(g.label(w));
  m.delta = delta_of(kind);
  return m;
}

inline MoveRecord exceptional_record(const ModularGraph& from, const ModularGraph& to) {
  MoveRecord m;
  m.kind = MoveKind::Exceptional;
  m.pivots.push_back(from.label(0));
  m.delta = TypeDelta::between(combinatorial_type(from), combinatorial_type(to));
  return m;
}

}  // namespace detail

// Every applicable move, sorted by stage and pivot.
inline std::vector<MoveRecord> find_moves(const ModularGraph& g) {
  std::vector<MoveRecord> out;
  if (auto t = detail::exceptional_target(g)) {
    out.push_back(detail::exceptional_record(g, *t));
    return out;
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (detail::lambda3_at(g, v)) out.push_back(detail::record(g, MoveKind::Lambda3, v));
    if (detail::lambda21_at(g, v)) out.push_back(detail::record(g, MoveKind::Lambda21, v));
    if (const Vertex w = detail::lambda22_partner(g, v); w != kNone) {
      out.push_back(detail::record(g, MoveKind::Lambda22, v, w));
    }
    if (detail::kappa3_at(g, v)) out.push_back(detail::record(g, MoveKind::Kappa3, v, g.beta(v)));
  }
  std::stable_sort(out.begin(), out.end(), move_before);
  return out;
}

inline ModularGraph apply_move(const ModularGraph& g, const MoveRecord& m) {
  if (m.kind == MoveKind::Exceptional) {
    auto t = detail::exceptional_target(g);
    if (!t) throw GraphError("move not applicable: Exceptional needs a weakly labeled Delta1, Delta2 or Delta3");
    return *t;
  }
  const std::size_t arity = (m.kind == MoveKind::Lambda3 || m.kind == MoveKind::Lambda21) ? 1 : 2;
  if (m.pivots.size() != arity) throw GraphError(std::string("move not applicable: wrong pivot count for ") + to_string(m.kind));
  const Vertex v = g.find_label(m.pivots[0]);
  const Vertex w = arity == 2 ? g.find_label(m.pivots[1]) : kNone;
  if (v == kNone || (arity == 2 && w == kNone)) throw GraphError("move not applicable: pivot label not in graph");
  ModularGraph h = g;
  std::vector<bool> dead(g.size(), false);
  if (auto err = detail::apply_in_place(h, dead, m.kind, v, w)) throw GraphError("move not applicable: " + *err);
  return h.without(dead);
}

// Fixpoint of the rewriting system by the staged strategy: always the
// smallest-pivot move of the earliest non-empty stage. Pivots are appended to
// `trace` when given. Linearithmic: each stage keeps a min-heap of candidate
// vertices; candidates are re-checked on extraction, and a candidate found
// inapplicable can never become applicable again.
inline ModularGraph quasi_silhouette(const ModularGraph& input, std::vector<MoveRecord>* trace = nullptr) {
  if (auto v = validate(input, Mode::CyclicallyReduced); !v) throw GraphError("quasi_silhouette: " + v.message);
  ModularGraph g = input;
  g.clear_root();
  std::vector<bool> dead(g.size(), false);
  using MinHeap = std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>>;
  MinHeap lambda3;
  MinHeap lambda2;
  MinHeap kappa3;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.has_b_loop(v)) lambda3.push(v);
    if (g.has_a_loop(v)) lambda2.push(v);
    if (g.beta(v) != kNone && g.on_isolated_b_edge(v)) kappa3.push(v);
  }
  auto alive = [&](Vertex v) { return !dead[static_cast<std::size_t>(v)]; };
  auto apply = [&](MoveKind kind, Vertex v, Vertex w) {
    if (trace) trace->push_back(detail::record(g, kind, v, w));
    detail::apply_in_place(g, dead, kind, v, w);
  };

  while (!lambda3.empty()) {
    const Vertex v = lambda3.top();
    lambda3.pop();
    if (!alive(v) || !detail::lambda3_at(g, v)) continue;
    const Vertex t = g.alpha(v);
    apply(MoveKind::Lambda3, v, kNone);
    lambda2.push(t);
  }
  while (!lambda2.empty()) {
    const Vertex v = lambda2.top();
    lambda2.pop();
    if (!alive(v)) continue;
    if (detail::lambda21_at(g, v)) {
      const Vertex x = g.beta(v);
      apply(MoveKind::Lambda21, v, kNone);
      kappa3.push(x);
    } else if (const Vertex w = detail::lambda22_partner(g, v); w != kNone) {
      const Vertex wp = g.alpha(w);
      apply(MoveKind::Lambda22, v, w);
      lambda2.push(wp);
    }
  }
  while (!kappa3.empty()) {
    const Vertex v = kappa3.top();
    kappa3.pop();
    if (!alive(v) || !detail::kappa3_at(g, v)) continue;
    apply(MoveKind::Kappa3, v, g.beta(v));
  }
  ModularGraph out = g.without(dead);
  if (auto t = detail::exceptional_target(out)) {
    if (trace) trace->push_back(detail::exceptional_record(out, *t));
    out = *t;
  }
  return out;
}

// Same fixpoint via repeated find_moves/apply_move with a pluggable choice.
// `choose` receives the sorted applicable moves and returns an index.
template <typename Chooser>
ModularGraph quasi_silhouette_by(const ModularGraph& input, Chooser&& choose, std::vector<MoveRecord>* trace = nullptr) {
  if (auto v = validate(input, Mode::CyclicallyReduced); !v) throw GraphError("quasi_silhouette: " + v.message);
  ModularGraph g = input;
  g.clear_root();
  for (;;) {
    const auto moves = find_moves(g);
    if (moves.empty()) return g;
    const MoveRecord& m = moves[static_cast<std::size_t>(choose(moves))];
    if (trace) trace->push_back(m);
    g = apply_move(g, m);
  }
}

// Reference implementation of the deterministic strategy.
inline ModularGraph quasi_silhouette_reference(const ModularGraph& input, std::vector<MoveRecord>* trace = nullptr) {
  return quasi_silhouette_by(input, [](const std::vector<MoveRecord>&) { return 0; }, trace);
}

// relabel_normalize(quasi_silhouette(complete(g))); rooted reduced inputs are completed first.
inline ModularGraph silhouette(const ModularGraph& g, std::vector<MoveRecord>* trace = nullptr) {
  if (auto v = validate(g, Mode::Reduced); !v) throw GraphError("silhouette: " + v.message);
  return relabel_normalize(quasi_silhouette(complete(g), trace));
}

}  // namespace modgroup

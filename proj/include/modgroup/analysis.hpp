#pragma once

// Algebraic properties of a subgroup read off its Stallings graph.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "word.hpp"

namespace modgroup {

inline bool is_free(const ModularGraph& g) {
  const auto t = combinatorial_type(g);
  return t.l2 == 0 && t.l3 == 0;
}

// The index n when g is cyclically reduced with no isolated b-edge.
inline std::optional<int> finite_index(const ModularGraph& g) {
  if (!validate(g, Mode::CyclicallyReduced)) return std::nullopt;
  if (combinatorial_type(g).k3 != 0) return std::nullopt;
  return g.n();
}

// phi(v) = beta(alpha(v)): reading "ab" from v.
inline Vertex ab_step(const ModularGraph& g, Vertex v) {
  const Vertex w = g.alpha(v);
  return w == kNone ? kNone : g.beta(w);
}

// Orbits of phi that close up, as vertex sequences v, phi(v), ...
inline std::vector<std::vector<Vertex>> ab_cycles(const ModularGraph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(g.size(), false);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    std::vector<Vertex> orbit;
    Vertex w = v;
    while (w != kNone && !seen[static_cast<std::size_t>(w)]) {
      seen[static_cast<std::size_t>(w)] = true;
      orbit.push_back(w);
      w = ab_step(g, w);
    }
    if (w == v) out.push_back(std::move(orbit));
  }
  return out;
}

// Sorted sizes m of the ab-cycles, i.e. cycles labeled (ab)^m.
inline std::vector<int> ab_cycle_spectrum(const ModularGraph& g) {
  std::vector<int> out;
  for (const auto& c : ab_cycles(g)) out.push_back(static_cast<int>(c.size()));
  std::sort(out.begin(), out.end());
  return out;
}

// Smallest vertex of the b-component (loop, isolated edge or triangle) of v.
inline Vertex b_component(const ModularGraph& g, Vertex v) {
  Vertex m = v;
  Vertex w = g.beta(v) != kNone ? g.beta(v) : g.beta_inv(v);
  for (int i = 0; i < 2 && w != kNone && w != v; ++i) {
    m = std::min(m, w);
    w = g.beta(w);
  }
  return m;
}

// Sizes of the ab-cycles visiting at most one vertex of each b-component.
inline std::vector<int> simple_ab_cycle_spectrum(const ModularGraph& g) {
  std::vector<int> out;
  for (const auto& c : ab_cycles(g)) {
    std::vector<Vertex> comps;
    comps.reserve(c.size());
    for (Vertex v : c) comps.push_back(b_component(g, v));
    std::sort(comps.begin(), comps.end());
    if (std::adjacent_find(comps.begin(), comps.end()) == comps.end()) out.push_back(static_cast<int>(c.size()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Contains a conjugate of a non-trivial power of ab.
inline bool is_parabolic(const ModularGraph& g) { return !ab_cycles(g).empty(); }

struct MalnormalityResult {
  bool almost_malnormal = true;
  Word witness;       // infinite-order word labeling cycles at p and q
  Vertex p = kNone;
  Vertex q = kNone;
};

// Searches the off-diagonal alternating product of g with itself for a
// directed cycle. States (p, q, phase): phase 0 expects an a-edge, phase 1
// a b- or b^-1-edge. States with no successor are trimmed repeatedly; since
// every state has O(1) predecessors this is linear in the 2n(n-1) states,
// and the survivors are exactly the states from which a cycle is reachable.
inline MalnormalityResult almost_malnormality(const ModularGraph& g) {
  const std::size_t n = g.size();
  MalnormalityResult res;
  if (n < 2) return res;
  auto id = [n](Vertex p, Vertex q, int phase) {
    return (static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)) * 2 + static_cast<std::size_t>(phase);
  };
  auto pair_ok = [](Vertex p, Vertex q) { return p != kNone && q != kNone; };

  std::vector<std::uint8_t> outdeg(2 * n * n, 0);
  std::vector<std::size_t> stack;
  for (Vertex p = 0; p < g.n(); ++p) {
    for (Vertex q = 0; q < g.n(); ++q) {
      if (p == q) continue;
      outdeg[id(p, q, 0)] = pair_ok(g.alpha(p), g.alpha(q)) ? 1 : 0;
      outdeg[id(p, q, 1)] = static_cast<std::uint8_t>((pair_ok(g.beta(p), g.beta(q)) ? 1 : 0) +
                                                      (pair_ok(g.beta_inv(p), g.beta_inv(q)) ? 1 : 0));
      if (outdeg[id(p, q, 0)] == 0) stack.push_back(id(p, q, 0));
      if (outdeg[id(p, q, 1)] == 0) stack.push_back(id(p, q, 1));
    }
  }
  std::vector<bool> removed(2 * n * n, false);
  auto drop_edge_into = [&](Vertex p, Vertex q, int phase) {
    if (!pair_ok(p, q)) return;
    const std::size_t s = id(p, q, phase);
    if (!removed[s] && --outdeg[s] == 0) stack.push_back(s);
  };
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    if (removed[s]) continue;
    removed[s] = true;
    const auto p = static_cast<Vertex>(s / 2 / n);
    const auto q = static_cast<Vertex>(s / 2 % n);
    if (s % 2 == 1) {
      drop_edge_into(g.alpha(p), g.alpha(q), 0);
    } else {
      drop_edge_into(g.beta_inv(p), g.beta_inv(q), 1);
      drop_edge_into(g.beta(p), g.beta(q), 1);
    }
  }

  std::size_t start = 2 * n * n;
  for (std::size_t s = 0; s < 2 * n * n; s += 2) {
    const auto p = s / 2 / n;
    const auto q = s / 2 % n;
    if (p != q && !removed[s]) {
      start = s;
      break;
    }
  }
  if (start == 2 * n * n) return res;

  // Walk surviving states until one repeats; the repeated segment is a cycle.
  std::vector<std::size_t> path;
  std::vector<Letter> letters;
  std::vector<std::int64_t> visited_at(2 * n * n, -1);
  std::size_t s = start;
  while (visited_at[s] < 0) {
    visited_at[s] = static_cast<std::int64_t>(path.size());
    path.push_back(s);
    const auto p = static_cast<Vertex>(s / 2 / n);
    const auto q = static_cast<Vertex>(s / 2 % n);
    if (s % 2 == 0) {
      letters.push_back(Letter::A);
      s = id(g.alpha(p), g.alpha(q), 1);
    } else if (pair_ok(g.beta(p), g.beta(q)) && !removed[id(g.beta(p), g.beta(q), 0)]) {
      letters.push_back(Letter::B);
      s = id(g.beta(p), g.beta(q), 0);
    } else {
      letters.push_back(Letter::Binv);
      s = id(g.beta_inv(p), g.beta_inv(q), 0);
    }
  }
  const auto first = static_cast<std::ptrdiff_t>(visited_at[static_cast<std::size_t>(s)]);
  std::vector<std::size_t> cyc(path.begin() + first, path.end());
  std::vector<Letter> w(letters.begin() + first, letters.end());
  // Start on an a-step so the witness reads as a cyclically reduced word.
  if (cyc.front() % 2 == 1) {
    std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
    std::rotate(w.begin(), w.begin() + 1, w.end());
  }
  const std::size_t anchor = cyc.front();
  res.almost_malnormal = false;
  res.witness = Word(std::move(w));
  res.p = static_cast<Vertex>(anchor / 2 / n);
  res.q = static_cast<Vertex>(anchor / 2 % n);
  return res;
}

inline bool is_almost_malnormal(const ModularGraph& g) { return almost_malnormality(g).almost_malnormal; }

}  // namespace modgroup

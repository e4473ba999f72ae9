#pragma once

// Stallings graphs of finitely generated subgroups of PSL2(Z), built by
// folding a wedge of generator cycles and closing b^2-paths into triangles.

#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "union_find.hpp"
#include "word.hpp"

namespace modgroup {

namespace detail {

// Mutable folding workspace. Edge slots may hold stale indices; they are
// always read through find().
class Folder {
 public:
  Vertex add_vertex() {
    a_.push_back(kNone);
    bout_.push_back(kNone);
    bin_.push_back(kNone);
    return uf_.add();
  }

  Vertex find(Vertex v) { return uf_.find(v); }

  Vertex a(Vertex v) { return resolve(a_[static_cast<std::size_t>(find(v))]); }
  Vertex bout(Vertex v) { return resolve(bout_[static_cast<std::size_t>(find(v))]); }
  Vertex bin(Vertex v) { return resolve(bin_[static_cast<std::size_t>(find(v))]); }

  void add_a(Vertex u, Vertex v) {
    u = find(u);
    v = find(v);
    if (const Vertex s = a(u); s != kNone) pending_.emplace_back(s, v);
    else if (const Vertex t = a(v); t != kNone) pending_.emplace_back(t, u);
    else {
      a_[static_cast<std::size_t>(u)] = v;
      a_[static_cast<std::size_t>(v)] = u;
    }
  }

  void add_b(Vertex u, Vertex v) {
    u = find(u);
    v = find(v);
    if (const Vertex s = bout(u); s != kNone) pending_.emplace_back(s, v);
    else if (const Vertex t = bin(v); t != kNone) pending_.emplace_back(t, u);
    else {
      bout_[static_cast<std::size_t>(u)] = v;
      bin_[static_cast<std::size_t>(v)] = u;
    }
  }

  // Identifies pending pairs until the graph is deterministic and co-deterministic.
  void fold() {
    while (!pending_.empty()) {
      auto [x, y] = pending_.back();
      pending_.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      const Vertex r = uf_.unite(x, y);
      const Vertex o = r == x ? y : x;
      for (auto* slot : {&a_, &bout_, &bin_}) {
        const Vertex t = (*slot)[static_cast<std::size_t>(o)];
        if (t == kNone) continue;
        Vertex& s = (*slot)[static_cast<std::size_t>(r)];
        if (s == kNone) s = t;
        else pending_.emplace_back(s, t);
      }
    }
  }

  // Adds x -> v for every b-path v -> w -> x with no edge leaving x back to v.
  // Returns whether anything changed.
  bool close_triangles() {
    bool changed = false;
    for (Vertex v = 0; v < static_cast<Vertex>(uf_.size()); ++v) {
      if (find(v) != v) continue;
      const Vertex w = bout(v);
      if (w == kNone || w == v) continue;
      const Vertex x = bout(w);
      if (x == kNone || bout(x) == find(v)) continue;
      add_b(x, v);
      fold();
      changed = true;
    }
    return changed;
  }

  // Labels classes 1..n in BFS order from `root` (neighbours a, b, b^-1).
  ModularGraph extract(Vertex root) {
    root = find(root);
    std::vector<Vertex> pos(uf_.size(), kNone);
    std::vector<Vertex> queue{root};
    pos[static_cast<std::size_t>(root)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (Vertex w : {a(v), bout(v), bin(v)}) {
        if (w != kNone && pos[static_cast<std::size_t>(w)] == kNone) {
          pos[static_cast<std::size_t>(w)] = static_cast<Vertex>(queue.size());
          queue.push_back(w);
        }
      }
    }
    ModularGraph g(queue.size());
    for (Vertex v : queue) {
      const Vertex p = pos[static_cast<std::size_t>(v)];
      if (const Vertex w = a(v); w != kNone) g.set_alpha(p, pos[static_cast<std::size_t>(w)]);
      if (const Vertex w = bout(v); w != kNone) g.set_beta(p, pos[static_cast<std::size_t>(w)]);
    }
    g.set_root(0);
    return g;
  }

 private:
  Vertex resolve(Vertex v) { return v == kNone ? kNone : find(v); }

  UnionFind<Vertex> uf_;
  std::vector<Vertex> a_;
  std::vector<Vertex> bout_;
  std::vector<Vertex> bin_;
  std::vector<std::pair<Vertex, Vertex>> pending_;
};

}  // namespace detail

// Rooted Stallings graph of <gens>, root labeled 1, vertices numbered in BFS
// order from the root. An empty (or all-trivial) generator list gives the
// one-vertex graph with no edges.
inline ModularGraph stallings_from_generators(const std::vector<Word>& gens) {
  detail::Folder f;
  const Vertex root = f.add_vertex();
  for (const Word& raw : gens) {
    const Word w = normalize(raw);
    if (w.empty()) continue;
    Vertex cur = root;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Vertex next = i + 1 == w.size() ? root : f.add_vertex();
      switch (w[i]) {
        case Letter::A: f.add_a(cur, next); break;
        case Letter::B: f.add_b(cur, next); break;
        case Letter::Binv: f.add_b(next, cur); break;
      }
      cur = next;
    }
  }
  f.fold();
  while (f.close_triangles()) {
  }
  return f.extract(root);
}

// Endpoint of the path labeled w from `start`, if every step is defined.
inline std::optional<Vertex> trace(const ModularGraph& g, Vertex start, const Word& w) {
  Vertex v = start;
  for (Letter x : w) {
    switch (x) {
      case Letter::A: v = g.alpha(v); break;
      case Letter::B: v = g.beta(v); break;
      case Letter::Binv: v = g.beta_inv(v); break;
    }
    if (v == kNone) return std::nullopt;
  }
  return v;
}

// w labels a cycle at the root after normalization.
inline bool member(const ModularGraph& g, const Word& w) {
  if (!g.has_root()) throw GraphError("membership requires a rooted graph");
  const auto end = trace(g, *g.root(), normalize(w));
  return end && *end == *g.root();
}

}  // namespace modgroup

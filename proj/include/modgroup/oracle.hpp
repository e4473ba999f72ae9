#pragma once

// Exhaustive enumeration of small labeled graphs and exact checks of the
// counting statements about silhouetting.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "counting.hpp"
#include "graph.hpp"
#include "serialize.hpp"
#include "silhouette.hpp"

namespace modgroup {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EnumMode { CyclicallyReduced, ReducedRooted, Silhouette };

inline const char* to_string(EnumMode m) {
  switch (m) {
    case EnumMode::CyclicallyReduced: return "cyclically-reduced";
    case EnumMode::ReducedRooted: return "reduced-rooted";
    default: return "silhouette";
  }
}

inline int default_limit(EnumMode m) {
  switch (m) {
    case EnumMode::CyclicallyReduced: return 9;
    case EnumMode::ReducedRooted: return 8;
    default: return 12;
  }
}

struct EnumOptions {
  int limit = 0;       // 0: default_limit(mode)
  int worker = 0;      // this worker handles alpha indices congruent to `worker`
  int workers = 1;     // modulo `workers`
};

namespace detail {

// A partial map on [n] as an array (kNone = undefined) with its JSON pair
// fragment, used to sort maps in canonical-JSON order.
struct MapEntry {
  std::vector<Vertex> map;
  std::string fragment;
  std::uint32_t undefined_mask = 0;
  std::vector<std::uint32_t> component;  // mask of the edge component of each vertex
};

inline MapEntry make_entry(std::vector<Vertex> map, bool involution) {
  MapEntry e;
  const auto n = static_cast<Vertex>(map.size());
  std::ostringstream os;
  os << '[';
  bool first = true;
  e.component.assign(map.size(), 0);
  std::uint32_t touched = 0;  // vertices with an outgoing or incoming edge
  for (Vertex v = 0; v < n; ++v) {
    const Vertex w = map[static_cast<std::size_t>(v)];
    if (w == kNone) continue;
    touched |= 1U << v | 1U << w;
  }
  e.undefined_mask = ((n >= 32) ? ~0U : ((1U << n) - 1)) & ~touched;
  for (Vertex v = 0; v < n; ++v) {
    const Vertex w = map[static_cast<std::size_t>(v)];
    if (w == kNone) continue;
    if (involution && w < v) continue;
    os << (first ? "" : ",") << '[' << v + 1 << ',' << w + 1 << ']';
    first = false;
  }
  os << ']';
  e.fragment = os.str();
  // Edge component of each vertex: the forward orbit plus the preimage, which
  // covers loops, pairs, isolated b-edges seen from either end, and triangles.
  for (Vertex v = 0; v < n; ++v) {
    std::uint32_t m = 1U << v;
    Vertex w = map[static_cast<std::size_t>(v)];
    for (int i = 0; i < 3 && w != kNone && w != v; ++i) {
      m |= 1U << w;
      w = map[static_cast<std::size_t>(w)];
    }
    for (Vertex u = 0; u < n; ++u) {
      if (map[static_cast<std::size_t>(u)] == v) m |= 1U << u;
    }
    e.component[static_cast<std::size_t>(v)] = m;
  }
  e.map = std::move(map);
  return e;
}

inline void sort_entries(std::vector<MapEntry>& es) {
  std::sort(es.begin(), es.end(), [](const MapEntry& x, const MapEntry& y) { return x.fragment < y.fragment; });
}

inline void involutions_rec(std::vector<Vertex>& cur, bool fixpoint_free, std::vector<std::vector<Vertex>>& out) {
  const auto n = static_cast<Vertex>(cur.size());
  Vertex i = 0;
  while (i < n && cur[static_cast<std::size_t>(i)] != kNone) ++i;
  if (i == n) {
    out.push_back(cur);
    return;
  }
  if (!fixpoint_free) {
    cur[static_cast<std::size_t>(i)] = i;
    involutions_rec(cur, fixpoint_free, out);
    cur[static_cast<std::size_t>(i)] = kNone;
  }
  for (Vertex j = i + 1; j < n; ++j) {
    if (cur[static_cast<std::size_t>(j)] != kNone) continue;
    cur[static_cast<std::size_t>(i)] = j;
    cur[static_cast<std::size_t>(j)] = i;
    involutions_rec(cur, fixpoint_free, out);
    cur[static_cast<std::size_t>(i)] = kNone;
    cur[static_cast<std::size_t>(j)] = kNone;
  }
}

// b-structures; `triangles_only` restricts to oriented triangle partitions.
inline void b_structures_rec(std::vector<Vertex>& cur, std::vector<bool>& used, bool triangles_only,
                             std::vector<std::vector<Vertex>>& out) {
  const auto n = static_cast<Vertex>(cur.size());
  Vertex i = 0;
  while (i < n && used[static_cast<std::size_t>(i)]) ++i;
  if (i == n) {
    out.push_back(cur);
    return;
  }
  auto at = [](auto& vec, Vertex v) -> decltype(auto) { return vec[static_cast<std::size_t>(v)]; };
  at(used, i) = true;
  if (!triangles_only) {
    at(cur, i) = i;
    b_structures_rec(cur, used, triangles_only, out);
    at(cur, i) = kNone;
  }
  for (Vertex j = i + 1; j < n; ++j) {
    if (at(used, j)) continue;
    at(used, j) = true;
    if (!triangles_only) {
      at(cur, i) = j;
      b_structures_rec(cur, used, triangles_only, out);
      at(cur, i) = kNone;
      at(cur, j) = i;
      b_structures_rec(cur, used, triangles_only, out);
      at(cur, j) = kNone;
    }
    for (Vertex k = i + 1; k < n; ++k) {
      if (at(used, k)) continue;
      at(used, k) = true;
      at(cur, i) = j;
      at(cur, j) = k;
      at(cur, k) = i;
      b_structures_rec(cur, used, triangles_only, out);
      at(cur, i) = at(cur, j) = at(cur, k) = kNone;
      at(used, k) = false;
    }
    at(used, j) = false;
  }
  at(used, i) = false;
}

// Total maps plus, when `partial`, each total map with one loop removed.
inline std::vector<MapEntry> map_entries(int n, bool involution, bool restricted, bool partial) {
  std::vector<std::vector<Vertex>> maps;
  std::vector<Vertex> cur(static_cast<std::size_t>(n), kNone);
  if (involution) {
    involutions_rec(cur, restricted, maps);
  } else {
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    b_structures_rec(cur, used, restricted, maps);
  }
  std::vector<MapEntry> out;
  for (const auto& m : maps) {
    out.push_back(make_entry(m, involution));
    if (!partial) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (m[static_cast<std::size_t>(v)] != v) continue;
      auto p = m;
      p[static_cast<std::size_t>(v)] = kNone;
      out.push_back(make_entry(std::move(p), involution));
    }
  }
  sort_entries(out);
  return out;
}

inline bool masks_connected(const MapEntry& a, const MapEntry& b, int n) {
  const std::uint32_t all = (n >= 32) ? ~0U : ((1U << n) - 1);
  std::uint32_t mask = 1;
  for (;;) {
    std::uint32_t next = mask;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = __builtin_ctz(rest);
      next |= a.component[static_cast<std::size_t>(v)] | b.component[static_cast<std::size_t>(v)];
    }
    if (next == mask) return mask == all;
    mask = next;
  }
}

inline void fill_graph(ModularGraph& g, const MapEntry& a, const MapEntry& b) {
  g = ModularGraph(a.map.size());
  for (Vertex v = 0; v < g.n(); ++v) {
    const Vertex w = a.map[static_cast<std::size_t>(v)];
    if (w != kNone && w >= v) g.set_alpha(v, w);
    const Vertex x = b.map[static_cast<std::size_t>(v)];
    if (x != kNone) g.set_beta(v, x);
  }
}

}  // namespace detail

// Rough size of the search space, for refusals.
inline BigInt enumeration_space(int n, EnumMode mode) {
  if (mode == EnumMode::Silhouette) return fixpoint_free_involutions(n) * triangle_partitions(n);
  const auto a = involution_counts(n);
  const auto b = b_structure_counts(n);
  BigInt pairs = a[n] * b[n];
  return mode == EnumMode::ReducedRooted ? BigInt(pairs * (2 * n)) : pairs;
}

// Calls visit(g) for every valid labeled graph of size n in `mode`, in
// character order of the canonical JSON encoding. With several workers, each
// sees the subsequence whose alpha map has index congruent to its number.
// Throws unless size n is within the enumeration limit of `mode`.
inline void check_enumeration_size(int n, EnumMode mode, int limit = 0) {
  if (limit <= 0) limit = default_limit(mode);
  if (n < 1) throw OracleError("enumeration needs n >= 1");
  if (n > limit || n > 31) {
    throw OracleError("refusing to enumerate size " + std::to_string(n) + " in mode " + to_string(mode) +
                      " (limit " + std::to_string(limit) + "); search space about " +
                      enumeration_space(n, mode).str() + " pairs");
  }
}

template <typename Visitor>
void enumerate_graphs(int n, EnumMode mode, Visitor&& visit, EnumOptions opt = {}) {
  check_enumeration_size(n, mode, opt.limit);
  ModularGraph g;
  if (mode == EnumMode::Silhouette) {
    if (n == 1) {
      if (opt.worker == 0) visit(make_delta1());
      return;
    }
    if (n == 2) {
      if (opt.worker != 0) return;
      visit(make_delta2());
      g = ModularGraph(2);
      g.set_alpha(0, 1);
      g.set_beta(1, 0);
      visit(static_cast<const ModularGraph&>(g));
      return;
    }
    if (n % 6 != 0) return;
  }
  const bool silh = mode == EnumMode::Silhouette;
  const bool rooted = mode == EnumMode::ReducedRooted;
  const auto alphas = detail::map_entries(n, true, silh, rooted);
  const auto betas = detail::map_entries(n, false, silh, rooted);
  std::vector<Vertex> roots(static_cast<std::size_t>(n));
  std::iota(roots.begin(), roots.end(), 0);
  std::sort(roots.begin(), roots.end(),
            [](Vertex x, Vertex y) { return std::to_string(x + 1) < std::to_string(y + 1); });
  for (std::size_t i = static_cast<std::size_t>(opt.worker); i < alphas.size(); i += static_cast<std::size_t>(opt.workers)) {
    const auto& a = alphas[i];
    for (const auto& b : betas) {
      const std::uint32_t missing = a.undefined_mask | b.undefined_mask;
      if (missing != 0 && (missing & (missing - 1)) != 0) continue;
      if (!detail::masks_connected(a, b, n)) continue;
      if (!rooted) {
        detail::fill_graph(g, a, b);
        visit(static_cast<const ModularGraph&>(g));
        continue;
      }
      if (n == 1 && missing != 0 && a.undefined_mask != 0 && b.undefined_mask != 0) continue;  // trivial subgroup
      detail::fill_graph(g, a, b);
      for (Vertex r : roots) {
        if (missing != 0 && !(missing >> r & 1U)) continue;
        g.set_root(r);
        visit(static_cast<const ModularGraph&>(g));
      }
    }
  }
}

inline std::vector<ModularGraph> collect_graphs(int n, EnumMode mode, EnumOptions opt = {}) {
  std::vector<ModularGraph> out;
  enumerate_graphs(n, mode, [&](const ModularGraph& g) { out.push_back(g); }, opt);
  return out;
}

inline std::uint64_t count_graphs(int n, EnumMode mode, EnumOptions opt = {}) {
  std::uint64_t c = 0;
  enumerate_graphs(n, mode, [&](const ModularGraph&) { ++c; }, opt);
  return c;
}

// Connected (alpha, beta) pairs without materializing graphs.
inline std::uint64_t count_connected_pairs(int n, int workers = 1) {
  if (n < 1 || n > default_limit(EnumMode::CyclicallyReduced)) {
    throw OracleError("connected pair count limited to 1 <= n <= " +
                      std::to_string(default_limit(EnumMode::CyclicallyReduced)));
  }
  const auto alphas = detail::map_entries(n, true, false, false);
  const auto betas = detail::map_entries(n, false, false, false);
  workers = std::max(1, workers);
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  auto work = [&](int w) {
    std::uint64_t c = 0;
    for (std::size_t i = static_cast<std::size_t>(w); i < alphas.size(); i += static_cast<std::size_t>(workers)) {
      for (const auto& b : betas) c += detail::masks_connected(alphas[i], b, n) ? 1 : 0;
    }
    partial[static_cast<std::size_t>(w)] = c;
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

// Packs a labeled graph on at most 8 vertices into 64 bits.
inline std::uint64_t small_code(const ModularGraph& g) {
  std::uint64_t c = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto a = static_cast<std::uint64_t>(g.alpha(v) == kNone ? 15 : g.alpha(v));
    const auto b = static_cast<std::uint64_t>(g.beta(v) == kNone ? 15 : g.beta(v));
    c |= (a | b << 4) << (8 * v);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Move preimages.

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long n, long long d) {
    if (d < 0) n = -n, d = -d;
    const long long g = std::gcd(n, d);
    return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
  }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Precondition of the counting statement for `kind` at tau; empty when satisfied.
inline std::string preimage_precondition(MoveKind kind, const CombinatorialType& t) {
  if (!t.consistent() || 2 * t.k2 + t.l2 != t.n || (t.n - 2 * t.k3 - t.l3) % 3 != 0) {
    return "tau is not the type of a cyclically reduced graph";
  }
  switch (kind) {
    case MoveKind::Lambda3:
      if (t.n < 2 || t.l3 <= 0) return "Lambda3 count needs n >= 2 and l3 > 0";
      return {};
    case MoveKind::Lambda21:
    case MoveKind::Lambda22:
      if (t.n < 3 || t.l2 <= 0) return "Lambda2 counts need n >= 3 and l2 > 0";
      return {};
    case MoveKind::Kappa3:
      if (t.n < 4 || t.l2 != 0 || t.k3 <= 0) return "Kappa3 count needs n >= 4, l2 = 0 and k3 > 0";
      return {};
    default: return "no counting statement for exceptional moves";
  }
}

// Number of moves of the same stage on any graph of type t (the weight denominator).
inline long long stage_move_count(MoveKind kind, const CombinatorialType& t) {
  switch (kind) {
    case MoveKind::Lambda3: return t.l3;
    case MoveKind::Lambda21:
    case MoveKind::Lambda22: return t.l2;
    default: return t.k3;
  }
}

// Number of (graph, move) pairs of type t reaching one fixed target.
inline long long expected_move_pairs(MoveKind kind, const CombinatorialType& t) {
  const long long n = t.n;
  switch (kind) {
    case MoveKind::Lambda3: return n * (t.l2 + 1);
    case MoveKind::Lambda21: return n * (t.k3 + 1);
    case MoveKind::Lambda22: return 2 * n * (n - 1) * t.l2;
    default: return 2 * n * (n - 1) * (t.k2 - 1);
  }
}

// n(l2+1)/l3, n(k3+1)/l2, 2n(n-1), 2n(n-1)(k2-1)/k3.
inline Rational preimage_formula(MoveKind kind, const CombinatorialType& t) {
  return Rational::of(expected_move_pairs(kind, t), stage_move_count(kind, t));
}

namespace detail {

// Every single move of `kind` on g, as (result after relabeling).
template <typename F>
void for_each_move_result(const ModularGraph& g, MoveKind kind, F&& f) {
  for (Vertex v = 0; v < g.n(); ++v) {
    Vertex w = kNone;
    switch (kind) {
      case MoveKind::Lambda3:
        if (!lambda3_at(g, v)) continue;
        break;
      case MoveKind::Lambda21:
        if (!lambda21_at(g, v)) continue;
        break;
      case MoveKind::Lambda22:
        w = lambda22_partner(g, v);
        if (w == kNone) continue;
        break;
      case MoveKind::Kappa3:
        if (!kappa3_at(g, v)) continue;
        w = g.beta(v);
        break;
      default: return;
    }
    ModularGraph h = g;
    std::vector<bool> dead(g.size(), false);
    apply_in_place(h, dead, kind, v, w);
    f(relabel_normalize(h.without(dead)));
  }
}

inline int stage_moves_on(const ModularGraph& g, MoveKind kind) {
  int c = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    switch (stage_of(kind)) {
      case 0: c += lambda3_at(g, v) ? 1 : 0; break;
      case 1: c += (lambda21_at(g, v) || lambda22_partner(g, v) != kNone) ? 1 : 0; break;
      default: c += kappa3_at(g, v) ? 1 : 0; break;
    }
  }
  return c;
}

}  // namespace detail

// Weighted number of graphs of type tau taken to delta by a `kind` move: each
// graph counts (#kind moves reaching delta) / (#moves of that stage on it).
inline Rational count_move_preimages(const ModularGraph& delta, MoveKind kind, const CombinatorialType& tau) {
  if (auto why = preimage_precondition(kind, tau); !why.empty()) throw OracleError("precondition violated: " + why);
  const TypeDelta d = kind == MoveKind::Lambda3    ? TypeDelta::lambda3()
                      : kind == MoveKind::Lambda21 ? TypeDelta::lambda21()
                      : kind == MoveKind::Lambda22 ? TypeDelta::lambda22()
                                                   : TypeDelta::kappa3();
  if (combinatorial_type(delta) != tau + d) throw OracleError("precondition violated: target type is not tau + delta");
  if (!delta.is_labeled() || !validate(delta, Mode::CyclicallyReduced)) {
    throw OracleError("precondition violated: target must be a labeled cyclically reduced graph");
  }
  const auto target = small_code(delta);
  if (tau.n > 8) throw OracleError("preimage counts are limited to tau.n <= 8");
  long long pairs = 0;
  long long den = stage_move_count(kind, tau);
  enumerate_graphs(tau.n, EnumMode::CyclicallyReduced, [&](const ModularGraph& g) {
    if (combinatorial_type(g) != tau) return;
    if (detail::stage_moves_on(g, kind) != den) throw OracleError("stage move count differs from the type's count");
    detail::for_each_move_result(g, kind, [&](const ModularGraph& h) {
      if (small_code(h) == target) ++pairs;
    });
  });
  return Rational::of(pairs, den);
}

struct PreimageRow {
  MoveKind kind = MoveKind::Lambda3;
  CombinatorialType tau;
  std::uint64_t targets = 0;      // labeled graphs of type tau + delta
  std::uint64_t targets_hit = 0;  // of which reached by some move
  long long min_pairs = 0;
  long long max_pairs = 0;
  Rational formula;
  bool ok = false;
};

// Checks the counting statements for every admissible (kind, tau, target)
// with tau.n == n, using one pass over the graphs of size n.
inline std::vector<PreimageRow> verify_preimages(int n) {
  if (n < 2 || n > 8) throw OracleError("preimage verification supports 2 <= n <= 8");
  const MoveKind kinds[] = {MoveKind::Lambda3, MoveKind::Lambda21, MoveKind::Lambda22, MoveKind::Kappa3};
  // Targets per type at sizes n-1 and n-2.
  std::map<CombinatorialType, std::uint64_t> smaller;
  for (int m : {n - 1, n - 2}) {
    if (m < 1) continue;
    enumerate_graphs(m, EnumMode::CyclicallyReduced, [&](const ModularGraph& g) { ++smaller[combinatorial_type(g)]; });
  }
  using Key = std::pair<int, CombinatorialType>;
  std::map<Key, std::unordered_map<std::uint64_t, long long>> hits;
  std::map<Key, bool> stage_mismatch;
  enumerate_graphs(n, EnumMode::CyclicallyReduced, [&](const ModularGraph& g) {
    const auto t = combinatorial_type(g);
    for (MoveKind k : kinds) {
      if (!preimage_precondition(k, t).empty()) continue;
      const Key key{static_cast<int>(k), t};
      auto& table = hits[key];
      if (detail::stage_moves_on(g, k) != stage_move_count(k, t)) stage_mismatch[key] = true;
      detail::for_each_move_result(g, k, [&](const ModularGraph& h) { ++table[small_code(h)]; });
    }
  });
  std::vector<PreimageRow> rows;
  for (MoveKind k : kinds) {
    const TypeDelta d = k == MoveKind::Lambda3    ? TypeDelta::lambda3()
                        : k == MoveKind::Lambda21 ? TypeDelta::lambda21()
                        : k == MoveKind::Lambda22 ? TypeDelta::lambda22()
                                                  : TypeDelta::kappa3();
    for (const auto& [target_type, count] : smaller) {
      const CombinatorialType tau = target_type - d;
      if (tau.n != n || !preimage_precondition(k, tau).empty()) continue;
      PreimageRow row;
      row.kind = k;
      row.tau = tau;
      row.targets = count;
      row.formula = preimage_formula(k, tau);
      const Key key{static_cast<int>(k), tau};
      const long long expected = expected_move_pairs(k, tau);
      const auto it = hits.find(key);
      if (it != hits.end()) {
        row.targets_hit = it->second.size();
        bool first = true;
        for (const auto& [code, c] : it->second) {
          row.min_pairs = first ? c : std::min(row.min_pairs, c);
          row.max_pairs = first ? c : std::max(row.max_pairs, c);
          first = false;
        }
      }
      row.ok = row.targets_hit == row.targets && row.min_pairs == expected && row.max_pairs == expected &&
               !stage_mismatch.count(key);
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Uniformity of the silhouette map.

struct FiberTable {
  std::string variant;  // "cyclic" or "rooted"
  std::string group;    // combinatorial type, "all", or "l=<loops>"
  int s = 0;
  std::vector<std::pair<std::string, std::uint64_t>> fibers;  // silhouette JSON -> fiber size
  bool equal = true;
};

struct UniformityReport {
  int n = 0;
  std::vector<FiberTable> tables;
  bool ok = true;
  std::string failure;
};

// Labeled silhouette graphs that can occur as a silhouette of size s:
// the labeled Delta1, the preferred Delta2, or every silhouette graph on [s].
inline std::vector<ModularGraph> silhouette_targets(int s) {
  if (s == 1) return {make_delta1()};
  if (s == 2) return {make_delta2()};
  return collect_graphs(s, EnumMode::Silhouette);
}

// Exact fiber sizes of the silhouette map over the graphs of size n: per
// combinatorial type and pooled (cyclically reduced), and per number of loops
// of the completion (rooted; only when `rooted` is set and n >= 3).
inline UniformityReport verify_uniformity(int n, bool rooted = true, int workers = 1) {
  if (n < 1 || n > 8) throw OracleError("uniformity verification supports 1 <= n <= 8");
  UniformityReport rep;
  rep.n = n;
  std::map<int, std::vector<ModularGraph>> targets;
  std::map<int, std::unordered_map<std::uint64_t, std::size_t>> target_index;
  for (int s = 1; s <= n; ++s) {
    if (s > 2 && s % 6 != 0) continue;
    targets[s] = silhouette_targets(s);
    for (std::size_t i = 0; i < targets[s].size(); ++i) target_index[s][small_code(targets[s][i])] = i;
  }
  // (variant, group, s) -> counts per target index.
  using Key = std::tuple<std::string, std::string, int>;
  struct Acc {
    std::map<Key, std::vector<std::uint64_t>> counts;
    std::string failure;
  };
  auto add = [&](Acc& acc, const std::string& variant, const std::string& group, const ModularGraph& silh) {
    const int s = silh.n();
    const auto ti = target_index.find(s);
    const auto it = ti == target_index.end() ? decltype(ti->second.end()){} : ti->second.find(small_code(silh));
    if (ti == target_index.end() || it == ti->second.end()) {
      if (acc.failure.empty()) acc.failure = "silhouette outside the target set: " + encode(silh);
      return;
    }
    auto& vec = acc.counts[Key{variant, group, s}];
    vec.resize(targets.at(s).size(), 0);
    ++vec[it->second];
  };
  workers = std::max(1, workers);
  std::vector<Acc> accs(static_cast<std::size_t>(workers));
  auto work = [&](int w) {
    Acc& acc = accs[static_cast<std::size_t>(w)];
    EnumOptions opt;
    opt.worker = w;
    opt.workers = workers;
    enumerate_graphs(n, EnumMode::CyclicallyReduced, [&](const ModularGraph& g) {
      const ModularGraph silh = silhouette(g);
      add(acc, "cyclic", to_string(combinatorial_type(g)), silh);
      add(acc, "cyclic", "all", silh);
    }, opt);
    if (rooted && n >= 3) {
      enumerate_graphs(n, EnumMode::ReducedRooted, [&](const ModularGraph& g) {
        const ModularGraph full = complete(g);
        const auto t = combinatorial_type(full);
        add(acc, "rooted", "l=" + std::to_string(t.l2 + t.l3), silhouette(g));
      }, opt);
    }
  };
  // Workers only read the target maps.
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();

  std::map<Key, std::vector<std::uint64_t>> merged;
  for (auto& acc : accs) {
    if (!acc.failure.empty() && rep.failure.empty()) rep.failure = acc.failure;
    for (auto& [k, v] : acc.counts) {
      auto& m = merged[k];
      m.resize(std::max(m.size(), v.size()), 0);
      for (std::size_t i = 0; i < v.size(); ++i) m[i] += v[i];
    }
  }
  for (auto& [k, v] : merged) {
    FiberTable t;
    t.variant = std::get<0>(k);
    t.group = std::get<1>(k);
    t.s = std::get<2>(k);
    const auto& tg = targets.at(t.s);
    v.resize(tg.size(), 0);
    for (std::size_t i = 0; i < tg.size(); ++i) t.fibers.emplace_back(encode(tg[i]), v[i]);
    t.equal = std::all_of(v.begin(), v.end(), [&](std::uint64_t c) { return c == v.front(); });
    if (!t.equal && rep.failure.empty()) {
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      rep.failure = "unequal fibers in " + t.variant + " " + t.group + " s=" + std::to_string(t.s) + ": " +
                    encode(tg[static_cast<std::size_t>(lo - v.begin())]) + " has " + std::to_string(*lo) + ", " +
                    encode(tg[static_cast<std::size_t>(hi - v.begin())]) + " has " + std::to_string(*hi);
    }
    rep.tables.push_back(std::move(t));
  }
  rep.ok = rep.failure.empty();
  return rep;
}

}  // namespace modgroup

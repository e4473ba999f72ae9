#pragma once

// Uniform random labeled graphs by the recursive method with connectivity
// rejection.

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "counting.hpp"
#include "graph.hpp"
#include "union_find.hpp"

namespace modgroup {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of task (a, b) under `master`: three chained splitmix64 rounds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t a, std::uint64_t b) { return Rng(derive_seed(master, a, b)); }

namespace detail {

template <typename R>
int uniform_below(R& rng, int k) {
  return std::uniform_int_distribution<int>(0, k - 1)(rng);
}

// Removes and returns a uniformly chosen element of pool.
template <typename R>
Vertex take_uniform(R& rng, std::vector<Vertex>& pool) {
  const int i = uniform_below(rng, static_cast<int>(pool.size()));
  const Vertex v = pool[static_cast<std::size_t>(i)];
  pool[static_cast<std::size_t>(i)] = pool.back();
  pool.pop_back();
  return v;
}

inline std::vector<Vertex> all_vertices(int n) {
  std::vector<Vertex> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  return pool;
}

}  // namespace detail

// Uniform involution on [n] as a-edges of g.
template <std::uniform_random_bit_generator R>
void draw_involution(ModularGraph& g, R& rng, const CountTables& tables) {
  auto pool = detail::all_vertices(g.n());
  while (!pool.empty()) {
    const Vertex x = pool.back();
    pool.pop_back();
    if (tables.involution_loop(rng, static_cast<int>(pool.size()) + 1)) g.set_alpha(x, x);
    else g.set_alpha(x, detail::take_uniform(rng, pool));
  }
}

// Uniform b-structure on [n] as b-edges of g.
template <std::uniform_random_bit_generator R>
void draw_b_structure(ModularGraph& g, R& rng, const CountTables& tables) {
  auto pool = detail::all_vertices(g.n());
  while (!pool.empty()) {
    const Vertex x = pool.back();
    pool.pop_back();
    switch (tables.b_component(rng, static_cast<int>(pool.size()) + 1)) {
      case 0: g.set_beta(x, x); break;
      case 1: {
        const Vertex y = detail::take_uniform(rng, pool);
        if (rng() & 1U) g.set_beta(x, y);
        else g.set_beta(y, x);
        break;
      }
      default: {
        const Vertex y = detail::take_uniform(rng, pool);
        const Vertex z = detail::take_uniform(rng, pool);
        g.set_beta(x, y);
        g.set_beta(y, z);
        g.set_beta(z, x);
      }
    }
  }
}

// Uniform fixpoint-free involution; n even.
template <std::uniform_random_bit_generator R>
void draw_perfect_matching(ModularGraph& g, R& rng) {
  auto pool = detail::all_vertices(g.n());
  while (!pool.empty()) {
    const Vertex x = pool.back();
    pool.pop_back();
    g.set_alpha(x, detail::take_uniform(rng, pool));
  }
}

// Uniform partition into oriented b-triangles; n a multiple of 3.
template <std::uniform_random_bit_generator R>
void draw_triangles(ModularGraph& g, R& rng) {
  auto pool = detail::all_vertices(g.n());
  while (!pool.empty()) {
    const Vertex x = pool.back();
    pool.pop_back();
    const Vertex y = detail::take_uniform(rng, pool);
    const Vertex z = detail::take_uniform(rng, pool);
    g.set_beta(x, y);
    g.set_beta(y, z);
    g.set_beta(z, x);
  }
}

inline bool pair_connected(const ModularGraph& g) {
  UnionFind<Vertex> uf(g.size());
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.alpha(v) != kNone) uf.unite(v, g.alpha(v));
    if (g.beta(v) != kNone) uf.unite(v, g.beta(v));
  }
  return uf.components() == 1;
}

// One (alpha, beta) draw, possibly disconnected.
template <std::uniform_random_bit_generator R>
ModularGraph draw_cyclic_pair(int n, R& rng, const CountTables& tables) {
  ModularGraph g(static_cast<std::size_t>(n));
  draw_involution(g, rng, tables);
  draw_b_structure(g, rng, tables);
  return g;
}

// One (sigma2, sigma3) draw, possibly disconnected.
template <std::uniform_random_bit_generator R>
ModularGraph draw_silhouette_pair(int n, R& rng) {
  if (n <= 0 || n % 6 != 0) throw std::invalid_argument("silhouette graphs need a positive size divisible by 6");
  ModularGraph g(static_cast<std::size_t>(n));
  draw_perfect_matching(g, rng);
  draw_triangles(g, rng);
  return g;
}

template <std::uniform_random_bit_generator R>
ModularGraph sample_cyclically_reduced(int n, R& rng) {
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  const auto tables = count_tables(n);
  for (;;) {
    ModularGraph g = draw_cyclic_pair(n, rng, *tables);
    if (pair_connected(g)) return g;
  }
}

// Uniform rooted reduced graph of size n >= 2: a cyclically reduced graph G
// with its n + L2 + L3 rooted variants (root anywhere, or delete one loop and
// root at its vertex), accepted with probability (n + L2 + L3) / 2n.
template <std::uniform_random_bit_generator R>
ModularGraph sample_reduced_rooted(int n, R& rng) {
  if (n < 2) throw std::invalid_argument("rooted sampling needs n >= 2");
  for (;;) {
    ModularGraph g = sample_cyclically_reduced(n, rng);
    std::vector<Vertex> a_loops;
    std::vector<Vertex> b_loops;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (g.has_a_loop(v)) a_loops.push_back(v);
      if (g.has_b_loop(v)) b_loops.push_back(v);
    }
    int r = detail::uniform_below(rng, 2 * n);
    if (r >= n + static_cast<int>(a_loops.size() + b_loops.size())) continue;
    if (r < n) {
      g.set_root(r);
    } else if ((r -= n) < static_cast<int>(a_loops.size())) {
      const Vertex v = a_loops[static_cast<std::size_t>(r)];
      g.clear_alpha(v);
      g.set_root(v);
    } else {
      const Vertex v = b_loops[static_cast<std::size_t>(r) - a_loops.size()];
      g.clear_beta(v);
      g.set_root(v);
    }
    return g;
  }
}

template <std::uniform_random_bit_generator R>
ModularGraph sample_silhouette(int n, R& rng) {
  for (;;) {
    ModularGraph g = draw_silhouette_pair(n, rng);
    if (pair_connected(g)) return g;
  }
}

inline ModularGraph sample_cyclically_reduced(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_cyclically_reduced(n, rng);
}
inline ModularGraph sample_reduced_rooted(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_reduced_rooted(n, rng);
}
inline ModularGraph sample_silhouette(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_silhouette(n, rng);
}

}  // namespace modgroup

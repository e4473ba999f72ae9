#pragma once

// Test-side oracles and generators, written independently of the library
// algorithms they check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "modgroup/modgroup.hpp"

namespace testsupport {

using modgroup::Letter;
using modgroup::ModularGraph;
using modgroup::Vertex;
using modgroup::Word;

inline ModularGraph fixture(const std::string& name) {
  std::ifstream in(std::string(MODGROUP_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return modgroup::decode(ss.str());
}

// 2x2 integer matrices; PSL2(Z) elements are matrices up to sign.
using Mat = std::array<long long, 4>;

inline Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// a -> [[0,-1],[1,0]], b -> [[0,-1],[1,1]]; both have the right orders in PSL2(Z).
inline Mat matrix(const Word& w) {
  const Mat a{0, -1, 1, 0};
  const Mat b{0, -1, 1, 1};
  const Mat binv{1, 1, -1, 0};
  Mat m{1, 0, 0, 1};
  for (Letter x : w) m = mul(m, x == Letter::A ? a : x == Letter::B ? b : binv);
  return m;
}

inline bool same_element(const Mat& x, const Mat& y) {
  return x == y || (x[0] == -y[0] && x[1] == -y[1] && x[2] == -y[2] && x[3] == -y[3]);
}

inline bool is_identity(const Mat& m) { return same_element(m, Mat{1, 0, 0, 1}); }

// Infinite order in PSL2(Z) iff |trace| >= 2 and not the identity.
inline bool infinite_order(const Word& w) {
  const Mat m = matrix(w);
  return std::llabs(m[0] + m[3]) >= 2 && !is_identity(m);
}

inline Word random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 2);
  Word w;
  for (int i = len(rng); i > 0; --i) w.push_back(static_cast<Letter>(letter(rng)));
  return w;
}

// Every normal word of length exactly k.
inline std::vector<Word> normal_words(int k) {
  std::vector<Word> out;
  if (k == 0) return {Word{}};
  for (bool start_a : {true, false}) {
    const int bs = start_a ? k / 2 : (k + 1) / 2;
    for (int mask = 0; mask < (1 << bs); ++mask) {
      Word w;
      int bi = 0;
      for (int i = 0; i < k; ++i) {
        if ((i % 2 == 0) == start_a) w.push_back(Letter::A);
        else w.push_back((mask >> bi++) & 1 ? Letter::Binv : Letter::B);
      }
      out.push_back(w);
    }
  }
  return out;
}

// Relabels g by a uniformly random permutation of its vertices (labels 1..n).
inline ModularGraph shuffled(const ModularGraph& g, std::mt19937_64& rng) {
  std::vector<Vertex> p(g.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<Vertex>(i);
  std::shuffle(p.begin(), p.end(), rng);
  ModularGraph h(g.size());
  for (Vertex v = 0; v < g.n(); ++v) {
    const Vertex pv = p[static_cast<std::size_t>(v)];
    if (g.alpha(v) != modgroup::kNone && g.alpha(v) >= v) h.set_alpha(pv, p[static_cast<std::size_t>(g.alpha(v))]);
    if (g.beta(v) != modgroup::kNone) h.set_beta(pv, p[static_cast<std::size_t>(g.beta(v))]);
  }
  if (auto r = g.root()) h.set_root(p[static_cast<std::size_t>(*r)]);
  return h;
}

// Plain reachability: does the off-diagonal alternating product of g with
// itself contain a directed cycle?
inline bool product_has_cycle(const ModularGraph& g) {
  const int n = g.n();
  auto id = [n](int p, int q, int ph) { return (p * n + q) * 2 + ph; };
  const int states = 2 * n * n;
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(states));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      if (g.alpha(p) != -1 && g.alpha(q) != -1) succ[id(p, q, 0)].push_back(id(g.alpha(p), g.alpha(q), 1));
      if (g.beta(p) != -1 && g.beta(q) != -1) succ[id(p, q, 1)].push_back(id(g.beta(p), g.beta(q), 0));
      if (g.beta_inv(p) != -1 && g.beta_inv(q) != -1) succ[id(p, q, 1)].push_back(id(g.beta_inv(p), g.beta_inv(q), 0));
    }
  }
  for (int s = 0; s < states; ++s) {
    std::vector<char> seen(static_cast<std::size_t>(states), 0);
    std::vector<int> stack(succ[s].begin(), succ[s].end());
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      if (t == s) return true;
      if (seen[t]) continue;
      seen[t] = 1;
      for (int u : succ[t]) stack.push_back(u);
    }
  }
  return false;
}

// Follows w from v letter by letter; -1 when a step is missing.
inline int walk(const ModularGraph& g, int v, const Word& w) {
  for (Letter x : w) {
    if (v < 0) return -1;
    v = x == Letter::A ? g.alpha(v) : x == Letter::B ? g.beta(v) : g.beta_inv(v);
  }
  return v;
}

}  // namespace testsupport

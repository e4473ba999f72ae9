#pragma once

// Counting sequences for the recursive samplers, and exact Bernoulli trials
// against big-integer ratios.
//
//   A(n) = A(n-1) + (n-1) A(n-2)                           involutions of [n]
//   B(n) = B(n-1) + 2(n-1) B(n-2) + (n-1)(n-2) B(n-3)       b-structures on [n]
//
// A b-structure is a partition of [n] into b-loops, oriented isolated b-edges
// and oriented b-triangles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace modgroup {

using BigInt = boost::multiprecision::cpp_int;

inline std::vector<BigInt> involution_counts(int n_max) {
  std::vector<BigInt> a(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    a[n] = n <= 1 ? BigInt(1) : a[n - 1] + BigInt(n - 1) * a[n - 2];
  }
  return a;
}

inline std::vector<BigInt> b_structure_counts(int n_max) {
  std::vector<BigInt> b(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    if (n <= 1) b[n] = 1;
    else if (n == 2) b[n] = 3;
    else b[n] = b[n - 1] + BigInt(2 * (n - 1)) * b[n - 2] + BigInt(n - 1) * BigInt(n - 2) * b[n - 3];
  }
  return b;
}

// Connected (alpha, beta) pairs on [n] from T(n) = A(n) B(n) by the
// exponential formula: C(n) = T(n) - sum_{k<n} binom(n-1, k-1) C(k) T(n-k).
inline std::vector<BigInt> connected_pair_counts(int n_max) {
  const auto a = involution_counts(n_max);
  const auto b = b_structure_counts(n_max);
  std::vector<BigInt> t(static_cast<std::size_t>(n_max) + 1), c(t.size());
  for (int n = 0; n <= n_max; ++n) t[n] = a[n] * b[n];
  for (int n = 1; n <= n_max; ++n) {
    BigInt binom = 1;  // binom(n-1, k-1)
    c[n] = t[n];
    for (int k = 1; k < n; ++k) {
      c[n] -= binom * c[k] * t[n - k];
      binom = binom * (n - k) / k;
    }
  }
  return c;
}

// (n-1)!! for even n: fixpoint-free involutions.
inline BigInt fixpoint_free_involutions(int n) {
  if (n % 2 != 0) return 0;
  BigInt r = 1;
  for (int k = n - 1; k > 1; k -= 2) r *= k;
  return r;
}

// Partitions of [n] into oriented b-triangles: n! / (3^(n/3) (n/3)!).
inline BigInt triangle_partitions(int n) {
  if (n % 3 != 0) return 0;
  BigInt r = 1;
  for (int m = n; m >= 3; m -= 3) r *= BigInt(m - 1) * BigInt(m - 2);
  return r;
}

// floor(num * 2^64 / den), saturated when num >= den.
inline std::uint64_t ratio_threshold(const BigInt& num, const BigInt& den) {
  if (num >= den) return std::numeric_limits<std::uint64_t>::max();
  const BigInt q = (num << 64) / den;
  return static_cast<std::uint64_t>(q);
}

// Decides U < num/den for U uniform in [0,1), whose binary expansion is drawn
// 64 bits at a time from `rng`; `first` is the first word and `t` the matching
// threshold. Further words are drawn only while U and num/den agree, so
// `exact` (returning {num, den}) is evaluated with probability 2^-64.
template <typename Rng, typename Exact>
bool exact_bernoulli(Rng& rng, std::uint64_t first, std::uint64_t t, Exact&& exact) {
  if (first != t) return first < t;
  auto [num, den] = exact();
  if (num >= den) return true;
  BigInt r = (num << 64) - BigInt(t) * den;
  for (;;) {
    if (r == 0) return false;
    const BigInt digit = (r << 64) / den;
    const auto d = static_cast<std::uint64_t>(digit);
    const std::uint64_t u = rng();
    if (u != d) return u < d;
    r = (r << 64) - digit * den;
  }
}

// Per-size thresholds for the recursive samplers. Exact up to kExactLimit;
// beyond it ratios come from an extended-precision recurrence.
class CountTables {
 public:
  static constexpr int kExactLimit = 100'000;

  // `exact_limit` below kExactLimit is for testing the approximate path.
  explicit CountTables(int n_max, int exact_limit = kExactLimit) : n_max_(n_max), exact_limit_(exact_limit) {
    if (n_max < 0) throw std::invalid_argument("CountTables: negative size");
    const std::size_t sz = static_cast<std::size_t>(n_max) + 1;
    a_loop_.assign(sz, 0);
    b_loop_.assign(sz, 0);
    b_edge_.assign(sz, 0);
    const int exact_top = std::min(n_max, exact_limit_);
    BigInt a2 = 1, a1 = 1;          // A(m-2), A(m-1)
    BigInt b3 = 1, b2 = 1, b1 = 1;  // B(m-3), B(m-2), B(m-1)
    for (int m = 1; m <= exact_top; ++m) {
      if (m == 1) continue;
      const BigInt a = a1 + BigInt(m - 1) * a2;
      const BigInt b_edge_term = BigInt(2 * (m - 1)) * b2;
      const BigInt b = m == 2 ? BigInt(3) : b1 + b_edge_term + BigInt(m - 1) * BigInt(m - 2) * b3;
      a_loop_[m] = ratio_threshold(a1, a);
      b_loop_[m] = ratio_threshold(b1, b);
      b_edge_[m] = ratio_threshold(b1 + b_edge_term, b);
      a2 = std::move(a1);
      a1 = a;
      b3 = std::move(b2);
      b2 = std::move(b1);
      b1 = b;
    }
    if (n_max > exact_limit_) {
      approximate_ = true;
      // x[m] = A(m)/A(m-1) and y[m] = B(m)/B(m-1); both recurrences are contracting.
      std::vector<long double> x(sz), y(sz);
      x[1] = y[1] = 1;
      x[2] = 2;
      y[2] = 3;
      for (int m = 3; m <= n_max; ++m) {
        x[m] = 1 + (m - 1) / x[m - 1];
        y[m] = 1 + 2.0L * (m - 1) / y[m - 1] + static_cast<long double>(m - 1) * (m - 2) / (y[m - 1] * y[m - 2]);
      }
      constexpr long double two64 = 18446744073709551616.0L;
      auto to_t = [&](long double p) { return static_cast<std::uint64_t>(std::min(p * two64, two64 - 2048)); };
      for (int m = exact_limit_ + 1; m <= n_max; ++m) {
        a_loop_[m] = to_t(1 / x[m]);
        b_loop_[m] = to_t(1 / y[m]);
        b_edge_[m] = to_t(1 / y[m] + 2.0L * (m - 1) / (y[m] * y[m - 1]));
      }
    }
  }

  int n_max() const noexcept { return n_max_; }
  int exact_limit() const noexcept { return exact_limit_; }
  // Thresholds above exact_limit() are floating-point approximations.
  std::uint64_t a_loop_threshold(int m) const { return a_loop_.at(static_cast<std::size_t>(m)); }
  std::uint64_t b_loop_threshold(int m) const { return b_loop_.at(static_cast<std::size_t>(m)); }
  std::uint64_t b_edge_threshold(int m) const { return b_edge_.at(static_cast<std::size_t>(m)); }
  bool approximate() const noexcept { return approximate_; }

  // Chooses a loop for the next point of an involution on m remaining points.
  template <typename Rng>
  bool involution_loop(Rng& rng, int m) const {
    if (m == 1) return true;
    return decide(rng, rng(), a_loop_[m], m, [m] {
      auto a = involution_counts(m);
      return std::pair{a[m - 1], a[m]};
    });
  }

  // 0: b-loop, 1: isolated b-edge, 2: b-triangle, for m remaining points.
  // One uniform U is compared against the cumulative thresholds.
  template <typename Rng>
  int b_component(Rng& rng, int m) const {
    if (m == 1) return 0;
    const std::uint64_t u = rng();
    if (decide(rng, u, b_loop_[m], m, [m] {
          auto b = b_structure_counts(m);
          return std::pair{b[m - 1], b[m]};
        })) {
      return 0;
    }
    if (m == 2) return 1;
    if (decide(rng, u, b_edge_[m], m, [m] {
          auto b = b_structure_counts(m);
          return std::pair{BigInt(b[m - 1] + BigInt(2 * (m - 1)) * b[m - 2]), b[m]};
        })) {
      return 1;
    }
    return 2;
  }

 private:
  template <typename Rng, typename Exact>
  bool decide(Rng& rng, std::uint64_t u, std::uint64_t t, int m, Exact&& exact) const {
    if (m > exact_limit_) return u < t;
    return exact_bernoulli(rng, u, t, std::forward<Exact>(exact));
  }

  int n_max_;
  int exact_limit_;
  bool approximate_ = false;
  std::vector<std::uint64_t> a_loop_;
  std::vector<std::uint64_t> b_loop_;
  std::vector<std::uint64_t> b_edge_;
};

// Shared tables grown on demand; safe to call from several threads.
inline std::shared_ptr<const CountTables> count_tables(int n) {
  static std::mutex mu;
  static std::shared_ptr<const CountTables> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->n_max() < n) {
    int target = cached ? std::max(n, 2 * cached->n_max()) : std::max(n, 64);
    if (n <= CountTables::kExactLimit) target = std::min(target, CountTables::kExactLimit);
    cached = std::make_shared<const CountTables>(target);
  }
  return cached;
}

}  // namespace modgroup

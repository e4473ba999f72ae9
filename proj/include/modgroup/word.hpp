#pragma once

// Words over {a, b, b^-1} representing elements of PSL2(Z) = <a, b | a^2 = b^3 = 1>.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modgroup {

enum class Letter : std::uint8_t { A, B, Binv };

constexpr Letter inverse(Letter x) noexcept {
  switch (x) {
    case Letter::B: return Letter::Binv;
    case Letter::Binv: return Letter::B;
    default: return Letter::A;
  }
}

constexpr bool is_b_letter(Letter x) noexcept { return x != Letter::A; }

constexpr char to_char(Letter x) noexcept {
  switch (x) {
    case Letter::A: return 'a';
    case Letter::B: return 'b';
    default: return 'B';
  }
}

class WordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  void push_back(Letter x) { letters_.push_back(x); }

  Word& operator*=(const Word& rhs) {
    letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  // Prefix of length k.
  Word prefix(std::size_t k) const {
    return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  // Letters strictly alternate between a and {b, b^-1}.
  bool is_normal() const noexcept {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
      if (is_b_letter(letters_[i]) == is_b_letter(letters_[i - 1])) return false;
    }
    return true;
  }

  bool is_cyclically_reduced() const noexcept {
    if (!is_normal()) return false;
    return letters_.size() <= 1 || is_b_letter(letters_.front()) != is_b_letter(letters_.back());
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// ASCII syntax: 'a', 'b', 'B' (= b^-1); whitespace ignored.
inline Word parse_word(std::string_view text) {
  Word w;
  for (char c : text) {
    switch (c) {
      case 'a': w.push_back(Letter::A); break;
      case 'b': w.push_back(Letter::B); break;
      case 'B': w.push_back(Letter::Binv); break;
      case ' ': case '\t': case '\n': case '\r': break;
      default: throw WordError(std::string("invalid letter '") + c + "' in word");
    }
  }
  return w;
}

inline std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s.push_back(to_char(x));
  return s;
}

inline Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(inverse(*it));
  return Word(std::move(out));
}

// Stack-based rewriting to the geodesic representative:
// aa -> 1, bb -> B, BB -> b, bB -> 1, Bb -> 1.
// The stack is kept normal, so one pass suffices.
inline Word normalize(const Word& w) {
  std::vector<Letter> st;
  st.reserve(w.size());
  for (Letter x : w) {
    if (st.empty()) {
      st.push_back(x);
      continue;
    }
    const Letter top = st.back();
    if (x == Letter::A) {
      if (top == Letter::A) st.pop_back();
      else st.push_back(x);
    } else if (top == Letter::A) {
      st.push_back(x);
    } else if (top == x) {
      // b b = b^-1 and B B = b; the letter below is a (or nothing).
      st.back() = inverse(x);
    } else {
      st.pop_back();
    }
  }
  return Word(std::move(st));
}

struct CyclicReduction {
  Word conjugator;  // x, a prefix of the input
  Word core;        // u, cyclically reduced, with w = x u x^-1
};

// Peels matching first/last letters. Requires a normal word.
inline CyclicReduction cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t lo = 0;
  std::size_t hi = l.size();  // core is l[lo, hi) plus an optional trailing letter
  std::vector<Letter> tail;
  while (hi - lo >= 2 && is_b_letter(l[lo]) == is_b_letter(l[hi - 1])) {
    if (l[lo] == Letter::A || l[lo] == inverse(l[hi - 1])) {
      ++lo;
      --hi;
      continue;
    }
    // w = b^e w' b^e with w' starting and ending in a: conjugating by b^e gives w' b^-e.
    tail.push_back(inverse(l[lo]));
    ++lo;
    --hi;
    break;
  }
  CyclicReduction r;
  r.conjugator = w.prefix(lo);
  std::vector<Letter> core(l.begin() + static_cast<std::ptrdiff_t>(lo), l.begin() + static_cast<std::ptrdiff_t>(hi));
  core.insert(core.end(), tail.begin(), tail.end());
  r.core = Word(std::move(core));
  return r;
}

// Finite-order elements are exactly the conjugates of a, b and b^-1 (and 1).
inline bool is_infinite_order(const Word& w) { return cyclic_reduce(normalize(w)).core.size() >= 2; }

}  // namespace modgroup

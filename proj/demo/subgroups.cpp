// Builds the Stallings graphs of three subgroups, prints their types and
// silhouettes, and walks one silhouetting trace move by move.

#include <iostream>

#include "modgroup/modgroup.hpp"

using namespace modgroup;

namespace {

void show(const char* name, const std::vector<Word>& gens) {
  const ModularGraph g = stallings_from_generators(gens);
  std::cout << name << " = <";
  for (std::size_t i = 0; i < gens.size(); ++i) std::cout << (i ? ", " : "") << to_string(gens[i]);
  std::cout << ">\n  graph      " << encode(g) << "\n  type       " << to_string(combinatorial_type(g)) << "\n";
  std::cout << "  free " << is_free(g) << "  parabolic " << is_parabolic(g) << "  almost malnormal "
            << is_almost_malnormal(g) << "\n";
  std::vector<MoveRecord> trace;
  const ModularGraph s = silhouette(g, &trace);
  for (const auto& m : trace) {
    std::cout << "  move       " << to_string(m.kind);
    for (auto p : m.pivots) std::cout << ' ' << p;
    std::cout << "\n";
  }
  std::cout << "  silhouette " << encode(s) << "\n\n";
}

}  // namespace

int main() {
  show("H", {parse_word("abaB"), parse_word("babab")});
  show("K", {parse_word("abab"), parse_word("babaB")});
  show("L", {parse_word("a"), parse_word("bababab"), parse_word("baBabaBab"), parse_word("baBaBabaBaBab")});

  Rng rng = make_rng(2024, 0, 0);
  const ModularGraph g = sample_reduced_rooted(60, rng);
  const ModularGraph s = silhouette(g);
  std::cout << "random rooted graph of size 60: type " << to_string(combinatorial_type(g)) << ", silhouette size "
            << s.n() << ", ab-cycles";
  for (int m : ab_cycle_spectrum(s)) std::cout << ' ' << m;
  std::cout << "\n";
  return 0;
}

// Shared helpers for the test binaries: parsing shorthands and a small formula
// generator independent of the library's own.

#ifndef G4IX_TESTS_SUPPORT_HPP
#define G4IX_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "g4ix/formula.hpp"
#include "g4ix/sequent.hpp"

namespace testing {

inline g4ix::Formula F(const std::string& text) { return g4ix::parse_formula(text); }
inline g4ix::Sequent S(const std::string& text) { return g4ix::parse_sequent(text); }

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  // Up to `size` constructor nodes over `atoms` atoms, boxes nested at most `boxes` deep.
  g4ix::Formula formula(unsigned size, unsigned atoms = 3, unsigned boxes = 2, unsigned modalities = 1) {
    using g4ix::Formula;
    if (size <= 1) {
      if (below(12) == 0) return Formula::bot();
      return Formula::atom(std::string(1, static_cast<char>('p' + below(atoms))));
    }
    auto pick = below(boxes > 0 ? 4 : 3);
    if (pick == 3) return Formula::box(static_cast<unsigned>(below(modalities)), formula(size - 1, atoms, boxes - 1, modalities));
    unsigned left = 1 + static_cast<unsigned>(below(size - 1));
    Formula a = formula(left, atoms, boxes, modalities);
    Formula b = formula(size - left, atoms, boxes, modalities);
    if (pick == 0) return Formula::conj(a, b);
    if (pick == 1) return Formula::disj(a, b);
    return Formula::imp(a, b);
  }

  g4ix::FMultiset multiset(unsigned max_items, unsigned size, unsigned atoms = 3) {
    g4ix::FMultiset m;
    auto k = below(max_items + 1);
    for (std::uint64_t i = 0; i < k; ++i) m.insert(formula(1 + static_cast<unsigned>(below(size)), atoms));
    return m;
  }

  g4ix::Sequent sequent(unsigned max_items, unsigned size, unsigned atoms = 3) {
    g4ix::Sequent s;
    s.antecedent = multiset(max_items, size, atoms);
    if (below(8) != 0) s.succedent = formula(1 + static_cast<unsigned>(below(size)), atoms);
    return s;
  }

private:
  std::mt19937_64 rng_;
};

// All subformulas, the formula itself included.
inline void subformulas(const g4ix::Formula& f, std::vector<g4ix::Formula>& out) {
  out.push_back(f);
  if (f.is_binary()) {
    subformulas(f.left(), out);
    subformulas(f.right(), out);
  } else if (f.is_box()) {
    subformulas(f.body(), out);
  }
}

inline bool contains_subformula(const g4ix::Formula& f, const g4ix::Formula& g) {
  std::vector<g4ix::Formula> subs;
  subformulas(f, subs);
  for (const auto& s : subs) {
    if (s == g) return true;
  }
  return false;
}

}  // namespace testing

#endif  // G4IX_TESTS_SUPPORT_HPP

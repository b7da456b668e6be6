// Seeded random formulas. Draws are reduced modulo the bound directly so that
// sequences are identical across standard library implementations.

#ifndef G4IX_GENERATE_HPP
#define G4IX_GENERATE_HPP

#include <cstdint>
#include <random>
#include <string>

#include "g4ix/formula.hpp"

namespace g4ix {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Seed derived from a base seed and a stream index (splitmix64 finaliser).
  static Rng derived(std::uint64_t seed, std::uint64_t stream);

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  // True with probability percent / 100.
  bool chance(unsigned percent) { return below(100) < percent; }

private:
  std::mt19937_64 engine_;
};

struct FormulaShape {
  unsigned max_size = 5;         // constructor nodes
  unsigned atoms = 3;            // drawn from p, q, r, s, ...
  unsigned max_modal_depth = 0;  // nesting depth of boxes
  unsigned modalities = 1;       // box indices drawn from [0, modalities)
  unsigned bot_percent = 5;
};

std::string atom_name(unsigned i);

// Size drawn uniformly from [1, max_size].
Formula random_formula(Rng& rng, const FormulaShape& shape);
// Exactly `size` nodes where the constructors allow it, otherwise fewer.
Formula random_formula_of_size(Rng& rng, const FormulaShape& shape, unsigned size);

}  // namespace g4ix

#endif  // G4IX_GENERATE_HPP

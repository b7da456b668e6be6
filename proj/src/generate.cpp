#include "g4ix/generate.hpp"

namespace g4ix {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Formula leaf(Rng& rng, const FormulaShape& shape) {
  if (rng.chance(shape.bot_percent)) return Formula::bot();
  return Formula::atom(atom_name(static_cast<unsigned>(rng.below(shape.atoms == 0 ? 1 : shape.atoms))));
}

Formula build(Rng& rng, const FormulaShape& shape, unsigned size, unsigned modal_left) {
  if (size <= 1) return leaf(rng, shape);
  bool box_allowed = modal_left > 0;
  bool binary_allowed = size >= 3;
  if (!box_allowed && !binary_allowed) return leaf(rng, shape);

  // Uniform over the admissible constructors.
  unsigned choices = (binary_allowed ? 3u : 0u) + (box_allowed ? 1u : 0u);
  unsigned pick = static_cast<unsigned>(rng.below(choices));
  if (!binary_allowed || pick == 3) {
    unsigned index = static_cast<unsigned>(rng.below(shape.modalities == 0 ? 1 : shape.modalities));
    return Formula::box(index, build(rng, shape, size - 1, modal_left - 1));
  }
  unsigned left_size = 1 + static_cast<unsigned>(rng.below(size - 2));
  Formula l = build(rng, shape, left_size, modal_left);
  Formula r = build(rng, shape, size - 1 - left_size, modal_left);
  static constexpr Connective kBinary[] = {Connective::And, Connective::Or, Connective::Imp};
  return Formula::binary(kBinary[pick], std::move(l), std::move(r));
}

}  // namespace

Rng Rng::derived(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix(splitmix(seed) ^ splitmix(stream + 0x632be59bd9b4e019ULL)));
}

std::string atom_name(unsigned i) {
  static const char* kNames[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  if (i < 8) return kNames[i];
  return "p" + std::to_string(i);
}

Formula random_formula(Rng& rng, const FormulaShape& shape) {
  unsigned size = 1 + static_cast<unsigned>(rng.below(shape.max_size == 0 ? 1 : shape.max_size));
  return random_formula_of_size(rng, shape, size);
}

Formula random_formula_of_size(Rng& rng, const FormulaShape& shape, unsigned size) {
  return build(rng, shape, size, shape.max_modal_depth);
}

}  // namespace g4ix

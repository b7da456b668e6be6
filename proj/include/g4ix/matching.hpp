// Matching rule conclusions against concrete sequents and instantiating premises.

#ifndef G4IX_MATCHING_HPP
#define G4IX_MATCHING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g4ix/calculus.hpp"

namespace g4ix {

struct Instantiation {
  std::map<std::string, Formula> formulas;
  std::map<std::string, FMultiset> contexts;
  std::map<std::string, std::optional<Formula>> succedents;

  bool empty() const noexcept { return formulas.empty() && contexts.empty() && succedents.empty(); }

  friend bool operator==(const Instantiation& a, const Instantiation& b);
  friend bool operator<(const Instantiation& a, const Instantiation& b);
};

// "phi=q, G=[p, q], D=_" with formula, context, succedent bindings each sorted by name.
std::string print_instantiation(const Instantiation& inst);

enum class MatchMode {
  // Boxed contexts absorb every suitably boxed formula; the remainder goes to a
  // plain context. Only principal-formula choices are enumerated.
  Greedy,
  // Every distribution of the antecedent over the context metavariables.
  Exhaustive,
};

bool match_template(const Template& t, const Formula& f, Instantiation& inst, const std::set<std::string>& atom_vars);

// Deterministically ordered, duplicate-free.
std::vector<Instantiation> match_conclusion(const RuleSchema& r, const Sequent& s, MatchMode mode = MatchMode::Greedy);

// Throw ContractViolation on unbound metavariables.
Formula instantiate_template(const Template& t, const Instantiation& inst);
Sequent instantiate_pattern(const Pattern& p, const Instantiation& inst);
std::vector<Sequent> instantiate_premises(const RuleSchema& r, const Instantiation& inst);

// Atom-restricted metavariables are bound to atoms.
bool respects_atom_restrictions(const RuleSchema& r, const Instantiation& inst);

// The instantiated formula templates on the left of the conclusion.
std::vector<Formula> principal_formulas(const RuleSchema& r, const Instantiation& inst);

}  // namespace g4ix

#endif  // G4IX_MATCHING_HPP

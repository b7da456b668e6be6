// Backward proof search: the terminating G4 engine and the loop-checked G3 engine,
// the irreducible / sensible / strict predicates and strict-sensible search.

#ifndef G4IX_PROVER_HPP
#define G4IX_PROVER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include "g4ix/calculus.hpp"
#include "g4ix/derivation.hpp"
#include "g4ix/matching.hpp"
#include "g4ix/orders.hpp"

namespace g4ix {

struct SearchBudget {
  std::size_t max_depth = 256;
  std::size_t max_nodes = 200000;
};

struct ProofResult {
  enum class Verdict { Provable, Unprovable, Unknown };
  enum class Reason { None, BudgetExhausted, IncompleteStrategy };

  Verdict verdict = Verdict::Unknown;
  Reason reason = Reason::None;
  DerivationPtr derivation;  // Provable only
  std::size_t nodes = 0;     // search nodes visited

  bool provable() const noexcept { return verdict == Verdict::Provable; }
  bool definite() const noexcept { return verdict != Verdict::Unknown; }
};

// "PROVABLE", "UNPROVABLE", "UNKNOWN (budget-exhausted)", "UNKNOWN (incomplete-strategy)".
std::string verdict_name(const ProofResult& r);

// A G4 rule instance whose premises do not all precede the conclusion.
class TerminationViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  MatchMode match = MatchMode::Greedy;
  // Order asserted by the G4 engine at every rule application.
  WeightFunction order = WeightFunction::dyckhoff();
};

// Precondition: c.style == Style::G4 (ContractViolation otherwise).
ProofResult prove_g4(const Calculus& c, const Sequent& s, const SearchOptions& opts = {});

// Precondition: c.style == Style::G3 (ContractViolation otherwise).
ProofResult prove_g3(const Calculus& c, const Sequent& s, const SearchBudget& b = {}, const SearchOptions& opts = {});

bool is_irreducible(const Sequent& s);
// The root is not a left inference with principal formula p -> psi, p an atom.
bool is_sensible(const Derivation& d);
// A root L-> with principal box phi -> psi has its left premise closed by an
// axiom or a right modal rule.
bool is_strict(const Derivation& d);
// is_sensible and is_strict at every subderivation with irreducible conclusion.
bool strict_sensible_everywhere(const Derivation& d);

// Like prove_g3, restricted to derivations satisfying strict_sensible_everywhere.
// Precondition: is_irreducible(s) (ContractViolation otherwise).
ProofResult find_strict_sensible(const Calculus& c, const Sequent& s, const SearchBudget& b = {},
                                 const SearchOptions& opts = {});

}  // namespace g4ix

#endif  // G4IX_PROVER_HPP

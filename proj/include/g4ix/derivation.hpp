// Derivation trees, their independent checker and their text / JSON forms.

#ifndef G4IX_DERIVATION_HPP
#define G4IX_DERIVATION_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "g4ix/calculus.hpp"
#include "g4ix/matching.hpp"

namespace g4ix {

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent conclusion;
  std::string rule;
  RuleKind kind = RuleKind::Axiom;
  // Absent when the tree was read back without a matching rule instance.
  std::optional<Instantiation> instantiation;
  std::vector<Formula> principal;
  std::vector<DerivationPtr> children;
};

// Node for an instance of r; principal formulas are read off the instantiation.
DerivationPtr make_derivation(const RuleSchema& r, Sequent conclusion, Instantiation inst,
                              std::vector<DerivationPtr> children);

// Every node is an instance of a rule of c: premises are re-instantiated and compared
// with the children, leaves are axiom instances.
bool check_derivation(const Calculus& c, const Derivation& d);

// Longest branch; a single node has height 1.
std::size_t height(const Derivation& d);
std::size_t leftmost_length(const Derivation& d);
std::size_t node_count(const Derivation& d);

// One node per line, children indented below their conclusion.
std::string print_derivation(const Derivation& d);

// {"sequent": ..., "rule": ..., "children": [...]}
std::string derivation_to_json(const Derivation& d, int indent = -1);

class DerivationFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Rules are looked up in c and instantiations recovered by matching; nodes that
// match no instance are kept without one (and fail check_derivation).
DerivationPtr derivation_from_json(std::string_view text, const Calculus& c);

}  // namespace g4ix

#endif  // G4IX_DERIVATION_HPP

// Weight functions and the multiset / sequent orders they induce.

#ifndef G4IX_ORDERS_HPP
#define G4IX_ORDERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "g4ix/formula.hpp"
#include "g4ix/sequent.hpp"

namespace g4ix {

using Weight = std::int64_t;

// w(f o g) = w(f) + w(g) + increment(o), w(box f) = w(f) + box. Atoms and false weigh 1.
struct LinearWeights {
  Weight conj = 2;
  Weight disj = 1;
  Weight imp = 1;
  Weight box = 1;

  friend bool operator==(const LinearWeights&, const LinearWeights&) = default;
};

// A map from formulas to positive weights with atoms and false at weight 1 and
// every compound formula above 1. Either linear (the symbolic termination check
// understands these) or an arbitrary evaluator.
class WeightFunction {
public:
  using Evaluator = std::function<Weight(const Formula&)>;

  static WeightFunction dyckhoff();
  // Throws ContractViolation unless every increment is at least 1.
  static WeightFunction linear(std::string name, LinearWeights increments);
  static WeightFunction custom(std::string name, Evaluator evaluator);

  // Throws ContractViolation if a custom evaluator breaks the atom/false constraint.
  Weight operator()(const Formula& f) const;

  const std::string& name() const noexcept { return name_; }
  const std::optional<LinearWeights>& linear_weights() const noexcept { return linear_; }

private:
  WeightFunction() = default;

  std::string name_;
  std::optional<LinearWeights> linear_;
  Evaluator custom_;
};

Weight weight_dyckhoff(const Formula& f);

// Dershowitz-Manna extension: delta arises from gamma by replacing a nonempty
// sub-multiset X by a multiset Y whose elements each weigh less than some element of X.
bool multiset_less(const WeightFunction& w, const FMultiset& delta, const FMultiset& gamma);

// Compares antecedent plus succedent, an absent succedent contributing nothing.
bool sequent_less(const WeightFunction& w, const Sequent& s0, const Sequent& s1);

// Every premise precedes the conclusion. Vacuously true for axioms.
bool check_instance_decrease(const WeightFunction& w, const std::vector<Sequent>& premises, const Sequent& conclusion);

}  // namespace g4ix

#endif  // G4IX_ORDERS_HPP

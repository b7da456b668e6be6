// Termination of rule schemas in a weight-induced sequent order.

#ifndef G4IX_TERMINATION_HPP
#define G4IX_TERMINATION_HPP

#include <cstdint>
#include <string>

#include "g4ix/calculus.hpp"
#include "g4ix/matching.hpp"
#include "g4ix/orders.hpp"

namespace g4ix {

struct SamplingConfig {
  unsigned count = 2000;  // random instantiations after the small exhaustive sweep
  unsigned size = 4;      // formula node bound
  unsigned atoms = 2;
  std::uint64_t seed = 1;
};

struct TerminationVerdict {
  enum class Kind { Terminating, Counterexample, Unknown };

  Kind kind = Kind::Unknown;
  // Counterexample only: the instantiation and the first premise that fails to decrease.
  Instantiation instantiation;
  std::size_t premise = 0;
};

// Terminating only when a symbolic argument covers every instantiation (linear
// weight functions); otherwise searches instantiations for a counterexample.
TerminationVerdict check_schema_termination(const WeightFunction& w, const RuleSchema& r,
                                            const SamplingConfig& cfg = {});

// The symbolic criterion alone.
bool symbolically_terminating(const LinearWeights& increments, const RuleSchema& r);

// "TERMINATING", "COUNTEREXAMPLE <instantiation>", "UNKNOWN".
std::string print_verdict(const TerminationVerdict& v);

}  // namespace g4ix

#endif  // G4IX_TERMINATION_HPP

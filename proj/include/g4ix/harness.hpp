// Seeded generators and executable checks: G3/G4 equivalence fuzzing, admissibility
// of the structural rules, invertibility, and strict-sensible proof search.

#ifndef G4IX_HARNESS_HPP
#define G4IX_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "g4ix/calculus.hpp"
#include "g4ix/prover.hpp"

namespace g4ix {

struct FuzzConfig {
  std::uint64_t seed = 42;
  unsigned count = 100;
  unsigned max_size = 8;
  unsigned atoms = 3;
  unsigned max_modal_depth = 0;
  // Built-in modal rule names or rule file paths.
  std::vector<std::string> modal_rules;
  SearchBudget budget;
  MatchMode match = MatchMode::Greedy;
};

// Throws ContractViolation when count, max_size or atoms is zero.
void validate(const FuzzConfig& cfg);

// Deterministic in (seed, index).
Formula gen_formula(const FuzzConfig& cfg, std::uint64_t index);
// Zero to two antecedent formulas; a succedent nine times in ten.
Sequent gen_sequent(const FuzzConfig& cfg, std::uint64_t index);

struct CaseRecord {
  enum class Flag { Agree, Disagree, Indefinite };

  std::size_t index = 0;
  std::string check;  // suite-specific label, e.g. "equiv", "weakening-left", "L&"
  std::string input;  // replayable sequent
  std::string first;  // verdicts compared
  std::string second;
  Flag flag = Flag::Agree;
  std::string note;
  double millis = 0;
};

struct Report {
  std::string title;
  std::vector<CaseRecord> cases;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t indefinite = 0;
  // Derivations that failed check_derivation or the JSON round trip.
  std::size_t invalid_derivations = 0;
  std::size_t termination_violations = 0;
  // Sampling shortfalls, unverifiable hypotheses.
  std::vector<std::string> warnings;
  // Indefinite cases at or above 5% of the cases.
  bool calibration_failed = false;

  void add(CaseRecord rec);
  std::size_t count() const noexcept { return cases.size(); }
  std::size_t count_of(const std::string& check) const;
  std::size_t failures_of(const std::string& check) const;
  // No disagreement, no invalid derivation, no termination violation, calibrated.
  bool passed() const noexcept;
};

const char* flag_name(CaseRecord::Flag f);

// One line per case: index, check, input, first verdict, second verdict, flag.
std::string report_text(const Report& r);
std::string report_json_summary(const Report& r, int indent = 2);

// prove_g4 in G4iR against prove_g3 in G3iR on gen_sequent(cfg, 0 .. count-1).
Report equivalence_fuzz(const FuzzConfig& cfg);

// Weakening (both forms), contraction and cut over sampled provable sequents.
// Precondition: calc is G4-style.
Report admissibility_suite(const Calculus& calc, const FuzzConfig& cfg);

// Invertibility of R&, L&, L|, R->, the Lp-> reading, and Implication Inversion in G3iX.
Report invertibility_suite(const std::vector<RuleSchema>& modal, const FuzzConfig& cfg);

// find_strict_sensible on sampled provable irreducible sequents of calc (G3-style).
Report strict_sensible_suite(const Calculus& calc, const FuzzConfig& cfg);

// Built-in names or files, as in the CLI --modal flag.
std::vector<RuleSchema> resolve_modal_rules(const std::vector<std::string>& names);

}  // namespace g4ix

#endif  // G4IX_HARNESS_HPP

// Finite multisets of formulas and single-conclusion sequents.

#ifndef G4IX_SEQUENT_HPP
#define G4IX_SEQUENT_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g4ix/formula.hpp"

namespace g4ix {

// Multiset of formulas stored as (formula, multiplicity) pairs in canonical formula order.
// Multiplicities are always positive.
class FMultiset {
public:
  using Entry = std::pair<Formula, std::size_t>;

  FMultiset() = default;
  FMultiset(std::initializer_list<Formula> items);
  explicit FMultiset(const std::vector<Formula>& items);

  void insert(const Formula& f, std::size_t k = 1);
  // Precondition: count(f) >= k.
  void erase(const Formula& f, std::size_t k = 1);

  std::size_t count(const Formula& f) const noexcept;
  bool contains(const Formula& f) const noexcept { return count(f) > 0; }
  // Total number of occurrences.
  std::size_t size() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  // Number of distinct formulas.
  std::size_t distinct() const noexcept { return entries_.size(); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  // Every occurrence, in canonical order.
  std::vector<Formula> elements() const;

  // True if every occurrence in *this occurs at least as often in other.
  bool subset_of(const FMultiset& other) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const FMultiset& a, const FMultiset& b);
  friend bool operator!=(const FMultiset& a, const FMultiset& b) { return !(a == b); }
  friend bool operator<(const FMultiset& a, const FMultiset& b);

private:
  std::vector<Entry>::const_iterator find(const Formula& f) const;

  std::vector<Entry> entries_;
  std::size_t total_ = 0;
};

FMultiset mset_union(const FMultiset& a, const FMultiset& b);
// Precondition: mset_count(a, f) >= k; otherwise ContractViolation.
FMultiset mset_remove(const FMultiset& a, const Formula& f, std::size_t k = 1);
inline std::size_t mset_count(const FMultiset& a, const Formula& f) { return a.count(f); }
// Multiset difference a - b (truncated at zero).
FMultiset mset_difference(const FMultiset& a, const FMultiset& b);

struct Sequent {
  FMultiset antecedent;
  std::optional<Formula> succedent;

  Sequent() = default;
  Sequent(FMultiset ante, std::optional<Formula> succ) : antecedent(std::move(ante)), succedent(std::move(succ)) {}

  // Antecedent plus succedent as one multiset.
  FMultiset all_formulas() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const Sequent& a, const Sequent& b);
  friend bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }
  friend bool operator<(const Sequent& a, const Sequent& b);
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const noexcept { return s.hash(); }
};

// Reading of a sequent as a formula: conjunction of the antecedent implies the succedent.
// Empty antecedent yields the succedent alone; empty succedent reads as false.
Formula interpret(const Sequent& s);

// "f1, f2 => g", "f1 =>", "=> g".
Sequent parse_sequent(std::string_view text);
std::string print_sequent(const Sequent& s);
std::string print_multiset(const FMultiset& m);

}  // namespace g4ix

#endif  // G4IX_SEQUENT_HPP

// Text format for rule schemas and calculus names.
//
//   rule NAME { premises: SEQPAT (";" SEQPAT)* | none ; conclusion: SEQPAT [; atoms: x, y] }
//   SEQPAT   := ITEM ("," ITEM)* "=>" (TEMPLATE | CTXVAR | "_")
//   ITEM     := ["box" | "box(" INT ")"]* CTXVAR | TEMPLATE
//
// Context metavariables are capitalised; formula metavariables are lowercase.
// The optional atoms clause restricts formula metavariables to atoms (as in Ax).
// '#' starts a comment.

#ifndef G4IX_RULE_DSL_HPP
#define G4IX_RULE_DSL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "g4ix/calculus.hpp"

namespace g4ix {

struct DslValidationError {
  std::size_t line = 0;
  std::string rule;
  std::string message;

  std::string to_string() const;
};

struct RuleParseResult {
  std::vector<RuleSchema> rules;
  std::vector<DslValidationError> errors;
};

// Valid rules are returned even when other blocks fail.
RuleParseResult parse_rules(std::string_view text);

std::string print_rule(const RuleSchema& r);
std::string print_rules(const std::vector<RuleSchema>& rs);

// Input that could not be turned into rules or a calculus.
class DslError : public std::runtime_error {
public:
  explicit DslError(const std::string& what, std::vector<DslValidationError> errors = {})
      : std::runtime_error(what), errors_(std::move(errors)) {}
  const std::vector<DslValidationError>& errors() const noexcept { return errors_; }

private:
  std::vector<DslValidationError> errors_;
};

// A rule file path, or a comma list of built-in modal rule names and rule file paths.
std::vector<RuleSchema> load_rule_list(const std::string& spec);

// "G3ip", "G4ip", "G3i+<rules>", "G4i+<rules>" with <rules> as in load_rule_list, or
// letter shorthand over K, D, T, X such as "G4iKD" (= "G4i+R_K,R_D").
Calculus calculus_from_name(const std::string& name);

}  // namespace g4ix

#endif  // G4IX_RULE_DSL_HPP

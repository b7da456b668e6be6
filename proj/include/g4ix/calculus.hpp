// Rule schemas, the built-in calculi G3ip / G4ip and the modal rule library,
// the implication rule generated from a right modal rule, and calculus assembly.

#ifndef G4IX_CALCULUS_HPP
#define G4IX_CALCULUS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "g4ix/formula.hpp"
#include "g4ix/sequent.hpp"

namespace g4ix {

// Formula template over metavariables. Connective::Atom nodes are metavariables.
class Template {
public:
  Template() = default;  // false

  static Template bot() { return Template(); }
  static Template var(std::string name);
  static Template binary(Connective c, Template left, Template right);
  static Template conj(Template l, Template r) { return binary(Connective::And, std::move(l), std::move(r)); }
  static Template disj(Template l, Template r) { return binary(Connective::Or, std::move(l), std::move(r)); }
  static Template imp(Template l, Template r) { return binary(Connective::Imp, std::move(l), std::move(r)); }
  static Template box(unsigned index, Template body);

  Connective connective() const noexcept { return op_; }
  bool is_var() const noexcept { return op_ == Connective::Atom; }
  const std::string& var_name() const noexcept { return name_; }
  unsigned index() const noexcept { return index_; }
  const Template& left() const;
  const Template& right() const;
  const Template& body() const { return left(); }

  // Contains a connective or modal operator (anything but a bare variable or false).
  bool has_operator() const noexcept { return op_ != Connective::Atom && op_ != Connective::Bot; }
  void collect_vars(std::set<std::string>& out) const;

  friend bool operator==(const Template& a, const Template& b);
  friend bool operator!=(const Template& a, const Template& b) { return !(a == b); }
  friend bool operator<(const Template& a, const Template& b);

private:
  Connective op_ = Connective::Bot;
  std::string name_;
  unsigned index_ = 0;
  std::shared_ptr<const Template> left_;
  std::shared_ptr<const Template> right_;
};

Template parse_template(std::string_view text, std::size_t offset = 0);
std::string print_template(const Template& t);

// One antecedent position of a pattern: a context metavariable under a (possibly
// empty) box prefix, or a single formula template.
struct ContextItem {
  enum class Kind { Context, Formula };

  Kind kind = Kind::Context;
  std::string var;
  std::vector<unsigned> boxes;  // outermost first
  Template formula;

  static ContextItem context(std::string var, std::vector<unsigned> boxes = {});
  static ContextItem boxed(std::string var, unsigned index = 0) { return context(std::move(var), {index}); }
  static ContextItem of(Template t);

  friend bool operator==(const ContextItem&, const ContextItem&) = default;
};

struct SuccedentPattern {
  enum class Kind { Empty, Formula, Var };

  Kind kind = Kind::Empty;
  Template formula;
  std::string var;

  static SuccedentPattern empty() { return {}; }
  static SuccedentPattern of(Template t) { return {Kind::Formula, std::move(t), {}}; }
  static SuccedentPattern variable(std::string v) { return {Kind::Var, {}, std::move(v)}; }

  friend bool operator==(const SuccedentPattern&, const SuccedentPattern&) = default;
};

struct Pattern {
  std::vector<ContextItem> antecedent;
  SuccedentPattern succedent;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

enum class RuleKind { Axiom, Left, Right, RightModal, OtherModal };

struct Provenance {
  enum class Origin { Builtin, User, Generated };

  Origin origin = Origin::Builtin;
  std::string source;  // generating rule for Generated

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct RuleSchema {
  std::string name;
  std::vector<Pattern> premises;
  Pattern conclusion;
  RuleKind kind = RuleKind::Axiom;
  Provenance provenance;
  // Formula metavariables that may only be instantiated by atoms.
  std::set<std::string> atom_vars;

  // Equal premises, conclusion and atom restrictions; names and provenance ignored.
  bool same_shape(const RuleSchema& other) const;

  friend bool operator==(const RuleSchema& a, const RuleSchema& b) {
    return a.name == b.name && a.kind == b.kind && a.same_shape(b);
  }
};

enum class Style { G3, G4 };

struct Calculus {
  std::string name;
  Style style = Style::G3;
  std::vector<RuleSchema> rules;
  // Hypotheses the toolkit could not confirm (flat rules and the like).
  std::vector<std::string> warnings;
  // Backward search may commit to the invertible propositional rules. Holds for
  // the built-in calculi and their extensions by R_K, R_D, R_T, R_X.
  bool invertible_core = true;

  const RuleSchema* find(const std::string& rule_name) const;
};

class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  std::vector<std::string> problems_;
};

const char* kind_name(RuleKind k);

// Rule names of the propositional calculi.
namespace rules {
inline constexpr const char* kAx = "Ax";
inline constexpr const char* kLBot = "Lbot";
inline constexpr const char* kRAnd = "R&";
inline constexpr const char* kLAnd = "L&";
inline constexpr const char* kROr0 = "R|0";
inline constexpr const char* kROr1 = "R|1";
inline constexpr const char* kLOr = "L|";
inline constexpr const char* kRImp = "R->";
inline constexpr const char* kLImp = "L->";
inline constexpr const char* kLAtomImp = "Lp->";
inline constexpr const char* kLAndImp = "L&->";
inline constexpr const char* kLOrImp = "L|->";
inline constexpr const char* kLImpImp = "L->->";
}  // namespace rules

// Suffix naming the implication rule generated from a right modal rule.
inline constexpr const char* kGeneratedSuffix = "^->";

Calculus g3ip();
Calculus g4ip();

// R_K, R_D, R_T, R_K4, R_GL, R_SL, R_X.
const std::map<std::string, RuleSchema>& builtin_modal_rules();
std::optional<RuleSchema> builtin_modal_rule(const std::string& name);

// Kind read off the schema shape.
RuleKind classify(const RuleSchema& r);
bool is_modal(const RuleSchema& r);
bool is_right_modal(const RuleSchema& r);
bool is_nonflat(const RuleSchema& r);
// Built-in propositional rules, R_K, R_D, R_T, R_X and the rules generated from them.
bool is_core_compatible(const RuleSchema& r);

// Well-formedness problems (sorts, binding, shape). Empty when the schema is valid.
std::vector<std::string> validate_schema(const RuleSchema& r);

// Precondition: is_right_modal(r); otherwise ContractViolation.
RuleSchema transform_right_modal(const RuleSchema& r);

// Throw SchemaError for malformed schemas. Flat rules are reported in warnings.
Calculus build_g3ix(const std::vector<RuleSchema>& modal);
Calculus build_g4ix(const std::vector<RuleSchema>& modal);

}  // namespace g4ix

#endif  // G4IX_CALCULUS_HPP

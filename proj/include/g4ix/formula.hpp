// Formulas of intuitionistic modal propositional logic.

#ifndef G4IX_FORMULA_HPP
#define G4IX_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace g4ix {

// Declaration order is the canonical constructor order.
enum class Connective : std::uint8_t { Bot, Atom, And, Or, Imp, Box };

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Violated preconditions of library operations.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Immutable formula tree with shared subterms. Copying is cheap.
class Formula {
public:
  static Formula bot();
  static Formula atom(std::string name);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula imp(Formula left, Formula right);
  static Formula box(unsigned index, Formula body);
  static Formula neg(Formula body) { return imp(std::move(body), bot()); }
  static Formula binary(Connective c, Formula left, Formula right);

  Connective connective() const noexcept;
  bool is_bot() const noexcept { return connective() == Connective::Bot; }
  bool is_atom() const noexcept { return connective() == Connective::Atom; }
  bool is_box() const noexcept { return connective() == Connective::Box; }
  bool is_binary() const noexcept;

  // Atom name; empty for other constructors.
  const std::string& name() const noexcept;
  // Modal index of a Box node.
  unsigned index() const noexcept;
  // Left operand of a binary node, or the body of a Box node.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }

  std::size_t hash() const noexcept;
  // Number of constructor nodes.
  std::size_t size() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend bool operator!=(const Formula& a, const Formula& b) noexcept { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) noexcept { return compare(a, b) < 0; }

  // Canonical total order: constructor tag, then children, then atom name, then modal index.
  static int compare(const Formula& a, const Formula& b) noexcept;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective connective;
  unsigned index = 0;
  std::string name;
  // Box uses only `first`.
  std::optional<Formula> first;
  std::optional<Formula> second;
  std::size_t hash = 0;
  std::size_t size = 1;
};

// d(bot)=0, d(p)=1, d(box f)=d(f)+1, d(f o g)=d(f)+d(g)+1.
std::size_t degree(const Formula& f);

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

bool is_identifier_start(char c) noexcept;
bool is_identifier_char(char c) noexcept;

inline Connective Formula::connective() const noexcept { return node_->connective; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline unsigned Formula::index() const noexcept { return node_->index; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }
inline std::size_t Formula::size() const noexcept { return node_->size; }

inline bool Formula::is_binary() const noexcept {
  auto c = connective();
  return c == Connective::And || c == Connective::Or || c == Connective::Imp;
}

inline const Formula& Formula::left() const {
  if (!node_->first) throw ContractViolation("formula has no operand");
  return *node_->first;
}

inline const Formula& Formula::right() const {
  if (!node_->second) throw ContractViolation("formula has no right operand");
  return *node_->second;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

}  // namespace g4ix

#endif  // G4IX_FORMULA_HPP

#include "g4ix/formula.hpp"

#include <functional>

#include "grammar.hpp"

namespace g4ix {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct FormulaBuilder {
  using Node = Formula;
  Formula bot() { return Formula::bot(); }
  Formula identifier(std::string name, std::size_t) { return Formula::atom(std::move(name)); }
  Formula binary(Connective c, Formula l, Formula r) { return Formula::binary(c, std::move(l), std::move(r)); }
  Formula box(unsigned index, Formula body) { return Formula::box(index, std::move(body)); }
};

struct FormulaView {
  Connective kind(const Formula& f) const { return f.connective(); }
  const std::string& name(const Formula& f) const { return f.name(); }
  unsigned index(const Formula& f) const { return f.index(); }
  const Formula& left(const Formula& f) const { return f.left(); }
  const Formula& right(const Formula& f) const { return f.right(); }
};

}  // namespace

Formula Formula::bot() {
  static const Formula instance = [] {
    auto node = std::make_shared<Node>();
    node->connective = Connective::Bot;
    node->hash = mix(0, 0x51);
    return Formula(std::move(node));
  }();
  return instance;
}

Formula Formula::atom(std::string name) {
  if (name.empty() || !is_identifier_start(name.front())) throw ContractViolation("invalid atom name '" + name + "'");
  if (name == "false") throw ContractViolation("'false' is not an atom");
  auto node = std::make_shared<Node>();
  node->connective = Connective::Atom;
  node->hash = mix(0x1, std::hash<std::string>{}(name));
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::binary(Connective c, Formula left, Formula right) {
  if (c != Connective::And && c != Connective::Or && c != Connective::Imp) {
    throw ContractViolation("not a binary connective");
  }
  auto node = std::make_shared<Node>();
  node->connective = c;
  node->hash = mix(mix(static_cast<std::size_t>(c) * 0x1000193, left.hash()), right.hash());
  node->size = 1 + left.size() + right.size();
  node->first = std::move(left);
  node->second = std::move(right);
  return Formula(std::move(node));
}

Formula Formula::conj(Formula left, Formula right) { return binary(Connective::And, std::move(left), std::move(right)); }
Formula Formula::disj(Formula left, Formula right) { return binary(Connective::Or, std::move(left), std::move(right)); }
Formula Formula::imp(Formula left, Formula right) { return binary(Connective::Imp, std::move(left), std::move(right)); }

Formula Formula::box(unsigned index, Formula body) {
  auto node = std::make_shared<Node>();
  node->connective = Connective::Box;
  node->index = index;
  node->hash = mix(mix(0x5 * 0x1000193, body.hash()), index);
  node->size = 1 + body.size();
  node->first = std::move(body);
  return Formula(std::move(node));
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return Formula::compare(a, b) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return 0;
  if (a.connective() != b.connective()) return a.connective() < b.connective() ? -1 : 1;
  switch (a.connective()) {
    case Connective::Bot:
      return 0;
    case Connective::Atom:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Connective::Box: {
      int c = compare(a.body(), b.body());
      if (c != 0) return c;
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    }
    default: {
      int c = compare(a.left(), b.left());
      return c != 0 ? c : compare(a.right(), b.right());
    }
  }
}

std::size_t degree(const Formula& f) {
  switch (f.connective()) {
    case Connective::Bot:
      return 0;
    case Connective::Atom:
      return 1;
    case Connective::Box:
      return degree(f.body()) + 1;
    default:
      return degree(f.left()) + degree(f.right()) + 1;
  }
}

bool is_identifier_start(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_identifier_char(char c) noexcept {
  return is_identifier_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

Formula parse_formula(std::string_view text) {
  FormulaBuilder builder;
  detail::GrammarParser<FormulaBuilder> parser(text, builder, false);
  return parser.parse_all();
}

std::string print_formula(const Formula& f) {
  FormulaView view;
  return detail::GrammarPrinter<FormulaView, Formula>(view, false).print(f);
}

}  // namespace g4ix

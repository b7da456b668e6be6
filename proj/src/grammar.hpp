// Shared recursive-descent parser and printer for the formula grammar.
// Used for concrete formulas and for rule templates over metavariables.
//
//   formula := imp
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "[]" unary | "[" INT "]" unary
//            | "box" unary | "box" "(" INT ")" unary      (template mode only)
//            | IDENT | "false" | "(" formula ")"

#ifndef G4IX_SRC_GRAMMAR_HPP
#define G4IX_SRC_GRAMMAR_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "g4ix/formula.hpp"

namespace g4ix::detail {

// Builder requirements:
//   using Node = ...;
//   Node bot();
//   Node identifier(std::string name, std::size_t position);
//   Node binary(Connective c, Node l, Node r);
//   Node box(unsigned index, Node body);
template <typename Builder>
class GrammarParser {
public:
  using Node = typename Builder::Node;

  GrammarParser(std::string_view text, Builder& builder, bool box_keyword, std::size_t offset = 0)
      : text_(text), builder_(builder), box_keyword_(box_keyword), offset_(offset) {}

  Node parse_all() {
    Node n = parse_imp();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  unsigned parse_index() {
    skip_space();
    std::size_t start = pos_;
    unsigned value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > 100000) fail("modal index too large");
      value = value * 10 + static_cast<unsigned>(text_[pos_] - '0');
      ++pos_;
    }
    if (start == pos_) fail("expected modal index");
    return value;
  }

  Node parse_imp() {
    Node left = parse_or();
    if (accept("->")) {
      Node right = parse_imp();
      return builder_.binary(Connective::Imp, std::move(left), std::move(right));
    }
    return left;
  }

  Node parse_or() {
    Node acc = parse_and();
    while (accept("|")) acc = builder_.binary(Connective::Or, std::move(acc), parse_and());
    return acc;
  }

  Node parse_and() {
    Node acc = parse_unary();
    while (accept("&")) acc = builder_.binary(Connective::And, std::move(acc), parse_unary());
    return acc;
  }

  std::string peek_identifier() {
    skip_space();
    std::size_t end = pos_;
    if (end < text_.size() && is_identifier_start(text_[end])) {
      while (end < text_.size() && is_identifier_char(text_[end])) ++end;
    }
    return std::string(text_.substr(pos_, end - pos_));
  }

  Node parse_unary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("~")) return builder_.binary(Connective::Imp, parse_unary(), builder_.bot());
    if (accept("[")) {
      unsigned index = 0;
      if (!accept("]")) {
        index = parse_index();
        if (!accept("]")) fail("expected ']'");
      }
      return builder_.box(index, parse_unary());
    }
    if (accept("(")) {
      Node inner = parse_imp();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    std::size_t start = pos_;
    std::string ident = peek_identifier();
    if (ident.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    pos_ += ident.size();
    if (ident == "false") return builder_.bot();
    if (box_keyword_ && ident == "box") {
      unsigned index = 0;
      std::size_t save = pos_;
      if (accept("(")) {
        skip_space();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          index = parse_index();
          if (!accept(")")) fail("expected ')'");
        } else {
          // "box (phi & psi)": parenthesised body, not an index.
          pos_ = save;
        }
      }
      return builder_.box(index, parse_unary());
    }
    return builder_.identifier(std::move(ident), offset_ + start);
  }

  std::string_view text_;
  Builder& builder_;
  bool box_keyword_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

// View requirements:
//   kind(n) -> Connective (Atom stands for identifiers)
//   name(n), index(n), left(n), right(n)
template <typename View, typename Node>
class GrammarPrinter {
public:
  GrammarPrinter(const View& view, bool box_keyword) : view_(view), box_keyword_(box_keyword) {}

  std::string print(const Node& n) const {
    std::string out;
    emit(n, 0, out);
    return out;
  }

  // Precedence of the outermost construct: 1 imp, 2 or, 3 and, 4 unary.
  int precedence(const Node& n) const {
    switch (view_.kind(n)) {
      case Connective::Imp:
        return view_.kind(view_.right(n)) == Connective::Bot ? 4 : 1;
      case Connective::Or:
        return 2;
      case Connective::And:
        return 3;
      default:
        return 4;
    }
  }

private:
  void emit(const Node& n, int context, std::string& out) const {
    int prec = precedence(n);
    bool paren = prec < context;
    if (paren) out += '(';
    switch (view_.kind(n)) {
      case Connective::Bot:
        out += "false";
        break;
      case Connective::Atom:
        out += view_.name(n);
        break;
      case Connective::Box:
        if (box_keyword_) {
          out += view_.index(n) == 0 ? "box " : "box(" + std::to_string(view_.index(n)) + ") ";
        } else {
          out += view_.index(n) == 0 ? "[]" : "[" + std::to_string(view_.index(n)) + "]";
        }
        emit(view_.left(n), 4, out);
        break;
      case Connective::Imp:
        if (prec == 4) {
          out += '~';
          emit(view_.left(n), 4, out);
        } else {
          emit(view_.left(n), 2, out);
          out += " -> ";
          emit(view_.right(n), 1, out);
        }
        break;
      case Connective::Or:
        emit(view_.left(n), 2, out);
        out += " | ";
        emit(view_.right(n), 3, out);
        break;
      case Connective::And:
        emit(view_.left(n), 3, out);
        out += " & ";
        emit(view_.right(n), 4, out);
        break;
    }
    if (paren) out += ')';
  }

  const View& view_;
  bool box_keyword_;
};

}  // namespace g4ix::detail

#endif  // G4IX_SRC_GRAMMAR_HPP

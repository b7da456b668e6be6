#include <doctest.h>

#include <algorithm>
#include <set>

#include "g4ix/calculus.hpp"
#include "g4ix/matching.hpp"
#include "g4ix/rule_dsl.hpp"
#include "support.hpp"

using namespace g4ix;
using testing::F;
using testing::S;

namespace {

RuleSchema rule(const std::string& text) {
  RuleParseResult r = parse_rules(text);
  for (const auto& e : r.errors) FAIL_CHECK(e.to_string());
  REQUIRE(r.rules.size() == 1);
  return r.rules.front();
}

std::set<std::string> names(const Calculus& c) {
  std::set<std::string> out;
  for (const auto& r : c.rules) out.insert(r.name);
  return out;
}

const RuleSchema& find(const Calculus& c, const std::string& name) {
  const RuleSchema* r = c.find(name);
  REQUIRE(r != nullptr);
  return *r;
}

RuleSchema modal(const std::string& name) {
  auto r = builtin_modal_rule(name);
  REQUIRE(r.has_value());
  return *r;
}

FMultiset M(std::initializer_list<const char*> items) {
  FMultiset m;
  for (const char* t : items) m.insert(F(t));
  return m;
}

}  // namespace

TEST_CASE("G3ip rules") {
  Calculus c = g3ip();
  CHECK(c.style == Style::G3);
  CHECK(c.rules.size() == 9);
  CHECK(names(c) == std::set<std::string>{"Ax", "Lbot", "R&", "L&", "R|0", "R|1", "L|", "R->", "L->"});
  CHECK(c.find("Lp->") == nullptr);
  for (const auto& r : c.rules) CHECK(r.premises.size() <= 2);
  CHECK(find(c, "L->").same_shape(rule("rule L-> { premises: G, phi -> psi => phi ; G, psi => D ; conclusion: G, phi -> psi => D }")));
  CHECK(find(c, "Ax").same_shape(rule("rule Ax { premises: none ; conclusion: G, p => p ; atoms: p }")));
  CHECK(find(c, "Lbot").same_shape(rule("rule Lbot { premises: none ; conclusion: G, false => D }")));
}

TEST_CASE("G4ip rules") {
  Calculus c = g4ip();
  CHECK(c.style == Style::G4);
  CHECK(names(c) == std::set<std::string>{"Ax", "Lbot", "R&", "L&", "R|0", "R|1", "L|", "R->", "Lp->", "L&->", "L|->",
                                          "L->->"});
  CHECK(find(c, "Lp->").same_shape(
      rule("rule Lp-> { premises: G, p, phi => D ; conclusion: G, p, p -> phi => D ; atoms: p }")));
  CHECK(find(c, "L->->").same_shape(rule(
      "rule L->-> { premises: G, psi -> gamma => phi -> psi ; gamma, G => D ; conclusion: G, (phi -> psi) -> gamma => D }")));
  CHECK(find(c, "L&->").same_shape(
      rule("rule L&-> { premises: G, phi -> (psi -> gamma) => D ; conclusion: G, phi & psi -> gamma => D }")));
  CHECK(find(c, "L|->").same_shape(rule(
      "rule L|-> { premises: G, phi -> gamma, psi -> gamma => D ; conclusion: G, phi | psi -> gamma => D }")));
}

TEST_CASE("modal rule library") {
  const auto& lib = builtin_modal_rules();
  std::set<std::string> keys;
  for (const auto& [k, v] : lib) keys.insert(k);
  CHECK(keys == std::set<std::string>{"R_K", "R_D", "R_T", "R_K4", "R_GL", "R_SL", "R_X"});

  CHECK(modal("R_K").same_shape(rule("rule R_K { premises: G => phi ; conclusion: P, box G => box phi }")));
  CHECK(modal("R_D").same_shape(rule("rule R_D { premises: G, phi => _ ; conclusion: P, box G, box phi => D }")));
  CHECK(modal("R_T").same_shape(rule("rule R_T { premises: G, phi => D ; conclusion: G, box phi => D }")));
  CHECK(modal("R_K4").same_shape(rule("rule R_K4 { premises: G, box G => phi ; conclusion: P, box G => box phi }")));
  CHECK(modal("R_GL").same_shape(
      rule("rule R_GL { premises: G, box G, box phi => phi ; conclusion: P, box G => box phi }")));
  CHECK(modal("R_SL").same_shape(
      rule("rule R_SL { premises: P, box G, G, box phi => phi ; conclusion: box S, P, box G => box phi }")));
  CHECK(modal("R_X").same_shape(rule("rule R_X { premises: box G => phi ; conclusion: P, box G => box phi }")));

  CHECK(modal("R_K").kind == RuleKind::RightModal);
  CHECK(modal("R_D").kind == RuleKind::OtherModal);
  CHECK(modal("R_T").kind == RuleKind::OtherModal);
  for (const auto& [name, r] : lib) {
    CAPTURE(name);
    CHECK(r.kind == classify(r));
    CHECK(is_modal(r));
    CHECK(validate_schema(r).empty());
    CHECK(r.provenance.origin == Provenance::Origin::Builtin);
  }
}

TEST_CASE("classification") {
  CHECK(is_right_modal(modal("R_K")));
  CHECK_FALSE(is_right_modal(modal("R_T")));
  CHECK(is_right_modal(modal("R_GL")));
  CHECK_FALSE(is_right_modal(modal("R_D")));

  CHECK(is_nonflat(modal("R_K")));
  CHECK_FALSE(is_nonflat(find(g4ip(), "Lbot")));
  CHECK_FALSE(is_nonflat(find(g4ip(), "Ax")));
  CHECK_FALSE(is_nonflat(rule("rule U { premises: G => p ; conclusion: G, p => q }")));
  CHECK(is_nonflat(rule("rule U { premises: G => p ; conclusion: G, p & q => q }")));
  for (const auto& r : g3ip().rules) {
    CAPTURE(r.name);
    CHECK(r.kind == classify(r));
    CHECK((r.kind == RuleKind::Axiom) == r.premises.empty());
    CHECK_FALSE(is_modal(r));
  }
  CHECK(classify(find(g4ip(), "L&")) == RuleKind::Left);
  CHECK(classify(find(g4ip(), "R->")) == RuleKind::Right);
}

TEST_CASE("transform_right_modal") {
  RuleSchema kx = transform_right_modal(modal("R_X"));
  CHECK(kx.name == "R_X^->");
  CHECK(kx.provenance.origin == Provenance::Origin::Generated);
  CHECK(kx.provenance.source == "R_X");
  CHECK(kx.same_shape(rule(
      "rule R_X^-> { premises: box G => phi ; P, box G, psi => D ; conclusion: P, box G, box phi -> psi => D }")));

  RuleSchema kk = transform_right_modal(modal("R_K"));
  CHECK(kk.same_shape(
      rule("rule R_K^-> { premises: G => phi ; P, box G, psi => D ; conclusion: P, box G, box phi -> psi => D }")));
  CHECK(is_nonflat(kk));
  CHECK(kk.kind == RuleKind::OtherModal);

  CHECK_THROWS_AS(transform_right_modal(modal("R_T")), ContractViolation);
  CHECK_THROWS_AS(transform_right_modal(modal("R_D")), ContractViolation);
  for (const char* name : {"R_K", "R_K4", "R_GL", "R_SL", "R_X"}) {
    CAPTURE(name);
    CHECK(is_nonflat(transform_right_modal(modal(name))));
  }
}

TEST_CASE("calculus assembly") {
  Calculus k = build_g4ix({modal("R_K")});
  auto n = names(k);
  for (const auto& r : g4ip().rules) CHECK(n.count(r.name) == 1);
  CHECK(n.count("R_K") == 1);
  CHECK(n.count("R_K^->") == 1);
  CHECK(k.style == Style::G4);

  Calculus t = build_g4ix({modal("R_T")});
  CHECK(t.rules.size() == g4ip().rules.size() + 1);
  CHECK(std::none_of(t.rules.begin(), t.rules.end(),
                     [](const RuleSchema& r) { return r.provenance.origin == Provenance::Origin::Generated; }));

  Calculus g3 = build_g3ix({});
  CHECK(g3.rules.size() == g3ip().rules.size());
  for (std::size_t i = 0; i < g3.rules.size(); ++i) CHECK(g3.rules[i] == g3ip().rules[i]);

  // Same axioms on both sides.
  auto axioms = [](const Calculus& c) {
    std::set<std::string> out;
    for (const auto& r : c.rules) {
      if (r.kind == RuleKind::Axiom) out.insert(r.name);
    }
    return out;
  };
  Calculus a = build_g4ix({modal("R_K"), modal("R_D")});
  Calculus b = build_g3ix({modal("R_K"), modal("R_D")});
  CHECK(axioms(a) == std::set<std::string>{"Ax", "Lbot"});
  CHECK(axioms(a) == axioms(b));
  CHECK(find(a, "Ax").same_shape(find(b, "Ax")));

  // A duplicated right modal rule generates one implication rule.
  RuleSchema k2 = modal("R_K");
  k2.name = "R_K2";
  Calculus dup = build_g4ix({modal("R_K"), k2});
  CHECK(std::count_if(dup.rules.begin(), dup.rules.end(), [](const RuleSchema& r) {
          return r.provenance.origin == Provenance::Origin::Generated;
        }) == 1);

  Calculus flat = build_g3ix({rule("rule U { premises: G => p ; conclusion: G, p => q }")});
  CHECK_FALSE(flat.warnings.empty());

  CHECK(build_g4ix({modal("R_K"), modal("R_T")}).invertible_core);
  CHECK_FALSE(build_g4ix({modal("R_GL")}).invertible_core);
}

TEST_CASE("calculus names") {
  CHECK(calculus_from_name("G3ip").rules.size() == 9);
  CHECK(calculus_from_name("G4ip").rules.size() == 12);
  CHECK(names(calculus_from_name("G4i+R_K,R_D")) == names(build_g4ix({modal("R_K"), modal("R_D")})));
  CHECK(names(calculus_from_name("G4iKT")) == names(build_g4ix({modal("R_K"), modal("R_T")})));
  CHECK(calculus_from_name("G3iK").style == Style::G3);
  CHECK_THROWS_AS(calculus_from_name("G5ip"), DslError);
  CHECK_THROWS_AS(calculus_from_name("G4i+R_Q"), DslError);
  CHECK_THROWS_AS(calculus_from_name("G4iQ"), DslError);
}

TEST_CASE("match_conclusion examples") {
  auto insts = match_conclusion(modal("R_K"), S("[]p, []q, r => [](p & q)"));
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].contexts.at("G") == M({"p", "q"}));
  CHECK(insts[0].contexts.at("P") == M({"r"}));
  CHECK(insts[0].formulas.at("phi") == F("p & q"));

  CHECK(match_conclusion(modal("R_K"), S("p => q")).empty());

  auto lp = match_conclusion(find(g4ip(), "Lp->"), S("p, p -> q => r"));
  REQUIRE(lp.size() == 1);
  CHECK(lp[0].formulas.at("p") == F("p"));
  CHECK(lp[0].formulas.at("phi") == F("q"));
  CHECK(lp[0].contexts.at("G").empty());

  // Atom restriction: no Lp-> instance for a boxed antecedent.
  CHECK(match_conclusion(find(g4ip(), "Lp->"), S("[]p, []p -> q => r")).empty());
  CHECK(match_conclusion(find(g4ip(), "Ax"), S("p => q")).empty());
  CHECK(match_conclusion(find(g4ip(), "Ax"), S("[]p => []p")).empty());
  CHECK(match_conclusion(find(g4ip(), "Ax"), S("q, p => p")).size() == 1);

  // Two conjunctions give two L& instances.
  CHECK(match_conclusion(find(g4ip(), "L&"), S("p & q, q & r => p")).size() == 2);

  // Exhaustive mode also returns distributions with boxed formulas left in P.
  auto all = match_conclusion(modal("R_K"), S("[]p, []q => []p"), MatchMode::Exhaustive);
  CHECK(all.size() == 4);
}

TEST_CASE("instantiate_premises examples") {
  Instantiation k;
  k.contexts["G"] = M({"p", "q"});
  k.contexts["P"] = FMultiset{};
  k.formulas.insert_or_assign("phi", F("p & q"));
  CHECK(instantiate_premises(modal("R_K"), k) == std::vector<Sequent>{S("p, q => p & q")});

  Instantiation g;
  g.contexts["G"] = M({"p"});
  g.contexts["P"] = FMultiset{};
  g.formulas.insert_or_assign("phi", F("p"));
  g.formulas.insert_or_assign("psi", F("q"));
  g.succedents["D"] = F("r");
  CHECK(instantiate_premises(transform_right_modal(modal("R_K")), g) ==
        std::vector<Sequent>{S("p => p"), S("[]p, q => r")});

  Instantiation ii;
  ii.formulas.insert_or_assign("phi", F("p"));
  ii.formulas.insert_or_assign("psi", F("q"));
  ii.formulas.insert_or_assign("gamma", F("r"));
  ii.contexts["G"] = FMultiset{};
  ii.succedents["D"] = F("s");
  CHECK(instantiate_premises(find(g4ip(), "L->->"), ii) == std::vector<Sequent>{S("q -> r => p -> q"), S("r => s")});

  Instantiation missing;
  missing.formulas.insert_or_assign("phi", F("p"));
  CHECK_THROWS_AS(instantiate_premises(modal("R_K"), missing), ContractViolation);
}

TEST_CASE("matching reproduces the sequent and Greedy is within Exhaustive") {
  std::vector<RuleSchema> all = g4ip().rules;
  for (const auto& r : g3ip().rules) all.push_back(r);
  for (const auto& [name, r] : builtin_modal_rules()) {
    all.push_back(r);
    if (is_right_modal(r)) all.push_back(transform_right_modal(r));
  }
  testing::Gen gen(21);
  std::size_t matched = 0;
  for (int i = 0; i < 400; ++i) {
    Sequent s = gen.sequent(3, 5, 2);
    for (const auto& r : all) {
      auto greedy = match_conclusion(r, s, MatchMode::Greedy);
      auto exhaustive = match_conclusion(r, s, MatchMode::Exhaustive);
      CHECK(std::is_sorted(exhaustive.begin(), exhaustive.end()));
      for (const auto& inst : exhaustive) {
        CAPTURE(r.name);
        CAPTURE(print_sequent(s));
        CHECK(instantiate_pattern(r.conclusion, inst) == s);
        CHECK(respects_atom_restrictions(r, inst));
      }
      for (const auto& inst : greedy) {
        ++matched;
        CHECK(std::find(exhaustive.begin(), exhaustive.end(), inst) != exhaustive.end());
      }
    }
  }
  CHECK(matched > 1000);
}

TEST_CASE("rule DSL") {
  CHECK(rule("rule R_K { premises: G => phi ; conclusion: P, box G => box phi }") == modal("R_K"));
  CHECK(rule("rule R_K { premises: G => phi ; conclusion: P, box G => box phi }").provenance.origin ==
        Provenance::Origin::User);

  RuleParseResult empty = parse_rules("");
  CHECK(empty.rules.empty());
  CHECK(empty.errors.empty());
  CHECK(parse_rules("# only a comment\n").rules.empty());

  RuleParseResult unbound = parse_rules("rule U { premises: G, chi => phi ; conclusion: G => phi }");
  CHECK(unbound.rules.empty());
  REQUIRE(unbound.errors.size() == 1);
  CHECK(unbound.errors[0].rule == "U");

  // A bad block does not hide the good ones; errors carry line numbers.
  RuleParseResult mixed = parse_rules(
      "rule A { premises: G => phi ; conclusion: G => box phi }\n"
      "\n"
      "rule B { premises: G => chi ; conclusion: G => phi }\n"
      "rule C { premises: none ; conclusion: G, phi => phi }\n");
  CHECK(mixed.rules.size() == 2);
  REQUIRE(mixed.errors.size() == 1);
  CHECK(mixed.errors[0].line == 3);

  // Sort clash: G used as a formula and a context.
  CHECK_FALSE(parse_rules("rule S { premises: G => phi ; conclusion: G, box G => G }").errors.empty());
  CHECK_FALSE(parse_rules("rule X { premises: G => phi ; conclusion: G => phi ").errors.empty());
  CHECK_FALSE(parse_rules("rule X { conclusion: G => phi }").errors.empty());

  RuleSchema indexed = rule("rule R2 { premises: G => phi ; conclusion: P, box(2) G => box(2) phi }");
  CHECK(indexed.kind == RuleKind::RightModal);
  CHECK(match_conclusion(indexed, S("[2]p => [2]p")).size() == 1);
  CHECK(match_conclusion(indexed, S("[]p => []p")).empty());
}

TEST_CASE("DSL round trip of every built-in rule") {
  std::vector<RuleSchema> all = g4ip().rules;
  for (const auto& r : g3ip().rules) all.push_back(r);
  for (const auto& [name, r] : builtin_modal_rules()) {
    all.push_back(r);
    if (is_right_modal(r)) all.push_back(transform_right_modal(r));
  }
  for (const auto& r : all) {
    CAPTURE(print_rule(r));
    RuleSchema back = rule(print_rule(r));
    CHECK(back == r);
    CHECK(print_rule(back) == print_rule(r));
  }
  RuleParseResult many = parse_rules(print_rules(g4ip().rules));
  CHECK(many.errors.empty());
  CHECK(many.rules.size() == g4ip().rules.size());
}

#include <doctest.h>

#include <functional>
#include <map>

#include "g4ix/derivation.hpp"
#include "g4ix/prover.hpp"
#include "g4ix/rule_dsl.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace g4ix;
using testing::F;
using testing::S;

namespace {

const Calculus& G3ip() {
  static const Calculus c = g3ip();
  return c;
}
const Calculus& G4ip() {
  static const Calculus c = g4ip();
  return c;
}
const Calculus& named(const std::string& name) {
  static std::map<std::string, Calculus> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, calculus_from_name(name)).first;
  return it->second;
}

const RuleSchema& rule_of(const Calculus& c, const std::string& name) {
  const RuleSchema* r = c.find(name);
  REQUIRE(r != nullptr);
  return *r;
}

// The single instance of r at s (first in match order).
Instantiation instance(const RuleSchema& r, const Sequent& s) {
  auto insts = match_conclusion(r, s, MatchMode::Exhaustive);
  REQUIRE_FALSE(insts.empty());
  return insts.front();
}

DerivationPtr node(const Calculus& c, const std::string& rule, const std::string& conclusion,
                   std::vector<DerivationPtr> children = {}) {
  const RuleSchema& r = rule_of(c, rule);
  Sequent s = S(conclusion);
  if (!children.empty()) {
    for (const auto& inst : match_conclusion(r, s, MatchMode::Exhaustive)) {
      auto premises = instantiate_premises(r, inst);
      bool fits = premises.size() == children.size();
      for (std::size_t i = 0; fits && i < premises.size(); ++i) fits = premises[i] == children[i]->conclusion;
      if (fits) return make_derivation(r, s, inst, std::move(children));
    }
  }
  return make_derivation(r, s, instance(r, s), std::move(children));
}

// Classical truth-table validity; boxes are not allowed.
bool tautology(const Formula& f) {
  std::vector<std::string> atoms;
  std::function<void(const Formula&)> collect = [&](const Formula& g) {
    if (g.is_atom() && std::find(atoms.begin(), atoms.end(), g.name()) == atoms.end()) atoms.push_back(g.name());
    if (g.is_binary()) {
      collect(g.left());
      collect(g.right());
    }
  };
  collect(f);
  for (unsigned mask = 0; mask < (1u << atoms.size()); ++mask) {
    std::function<bool(const Formula&)> eval = [&](const Formula& g) -> bool {
      switch (g.connective()) {
        case Connective::Bot:
          return false;
        case Connective::Atom:
          return (mask >> (std::find(atoms.begin(), atoms.end(), g.name()) - atoms.begin())) & 1u;
        case Connective::And:
          return eval(g.left()) && eval(g.right());
        case Connective::Or:
          return eval(g.left()) || eval(g.right());
        case Connective::Imp:
          return !eval(g.left()) || eval(g.right());
        default:
          FAIL("box in classical evaluation");
          return false;
      }
    };
    if (!eval(f)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("prove_g4 examples") {
  ProofResult id = prove_g4(G4ip(), S("=> p -> p"));
  REQUIRE(id.provable());
  CHECK(id.derivation->rule == "R->");
  CHECK(id.derivation->children.at(0)->rule == "Ax");
  CHECK(prove_g4(G4ip(), S("=> ((p -> q) -> p) -> p")).verdict == ProofResult::Verdict::Unprovable);

  ProofResult k = prove_g4(named("G4i+R_K"), S("[]p & []q => [](p & q)"));
  REQUIRE(k.provable());
  CHECK(k.derivation->rule == "L&");
  CHECK(k.derivation->children.at(0)->rule == "R_K");
  CHECK(k.derivation->children.at(0)->children.at(0)->conclusion == S("p, q => p & q"));
  CHECK_THROWS_AS(prove_g4(G3ip(), S("=> p")), ContractViolation);
}

TEST_CASE("prove_g3 examples") {
  CHECK(prove_g3(G3ip(), S("=> p | ~p")).verdict == ProofResult::Verdict::Unprovable);
  ProofResult d = prove_g3(named("G3i+R_K,R_D"), S("[]false =>"));
  REQUIRE(d.provable());
  CHECK(d.derivation->rule == "R_D");
  CHECK(d.derivation->children.at(0)->conclusion == S("false =>"));
  CHECK(d.derivation->children.at(0)->rule == "Lbot");
  ProofResult bot = prove_g3(G3ip(), S("false => q"));
  REQUIRE(bot.provable());
  CHECK(bot.derivation->rule == "Lbot");
  CHECK_THROWS_AS(prove_g3(G4ip(), S("=> p")), ContractViolation);
}

TEST_CASE("three-valued results") {
  ProofResult tiny = prove_g3(G3ip(), S("=> ((p -> q) -> p) -> p | (p & q -> r -> p)"), SearchBudget{256, 3});
  CHECK(tiny.verdict == ProofResult::Verdict::Unknown);
  CHECK(tiny.reason == ProofResult::Reason::BudgetExhausted);
  CHECK(verdict_name(tiny) == "UNKNOWN (budget-exhausted)");

  ProofResult shallow = prove_g3(G3ip(), S("=> p -> q -> p & q"), SearchBudget{2, 1000});
  CHECK(shallow.reason == ProofResult::Reason::BudgetExhausted);

  // Loop check on a branch through R_K4: no definite negative verdict.
  ProofResult k4 = prove_g3(named("G3i+R_K4"), S("[]([]p -> p) => []p"));
  CHECK(k4.verdict == ProofResult::Verdict::Unknown);
  CHECK(k4.reason == ProofResult::Reason::IncompleteStrategy);
  CHECK(verdict_name(k4) == "UNKNOWN (incomplete-strategy)");
  CHECK(prove_g3(named("G3i+R_K4"), S("[]p => [][]p")).provable());
}

TEST_CASE("the g4 engine rejects non-decreasing instances") {
  CHECK_THROWS_AS(prove_g4(named("G4i+R_GL"), S("=> []p")), TerminationViolation);
  SearchOptions flat;
  flat.order = WeightFunction::linear("flat", LinearWeights{1, 1, 1, 1});
  CHECK_THROWS_AS(prove_g4(G4ip(), S("p & q -> r => r"), flat), TerminationViolation);
}

TEST_CASE("golden verdicts") {
  for (const auto& g : testing::golden_sequents()) {
    CAPTURE(g.logic);
    CAPTURE(g.sequent);
    std::string g3 = g.logic;
    g3[1] = '3';
    Sequent s = S(g.sequent);
    ProofResult r4 = prove_g4(named(g.logic), s);
    ProofResult r3 = prove_g3(named(g3), s);
    CHECK(r4.provable() == g.provable);
    CHECK(r3.definite());
    CHECK(r3.provable() == g.provable);
    if (r4.provable()) CHECK(check_derivation(named(g.logic), *r4.derivation));
    if (r3.provable()) CHECK(check_derivation(named(g3), *r3.derivation));
  }
}

TEST_CASE("check_derivation") {
  ProofResult ok = prove_g4(G4ip(), S("p & q => q & p"));
  REQUIRE(ok.provable());
  CHECK(check_derivation(G4ip(), *ok.derivation));

  // Ax at p => q.
  Derivation fake;
  fake.conclusion = S("p => q");
  fake.rule = "Ax";
  CHECK_FALSE(check_derivation(G4ip(), fake));

  // R_K is not a rule of G4ip.
  DerivationPtr rk = node(named("G4i+R_K"), "R_K", "[]p => []p", {node(named("G4i+R_K"), "Ax", "p => p")});
  CHECK(check_derivation(named("G4i+R_K"), *rk));
  CHECK_FALSE(check_derivation(G4ip(), *rk));

  // Wrong child, missing child, extra child.
  auto bad_child = std::make_shared<Derivation>(*rk);
  bad_child->children = {node(G4ip(), "Ax", "q => q")};
  CHECK_FALSE(check_derivation(named("G4i+R_K"), *bad_child));
  auto no_child = std::make_shared<Derivation>(*rk);
  no_child->children.clear();
  CHECK_FALSE(check_derivation(named("G4i+R_K"), *no_child));
  auto leaf_with_child = std::make_shared<Derivation>(*node(G4ip(), "Ax", "p => p"));
  leaf_with_child->children = {node(G4ip(), "Ax", "p => p")};
  CHECK_FALSE(check_derivation(G4ip(), *leaf_with_child));

  // A stored instantiation that does not fit the conclusion.
  auto wrong_inst = std::make_shared<Derivation>(*node(G4ip(), "Ax", "q, p => p"));
  wrong_inst->instantiation->contexts["G"] = FMultiset{F("r")};
  CHECK_FALSE(check_derivation(G4ip(), *wrong_inst));
  wrong_inst->instantiation.reset();
  CHECK(check_derivation(G4ip(), *wrong_inst));
}

TEST_CASE("derivation measures and printing") {
  const Calculus& c = G4ip();
  DerivationPtr leaf = node(c, "Ax", "p => p");
  CHECK(height(*leaf) == 1);
  CHECK(leftmost_length(*leaf) == 1);
  DerivationPtr chain = node(c, "R->", "=> p & q -> p", {node(c, "L&", "p & q => p", {node(c, "Ax", "p, q => p")})});
  CHECK(height(*chain) == 3);
  CHECK(leftmost_length(*chain) == 3);
  CHECK(node_count(*chain) == 3);
  DerivationPtr binary =
      node(c, "R&", "p, q => p & (q & p)",
           {node(c, "Ax", "p, q => p"), node(c, "R&", "p, q => q & p", {node(c, "Ax", "p, q => q"), node(c, "Ax", "p, q => p")})});
  CHECK(check_derivation(c, *binary));
  CHECK(height(*binary) == 3);
  CHECK(leftmost_length(*binary) == 2);
  CHECK(print_derivation(*chain) == "=> p & q -> p   [R->]\n  p & q => p   [L&]\n    p, q => p   [Ax]\n");
}

TEST_CASE("derivation JSON") {
  DerivationPtr d = node(G4ip(), "R->", "=> p -> p", {node(G4ip(), "Ax", "p => p")});
  CHECK(derivation_to_json(*d) ==
        R"({"sequent":"=> p -> p","rule":"R->","children":[{"sequent":"p => p","rule":"Ax","children":[]}]})");
  DerivationPtr back = derivation_from_json(derivation_to_json(*d, 2), G4ip());
  CHECK(check_derivation(G4ip(), *back));
  CHECK(derivation_to_json(*back) == derivation_to_json(*d));

  CHECK_THROWS_AS(derivation_from_json("{", G4ip()), DerivationFormatError);
  CHECK_THROWS_AS(derivation_from_json(R"({"sequent":"p => p"})", G4ip()), DerivationFormatError);
  CHECK_THROWS_AS(derivation_from_json(R"({"sequent":"p =>> p","rule":"Ax","children":[]})", G4ip()),
                  DerivationFormatError);
  DerivationPtr unknown = derivation_from_json(R"({"sequent":"p => p","rule":"Nope","children":[]})", G4ip());
  CHECK_FALSE(check_derivation(G4ip(), *unknown));
}

TEST_CASE("irreducible, sensible, strict") {
  CHECK_FALSE(is_irreducible(S("p | q => r")));
  CHECK_FALSE(is_irreducible(S("p & q => r")));
  CHECK_FALSE(is_irreducible(S("false => r")));
  CHECK_FALSE(is_irreducible(S("p, p -> q => r")));
  CHECK(is_irreducible(S("p, []p -> q => p & q")));
  CHECK(is_irreducible(S("q, p -> q => p | q")));

  const Calculus& c = G3ip();
  CHECK(is_sensible(*node(c, "R->", "=> p -> p", {node(c, "Ax", "p => p")})));
  DerivationPtr atomic = node(c, "L->", "p, p -> q => q", {node(c, "Ax", "p, p -> q => p"), node(c, "Ax", "p, q => q")});
  CHECK(check_derivation(c, *atomic));
  CHECK_FALSE(is_sensible(*atomic));
  DerivationPtr compound = node(c, "L->", "(p -> q) -> r => r",
                                {node(c, "R->", "(p -> q) -> r => p -> q", {}), node(c, "Ax", "r => r")});
  CHECK(is_sensible(*compound));

  const Calculus& k = named("G3i+R_K");
  DerivationPtr strict = node(k, "L->", "[]p -> q, []p => q",
                              {node(k, "R_K", "[]p -> q, []p => []p", {node(k, "Ax", "p => p")}), node(k, "Ax", "q, []p => q")});
  CHECK(check_derivation(k, *strict));
  CHECK(is_strict(*strict));
  DerivationPtr lax = node(k, "L->", "[]p -> q, []p & r => q",
                           {node(k, "L&", "[]p -> q, []p & r => []p", {}), node(k, "Ax", "q, []p & r => q")});
  CHECK_FALSE(is_strict(*lax));
  CHECK(is_strict(*node(c, "Ax", "p => p")));
}

TEST_CASE("find_strict_sensible") {
  CHECK_THROWS_AS(find_strict_sensible(G3ip(), S("p -> q, q -> r, p => r")), ContractViolation);
  ProofResult r = find_strict_sensible(named("G3i+R_K"), S("[]p -> q, []p => q"));
  REQUIRE(r.provable());
  CHECK(is_strict(*r.derivation));
  CHECK(is_sensible(*r.derivation));
  CHECK(strict_sensible_everywhere(*r.derivation));
  CHECK(check_derivation(named("G3i+R_K"), *r.derivation));
  CHECK(find_strict_sensible(G3ip(), S("p -> q => q")).verdict == ProofResult::Verdict::Unprovable);
}

TEST_CASE("strict-sensible proofs exist for provable irreducible sequents") {
  testing::Gen gen(41);
  for (const char* logic : {"G3ip", "G3i+R_K", "G3i+R_K,R_D", "G3i+R_K,R_T"}) {
    CAPTURE(logic);
    std::size_t tried = 0;
    for (int i = 0; i < 3000 && tried < 60; ++i) {
      Sequent s = gen.sequent(3, 6);
      if (!is_irreducible(s)) continue;
      ProofResult plain = prove_g3(named(logic), s);
      if (!plain.provable()) continue;
      ++tried;
      CAPTURE(print_sequent(s));
      ProofResult r = find_strict_sensible(named(logic), s);
      REQUIRE(r.provable());
      CHECK(strict_sensible_everywhere(*r.derivation));
      CHECK(check_derivation(named(logic), *r.derivation));
    }
    CHECK(tried >= 30);
  }
}

TEST_CASE("Glivenko: ~~phi is provable in G4ip iff phi is a classical tautology") {
  testing::Gen gen(51);
  std::size_t valid = 0;
  for (int i = 0; i < 400; ++i) {
    Formula f = gen.formula(1 + static_cast<unsigned>(gen.below(9)), 3, 0);
    CAPTURE(print_formula(f));
    bool taut = tautology(f);
    valid += taut;
    ProofResult r = prove_g4(G4ip(), Sequent(FMultiset{}, Formula::neg(Formula::neg(f))));
    CHECK(r.provable() == taut);
    // Intuitionistic provability implies classical validity.
    if (prove_g4(G4ip(), Sequent(FMultiset{}, f)).provable()) CHECK(taut);
  }
  CHECK(valid > 20);
}

TEST_CASE("engines agree and every proof checks") {
  testing::Gen gen(61);
  for (const char* logic : {"ip", "i+R_K", "i+R_K,R_D", "i+R_T", "i+R_X"}) {
    const Calculus& c3 = named(std::string("G3") + logic);
    const Calculus& c4 = named(std::string("G4") + logic);
    for (int i = 0; i < 250; ++i) {
      Sequent s = gen.sequent(3, 7);
      CAPTURE(print_sequent(s));
      ProofResult r3 = prove_g3(c3, s);
      ProofResult r4 = prove_g4(c4, s);
      CHECK(r4.definite());
      if (r3.definite()) CHECK(r3.provable() == r4.provable());
      if (r3.provable()) CHECK(check_derivation(c3, *r3.derivation));
      if (r4.provable()) {
        CHECK(check_derivation(c4, *r4.derivation));
        CHECK(r4.derivation->conclusion == s);
      }
    }
  }
}

TEST_CASE("exhaustive matching gives the same verdicts") {
  testing::Gen gen(71);
  SearchOptions ex;
  ex.match = MatchMode::Exhaustive;
  for (int i = 0; i < 200; ++i) {
    Sequent s = gen.sequent(3, 6);
    CAPTURE(print_sequent(s));
    CHECK(prove_g4(named("G4i+R_K"), s).provable() == prove_g4(named("G4i+R_K"), s, ex).provable());
  }
}

TEST_CASE("G3 verdicts are stable under budget doubling") {
  testing::Gen gen(81);
  for (int i = 0; i < 150; ++i) {
    Sequent s = gen.sequent(3, 7);
    SearchBudget b{8, 2000};
    ProofResult first = prove_g3(named("G3i+R_K"), s, b);
    for (int k = 0; k < 4; ++k) {
      b.max_depth *= 2;
      b.max_nodes *= 2;
      ProofResult later = prove_g3(named("G3i+R_K"), s, b);
      if (first.definite()) {
        CAPTURE(print_sequent(s));
        CHECK(later.verdict == first.verdict);
      }
    }
  }
}

TEST_CASE("G3 verdicts are invariant under one L& / L| inversion step") {
  testing::Gen gen(91);
  std::size_t checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    Sequent s = gen.sequent(3, 7);
    for (const auto& f : s.antecedent.elements()) {
      if (f.connective() != Connective::And && f.connective() != Connective::Or) continue;
      ++checked;
      CAPTURE(print_sequent(s));
      ProofResult whole = prove_g3(named("G3i+R_K"), s);
      if (!whole.definite()) break;
      Sequent a = s, b = s;
      a.antecedent.erase(f);
      b.antecedent.erase(f);
      a.antecedent.insert(f.left());
      if (f.connective() == Connective::And) {
        a.antecedent.insert(f.right());
        CHECK(prove_g3(named("G3i+R_K"), a).provable() == whole.provable());
      } else {
        b.antecedent.insert(f.right());
        bool both = prove_g3(named("G3i+R_K"), a).provable() && prove_g3(named("G3i+R_K"), b).provable();
        CHECK(both == whole.provable());
      }
      break;
    }
  }
  CHECK(checked >= 100);
}

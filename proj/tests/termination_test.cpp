#include <doctest.h>

#include <set>

#include "g4ix/calculus.hpp"
#include "g4ix/matching.hpp"
#include "g4ix/termination.hpp"
#include "support.hpp"

using namespace g4ix;
using testing::F;
using testing::S;

namespace {

const WeightFunction wd = WeightFunction::dyckhoff();

RuleSchema modal(const std::string& name) { return *builtin_modal_rule(name); }

const RuleSchema& find(const Calculus& c, const std::string& name) {
  const RuleSchema* r = c.find(name);
  REQUIRE(r != nullptr);
  return *r;
}

struct Vars {
  std::set<std::string> formulas, contexts, succedents;
};

void collect(const Pattern& p, Vars& v) {
  for (const auto& item : p.antecedent) {
    if (item.kind == ContextItem::Kind::Context) {
      v.contexts.insert(item.var);
    } else {
      item.formula.collect_vars(v.formulas);
    }
  }
  if (p.succedent.kind == SuccedentPattern::Kind::Var) v.succedents.insert(p.succedent.var);
  if (p.succedent.kind == SuccedentPattern::Kind::Formula) p.succedent.formula.collect_vars(v.formulas);
}

// A random binding of every metavariable of r.
Instantiation random_instance(const RuleSchema& r, testing::Gen& gen) {
  Vars v;
  collect(r.conclusion, v);
  for (const auto& p : r.premises) collect(p, v);
  Instantiation inst;
  for (const auto& f : v.formulas) {
    unsigned size = r.atom_vars.count(f) ? 1 : 1 + static_cast<unsigned>(gen.below(5));
    Formula value = gen.formula(size, 3, 2);
    while (r.atom_vars.count(f) && !value.is_atom()) value = gen.formula(1, 3, 0);
    inst.formulas.insert_or_assign(f, value);
  }
  for (const auto& c : v.contexts) inst.contexts[c] = gen.multiset(3, 5);
  for (const auto& d : v.succedents) {
    if (gen.below(4) == 0) {
      inst.succedents[d] = std::nullopt;
    } else {
      inst.succedents[d] = gen.formula(1 + static_cast<unsigned>(gen.below(5)));
    }
  }
  return inst;
}

std::vector<RuleSchema> every_builtin_rule() {
  std::vector<RuleSchema> all = g4ip().rules;
  for (const auto& r : g3ip().rules) all.push_back(r);
  for (const auto& [name, r] : builtin_modal_rules()) {
    all.push_back(r);
    if (is_right_modal(r)) all.push_back(transform_right_modal(r));
  }
  return all;
}

}  // namespace

TEST_CASE("G4ip and the terminating modal rules") {
  for (const auto& r : g4ip().rules) {
    CAPTURE(r.name);
    CHECK(check_schema_termination(wd, r).kind == TerminationVerdict::Kind::Terminating);
  }
  for (const char* name : {"R_K", "R_D", "R_T", "R_X"}) {
    CAPTURE(name);
    CHECK(check_schema_termination(wd, modal(name)).kind == TerminationVerdict::Kind::Terminating);
    if (is_right_modal(modal(name))) {
      CHECK(check_schema_termination(wd, transform_right_modal(modal(name))).kind ==
            TerminationVerdict::Kind::Terminating);
    }
  }
}

TEST_CASE("non-terminating rules yield checked counterexamples") {
  std::vector<RuleSchema> bad = {modal("R_K4"), modal("R_GL"), modal("R_SL"), find(g3ip(), "L->"),
                                 transform_right_modal(modal("R_GL"))};
  for (const auto& r : bad) {
    CAPTURE(r.name);
    TerminationVerdict v = check_schema_termination(wd, r);
    REQUIRE(v.kind == TerminationVerdict::Kind::Counterexample);
    auto premises = instantiate_premises(r, v.instantiation);
    Sequent conclusion = instantiate_pattern(r.conclusion, v.instantiation);
    REQUIRE(v.premise < premises.size());
    CHECK_FALSE(sequent_less(wd, premises[v.premise], conclusion));
    CHECK(respects_atom_restrictions(r, v.instantiation));
    CHECK(print_verdict(v).rfind("COUNTEREXAMPLE ", 0) == 0);
  }
}

TEST_CASE("the R_GL instance with Gamma = {p}, phi = q does not decrease") {
  Instantiation inst;
  inst.contexts["G"] = FMultiset{F("p")};
  inst.contexts["P"] = FMultiset{};
  inst.formulas.insert_or_assign("phi", F("q"));
  auto premises = instantiate_premises(modal("R_GL"), inst);
  REQUIRE(premises.size() == 1);
  CHECK(premises[0] == S("p, []p, []q => q"));
  CHECK(instantiate_pattern(modal("R_GL").conclusion, inst) == S("[]p => []q"));
  CHECK_FALSE(sequent_less(wd, premises[0], S("[]p => []q")));
}

TEST_CASE("Terminating verdicts hold on random instances") {
  testing::Gen gen(31);
  for (const auto& r : every_builtin_rule()) {
    if (check_schema_termination(wd, r).kind != TerminationVerdict::Kind::Terminating) continue;
    CAPTURE(r.name);
    for (int i = 0; i < 300; ++i) {
      Instantiation inst = random_instance(r, gen);
      CHECK(check_instance_decrease(wd, instantiate_premises(r, inst), instantiate_pattern(r.conclusion, inst)));
    }
  }
}

TEST_CASE("other weight functions") {
  // With conjunction no heavier than implication, L&-> stops decreasing.
  WeightFunction flat = WeightFunction::linear("flat", LinearWeights{1, 1, 1, 1});
  TerminationVerdict v = check_schema_termination(flat, find(g4ip(), "L&->"));
  CHECK(v.kind == TerminationVerdict::Kind::Counterexample);
  CHECK(check_schema_termination(flat, modal("R_K")).kind == TerminationVerdict::Kind::Terminating);

  // A non-linear weight gets no symbolic verdict.
  WeightFunction size = WeightFunction::custom("size", [](const Formula& f) { return static_cast<Weight>(f.size()); });
  CHECK(check_schema_termination(size, modal("R_K")).kind == TerminationVerdict::Kind::Unknown);
  CHECK(check_schema_termination(size, modal("R_GL")).kind == TerminationVerdict::Kind::Counterexample);
  CHECK(print_verdict(check_schema_termination(size, modal("R_K"))) == "UNKNOWN");
}

TEST_CASE("symbolic criterion") {
  LinearWeights dyckhoff;
  CHECK(symbolically_terminating(dyckhoff, modal("R_K")));
  CHECK(symbolically_terminating(dyckhoff, find(g4ip(), "L->->")));
  CHECK_FALSE(symbolically_terminating(dyckhoff, modal("R_K4")));
  CHECK_FALSE(symbolically_terminating(dyckhoff, find(g3ip(), "L->")));
  CHECK_FALSE(symbolically_terminating(LinearWeights{1, 1, 1, 1}, find(g4ip(), "L&->")));
  CHECK(print_verdict(check_schema_termination(wd, modal("R_T"))) == "TERMINATING");
}

TEST_CASE("verdicts are deterministic in the seed") {
  SamplingConfig cfg;
  cfg.seed = 9;
  auto a = check_schema_termination(wd, modal("R_SL"), cfg);
  auto b = check_schema_termination(wd, modal("R_SL"), cfg);
  CHECK(print_verdict(a) == print_verdict(b));
}

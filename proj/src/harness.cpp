#include "g4ix/harness.hpp"

#include <chrono>
#include <optional>
#include <set>

#include <json.hpp>

#include "g4ix/generate.hpp"
#include "g4ix/rule_dsl.hpp"

namespace g4ix {

namespace {

// Stream tags keep the index spaces of the different samplers apart.
enum Stream : std::uint64_t {
  kSequents = 0,
  kWeakening = 0x1000,
  kContraction = 0x2000,
  kCut = 0x3000,
  kInvertibility = 0x4000,
  kIrreducible = 0x5000,
};

FormulaShape shape_of(const FuzzConfig& cfg) {
  FormulaShape shape;
  shape.max_size = cfg.max_size;
  shape.atoms = cfg.atoms;
  shape.max_modal_depth = cfg.max_modal_depth;
  return shape;
}

Rng case_rng(const FuzzConfig& cfg, std::uint64_t stream, std::uint64_t index) {
  return Rng::derived(Rng::derived(cfg.seed, stream).below(~0ULL), index);
}

void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.is_box()) {
    collect_subformulas(f.body(), out);
  } else if (f.is_binary()) {
    collect_subformulas(f.left(), out);
    collect_subformulas(f.right(), out);
  }
}

// A formula of at most `size` nodes reusing material from `sources`: a subformula,
// possibly combined with a second subformula or a fresh formula.
Formula related_formula(Rng& rng, const FormulaShape& shape, const std::vector<Formula>& sources, unsigned size) {
  std::set<Formula> subs;
  for (const auto& f : sources) collect_subformulas(f, subs);
  std::vector<Formula> pool;
  for (const auto& f : subs) {
    if (f.size() <= size) pool.push_back(f);
  }
  if (pool.empty()) return random_formula_of_size(rng, shape, 1 + static_cast<unsigned>(rng.below(size)));
  Formula a = pool[rng.below(pool.size())];
  if (a.size() + 2 > size || rng.below(3) == 0) return a;
  unsigned rest = size - 1 - static_cast<unsigned>(a.size());
  std::vector<Formula> fits;
  for (const auto& f : pool) {
    if (f.size() <= rest) fits.push_back(f);
  }
  Formula b = (rng.chance(50) && !fits.empty()) ? fits[rng.below(fits.size())]
                                                 : random_formula_of_size(rng, shape, 1 + static_cast<unsigned>(rng.below(rest)));
  static constexpr Connective kBinary[] = {Connective::And, Connective::Or, Connective::Imp};
  Connective c = kBinary[rng.below(3)];
  return rng.chance(50) ? Formula::binary(c, a, b) : Formula::binary(c, b, a);
}

// Half of the succedents reuse antecedent material (or, for an empty antecedent,
// take the form A -> B with B built from A), which keeps provable cases common.
Sequent random_sequent(Rng& rng, const FormulaShape& shape) {
  Sequent s;
  auto k = rng.below(3);
  std::vector<Formula> ante;
  for (std::uint64_t i = 0; i < k; ++i) ante.push_back(random_formula(rng, shape));
  s.antecedent = FMultiset(ante);
  if (rng.below(10) == 0) return s;
  if (rng.chance(50) || shape.max_size < 3) {
    s.succedent = random_formula(rng, shape);
  } else if (ante.empty()) {
    unsigned half = (shape.max_size - 1) / 2;
    FormulaShape smaller = shape;
    smaller.max_size = half;
    Formula a = random_formula(rng, smaller);
    Formula b = related_formula(rng, shape, {a}, shape.max_size - 1 - static_cast<unsigned>(a.size()));
    s.succedent = Formula::imp(a, b);
  } else {
    s.succedent = related_formula(rng, shape, ante, shape.max_size);
  }
  return s;
}

std::vector<Formula> subformula_pool(const Sequent& s) {
  std::set<Formula> set;
  for (const auto& f : s.all_formulas().elements()) collect_subformulas(f, set);
  return {set.begin(), set.end()};
}

Sequent with_antecedent(Sequent s, const Formula& f, std::size_t k = 1) {
  s.antecedent.insert(f, k);
  return s;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Proves with the calculus' own engine and validates every derivation it returns.
class Oracle {
public:
  Oracle(const Calculus& c, const FuzzConfig& cfg, Report& report) : calc_(c), cfg_(cfg), report_(report) {
    opts_.match = cfg.match;
  }

  ProofResult prove(const Sequent& s) {
    ProofResult r;
    if (calc_.style == Style::G4) {
      try {
        r = prove_g4(calc_, s, opts_);
      } catch (const TerminationViolation& e) {
        ++report_.termination_violations;
        report_.warnings.push_back(std::string("termination violation: ") + e.what());
        r = ProofResult{};
      }
    } else {
      r = prove_g3(calc_, s, cfg_.budget, opts_);
    }
    if (r.derivation) verify(*r.derivation);
    return r;
  }

  void verify(const Derivation& d) {
    bool ok = check_derivation(calc_, d);
    if (ok) {
      std::string json = derivation_to_json(d);
      DerivationPtr back = derivation_from_json(json, calc_);
      ok = check_derivation(calc_, *back) && derivation_to_json(*back) == json;
    }
    if (!ok) ++report_.invalid_derivations;
  }

  const Calculus& calculus() const { return calc_; }
  const SearchOptions& options() const { return opts_; }

private:
  const Calculus& calc_;
  const FuzzConfig& cfg_;
  Report& report_;
  SearchOptions opts_;
};

CaseRecord::Flag implication_flag(const ProofResult& premise, const ProofResult& conclusion) {
  if (!premise.definite() || !conclusion.definite()) return CaseRecord::Flag::Indefinite;
  if (premise.provable() && !conclusion.provable()) return CaseRecord::Flag::Disagree;
  return CaseRecord::Flag::Agree;
}

void finish(Report& r) {
  if (!r.cases.empty() && r.indefinite * 20 >= r.cases.size()) {
    r.calibration_failed = true;
    r.warnings.push_back("calibration: " + std::to_string(r.indefinite) + " of " + std::to_string(r.cases.size()) +
                         " cases indefinite (limit 5%); raise the search budget");
  }
}

void note_untrusted(const std::vector<RuleSchema>& modal, Report& r) {
  for (const auto& rule : modal) {
    if (!is_core_compatible(rule)) {
      r.warnings.push_back(rule.name + ": closure under weakening is tested here, not verified");
    }
  }
}

void note_shortfall(Report& r, const std::string& check, std::size_t found, std::size_t wanted) {
  if (found < wanted) {
    r.warnings.push_back(check + ": sampled " + std::to_string(found) + " of " + std::to_string(wanted) +
                         " cases within the attempt cap");
  }
}

// Splits conjunctions, keeps one disjunct of each disjunction, drops false and
// applies modus ponens on atoms until the antecedent is irreducible.
Sequent irreducible_part(Sequent s, Rng& rng) {
  while (!is_irreducible(s)) {
    FMultiset next;
    for (const Formula& f : s.antecedent.elements()) {
      switch (f.connective()) {
        case Connective::And:
          next.insert(f.left());
          next.insert(f.right());
          break;
        case Connective::Or:
          next.insert(rng.chance(50) ? f.left() : f.right());
          break;
        case Connective::Bot:
          break;
        case Connective::Imp:
          next.insert(f.left().is_atom() && s.antecedent.contains(f.left()) ? f.right() : f);
          break;
        default:
          next.insert(f);
      }
    }
    s.antecedent = std::move(next);
  }
  return s;
}

}  // namespace

void validate(const FuzzConfig& cfg) {
  if (cfg.max_size == 0) throw ContractViolation("max_size must be at least 1");
  if (cfg.atoms == 0) throw ContractViolation("atoms must be at least 1");
  if (cfg.budget.max_depth == 0 || cfg.budget.max_nodes == 0) throw ContractViolation("search budget must be positive");
}

Formula gen_formula(const FuzzConfig& cfg, std::uint64_t index) {
  Rng rng = case_rng(cfg, kSequents, index);
  return random_formula(rng, shape_of(cfg));
}

Sequent gen_sequent(const FuzzConfig& cfg, std::uint64_t index) {
  Rng rng = case_rng(cfg, kSequents, index);
  return random_sequent(rng, shape_of(cfg));
}

void Report::add(CaseRecord rec) {
  switch (rec.flag) {
    case CaseRecord::Flag::Agree:
      ++agree;
      break;
    case CaseRecord::Flag::Disagree:
      ++disagree;
      break;
    case CaseRecord::Flag::Indefinite:
      ++indefinite;
      break;
  }
  cases.push_back(std::move(rec));
}

std::size_t Report::count_of(const std::string& check) const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.check == check ? 1 : 0;
  return n;
}

std::size_t Report::failures_of(const std::string& check) const {
  std::size_t n = 0;
  for (const auto& c : cases) n += (c.check == check && c.flag == CaseRecord::Flag::Disagree) ? 1 : 0;
  return n;
}

bool Report::passed() const noexcept {
  return disagree == 0 && invalid_derivations == 0 && termination_violations == 0 && !calibration_failed;
}

const char* flag_name(CaseRecord::Flag f) {
  switch (f) {
    case CaseRecord::Flag::Agree:
      return "agree";
    case CaseRecord::Flag::Disagree:
      return "DISAGREE";
    case CaseRecord::Flag::Indefinite:
      return "indefinite";
  }
  return "?";
}

std::string report_text(const Report& r) {
  std::string out;
  for (const auto& c : r.cases) {
    out += std::to_string(c.index) + "\t" + c.check + "\t" + c.input + "\t" + c.first + "\t" + c.second + "\t" +
           flag_name(c.flag);
    if (!c.note.empty()) out += "\t" + c.note;
    out += "\n";
  }
  return out;
}

std::string report_json_summary(const Report& r, int indent) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  j["count"] = r.count();
  j["agree"] = r.agree;
  j["disagree"] = r.disagree;
  j["indefinite"] = r.indefinite;
  j["invalid_derivations"] = r.invalid_derivations;
  j["termination_violations"] = r.termination_violations;
  j["calibration_failed"] = r.calibration_failed;
  j["passed"] = r.passed();
  j["warnings"] = r.warnings;
  nlohmann::ordered_json failing = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) {
    if (c.flag == CaseRecord::Flag::Disagree) failing.push_back({{"index", c.index}, {"check", c.check}, {"input", c.input}});
  }
  j["failures"] = failing;
  return j.dump(indent);
}

std::vector<RuleSchema> resolve_modal_rules(const std::vector<std::string>& names) {
  std::vector<RuleSchema> out;
  for (const auto& n : names) {
    auto rs = load_rule_list(n);
    out.insert(out.end(), rs.begin(), rs.end());
  }
  return out;
}

Report equivalence_fuzz(const FuzzConfig& cfg) {
  validate(cfg);
  auto modal = resolve_modal_rules(cfg.modal_rules);
  const Calculus g3 = build_g3ix(modal);
  const Calculus g4 = build_g4ix(modal);
  Report report;
  report.title = "equivalence " + g3.name + " / " + g4.name;
  report.warnings = g4.warnings;
  note_untrusted(modal, report);
  Oracle o3(g3, cfg, report);
  Oracle o4(g4, cfg, report);

  for (unsigned i = 0; i < cfg.count; ++i) {
    Sequent s = gen_sequent(cfg, i);
    auto start = std::chrono::steady_clock::now();
    ProofResult r3 = o3.prove(s);
    std::size_t violations = report.termination_violations;
    ProofResult r4 = o4.prove(s);
    CaseRecord rec;
    rec.index = i;
    rec.check = "equiv";
    rec.input = print_sequent(s);
    rec.first = verdict_name(r3);
    rec.second = verdict_name(r4);
    if (report.termination_violations != violations) {
      rec.flag = CaseRecord::Flag::Disagree;
      rec.note = "termination violation";
    } else if (!r3.definite()) {
      rec.flag = CaseRecord::Flag::Indefinite;
    } else {
      rec.flag = r3.provable() == r4.provable() ? CaseRecord::Flag::Agree : CaseRecord::Flag::Disagree;
    }
    rec.millis = millis_since(start);
    report.add(std::move(rec));
  }
  finish(report);
  return report;
}

Report admissibility_suite(const Calculus& calc, const FuzzConfig& cfg) {
  validate(cfg);
  if (calc.style != Style::G4) throw ContractViolation("admissibility_suite expects a G4-style calculus");
  Report report;
  report.title = "admissibility " + calc.name;
  report.warnings = calc.warnings;
  for (const auto& r : calc.rules) {
    if (r.provenance.origin == Provenance::Origin::User && !is_core_compatible(r)) {
      report.warnings.push_back(r.name + ": closure under weakening is tested here, not verified");
    }
  }
  Oracle oracle(calc, cfg, report);
  const FormulaShape shape = shape_of(cfg);
  const std::uint64_t cap = 10ULL * cfg.count;

  auto record = [&](const std::string& check, std::size_t index, const Sequent& target, const ProofResult& premise,
                    const ProofResult& conclusion, std::chrono::steady_clock::time_point start) {
    CaseRecord rec;
    rec.index = index;
    rec.check = check;
    rec.input = print_sequent(target);
    rec.first = verdict_name(premise);
    rec.second = verdict_name(conclusion);
    rec.flag = implication_flag(premise, conclusion);
    rec.millis = millis_since(start);
    report.add(std::move(rec));
  };

  // Weakening on both sides, from sampled provable sequents.
  std::size_t found = 0;
  for (std::uint64_t j = 0; j < cap && found < cfg.count; ++j) {
    Rng rng = case_rng(cfg, kWeakening, j);
    Sequent s = random_sequent(rng, shape);
    auto start = std::chrono::steady_clock::now();
    ProofResult base = oracle.prove(s);
    if (!base.provable()) continue;
    ++found;
    Formula phi = random_formula(rng, shape);
    Sequent weakened = with_antecedent(s, phi);
    record("weakening-left", j, weakened, base, oracle.prove(weakened), start);

    // A provable sequent with empty succedent: add the negated succedent.
    Sequent empty = s;
    if (s.succedent) {
      empty.antecedent.insert(Formula::neg(*s.succedent));
      empty.succedent.reset();
    }
    ProofResult empty_result = oracle.prove(empty);
    if (empty_result.provable()) {
      Sequent target = empty;
      target.succedent = phi;
      record("weakening-right", j, target, empty_result, oracle.prove(target), start);
    }
  }
  note_shortfall(report, "weakening", found, cfg.count);

  found = 0;
  for (std::uint64_t j = 0; j < cap && found < cfg.count; ++j) {
    Rng rng = case_rng(cfg, kContraction, j);
    Sequent s = random_sequent(rng, shape);
    auto start = std::chrono::steady_clock::now();
    auto elements = s.antecedent.elements();
    Formula phi = elements.empty() ? random_formula(rng, shape) : elements[rng.below(elements.size())];
    std::size_t have = s.antecedent.count(phi);
    Sequent doubled = with_antecedent(s, phi, have >= 2 ? 0 : 2 - have);
    if (have >= 2) doubled.antecedent.insert(phi);
    ProofResult premise = oracle.prove(doubled);
    if (!premise.provable()) continue;
    ++found;
    Sequent contracted = doubled;
    contracted.antecedent.erase(phi);
    record("contraction", j, contracted, premise, oracle.prove(contracted), start);
  }
  note_shortfall(report, "contraction", found, cfg.count);

  // Cut: (G1 => phi) and (G2, phi => D) give (G1, G2 => D).
  found = 0;
  FormulaShape small = shape;
  small.max_size = std::min(4u, shape.max_size);
  for (std::uint64_t j = 0; j < cap && found < cfg.count; ++j) {
    Rng rng = case_rng(cfg, kCut, j);
    Sequent s = random_sequent(rng, shape);
    FMultiset g1 = s.antecedent;
    if (g1.empty()) g1.insert(random_formula(rng, shape));
    FMultiset g2;
    if (rng.chance(50)) g2.insert(random_formula(rng, shape));
    Sequent end(mset_union(g1, g2), s.succedent);
    auto pool = subformula_pool(end);
    pool.push_back(random_formula(rng, small));
    auto start = std::chrono::steady_clock::now();
    // The first pool formula, from a random offset, that makes both cut premises provable.
    const std::size_t offset = rng.below(pool.size());
    std::optional<Formula> cut_formula;
    ProofResult right;
    for (std::size_t k = 0; k < pool.size() && !cut_formula; ++k) {
      const Formula& candidate = pool[(offset + k) % pool.size()];
      if (!oracle.prove(Sequent(g1, candidate)).provable()) continue;
      right = oracle.prove(with_antecedent(Sequent(g2, s.succedent), candidate));
      if (right.provable()) cut_formula = candidate;
    }
    if (!cut_formula) continue;
    const Formula phi = *cut_formula;
    ++found;
    CaseRecord rec;
    rec.index = j;
    rec.check = "cut";
    rec.input = print_sequent(end);
    rec.first = verdict_name(right);
    ProofResult conclusion = oracle.prove(end);
    rec.second = verdict_name(conclusion);
    rec.flag = implication_flag(right, conclusion);
    rec.note = "cut formula " + print_formula(phi);
    rec.millis = millis_since(start);
    report.add(std::move(rec));
  }
  note_shortfall(report, "cut", found, cfg.count);
  finish(report);
  return report;
}

Report invertibility_suite(const std::vector<RuleSchema>& modal, const FuzzConfig& cfg) {
  validate(cfg);
  const Calculus calc = build_g3ix(modal);
  Report report;
  report.title = "invertibility " + calc.name;
  report.warnings = calc.warnings;
  note_untrusted(modal, report);
  Oracle oracle(calc, cfg, report);
  const FormulaShape shape = shape_of(cfg);
  const std::uint64_t cap = 10ULL * cfg.count;

  struct Instance {
    Sequent conclusion;
    std::vector<Sequent> premises;
  };
  using Maker = Instance (*)(Rng&, const FormulaShape&);
  // Components are drawn half the time from the subformulas of the context, which
  // keeps the share of provable conclusions workable.
  static auto context = [](Rng& rng, const FormulaShape& shape) {
    FMultiset g;
    auto k = 1 + rng.below(2);
    for (std::uint64_t i = 0; i < k; ++i) g.insert(random_formula(rng, shape));
    return g;
  };
  static auto component = [](Rng& rng, const FormulaShape& shape, const FMultiset& g) {
    if (rng.chance(50)) {
      auto pool = subformula_pool(Sequent(g, std::nullopt));
      return pool[rng.below(pool.size())];
    }
    return random_formula(rng, shape);
  };
  static auto goal = [](Rng& rng, const FormulaShape& shape, const FMultiset& g) -> std::optional<Formula> {
    if (rng.below(10) == 0) return std::nullopt;
    return component(rng, shape, g);
  };
  const std::vector<std::pair<std::string, Maker>> checks = {
      {rules::kRAnd,
       [](Rng& rng, const FormulaShape& shape) {
         FMultiset g = context(rng, shape);
         // Both conjuncts must follow from g: half of them are members of g or
         // conjuncts of members, most others subformulas of g.
         auto conjunct = [&] {
           if (rng.chance(50)) {
             std::vector<Formula> parts = g.elements();
             for (std::size_t i = 0; i < parts.size(); ++i) {
               if (parts[i].connective() == Connective::And) {
                 parts.push_back(parts[i].left());
                 parts.push_back(parts[i].right());
               }
             }
             return parts[rng.below(parts.size())];
           }
           auto pool = subformula_pool(Sequent(g, std::nullopt));
           return rng.chance(80) ? pool[rng.below(pool.size())] : random_formula(rng, shape);
         };
         Formula a = conjunct(), b = conjunct();
         return Instance{Sequent(g, Formula::conj(a, b)), {Sequent(g, a), Sequent(g, b)}};
       }},
      {rules::kLAnd,
       [](Rng& rng, const FormulaShape& shape) {
         FMultiset g = context(rng, shape);
         Formula a = component(rng, shape, g), b = component(rng, shape, g);
         auto d = goal(rng, shape, g);
         FMultiset premise = g;
         premise.insert(a);
         premise.insert(b);
         return Instance{Sequent(with_antecedent(Sequent(g, d), Formula::conj(a, b)).antecedent, d),
                         {Sequent(premise, d)}};
       }},
      {rules::kLOr,
       [](Rng& rng, const FormulaShape& shape) {
         FMultiset g = context(rng, shape);
         Formula a = component(rng, shape, g), b = component(rng, shape, g);
         auto d = goal(rng, shape, g);
         return Instance{Sequent(with_antecedent(Sequent(g, d), Formula::disj(a, b)).antecedent, d),
                         {with_antecedent(Sequent(g, d), a), with_antecedent(Sequent(g, d), b)}};
       }},
      {rules::kRImp,
       [](Rng& rng, const FormulaShape& shape) {
         FMultiset g = context(rng, shape);
         Formula a = component(rng, shape, g), b = component(rng, shape, g);
         return Instance{Sequent(g, Formula::imp(a, b)), {with_antecedent(Sequent(g, b), a)}};
       }},
      {rules::kLAtomImp,
       [](Rng& rng, const FormulaShape& shape) {
         FMultiset g = context(rng, shape);
         Formula p = Formula::atom(atom_name(static_cast<unsigned>(rng.below(shape.atoms))));
         Formula a = component(rng, shape, g);
         auto d = goal(rng, shape, g);
         g.insert(p);
         return Instance{with_antecedent(Sequent(g, d), Formula::imp(p, a)), {with_antecedent(Sequent(g, d), a)}};
       }},
      {"implication-inversion",
       [](Rng& rng, const FormulaShape& shape) {
         FMultiset g = context(rng, shape);
         Formula a = component(rng, shape, g), b = component(rng, shape, g);
         auto d = goal(rng, shape, g);
         return Instance{with_antecedent(Sequent(g, d), Formula::imp(a, b)), {with_antecedent(Sequent(g, d), b)}};
       }},
  };

  for (std::size_t c = 0; c < checks.size(); ++c) {
    const auto& [name, make] = checks[c];
    std::size_t found = 0;
    for (std::uint64_t j = 0; j < cap && found < cfg.count; ++j) {
      Rng rng = case_rng(cfg, kInvertibility + c, j);
      Instance inst = make(rng, shape);
      auto start = std::chrono::steady_clock::now();
      ProofResult conclusion = oracle.prove(inst.conclusion);
      if (!conclusion.provable()) continue;
      ++found;
      CaseRecord rec;
      rec.index = j;
      rec.check = name;
      rec.input = print_sequent(inst.conclusion);
      rec.first = verdict_name(conclusion);
      rec.flag = CaseRecord::Flag::Agree;
      for (const auto& p : inst.premises) {
        ProofResult r = oracle.prove(p);
        if (!rec.second.empty()) rec.second += " / ";
        rec.second += verdict_name(r);
        CaseRecord::Flag f = implication_flag(conclusion, r);
        if (f == CaseRecord::Flag::Disagree) {
          rec.flag = f;
          rec.note = "premise " + print_sequent(p);
        } else if (f == CaseRecord::Flag::Indefinite && rec.flag == CaseRecord::Flag::Agree) {
          rec.flag = f;
        }
      }
      rec.millis = millis_since(start);
      report.add(std::move(rec));
    }
    note_shortfall(report, name, found, cfg.count);
  }
  finish(report);
  return report;
}

Report strict_sensible_suite(const Calculus& calc, const FuzzConfig& cfg) {
  validate(cfg);
  if (calc.style != Style::G3) throw ContractViolation("strict_sensible_suite expects a G3-style calculus");
  Report report;
  report.title = "strict-sensible " + calc.name;
  report.warnings = calc.warnings;
  Oracle oracle(calc, cfg, report);
  const FormulaShape shape = shape_of(cfg);
  const std::uint64_t cap = 10ULL * cfg.count;
  std::size_t found = 0;
  for (std::uint64_t j = 0; j < cap && found < cfg.count; ++j) {
    Rng rng = case_rng(cfg, kIrreducible, j);
    Sequent s = irreducible_part(random_sequent(rng, shape), rng);
    auto start = std::chrono::steady_clock::now();
    ProofResult plain = oracle.prove(s);
    if (!plain.provable()) continue;
    ++found;
    ProofResult constrained = find_strict_sensible(calc, s, cfg.budget, oracle.options());
    CaseRecord rec;
    rec.index = j;
    rec.check = "strict-sensible";
    rec.input = print_sequent(s);
    rec.first = verdict_name(plain);
    rec.second = verdict_name(constrained);
    if (constrained.provable()) {
      oracle.verify(*constrained.derivation);
      bool shaped = strict_sensible_everywhere(*constrained.derivation);
      rec.flag = shaped ? CaseRecord::Flag::Agree : CaseRecord::Flag::Disagree;
      if (!shaped) rec.note = "derivation is not strict and sensible";
    } else {
      rec.flag = constrained.definite() ? CaseRecord::Flag::Disagree : CaseRecord::Flag::Indefinite;
    }
    rec.millis = millis_since(start);
    report.add(std::move(rec));
  }
  note_shortfall(report, "strict-sensible", found, cfg.count);
  finish(report);
  return report;
}

}  // namespace g4ix

#include "g4ix/termination.hpp"

#include <algorithm>

#include "g4ix/generate.hpp"

namespace g4ix {

namespace {

// Weight of a template as constant + sum coeff * w(var), every w(var) >= 1.
struct WeightPolynomial {
  Weight constant = 0;
  std::map<std::string, Weight> coeffs;

  WeightPolynomial& operator+=(const WeightPolynomial& o) {
    constant += o.constant;
    for (const auto& [v, c] : o.coeffs) coeffs[v] += c;
    return *this;
  }
};

WeightPolynomial polynomial(const LinearWeights& inc, const Template& t, const std::set<std::string>& atoms) {
  WeightPolynomial p;
  switch (t.connective()) {
    case Connective::Bot:
      p.constant = 1;
      break;
    case Connective::Atom:
      if (atoms.contains(t.var_name())) {
        p.constant = 1;
      } else {
        p.coeffs[t.var_name()] = 1;
      }
      break;
    case Connective::Box:
      p = polynomial(inc, t.body(), atoms);
      p.constant += inc.box;
      break;
    default: {
      p = polynomial(inc, t.left(), atoms);
      p += polynomial(inc, t.right(), atoms);
      p.constant += t.connective() == Connective::And ? inc.conj : (t.connective() == Connective::Or ? inc.disj : inc.imp);
    }
  }
  return p;
}

// w(heavy) > w(light) for every instantiation.
bool outweighs(const LinearWeights& inc, const Template& heavy, const Template& light,
               const std::set<std::string>& atoms) {
  WeightPolynomial diff = polynomial(inc, heavy, atoms);
  WeightPolynomial l = polynomial(inc, light, atoms);
  diff.constant -= l.constant;
  for (const auto& [v, c] : l.coeffs) diff.coeffs[v] -= c;
  Weight lower_bound = diff.constant;
  for (const auto& [v, c] : diff.coeffs) {
    if (c < 0) return false;
    lower_bound += c;
  }
  return lower_bound > 0;
}

// One element of the symbolic multiset antecedent + succedent.
struct SymbolicItem {
  enum class Kind { Context, Formula, Succedent } kind;
  const ContextItem* context = nullptr;
  const Template* formula = nullptr;
  std::string succedent_var;

  bool identical(const SymbolicItem& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Context:
        return context->var == o.context->var && context->boxes == o.context->boxes;
      case Kind::Formula:
        return *formula == *o.formula;
      case Kind::Succedent:
        return succedent_var == o.succedent_var;
    }
    return false;
  }
};

std::vector<SymbolicItem> symbolic_items(const Pattern& p) {
  std::vector<SymbolicItem> out;
  for (const auto& item : p.antecedent) {
    if (item.kind == ContextItem::Kind::Context) {
      out.push_back({SymbolicItem::Kind::Context, &item, nullptr, {}});
    } else {
      out.push_back({SymbolicItem::Kind::Formula, nullptr, &item.formula, {}});
    }
  }
  if (p.succedent.kind == SuccedentPattern::Kind::Formula) {
    out.push_back({SymbolicItem::Kind::Formula, nullptr, &p.succedent.formula, {}});
  } else if (p.succedent.kind == SuccedentPattern::Kind::Var) {
    out.push_back({SymbolicItem::Kind::Succedent, nullptr, nullptr, p.succedent.var});
  }
  return out;
}

bool premise_decreases(const LinearWeights& inc, const Pattern& premise, const RuleSchema& r) {
  auto conclusion = symbolic_items(r.conclusion);
  auto items = symbolic_items(premise);
  std::vector<bool> kept_in_conclusion(conclusion.size(), false);
  std::vector<const SymbolicItem*> introduced;

  for (const auto& item : items) {
    bool kept = false;
    for (std::size_t j = 0; j < conclusion.size(); ++j) {
      if (!kept_in_conclusion[j] && conclusion[j].identical(item)) {
        kept_in_conclusion[j] = true;
        kept = true;
        break;
      }
    }
    if (!kept) introduced.push_back(&item);
  }

  std::vector<const SymbolicItem*> replaced;
  for (std::size_t j = 0; j < conclusion.size(); ++j) {
    if (!kept_in_conclusion[j]) replaced.push_back(&conclusion[j]);
  }
  // Something must go; only a formula item is guaranteed to be nonempty.
  bool replaces_formula = std::any_of(replaced.begin(), replaced.end(), [](const SymbolicItem* x) {
    return x->kind == SymbolicItem::Kind::Formula;
  });
  if (!replaces_formula) return false;

  for (const SymbolicItem* y : introduced) {
    bool dominated = false;
    for (const SymbolicItem* x : replaced) {
      if (y->kind == SymbolicItem::Kind::Context && x->kind == SymbolicItem::Kind::Context) {
        // Same context under strictly more boxes: element-wise heavier.
        dominated = x->context->var == y->context->var && x->context->boxes.size() > y->context->boxes.size();
      } else if (y->kind == SymbolicItem::Kind::Formula && x->kind == SymbolicItem::Kind::Formula) {
        dominated = outweighs(inc, *x->formula, *y->formula, r.atom_vars);
      }
      if (dominated) break;
    }
    if (!dominated) return false;
  }
  return true;
}

struct Metavariables {
  std::vector<std::string> formulas;
  std::vector<std::string> atoms;
  std::vector<std::string> contexts;
  std::vector<std::string> succedents;
};

Metavariables metavariables(const RuleSchema& r) {
  std::set<std::string> formulas, contexts, succedents;
  for (const auto& item : r.conclusion.antecedent) {
    if (item.kind == ContextItem::Kind::Context) {
      contexts.insert(item.var);
    } else {
      item.formula.collect_vars(formulas);
    }
  }
  const auto& succ = r.conclusion.succedent;
  if (succ.kind == SuccedentPattern::Kind::Var) succedents.insert(succ.var);
  if (succ.kind == SuccedentPattern::Kind::Formula) succ.formula.collect_vars(formulas);
  Metavariables m;
  for (const auto& f : formulas) (r.atom_vars.contains(f) ? m.atoms : m.formulas).push_back(f);
  m.contexts.assign(contexts.begin(), contexts.end());
  m.succedents.assign(succedents.begin(), succedents.end());
  return m;
}

std::optional<std::size_t> failing_premise(const WeightFunction& w, const RuleSchema& r, const Instantiation& inst) {
  Sequent conclusion = instantiate_pattern(r.conclusion, inst);
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (!sequent_less(w, instantiate_pattern(r.premises[i], inst), conclusion)) return i;
  }
  return std::nullopt;
}

}  // namespace

bool symbolically_terminating(const LinearWeights& increments, const RuleSchema& r) {
  return std::all_of(r.premises.begin(), r.premises.end(),
                     [&](const Pattern& p) { return premise_decreases(increments, p, r); });
}

TerminationVerdict check_schema_termination(const WeightFunction& w, const RuleSchema& r, const SamplingConfig& cfg) {
  TerminationVerdict verdict;
  if (r.premises.empty()) {
    verdict.kind = TerminationVerdict::Kind::Terminating;
    return verdict;
  }
  if (w.linear_weights() && symbolically_terminating(*w.linear_weights(), r)) {
    verdict.kind = TerminationVerdict::Kind::Terminating;
    return verdict;
  }

  const Metavariables vars = metavariables(r);
  const Formula p = Formula::atom("p"), q = Formula::atom("q");
  const std::vector<Formula> small_formulas = {p, q, Formula::conj(p, q), Formula::box(0, p), Formula::imp(p, q)};
  const std::vector<Formula> small_atoms = {p, q};
  const std::vector<FMultiset> small_contexts = {FMultiset{}, FMultiset{p}, FMultiset{Formula::conj(p, q)},
                                                 FMultiset{Formula::box(0, p)}};
  const std::vector<std::optional<Formula>> small_succedents = {std::nullopt, p};

  auto found = [&](const Instantiation& inst) {
    if (auto i = failing_premise(w, r, inst)) {
      verdict.kind = TerminationVerdict::Kind::Counterexample;
      verdict.instantiation = inst;
      verdict.premise = *i;
      return true;
    }
    return false;
  };

  // Exhaustive sweep over small instantiations, smallest first, when the product is modest.
  std::vector<std::size_t> radix;
  for (std::size_t i = 0; i < vars.formulas.size(); ++i) radix.push_back(small_formulas.size());
  for (std::size_t i = 0; i < vars.atoms.size(); ++i) radix.push_back(small_atoms.size());
  for (std::size_t i = 0; i < vars.contexts.size(); ++i) radix.push_back(small_contexts.size());
  for (std::size_t i = 0; i < vars.succedents.size(); ++i) radix.push_back(small_succedents.size());
  std::size_t product = 1;
  for (auto n : radix) product = std::min<std::size_t>(product * n, 1'000'000);
  if (product <= 100'000) {
    std::vector<std::size_t> digit(radix.size(), 0);
    for (std::size_t n = 0; n < product; ++n) {
      Instantiation inst;
      std::size_t d = 0;
      for (const auto& v : vars.formulas) inst.formulas.emplace(v, small_formulas[digit[d++]]);
      for (const auto& v : vars.atoms) inst.formulas.emplace(v, small_atoms[digit[d++]]);
      for (const auto& v : vars.contexts) inst.contexts.emplace(v, small_contexts[digit[d++]]);
      for (const auto& v : vars.succedents) inst.succedents.emplace(v, small_succedents[digit[d++]]);
      if (found(inst)) return verdict;
      for (std::size_t k = radix.size(); k-- > 0;) {
        if (++digit[k] < radix[k]) break;
        digit[k] = 0;
      }
    }
  }

  Rng rng = Rng::derived(cfg.seed, 0x7e57);
  FormulaShape shape;
  shape.max_size = std::max(1u, cfg.size);
  shape.atoms = std::max(1u, cfg.atoms);
  shape.max_modal_depth = 2;
  for (unsigned n = 0; n < cfg.count; ++n) {
    Instantiation inst;
    for (const auto& v : vars.formulas) inst.formulas.emplace(v, random_formula(rng, shape));
    for (const auto& v : vars.atoms) {
      inst.formulas.emplace(v, Formula::atom(atom_name(static_cast<unsigned>(rng.below(shape.atoms)))));
    }
    for (const auto& v : vars.contexts) {
      FMultiset m;
      auto k = rng.below(3);
      for (std::uint64_t i = 0; i < k; ++i) m.insert(random_formula(rng, shape));
      inst.contexts.emplace(v, std::move(m));
    }
    for (const auto& v : vars.succedents) {
      inst.succedents.emplace(v, rng.chance(50) ? std::optional<Formula>(random_formula(rng, shape)) : std::nullopt);
    }
    if (found(inst)) return verdict;
  }
  verdict.kind = TerminationVerdict::Kind::Unknown;
  return verdict;
}

std::string print_verdict(const TerminationVerdict& v) {
  switch (v.kind) {
    case TerminationVerdict::Kind::Terminating:
      return "TERMINATING";
    case TerminationVerdict::Kind::Counterexample:
      return "COUNTEREXAMPLE " + print_instantiation(v.instantiation);
    case TerminationVerdict::Kind::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

}  // namespace g4ix

#include "g4ix/prover.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace g4ix {

namespace {

struct RuleTable {
  std::vector<const RuleSchema*> axioms;
  std::vector<const RuleSchema*> invertible;  // committed to, in this order
  std::vector<const RuleSchema*> branching;
};

RuleTable rule_table(const Calculus& c) {
  static const char* const kInvertible[] = {rules::kLAnd,     rules::kLOr,     rules::kRAnd, rules::kRImp,
                                            rules::kLAtomImp, rules::kLAndImp, rules::kLOrImp};
  RuleTable t;
  for (const auto& r : c.rules) {
    if (r.kind == RuleKind::Axiom) t.axioms.push_back(&r);
  }
  if (c.invertible_core) {
    for (const char* name : kInvertible) {
      const RuleSchema* r = c.find(name);
      if (r != nullptr && r->kind != RuleKind::Axiom && r->provenance.origin == Provenance::Origin::Builtin) {
        t.invertible.push_back(r);
      }
    }
  }
  for (const auto& r : c.rules) {
    if (r.kind == RuleKind::Axiom) continue;
    if (std::find(t.invertible.begin(), t.invertible.end(), &r) != t.invertible.end()) continue;
    t.branching.push_back(&r);
  }
  return t;
}

bool atomic_implication(const Formula& f) { return f.connective() == Connective::Imp && f.left().is_atom(); }
bool boxed_implication(const Formula& f) { return f.connective() == Connective::Imp && f.left().is_box(); }

class G4Engine {
public:
  G4Engine(const Calculus& c, const SearchOptions& opts) : opts_(opts), table_(rule_table(c)) {}

  DerivationPtr prove(const Sequent& s) {
    ++nodes;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    DerivationPtr d = search(s);
    memo_.emplace(s, d);
    return d;
  }

  std::size_t nodes = 0;

private:
  DerivationPtr search(const Sequent& s) {
    for (const RuleSchema* r : table_.axioms) {
      auto insts = match_conclusion(*r, s, opts_.match);
      if (!insts.empty()) return make_derivation(*r, s, std::move(insts.front()), {});
    }
    for (const RuleSchema* r : table_.invertible) {
      auto insts = match_conclusion(*r, s, opts_.match);
      if (!insts.empty()) return apply(*r, s, insts.front());
    }
    for (const RuleSchema* r : table_.branching) {
      for (const auto& inst : match_conclusion(*r, s, opts_.match)) {
        if (auto d = apply(*r, s, inst)) return d;
      }
    }
    return nullptr;
  }

  DerivationPtr apply(const RuleSchema& r, const Sequent& s, const Instantiation& inst) {
    auto premises = instantiate_premises(r, inst);
    if (!check_instance_decrease(opts_.order, premises, s)) {
      throw TerminationViolation("instance of " + r.name + " at " + print_sequent(s) + " (" +
                                 print_instantiation(inst) + ") does not decrease in the " + opts_.order.name() +
                                 " order");
    }
    std::vector<DerivationPtr> children;
    for (const auto& p : premises) {
      DerivationPtr d = prove(p);
      if (!d) return nullptr;
      children.push_back(std::move(d));
    }
    return make_derivation(r, s, inst, std::move(children));
  }

  const SearchOptions& opts_;
  RuleTable table_;
  std::unordered_map<Sequent, DerivationPtr, SequentHash> memo_;
};

constexpr std::size_t kNoLoop = std::numeric_limits<std::size_t>::max();

struct Outcome {
  DerivationPtr proof;
  bool budget = false;
  // Shallowest branch depth whose sequent a loop check pruned against.
  std::size_t loop_ref = kNoLoop;
  bool incomplete = false;

  void absorb(const Outcome& o) {
    budget = budget || o.budget;
    loop_ref = std::min(loop_ref, o.loop_ref);
    incomplete = incomplete || o.incomplete;
  }
};

Sequent loop_key(const Sequent& s) {
  FMultiset set;
  for (const auto& [f, k] : s.antecedent.entries()) set.insert(f);
  return Sequent(std::move(set), s.succedent);
}

class G3Engine {
public:
  G3Engine(const Calculus& c, const SearchBudget& b, const SearchOptions& opts, bool strict_sensible)
      : budget_(b), opts_(opts), table_(rule_table(c)), strict_sensible_(strict_sensible) {
    for (const auto& r : c.rules) {
      if (r.kind == RuleKind::RightModal) right_modal_.push_back(&r);
    }
  }

  enum class Restriction { None, AxiomOrRightModal };

  Outcome search(const Sequent& s, std::size_t depth, Restriction restriction) {
    if (aborted_) return budget_hit();
    if (++nodes > budget_.max_nodes) {
      aborted_ = true;
      return budget_hit();
    }
    const bool cacheable = restriction == Restriction::None;
    if (cacheable) {
      if (auto it = proved_.find(s); it != proved_.end()) return Outcome{it->second};
      if (auto it = failed_.find(s); it != failed_.end()) {
        Outcome o;
        o.incomplete = it->second;
        return o;
      }
    }
    Sequent key = loop_key(s);
    if (auto it = history_.find(key); it != history_.end()) {
      Outcome o;
      o.loop_ref = it->second;
      o.incomplete = untrusted_on_branch_ > 0;
      return o;
    }
    if (depth >= budget_.max_depth) return budget_hit();

    Outcome out = expand(s, key, depth, restriction);

    if (!out.proof && out.loop_ref >= depth) out.loop_ref = kNoLoop;
    if (cacheable) {
      if (out.proof) {
        proved_.emplace(s, out.proof);
      } else if (!out.budget && out.loop_ref == kNoLoop) {
        failed_.emplace(s, out.incomplete);
      }
    }
    return out;
  }

  std::size_t nodes = 0;

private:
  static Outcome budget_hit() {
    Outcome o;
    o.budget = true;
    return o;
  }

  // Only sequents expanded by branching enter the loop history. A committed
  // invertible step keeps the minimal proof height, so pruning its premises
  // against the sequent itself would lose proofs; invertible steps shrink the
  // sequent, so every infinite branch still repeats a branching sequent.
  Outcome expand(const Sequent& s, const Sequent& key, std::size_t depth, Restriction restriction) {
    for (const RuleSchema* r : table_.axioms) {
      auto insts = match_conclusion(*r, s, opts_.match);
      if (!insts.empty()) return Outcome{make_derivation(*r, s, std::move(insts.front()), {})};
    }
    if (restriction == Restriction::None) {
      for (const RuleSchema* r : table_.invertible) {
        auto insts = match_conclusion(*r, s, opts_.match);
        if (!insts.empty()) return apply(*r, s, insts.front(), depth, false);
      }
    }
    history_.emplace(key, depth);
    Outcome out = branch(s, depth, restriction);
    history_.erase(key);
    return out;
  }

  Outcome branch(const Sequent& s, std::size_t depth, Restriction restriction) {
    Outcome failure;
    if (restriction == Restriction::AxiomOrRightModal) {
      for (const RuleSchema* r : right_modal_) {
        for (const auto& inst : match_conclusion(*r, s, opts_.match)) {
          Outcome o = apply(*r, s, inst, depth, false);
          if (o.proof) return o;
          failure.absorb(o);
          if (aborted_) return failure;
        }
      }
      return failure;
    }
    const bool irreducible = strict_sensible_ && is_irreducible(s);
    for (const RuleSchema* r : table_.branching) {
      for (const auto& inst : match_conclusion(*r, s, opts_.match)) {
        bool strict_left = false;
        if (irreducible) {
          auto principal = principal_formulas(*r, inst);
          if (std::any_of(principal.begin(), principal.end(), atomic_implication)) continue;
          strict_left = r->name == rules::kLImp && r->provenance.origin == Provenance::Origin::Builtin &&
                        std::any_of(principal.begin(), principal.end(), boxed_implication);
        }
        Outcome o = apply(*r, s, inst, depth, strict_left);
        if (o.proof) return o;
        failure.absorb(o);
        if (aborted_) return failure;
      }
    }
    return failure;
  }

  Outcome apply(const RuleSchema& r, const Sequent& s, const Instantiation& inst, std::size_t depth,
                bool strict_left) {
    auto premises = instantiate_premises(r, inst);
    const bool untrusted = !is_core_compatible(r);
    if (untrusted) ++untrusted_on_branch_;
    Outcome result;
    std::vector<DerivationPtr> children;
    for (std::size_t i = 0; i < premises.size(); ++i) {
      Restriction restriction = (i == 0 && strict_left) ? Restriction::AxiomOrRightModal : Restriction::None;
      Outcome child = search(premises[i], depth + 1, restriction);
      if (!child.proof) {
        result.absorb(child);
        break;
      }
      children.push_back(std::move(child.proof));
    }
    if (untrusted) --untrusted_on_branch_;
    if (children.size() == premises.size()) result.proof = make_derivation(r, s, inst, std::move(children));
    return result;
  }

  SearchBudget budget_;
  const SearchOptions& opts_;
  RuleTable table_;
  std::vector<const RuleSchema*> right_modal_;
  bool strict_sensible_;
  bool aborted_ = false;
  std::size_t untrusted_on_branch_ = 0;
  std::unordered_map<Sequent, std::size_t, SequentHash> history_;
  std::unordered_map<Sequent, DerivationPtr, SequentHash> proved_;
  std::unordered_map<Sequent, bool, SequentHash> failed_;
};

ProofResult g3_result(const Outcome& o, std::size_t nodes) {
  ProofResult r;
  r.nodes = nodes;
  if (o.proof) {
    r.verdict = ProofResult::Verdict::Provable;
    r.derivation = o.proof;
  } else if (o.budget) {
    r.reason = ProofResult::Reason::BudgetExhausted;
  } else if (o.incomplete) {
    r.reason = ProofResult::Reason::IncompleteStrategy;
  } else {
    r.verdict = ProofResult::Verdict::Unprovable;
  }
  return r;
}

ProofResult run_g3(const Calculus& c, const Sequent& s, const SearchBudget& b, const SearchOptions& opts,
                   bool strict_sensible) {
  if (c.style != Style::G3) throw ContractViolation(c.name + " is not a G3-style calculus");
  G3Engine engine(c, b, opts, strict_sensible);
  Outcome o = engine.search(s, 0, G3Engine::Restriction::None);
  return g3_result(o, engine.nodes);
}

}  // namespace

std::string verdict_name(const ProofResult& r) {
  switch (r.verdict) {
    case ProofResult::Verdict::Provable:
      return "PROVABLE";
    case ProofResult::Verdict::Unprovable:
      return "UNPROVABLE";
    case ProofResult::Verdict::Unknown:
      break;
  }
  if (r.reason == ProofResult::Reason::IncompleteStrategy) return "UNKNOWN (incomplete-strategy)";
  return "UNKNOWN (budget-exhausted)";
}

ProofResult prove_g4(const Calculus& c, const Sequent& s, const SearchOptions& opts) {
  if (c.style != Style::G4) throw ContractViolation(c.name + " is not a G4-style calculus");
  G4Engine engine(c, opts);
  ProofResult r;
  r.derivation = engine.prove(s);
  r.verdict = r.derivation ? ProofResult::Verdict::Provable : ProofResult::Verdict::Unprovable;
  r.nodes = engine.nodes;
  return r;
}

ProofResult prove_g3(const Calculus& c, const Sequent& s, const SearchBudget& b, const SearchOptions& opts) {
  return run_g3(c, s, b, opts, false);
}

bool is_irreducible(const Sequent& s) {
  for (const auto& [f, k] : s.antecedent.entries()) {
    switch (f.connective()) {
      case Connective::And:
      case Connective::Or:
      case Connective::Bot:
        return false;
      case Connective::Imp:
        if (f.left().is_atom() && s.antecedent.contains(f.left())) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

bool is_sensible(const Derivation& d) {
  return std::none_of(d.principal.begin(), d.principal.end(), atomic_implication);
}

bool is_strict(const Derivation& d) {
  if (d.rule != rules::kLImp) return true;
  if (std::none_of(d.principal.begin(), d.principal.end(), boxed_implication)) return true;
  if (d.children.empty()) return false;
  RuleKind k = d.children.front()->kind;
  return k == RuleKind::Axiom || k == RuleKind::RightModal;
}

bool strict_sensible_everywhere(const Derivation& d) {
  if (is_irreducible(d.conclusion) && !(is_sensible(d) && is_strict(d))) return false;
  return std::all_of(d.children.begin(), d.children.end(),
                     [](const DerivationPtr& c) { return strict_sensible_everywhere(*c); });
}

ProofResult find_strict_sensible(const Calculus& c, const Sequent& s, const SearchBudget& b,
                                 const SearchOptions& opts) {
  if (!is_irreducible(s)) throw ContractViolation("sequent is not irreducible: " + print_sequent(s));
  return run_g3(c, s, b, opts, true);
}

}  // namespace g4ix

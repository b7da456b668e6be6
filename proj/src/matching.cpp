#include "g4ix/matching.hpp"

#include <algorithm>
#include <functional>

namespace g4ix {

namespace {

// Strips the box prefix from f, if f carries it.
std::optional<Formula> strip_boxes(const Formula& f, const std::vector<unsigned>& boxes) {
  const Formula* cur = &f;
  for (unsigned index : boxes) {
    if (!cur->is_box() || cur->index() != index) return std::nullopt;
    cur = &cur->body();
  }
  return *cur;
}

Formula add_boxes(Formula f, const std::vector<unsigned>& boxes) {
  for (auto it = boxes.rbegin(); it != boxes.rend(); ++it) f = Formula::box(*it, std::move(f));
  return f;
}

std::set<std::string> premise_contexts(const RuleSchema& r) {
  std::set<std::string> out;
  for (const auto& p : r.premises) {
    for (const auto& item : p.antecedent) {
      if (item.kind == ContextItem::Kind::Context) out.insert(item.var);
    }
  }
  return out;
}

struct ContextSlot {
  const ContextItem* item;
  std::size_t order;
  bool in_premises;
};

void distribute_greedy(const std::vector<ContextSlot>& slots, FMultiset remaining,
                       Instantiation inst, std::vector<Instantiation>& out) {
  std::vector<ContextSlot> boxed, plain;
  for (const auto& s : slots) (s.item->boxes.empty() ? plain : boxed).push_back(s);
  // Slots feeding a premise keep as much as possible; deeper prefixes claim first.
  std::stable_sort(boxed.begin(), boxed.end(), [](const ContextSlot& a, const ContextSlot& b) {
    if (a.in_premises != b.in_premises) return a.in_premises;
    return a.item->boxes.size() > b.item->boxes.size();
  });
  for (const auto& slot : boxed) {
    FMultiset bound;
    FMultiset rest;
    for (const auto& [f, k] : remaining.entries()) {
      if (auto inner = strip_boxes(f, slot.item->boxes)) {
        bound.insert(*inner, k);
      } else {
        rest.insert(f, k);
      }
    }
    inst.contexts[slot.item->var] = std::move(bound);
    remaining = std::move(rest);
  }
  if (plain.empty()) {
    if (!remaining.empty()) return;
  } else {
    auto taker = std::find_if(plain.begin(), plain.end(), [](const ContextSlot& s) { return s.in_premises; });
    if (taker == plain.end()) taker = plain.begin();
    for (const auto& slot : plain) inst.contexts[slot.item->var] = FMultiset{};
    inst.contexts[taker->item->var] = std::move(remaining);
  }
  out.push_back(std::move(inst));
}

void distribute_exhaustive(const std::vector<ContextSlot>& slots, const FMultiset& remaining, Instantiation inst,
                           std::vector<Instantiation>& out) {
  for (const auto& slot : slots) inst.contexts[slot.item->var] = FMultiset{};
  const auto& entries = remaining.entries();

  // For entry e, split its multiplicity over the eligible slots.
  std::function<void(std::size_t, Instantiation&)> next_entry;
  next_entry = [&](std::size_t e, Instantiation& cur) {
    if (e == entries.size()) {
      out.push_back(cur);
      return;
    }
    const auto& [f, k] = entries[e];
    std::vector<std::pair<std::size_t, Formula>> eligible;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (auto inner = strip_boxes(f, slots[i].item->boxes)) eligible.emplace_back(i, *inner);
    }
    if (eligible.empty()) return;
    std::function<void(std::size_t, std::size_t)> split = [&](std::size_t idx, std::size_t left) {
      if (idx + 1 == eligible.size()) {
        auto& bucket = cur.contexts[slots[eligible[idx].first].item->var];
        bucket.insert(eligible[idx].second, left);
        next_entry(e + 1, cur);
        if (left > 0) bucket.erase(eligible[idx].second, left);
        return;
      }
      for (std::size_t take = 0; take <= left; ++take) {
        auto& bucket = cur.contexts[slots[eligible[idx].first].item->var];
        bucket.insert(eligible[idx].second, take);
        split(idx + 1, left - take);
        if (take > 0) bucket.erase(eligible[idx].second, take);
      }
    };
    split(0, k);
  };
  next_entry(0, inst);
}

void match_formula_items(const RuleSchema& r, const std::vector<const Template*>& templates, std::size_t i,
                         const FMultiset& remaining, const Instantiation& inst, const std::vector<ContextSlot>& slots,
                         MatchMode mode, std::vector<Instantiation>& out) {
  if (i == templates.size()) {
    if (mode == MatchMode::Greedy) {
      distribute_greedy(slots, remaining, inst, out);
    } else {
      distribute_exhaustive(slots, remaining, inst, out);
    }
    return;
  }
  for (const auto& [f, k] : remaining.entries()) {
    Instantiation attempt = inst;
    if (!match_template(*templates[i], f, attempt, r.atom_vars)) continue;
    match_formula_items(r, templates, i + 1, mset_remove(remaining, f), attempt, slots, mode, out);
  }
}

template <typename Map>
bool less_map(const Map& a, const Map& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool less_optional(const std::optional<Formula>& a, const std::optional<Formula>& b) {
  if (a.has_value() != b.has_value()) return !a.has_value();
  return a && *a < *b;
}

}  // namespace

bool operator==(const Instantiation& a, const Instantiation& b) {
  return a.formulas == b.formulas && a.contexts == b.contexts && a.succedents == b.succedents;
}

bool operator<(const Instantiation& a, const Instantiation& b) {
  if (a.formulas != b.formulas) return less_map(a.formulas, b.formulas);
  if (a.contexts != b.contexts) return less_map(a.contexts, b.contexts);
  return std::lexicographical_compare(
      a.succedents.begin(), a.succedents.end(), b.succedents.begin(), b.succedents.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return less_optional(x.second, y.second);
      });
}

std::string print_instantiation(const Instantiation& inst) {
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += ", ";
  };
  for (const auto& [name, f] : inst.formulas) {
    sep();
    out += name + "=" + print_formula(f);
  }
  for (const auto& [name, m] : inst.contexts) {
    sep();
    out += name + "=[" + print_multiset(m) + "]";
  }
  for (const auto& [name, f] : inst.succedents) {
    sep();
    out += name + "=" + (f ? print_formula(*f) : std::string("_"));
  }
  return out;
}

bool match_template(const Template& t, const Formula& f, Instantiation& inst, const std::set<std::string>& atom_vars) {
  switch (t.connective()) {
    case Connective::Bot:
      return f.is_bot();
    case Connective::Atom: {
      auto it = inst.formulas.find(t.var_name());
      if (it != inst.formulas.end()) return it->second == f;
      if (!f.is_atom() && atom_vars.contains(t.var_name())) return false;
      inst.formulas.emplace(t.var_name(), f);
      return true;
    }
    case Connective::Box:
      return f.is_box() && f.index() == t.index() && match_template(t.body(), f.body(), inst, atom_vars);
    default:
      return f.connective() == t.connective() && match_template(t.left(), f.left(), inst, atom_vars) &&
             match_template(t.right(), f.right(), inst, atom_vars);
  }
}

std::vector<Instantiation> match_conclusion(const RuleSchema& r, const Sequent& s, MatchMode mode) {
  std::vector<Instantiation> out;
  Instantiation inst;
  const auto& succ = r.conclusion.succedent;
  switch (succ.kind) {
    case SuccedentPattern::Kind::Empty:
      if (s.succedent) return out;
      break;
    case SuccedentPattern::Kind::Var:
      inst.succedents.emplace(succ.var, s.succedent);
      break;
    case SuccedentPattern::Kind::Formula:
      if (!s.succedent || !match_template(succ.formula, *s.succedent, inst, r.atom_vars)) return out;
      break;
  }

  std::vector<const Template*> templates;
  std::vector<ContextSlot> slots;
  const auto fed = premise_contexts(r);
  for (std::size_t i = 0; i < r.conclusion.antecedent.size(); ++i) {
    const auto& item = r.conclusion.antecedent[i];
    if (item.kind == ContextItem::Kind::Formula) {
      templates.push_back(&item.formula);
    } else {
      slots.push_back(ContextSlot{&item, i, fed.contains(item.var)});
    }
  }
  // Cheapest rejection: more principal formulas than antecedent occurrences.
  if (templates.size() > s.antecedent.size()) return out;

  match_formula_items(r, templates, 0, s.antecedent, inst, slots, mode, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Formula instantiate_template(const Template& t, const Instantiation& inst) {
  switch (t.connective()) {
    case Connective::Bot:
      return Formula::bot();
    case Connective::Atom: {
      auto it = inst.formulas.find(t.var_name());
      if (it == inst.formulas.end()) throw ContractViolation("unbound formula metavariable " + t.var_name());
      return it->second;
    }
    case Connective::Box:
      return Formula::box(t.index(), instantiate_template(t.body(), inst));
    default:
      return Formula::binary(t.connective(), instantiate_template(t.left(), inst),
                             instantiate_template(t.right(), inst));
  }
}

Sequent instantiate_pattern(const Pattern& p, const Instantiation& inst) {
  Sequent s;
  for (const auto& item : p.antecedent) {
    if (item.kind == ContextItem::Kind::Formula) {
      s.antecedent.insert(instantiate_template(item.formula, inst));
      continue;
    }
    auto it = inst.contexts.find(item.var);
    if (it == inst.contexts.end()) throw ContractViolation("unbound context metavariable " + item.var);
    for (const auto& [f, k] : it->second.entries()) s.antecedent.insert(add_boxes(f, item.boxes), k);
  }
  switch (p.succedent.kind) {
    case SuccedentPattern::Kind::Empty:
      break;
    case SuccedentPattern::Kind::Formula:
      s.succedent = instantiate_template(p.succedent.formula, inst);
      break;
    case SuccedentPattern::Kind::Var: {
      auto it = inst.succedents.find(p.succedent.var);
      if (it == inst.succedents.end()) throw ContractViolation("unbound succedent metavariable " + p.succedent.var);
      s.succedent = it->second;
      break;
    }
  }
  return s;
}

std::vector<Sequent> instantiate_premises(const RuleSchema& r, const Instantiation& inst) {
  std::vector<Sequent> out;
  out.reserve(r.premises.size());
  for (const auto& p : r.premises) out.push_back(instantiate_pattern(p, inst));
  return out;
}

bool respects_atom_restrictions(const RuleSchema& r, const Instantiation& inst) {
  return std::all_of(r.atom_vars.begin(), r.atom_vars.end(), [&](const std::string& var) {
    auto it = inst.formulas.find(var);
    return it == inst.formulas.end() || it->second.is_atom();
  });
}

std::vector<Formula> principal_formulas(const RuleSchema& r, const Instantiation& inst) {
  std::vector<Formula> out;
  for (const auto& item : r.conclusion.antecedent) {
    if (item.kind == ContextItem::Kind::Formula) out.push_back(instantiate_template(item.formula, inst));
  }
  return out;
}

}  // namespace g4ix

#include "g4ix/orders.hpp"

#include <algorithm>

namespace g4ix {

namespace {

Weight linear_weight(const LinearWeights& inc, const Formula& f) {
  switch (f.connective()) {
    case Connective::Bot:
    case Connective::Atom:
      return 1;
    case Connective::Box:
      return linear_weight(inc, f.body()) + inc.box;
    case Connective::And:
      return linear_weight(inc, f.left()) + linear_weight(inc, f.right()) + inc.conj;
    case Connective::Or:
      return linear_weight(inc, f.left()) + linear_weight(inc, f.right()) + inc.disj;
    case Connective::Imp:
      return linear_weight(inc, f.left()) + linear_weight(inc, f.right()) + inc.imp;
  }
  return 1;
}

}  // namespace

WeightFunction WeightFunction::dyckhoff() { return linear("dyckhoff", LinearWeights{}); }

WeightFunction WeightFunction::linear(std::string name, LinearWeights increments) {
  if (increments.conj < 1 || increments.disj < 1 || increments.imp < 1 || increments.box < 1) {
    throw ContractViolation("weight increments must be at least 1");
  }
  WeightFunction w;
  w.name_ = std::move(name);
  w.linear_ = increments;
  return w;
}

WeightFunction WeightFunction::custom(std::string name, Evaluator evaluator) {
  WeightFunction w;
  w.name_ = std::move(name);
  w.custom_ = std::move(evaluator);
  return w;
}

Weight WeightFunction::operator()(const Formula& f) const {
  if (linear_) return linear_weight(*linear_, f);
  Weight value = custom_(f);
  bool minimal = f.is_atom() || f.is_bot();
  if ((minimal && value != 1) || (!minimal && value <= 1)) {
    throw ContractViolation("weight function '" + name_ + "' violates the atom/false constraint at " +
                            print_formula(f));
  }
  return value;
}

Weight weight_dyckhoff(const Formula& f) { return linear_weight(LinearWeights{}, f); }

bool multiset_less(const WeightFunction& w, const FMultiset& delta, const FMultiset& gamma) {
  // With X = gamma - delta and Y = delta - gamma the relation holds iff X is
  // nonempty and each element of Y is outweighed by some element of X.
  FMultiset removed = mset_difference(gamma, delta);
  if (removed.empty()) return false;
  FMultiset added = mset_difference(delta, gamma);
  if (added.empty()) return true;
  Weight heaviest_removed = 0;
  for (const auto& [f, k] : removed.entries()) heaviest_removed = std::max(heaviest_removed, w(f));
  return std::all_of(added.entries().begin(), added.entries().end(),
                     [&](const FMultiset::Entry& e) { return w(e.first) < heaviest_removed; });
}

bool sequent_less(const WeightFunction& w, const Sequent& s0, const Sequent& s1) {
  return multiset_less(w, s0.all_formulas(), s1.all_formulas());
}

bool check_instance_decrease(const WeightFunction& w, const std::vector<Sequent>& premises, const Sequent& conclusion) {
  return std::all_of(premises.begin(), premises.end(),
                     [&](const Sequent& p) { return sequent_less(w, p, conclusion); });
}

}  // namespace g4ix

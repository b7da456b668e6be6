#include "g4ix/calculus.hpp"

#include <algorithm>

#include "grammar.hpp"

namespace g4ix {

namespace {

struct TemplateBuilder {
  using Node = Template;
  Template bot() { return Template::bot(); }
  Template identifier(std::string name, std::size_t) { return Template::var(std::move(name)); }
  Template binary(Connective c, Template l, Template r) { return Template::binary(c, std::move(l), std::move(r)); }
  Template box(unsigned index, Template body) { return Template::box(index, std::move(body)); }
};

struct TemplateView {
  Connective kind(const Template& t) const { return t.connective(); }
  const std::string& name(const Template& t) const { return t.var_name(); }
  unsigned index(const Template& t) const { return t.index(); }
  const Template& left(const Template& t) const { return t.left(); }
  const Template& right(const Template& t) const { return t.right(); }
};

// Builders for the built-in schemas.
Template v(const char* name) { return Template::var(name); }
ContextItem ctx(const char* name) { return ContextItem::context(name); }
ContextItem boxed(const char* name) { return ContextItem::boxed(name); }
ContextItem fml(Template t) { return ContextItem::of(std::move(t)); }
SuccedentPattern goal(Template t) { return SuccedentPattern::of(std::move(t)); }
SuccedentPattern goal_var(const char* name) { return SuccedentPattern::variable(name); }
Pattern pat(std::vector<ContextItem> ante, SuccedentPattern succ) { return Pattern{std::move(ante), std::move(succ)}; }

RuleSchema make_rule(std::string name, std::vector<Pattern> premises, Pattern conclusion,
                     std::set<std::string> atoms = {}) {
  RuleSchema r;
  r.name = std::move(name);
  r.premises = std::move(premises);
  r.conclusion = std::move(conclusion);
  r.atom_vars = std::move(atoms);
  r.provenance = Provenance{Provenance::Origin::Builtin, {}};
  r.kind = classify(r);
  return r;
}

std::vector<RuleSchema> shared_propositional_rules() {
  const Template phi = v("phi"), psi = v("psi");
  std::vector<RuleSchema> out;
  out.push_back(make_rule(rules::kAx, {}, pat({ctx("G"), fml(v("p"))}, goal(v("p"))), {"p"}));
  out.push_back(make_rule(rules::kLBot, {}, pat({ctx("G"), fml(Template::bot())}, goal_var("D"))));
  out.push_back(make_rule(rules::kRAnd, {pat({ctx("G")}, goal(phi)), pat({ctx("G")}, goal(psi))},
                          pat({ctx("G")}, goal(Template::conj(phi, psi)))));
  out.push_back(make_rule(rules::kLAnd, {pat({ctx("G"), fml(phi), fml(psi)}, goal_var("D"))},
                          pat({ctx("G"), fml(Template::conj(phi, psi))}, goal_var("D"))));
  out.push_back(
      make_rule(rules::kROr0, {pat({ctx("G")}, goal(phi))}, pat({ctx("G")}, goal(Template::disj(phi, psi)))));
  out.push_back(
      make_rule(rules::kROr1, {pat({ctx("G")}, goal(psi))}, pat({ctx("G")}, goal(Template::disj(phi, psi)))));
  out.push_back(make_rule(rules::kLOr,
                          {pat({ctx("G"), fml(phi)}, goal_var("D")), pat({ctx("G"), fml(psi)}, goal_var("D"))},
                          pat({ctx("G"), fml(Template::disj(phi, psi))}, goal_var("D"))));
  out.push_back(
      make_rule(rules::kRImp, {pat({ctx("G"), fml(phi)}, goal(psi))}, pat({ctx("G")}, goal(Template::imp(phi, psi)))));
  return out;
}

std::map<std::string, RuleSchema> make_modal_library() {
  const Template phi = v("phi");
  const Template box_phi = Template::box(0, phi);
  std::map<std::string, RuleSchema> lib;
  auto add = [&lib](RuleSchema r) { lib.emplace(r.name, std::move(r)); };
  add(make_rule("R_K", {pat({ctx("G")}, goal(phi))}, pat({ctx("P"), boxed("G")}, goal(box_phi))));
  add(make_rule("R_D", {pat({ctx("G"), fml(phi)}, SuccedentPattern::empty())},
                pat({ctx("P"), boxed("G"), fml(box_phi)}, goal_var("D"))));
  add(make_rule("R_T", {pat({ctx("G"), fml(phi)}, goal_var("D"))}, pat({ctx("G"), fml(box_phi)}, goal_var("D"))));
  add(make_rule("R_K4", {pat({ctx("G"), boxed("G")}, goal(phi))}, pat({ctx("P"), boxed("G")}, goal(box_phi))));
  add(make_rule("R_GL", {pat({ctx("G"), boxed("G"), fml(box_phi)}, goal(phi))},
                pat({ctx("P"), boxed("G")}, goal(box_phi))));
  add(make_rule("R_SL", {pat({ctx("P"), boxed("G"), ctx("G"), fml(box_phi)}, goal(phi))},
                pat({boxed("S"), ctx("P"), boxed("G")}, goal(box_phi))));
  add(make_rule("R_X", {pat({boxed("G")}, goal(phi))}, pat({ctx("P"), boxed("G")}, goal(box_phi))));
  return lib;
}

bool pattern_has_box(const Pattern& p) {
  auto template_has_box = [](const Template& t) {
    std::vector<const Template*> stack{&t};
    while (!stack.empty()) {
      const Template* cur = stack.back();
      stack.pop_back();
      if (cur->connective() == Connective::Box) return true;
      if (cur->has_operator()) {
        stack.push_back(&cur->left());
        stack.push_back(&cur->right());
      }
    }
    return false;
  };
  for (const auto& item : p.antecedent) {
    if (item.kind == ContextItem::Kind::Context && !item.boxes.empty()) return true;
    if (item.kind == ContextItem::Kind::Formula && template_has_box(item.formula)) return true;
  }
  return p.succedent.kind == SuccedentPattern::Kind::Formula && template_has_box(p.succedent.formula);
}

bool builtin_modal_with_invertible_core(const RuleSchema& r) {
  static const std::set<std::string> compatible = {"R_K", "R_D", "R_T", "R_X"};
  std::string base = r.name;
  if (r.provenance.origin == Provenance::Origin::Generated) base = r.provenance.source;
  if (!compatible.contains(base)) return false;
  auto builtin = builtin_modal_rule(base);
  if (!builtin) return false;
  if (r.provenance.origin == Provenance::Origin::Generated) return r.same_shape(transform_right_modal(*builtin));
  return r.same_shape(*builtin);
}

std::string fresh_name(const std::set<std::string>& used, const std::string& base) {
  if (!used.contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!used.contains(candidate)) return candidate;
  }
}

void collect_pattern_vars(const Pattern& p, std::set<std::string>& out) {
  for (const auto& item : p.antecedent) {
    if (item.kind == ContextItem::Kind::Context) {
      out.insert(item.var);
    } else {
      item.formula.collect_vars(out);
    }
  }
  if (p.succedent.kind == SuccedentPattern::Kind::Var) out.insert(p.succedent.var);
  if (p.succedent.kind == SuccedentPattern::Kind::Formula) p.succedent.formula.collect_vars(out);
}

Calculus assemble(Calculus base, const std::vector<RuleSchema>& modal, bool generate) {
  std::vector<std::string> problems;
  for (const auto& r : modal) {
    for (const auto& p : validate_schema(r)) problems.push_back(r.name + ": " + p);
  }
  if (!problems.empty()) throw SchemaError(problems);

  std::vector<RuleSchema> extra;
  std::string suffix;
  for (const auto& r : modal) {
    extra.push_back(r);
    suffix += (suffix.empty() ? "" : ",") + r.name;
  }
  if (generate) {
    for (const auto& r : modal) {
      if (is_right_modal(r)) extra.push_back(transform_right_modal(r));
    }
  }

  for (auto& r : extra) {
    bool duplicate = std::any_of(base.rules.begin(), base.rules.end(),
                                 [&](const RuleSchema& existing) { return existing.same_shape(r); });
    if (duplicate) continue;
    if (base.find(r.name) != nullptr) problems.push_back(r.name + ": duplicate rule name with a different shape");
    if (r.kind != RuleKind::Axiom && !is_nonflat(r)) {
      base.warnings.push_back(r.name + ": flat rule; equivalence hypotheses do not hold");
    }
    if (!is_core_compatible(r)) base.invertible_core = false;
    base.rules.push_back(std::move(r));
  }
  if (!problems.empty()) throw SchemaError(problems);
  if (!modal.empty()) base.name = (base.style == Style::G3 ? "G3i+" : "G4i+") + suffix;
  return base;
}

}  // namespace

Template Template::var(std::string name) {
  Template t;
  t.op_ = Connective::Atom;
  t.name_ = std::move(name);
  return t;
}

Template Template::binary(Connective c, Template left, Template right) {
  if (c != Connective::And && c != Connective::Or && c != Connective::Imp) {
    throw ContractViolation("not a binary connective");
  }
  Template t;
  t.op_ = c;
  t.left_ = std::make_shared<const Template>(std::move(left));
  t.right_ = std::make_shared<const Template>(std::move(right));
  return t;
}

Template Template::box(unsigned index, Template body) {
  Template t;
  t.op_ = Connective::Box;
  t.index_ = index;
  t.left_ = std::make_shared<const Template>(std::move(body));
  return t;
}

const Template& Template::left() const {
  if (!left_) throw ContractViolation("template has no operand");
  return *left_;
}

const Template& Template::right() const {
  if (!right_) throw ContractViolation("template has no right operand");
  return *right_;
}

void Template::collect_vars(std::set<std::string>& out) const {
  switch (op_) {
    case Connective::Atom:
      out.insert(name_);
      break;
    case Connective::Bot:
      break;
    case Connective::Box:
      left_->collect_vars(out);
      break;
    default:
      left_->collect_vars(out);
      right_->collect_vars(out);
  }
}

bool operator==(const Template& a, const Template& b) {
  if (a.op_ != b.op_) return false;
  switch (a.op_) {
    case Connective::Bot:
      return true;
    case Connective::Atom:
      return a.name_ == b.name_;
    case Connective::Box:
      return a.index_ == b.index_ && *a.left_ == *b.left_;
    default:
      return *a.left_ == *b.left_ && *a.right_ == *b.right_;
  }
}

bool operator<(const Template& a, const Template& b) {
  if (a.op_ != b.op_) return a.op_ < b.op_;
  switch (a.op_) {
    case Connective::Bot:
      return false;
    case Connective::Atom:
      return a.name_ < b.name_;
    case Connective::Box:
      if (*a.left_ != *b.left_) return *a.left_ < *b.left_;
      return a.index_ < b.index_;
    default:
      if (*a.left_ != *b.left_) return *a.left_ < *b.left_;
      return *a.right_ < *b.right_;
  }
}

Template parse_template(std::string_view text, std::size_t offset) {
  TemplateBuilder builder;
  detail::GrammarParser<TemplateBuilder> parser(text, builder, true, offset);
  return parser.parse_all();
}

std::string print_template(const Template& t) {
  TemplateView view;
  return detail::GrammarPrinter<TemplateView, Template>(view, true).print(t);
}

ContextItem ContextItem::context(std::string var, std::vector<unsigned> boxes) {
  ContextItem item;
  item.kind = Kind::Context;
  item.var = std::move(var);
  item.boxes = std::move(boxes);
  return item;
}

ContextItem ContextItem::of(Template t) {
  ContextItem item;
  item.kind = Kind::Formula;
  item.formula = std::move(t);
  return item;
}

bool RuleSchema::same_shape(const RuleSchema& other) const {
  return premises == other.premises && conclusion == other.conclusion && atom_vars == other.atom_vars;
}

const RuleSchema* Calculus::find(const std::string& rule_name) const {
  for (const auto& r : rules) {
    if (r.name == rule_name) return &r;
  }
  return nullptr;
}

SchemaError::SchemaError(std::vector<std::string> problems)
    : std::runtime_error(problems.empty() ? "invalid rule schema" : problems.front()), problems_(std::move(problems)) {}

const char* kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::Axiom:
      return "axiom";
    case RuleKind::Left:
      return "left";
    case RuleKind::Right:
      return "right";
    case RuleKind::RightModal:
      return "right-modal";
    case RuleKind::OtherModal:
      return "modal";
  }
  return "?";
}

Calculus g3ip() {
  Calculus c;
  c.name = "G3ip";
  c.style = Style::G3;
  c.rules = shared_propositional_rules();
  const Template phi = v("phi"), psi = v("psi");
  c.rules.push_back(make_rule(rules::kLImp,
                              {pat({ctx("G"), fml(Template::imp(phi, psi))}, goal(phi)),
                               pat({ctx("G"), fml(psi)}, goal_var("D"))},
                              pat({ctx("G"), fml(Template::imp(phi, psi))}, goal_var("D"))));
  return c;
}

Calculus g4ip() {
  Calculus c;
  c.name = "G4ip";
  c.style = Style::G4;
  c.rules = shared_propositional_rules();
  const Template phi = v("phi"), psi = v("psi"), gamma = v("gamma"), p = v("p");
  c.rules.push_back(make_rule(rules::kLAtomImp, {pat({ctx("G"), fml(p), fml(phi)}, goal_var("D"))},
                              pat({ctx("G"), fml(p), fml(Template::imp(p, phi))}, goal_var("D")), {"p"}));
  c.rules.push_back(make_rule(rules::kLAndImp,
                              {pat({ctx("G"), fml(Template::imp(phi, Template::imp(psi, gamma)))}, goal_var("D"))},
                              pat({ctx("G"), fml(Template::imp(Template::conj(phi, psi), gamma))}, goal_var("D"))));
  c.rules.push_back(
      make_rule(rules::kLOrImp,
                {pat({ctx("G"), fml(Template::imp(phi, gamma)), fml(Template::imp(psi, gamma))}, goal_var("D"))},
                pat({ctx("G"), fml(Template::imp(Template::disj(phi, psi), gamma))}, goal_var("D"))));
  c.rules.push_back(make_rule(rules::kLImpImp,
                              {pat({ctx("G"), fml(Template::imp(psi, gamma))}, goal(Template::imp(phi, psi))),
                               pat({fml(gamma), ctx("G")}, goal_var("D"))},
                              pat({ctx("G"), fml(Template::imp(Template::imp(phi, psi), gamma))}, goal_var("D"))));
  return c;
}

const std::map<std::string, RuleSchema>& builtin_modal_rules() {
  static const std::map<std::string, RuleSchema> library = make_modal_library();
  return library;
}

std::optional<RuleSchema> builtin_modal_rule(const std::string& name) {
  const auto& lib = builtin_modal_rules();
  auto it = lib.find(name);
  if (it == lib.end()) return std::nullopt;
  return it->second;
}

bool is_modal(const RuleSchema& r) { return pattern_has_box(r.conclusion); }

bool is_core_compatible(const RuleSchema& r) {
  if (r.provenance.origin == Provenance::Origin::Builtin && !is_modal(r)) return true;
  return builtin_modal_with_invertible_core(r);
}

RuleKind classify(const RuleSchema& r) {
  if (r.premises.empty()) return RuleKind::Axiom;
  const auto& succ = r.conclusion.succedent;
  if (is_modal(r)) {
    bool boxed_var = succ.kind == SuccedentPattern::Kind::Formula && succ.formula.connective() == Connective::Box &&
                     succ.formula.body().is_var() && !r.atom_vars.contains(succ.formula.body().var_name());
    return boxed_var ? RuleKind::RightModal : RuleKind::OtherModal;
  }
  if (succ.kind == SuccedentPattern::Kind::Formula && succ.formula.has_operator()) return RuleKind::Right;
  return RuleKind::Left;
}

bool is_right_modal(const RuleSchema& r) { return r.kind == RuleKind::RightModal; }

bool is_nonflat(const RuleSchema& r) {
  if (r.premises.empty()) return false;
  for (const auto& item : r.conclusion.antecedent) {
    if (item.kind == ContextItem::Kind::Formula && item.formula.has_operator()) return true;
  }
  const auto& succ = r.conclusion.succedent;
  return succ.kind == SuccedentPattern::Kind::Formula && succ.formula.has_operator();
}

std::vector<std::string> validate_schema(const RuleSchema& r) {
  std::vector<std::string> problems;
  if (r.name.empty()) problems.emplace_back("rule has no name");

  enum class Sort { Formula, Context, Succedent };
  auto sort_name = [](Sort s) {
    return s == Sort::Formula ? "formula" : (s == Sort::Context ? "context" : "succedent");
  };
  std::map<std::string, Sort> sorts;
  auto record = [&](const std::string& var, Sort s) {
    auto [it, inserted] = sorts.emplace(var, s);
    if (!inserted && it->second != s) {
      problems.push_back("metavariable " + var + " used both as " + sort_name(it->second) + " and as " +
                         sort_name(s));
    }
  };
  auto scan = [&](const Pattern& p) {
    for (const auto& item : p.antecedent) {
      if (item.kind == ContextItem::Kind::Context) {
        record(item.var, Sort::Context);
      } else {
        std::set<std::string> vars;
        item.formula.collect_vars(vars);
        for (const auto& var : vars) record(var, Sort::Formula);
      }
    }
    if (p.succedent.kind == SuccedentPattern::Kind::Var) record(p.succedent.var, Sort::Succedent);
    if (p.succedent.kind == SuccedentPattern::Kind::Formula) {
      std::set<std::string> vars;
      p.succedent.formula.collect_vars(vars);
      for (const auto& var : vars) record(var, Sort::Formula);
    }
  };
  scan(r.conclusion);
  for (const auto& p : r.premises) scan(p);

  std::set<std::string> seen_contexts;
  for (const auto& item : r.conclusion.antecedent) {
    if (item.kind == ContextItem::Kind::Context && !seen_contexts.insert(item.var).second) {
      problems.push_back("context " + item.var + " occurs more than once in the conclusion");
    }
  }

  std::set<std::string> bound;
  collect_pattern_vars(r.conclusion, bound);
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    std::set<std::string> used;
    collect_pattern_vars(r.premises[i], used);
    for (const auto& var : used) {
      if (!bound.contains(var)) {
        problems.push_back("metavariable " + var + " in premise " + std::to_string(i + 1) +
                           " does not occur in the conclusion");
      }
    }
  }
  for (const auto& a : r.atom_vars) {
    auto it = sorts.find(a);
    if (it == sorts.end() || it->second != Sort::Formula) {
      problems.push_back("atom restriction on " + a + ", which is not a formula metavariable of the rule");
    }
  }
  if ((r.kind == RuleKind::Axiom) != r.premises.empty()) {
    problems.emplace_back("rule kind disagrees with its premises");
  }
  return problems;
}

RuleSchema transform_right_modal(const RuleSchema& r) {
  if (!is_right_modal(r)) throw ContractViolation(r.name + " is not a right modal rule");
  std::set<std::string> used;
  collect_pattern_vars(r.conclusion, used);
  for (const auto& p : r.premises) collect_pattern_vars(p, used);
  const std::string psi = fresh_name(used, "psi");
  const std::string delta = fresh_name(used, "D");

  RuleSchema out;
  out.name = r.name + kGeneratedSuffix;
  out.premises = r.premises;
  out.atom_vars = r.atom_vars;

  Pattern side;
  side.antecedent = r.conclusion.antecedent;
  side.antecedent.push_back(ContextItem::of(Template::var(psi)));
  side.succedent = SuccedentPattern::variable(delta);
  out.premises.push_back(std::move(side));

  out.conclusion.antecedent = r.conclusion.antecedent;
  out.conclusion.antecedent.push_back(ContextItem::of(Template::imp(r.conclusion.succedent.formula, Template::var(psi))));
  out.conclusion.succedent = SuccedentPattern::variable(delta);
  out.provenance = Provenance{Provenance::Origin::Generated, r.name};
  out.kind = classify(out);
  return out;
}

Calculus build_g3ix(const std::vector<RuleSchema>& modal) { return assemble(g3ip(), modal, false); }

Calculus build_g4ix(const std::vector<RuleSchema>& modal) { return assemble(g4ip(), modal, true); }

}  // namespace g4ix

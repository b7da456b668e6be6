#include "g4ix/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "g4ix/harness.hpp"
#include "g4ix/prover.hpp"
#include "g4ix/rule_dsl.hpp"
#include "g4ix/termination.hpp"

namespace g4ix {

namespace {

// Configuration problems detected after argument parsing.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotTerminating : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string calculus = "G4ip";
  std::string modal;
  std::string rules;
  std::string engine;
  std::string emit = "verdict";
  std::string match = "greedy";
  std::string order = "dyckhoff";
  std::string input;
  bool sequent = false;
  bool force = false;
  std::size_t depth = SearchBudget{}.max_depth;
  std::size_t nodes = SearchBudget{}.max_nodes;
  unsigned count = 0;
  unsigned size = 0;
  unsigned atoms = 0;
  unsigned modal_depth = 2;
  std::uint64_t seed = 42;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

WeightFunction order_from(const std::string& spec) {
  if (spec == "dyckhoff") return WeightFunction::dyckhoff();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(spec));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("weights file " + spec + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("weights file " + spec + ": expected an object");
  LinearWeights w;
  const std::map<std::string, Weight*> fields = {{"and", &w.conj}, {"or", &w.disj}, {"imp", &w.imp}, {"box", &w.box}};
  for (const auto& [key, value] : j.items()) {
    auto it = fields.find(key);
    if (it == fields.end() || !value.is_number_integer()) {
      throw UsageError("weights file " + spec + ": unexpected entry '" + key + "'");
    }
    *it->second = value.get<Weight>();
  }
  return WeightFunction::linear(spec, w);
}

MatchMode match_from(const std::string& m) { return m == "exhaustive" ? MatchMode::Exhaustive : MatchMode::Greedy; }

// Rules of c beyond its propositional core, generated rules left out.
std::vector<RuleSchema> extra_rules(const Calculus& c) {
  const Calculus core = c.style == Style::G3 ? g3ip() : g4ip();
  std::vector<RuleSchema> out;
  for (const auto& r : c.rules) {
    if (r.provenance.origin == Provenance::Origin::Generated || core.find(r.name) != nullptr) continue;
    out.push_back(r);
  }
  return out;
}

Calculus resolve_calculus(const Options& o) {
  Calculus base = calculus_from_name(o.calculus);
  std::vector<RuleSchema> modal = extra_rules(base);
  if (!o.modal.empty()) {
    auto more = load_rule_list(o.modal);
    modal.insert(modal.end(), more.begin(), more.end());
  }
  Style style = base.style;
  if (o.engine == "g3") style = Style::G3;
  if (o.engine == "g4") style = Style::G4;
  return style == Style::G3 ? build_g3ix(modal) : build_g4ix(modal);
}

std::vector<std::string> nonterminating_rules(const Calculus& c, const WeightFunction& w) {
  std::vector<std::string> out;
  for (const auto& r : c.rules) {
    if (check_schema_termination(w, r).kind != TerminationVerdict::Kind::Terminating) out.push_back(r.name);
  }
  return out;
}

void require_terminating(const Calculus& c, const WeightFunction& w, bool force, std::ostream& err) {
  auto bad = nonterminating_rules(c, w);
  if (bad.empty()) return;
  std::string names;
  for (const auto& n : bad) names += (names.empty() ? "" : ", ") + n;
  if (force) {
    err << "warning: " << c.name << " is not terminating in the " << w.name() << " order (" << names << ")\n";
    return;
  }
  throw NotTerminating("the g4 engine requires a terminating calculus; " + c.name + " fails check-termination (" +
                       names + "); pass --force to run anyway");
}

int verdict_exit(const ProofResult& r) {
  switch (r.verdict) {
    case ProofResult::Verdict::Provable:
      return exit_code::kSuccess;
    case ProofResult::Verdict::Unprovable:
      return exit_code::kNegative;
    default:
      return exit_code::kUnknown;
  }
}

int cmd_prove(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw UsageError("prove: missing formula or sequent");
  const bool as_sequent = o.sequent || o.input.find("=>") != std::string::npos;
  Sequent s = as_sequent ? parse_sequent(o.input) : Sequent(FMultiset{}, parse_formula(o.input));
  Calculus calc = resolve_calculus(o);
  for (const auto& w : calc.warnings) err << "warning: " << w << "\n";
  SearchOptions opts;
  opts.match = match_from(o.match);
  opts.order = order_from(o.order);
  ProofResult r;
  if (calc.style == Style::G4) {
    require_terminating(calc, opts.order, o.force, err);
    r = prove_g4(calc, s, opts);
  } else {
    r = prove_g3(calc, s, SearchBudget{o.depth, o.nodes}, opts);
  }
  if (o.emit == "json" && r.provable()) {
    out << derivation_to_json(*r.derivation, 2) << "\n";
  } else {
    out << verdict_name(r) << "\n";
    if (o.emit == "text" && r.provable()) out << print_derivation(*r.derivation);
  }
  return verdict_exit(r);
}

std::vector<RuleSchema> rules_option(const Options& o) {
  const std::string& spec = o.rules.empty() ? o.modal : o.rules;
  if (spec.empty()) throw UsageError("missing --rules");
  return load_rule_list(spec);
}

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  auto modal = rules_option(o);
  Calculus calc = build_g4ix(modal);
  for (const auto& r : modal) {
    if (!is_right_modal(r)) err << "warning: " << r.name << " is not right modal; no implication rule generated\n";
  }
  for (const auto& w : calc.warnings) err << "warning: " << w << "\n";
  out << "# " << calc.name << "\n";
  for (const auto& r : calc.rules) {
    if (r.provenance.origin == Provenance::Origin::Generated) out << "# generated from " << r.provenance.source << "\n";
    out << print_rule(r) << "\n";
  }
  return exit_code::kSuccess;
}

int cmd_check_termination(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<RuleSchema> rules;
  if (!o.rules.empty() || !o.modal.empty()) {
    rules = rules_option(o);
  } else {
    rules = calculus_from_name(o.calculus).rules;
  }
  const WeightFunction w = order_from(o.order);
  SamplingConfig cfg;
  if (o.count > 0) cfg.count = o.count;
  if (o.size > 0) cfg.size = o.size;
  if (o.atoms > 0) cfg.atoms = o.atoms;
  cfg.seed = o.seed;
  bool counterexample = false, unknown = false;
  for (const auto& r : rules) {
    TerminationVerdict v = check_schema_termination(w, r, cfg);
    out << r.name << ": " << print_verdict(v) << "\n";
    counterexample = counterexample || v.kind == TerminationVerdict::Kind::Counterexample;
    unknown = unknown || v.kind == TerminationVerdict::Kind::Unknown;
  }
  if (counterexample) return exit_code::kNegative;
  return unknown ? exit_code::kUnknown : exit_code::kSuccess;
}

int cmd_equiv_test(const Options& o, bool count_given, std::ostream& out, std::ostream& err) {
  FuzzConfig cfg;
  cfg.seed = o.seed;
  if (count_given) cfg.count = o.count;
  if (o.size > 0) cfg.max_size = o.size;
  if (o.atoms > 0) cfg.atoms = o.atoms;
  cfg.max_modal_depth = o.modal_depth;
  if (!o.modal.empty()) cfg.modal_rules = {o.modal};
  cfg.budget = SearchBudget{o.depth, o.nodes};
  cfg.match = match_from(o.match);
  validate(cfg);
  require_terminating(build_g4ix(resolve_modal_rules(cfg.modal_rules)), WeightFunction::dyckhoff(), o.force, err);
  Report r = equivalence_fuzz(cfg);
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  out << report_text(r) << report_json_summary(r) << "\n";
  if (r.disagree > 0 || r.invalid_derivations > 0 || r.termination_violations > 0) return exit_code::kNegative;
  return r.calibration_failed ? exit_code::kUnknown : exit_code::kSuccess;
}

void describe(const RuleSchema& r, std::ostream& out) {
  out << "# " << kind_name(r.kind) << (is_nonflat(r) ? ", nonflat" : ", flat") << "\n" << print_rule(r) << "\n";
}

int cmd_rules_parse(const Options& o, std::ostream& out, std::ostream& err) {
  std::string text;
  if (!o.input.empty()) {
    text = read_file(o.input);
  } else if (!o.rules.empty()) {
    for (const auto& r : load_rule_list(o.rules)) describe(r, out);
    return exit_code::kSuccess;
  } else {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
  }
  RuleParseResult parsed = parse_rules(text);
  for (const auto& r : parsed.rules) describe(r, out);
  for (const auto& e : parsed.errors) err << "error: " << e.to_string() << "\n";
  return parsed.errors.empty() ? exit_code::kSuccess : exit_code::kInput;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof search and termination checking for intuitionistic modal sequent calculi", "g4ix"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> engines = {"g3", "g4"};
  const std::vector<std::string> emits = {"verdict", "text", "json"};
  const std::vector<std::string> matches = {"greedy", "exhaustive"};

  auto search_flags = [&](CLI::App* sub) {
    sub->add_option("--match", o.match, "Rule matching mode")->check(CLI::IsMember(matches));
    sub->add_option("--depth", o.depth, "G3 search depth bound")->check(CLI::PositiveNumber);
    sub->add_option("--nodes", o.nodes, "G3 search node bound")->check(CLI::PositiveNumber);
    sub->add_flag("--force", o.force, "Run the g4 engine on a calculus that is not terminating");
  };

  CLI::App* prove = app.add_subcommand("prove", "Decide a formula or sequent");
  prove->add_option("input", o.input, "Formula (read as => phi) or sequent");
  prove->add_option("--calculus", o.calculus, "G3ip, G4ip, G3i+RULES, G4i+RULES, G4iKD, ...");
  prove->add_option("--modal", o.modal, "Extra modal rules: built-in names or rule files, comma separated");
  prove->add_option("--engine", o.engine, "Search engine (default: the calculus style)")->check(CLI::IsMember(engines));
  prove->add_option("--emit", o.emit, "Output")->check(CLI::IsMember(emits));
  prove->add_option("--order", o.order, "dyckhoff or a weights file asserted by the g4 engine");
  prove->add_flag("--sequent", o.sequent, "Read the input as a sequent");
  search_flags(prove);

  CLI::App* transform = app.add_subcommand("transform", "Print the G4iX rules for a set of modal rules");
  transform->add_option("--rules,--modal", o.rules, "Built-in names or rule files, comma separated")->required();

  CLI::App* termination = app.add_subcommand("check-termination", "Check that rules decrease in a sequent order");
  termination->add_option("--rules,--modal", o.rules, "Built-in names or rule files (default: --calculus)");
  termination->add_option("--calculus", o.calculus, "Check every rule of this calculus");
  termination->add_option("--order", o.order, "dyckhoff or a weights file");
  termination->add_option("--count", o.count, "Random instantiations after the exhaustive sweep");
  termination->add_option("--size", o.size, "Formula size bound for sampling");
  termination->add_option("--atoms", o.atoms, "Atoms used in sampling");
  termination->add_option("--seed", o.seed, "Sampling seed")->default_val(1);

  CLI::App* equiv = app.add_subcommand("equiv-test", "Compare G3iX and G4iX verdicts on generated sequents");
  equiv->add_option("--modal", o.modal, "Modal rules: built-in names or rule files, comma separated");
  CLI::Option* count_opt = equiv->add_option("--count", o.count, "Number of sequents");
  equiv->add_option("--size", o.size, "Formula size bound")->check(CLI::PositiveNumber);
  equiv->add_option("--atoms", o.atoms, "Number of atoms")->check(CLI::PositiveNumber);
  equiv->add_option("--modal-depth", o.modal_depth, "Box nesting bound");
  equiv->add_option("--seed", o.seed, "Generator seed");
  search_flags(equiv);

  CLI::App* parse = app.add_subcommand("rules-parse", "Parse and validate a rule file");
  parse->add_option("file", o.input, "Rule file (default: standard input)");
  parse->add_option("--rules", o.rules, "Built-in names or rule files, comma separated");

  std::vector<const char*> argv = {"g4ix"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kSuccess : exit_code::kUsage;
  }

  try {
    if (*prove) return cmd_prove(o, out, err);
    if (*transform) return cmd_transform(o, out, err);
    if (*termination) return cmd_check_termination(o, out, err);
    if (*equiv) return cmd_equiv_test(o, count_opt->count() > 0, out, err);
    return cmd_rules_parse(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  } catch (const DslError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& d : e.errors()) err << "  " << d.to_string() << "\n";
    return exit_code::kInput;
  } catch (const NotTerminating& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kNotTerminating;
  } catch (const TerminationViolation& e) {
    err << "error: termination violation: " << e.what() << "\n";
    return exit_code::kNotTerminating;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
}

}  // namespace g4ix

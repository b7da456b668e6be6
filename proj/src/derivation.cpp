#include "g4ix/derivation.hpp"

#include <algorithm>

#include <json.hpp>

namespace g4ix {

namespace {

using Json = nlohmann::ordered_json;

bool instance_fits(const RuleSchema& r, const Instantiation& inst, const Derivation& d) {
  if (!respects_atom_restrictions(r, inst)) return false;
  try {
    if (instantiate_pattern(r.conclusion, inst) != d.conclusion) return false;
    auto premises = instantiate_premises(r, inst);
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (premises[i] != d.children[i]->conclusion) return false;
    }
  } catch (const ContractViolation&) {
    return false;
  }
  return true;
}

std::optional<Instantiation> find_instance(const RuleSchema& r, const Derivation& d) {
  if (r.premises.size() != d.children.size()) return std::nullopt;
  for (auto& inst : match_conclusion(r, d.conclusion, MatchMode::Exhaustive)) {
    if (instance_fits(r, inst, d)) return std::move(inst);
  }
  return std::nullopt;
}

void print_node(const Derivation& d, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += print_sequent(d.conclusion);
  out += "   [" + d.rule + "]\n";
  for (const auto& c : d.children) print_node(*c, depth + 1, out);
}

Json to_json(const Derivation& d) {
  Json j;
  j["sequent"] = print_sequent(d.conclusion);
  j["rule"] = d.rule;
  j["children"] = Json::array();
  for (const auto& c : d.children) j["children"].push_back(to_json(*c));
  return j;
}

DerivationPtr from_json(const Json& j, const Calculus& c) {
  if (!j.is_object() || !j.contains("sequent") || !j.contains("rule") || !j.contains("children") ||
      !j["sequent"].is_string() || !j["rule"].is_string() || !j["children"].is_array()) {
    throw DerivationFormatError("derivation node needs string fields sequent, rule and an array children");
  }
  auto d = std::make_shared<Derivation>();
  try {
    d->conclusion = parse_sequent(j["sequent"].get<std::string>());
  } catch (const ParseError& e) {
    throw DerivationFormatError(std::string("bad sequent in derivation: ") + e.what());
  }
  d->rule = j["rule"].get<std::string>();
  for (const auto& child : j["children"]) d->children.push_back(from_json(child, c));
  if (const RuleSchema* r = c.find(d->rule)) {
    d->kind = r->kind;
    d->instantiation = find_instance(*r, *d);
    if (d->instantiation) d->principal = principal_formulas(*r, *d->instantiation);
  }
  return d;
}

}  // namespace

DerivationPtr make_derivation(const RuleSchema& r, Sequent conclusion, Instantiation inst,
                              std::vector<DerivationPtr> children) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = std::move(conclusion);
  d->rule = r.name;
  d->kind = r.kind;
  d->principal = principal_formulas(r, inst);
  d->instantiation = std::move(inst);
  d->children = std::move(children);
  return d;
}

bool check_derivation(const Calculus& c, const Derivation& d) {
  const RuleSchema* r = c.find(d.rule);
  if (r == nullptr || r->premises.size() != d.children.size()) return false;
  for (const auto& child : d.children) {
    if (!child) return false;
  }
  bool fits = d.instantiation ? instance_fits(*r, *d.instantiation, d) : find_instance(*r, d).has_value();
  if (!fits) return false;
  return std::all_of(d.children.begin(), d.children.end(),
                     [&](const DerivationPtr& child) { return check_derivation(c, *child); });
}

std::size_t height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& c : d.children) h = std::max(h, height(*c));
  return h + 1;
}

std::size_t leftmost_length(const Derivation& d) {
  std::size_t n = 1;
  for (const Derivation* cur = &d; !cur->children.empty(); cur = cur->children.front().get()) ++n;
  return n;
}

std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += node_count(*c);
  return n;
}

std::string print_derivation(const Derivation& d) {
  std::string out;
  print_node(d, 0, out);
  return out;
}

std::string derivation_to_json(const Derivation& d, int indent) { return to_json(d).dump(indent); }

DerivationPtr derivation_from_json(std::string_view text, const Calculus& c) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DerivationFormatError(std::string("malformed derivation JSON: ") + e.what());
  }
  return from_json(j, c);
}

}  // namespace g4ix

#include "g4ix/rule_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace g4ix {

namespace {

class BlockError : public std::runtime_error {
public:
  BlockError(const std::string& what, std::size_t offset) : std::runtime_error(what), offset(offset) {}
  std::size_t offset;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Trimmed view together with its offset in the source.
struct Slice {
  std::string_view text;
  std::size_t offset;
};

Slice trim(std::string_view s, std::size_t offset) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return {s.substr(b, e - b), offset + b};
}

std::vector<Slice> split(Slice s, char sep) {
  std::vector<Slice> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    if (i < s.text.size()) {
      char c = s.text[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c != sep || depth != 0) continue;
    }
    out.push_back(trim(s.text.substr(start, i - start), s.offset + start));
    start = i + 1;
  }
  return out;
}

bool starts_with_keyword(std::string_view s, std::string_view keyword) {
  if (s.substr(0, keyword.size()) != keyword) return false;
  std::string_view rest = s.substr(keyword.size());
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  return i < rest.size() && rest[i] == ':';
}

Slice after_colon(Slice s) {
  auto colon = s.text.find(':');
  return trim(s.text.substr(colon + 1), s.offset + colon + 1);
}

bool is_context_name(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), is_identifier_char);
}

// Parses "box box(1) G" into a context item; nullopt if the item is a formula template.
std::optional<ContextItem> parse_context_item(Slice item) {
  std::string_view s = item.text;
  std::vector<unsigned> boxes;
  while (true) {
    std::size_t i = 0;
    while (i < s.size() && is_space(s[i])) ++i;
    s.remove_prefix(i);
    if (s.substr(0, 3) == "box" && (s.size() == 3 || !is_identifier_char(s[3]))) {
      s.remove_prefix(3);
      std::size_t j = 0;
      while (j < s.size() && is_space(s[j])) ++j;
      unsigned index = 0;
      if (j < s.size() && s[j] == '(') {
        std::size_t k = j + 1;
        if (k >= s.size() || !std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          index = index * 10 + static_cast<unsigned>(s[k] - '0');
          ++k;
        }
        if (k >= s.size() || s[k] != ')') return std::nullopt;
        s.remove_prefix(k + 1);
      }
      boxes.push_back(index);
      continue;
    }
    if (s.substr(0, 1) == "[") {
      auto close = s.find(']');
      if (close == std::string_view::npos) return std::nullopt;
      unsigned index = 0;
      for (std::size_t k = 1; k < close; ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
        index = index * 10 + static_cast<unsigned>(s[k] - '0');
      }
      boxes.push_back(index);
      s.remove_prefix(close + 1);
      continue;
    }
    break;
  }
  if (!is_context_name(s)) return std::nullopt;
  return ContextItem::context(std::string(s), std::move(boxes));
}

Template parse_lowercase_template(Slice item) {
  Template t;
  try {
    t = parse_template(item.text, item.offset);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    throw BlockError(msg.substr(0, msg.rfind(" at position ")), e.position());
  }
  std::set<std::string> vars;
  t.collect_vars(vars);
  for (const auto& var : vars) {
    if (!std::islower(static_cast<unsigned char>(var.front()))) {
      throw BlockError("context metavariable " + var + " used inside a formula", item.offset);
    }
  }
  return t;
}

Pattern parse_seqpat(Slice s) {
  auto arrow = s.text.find("=>");
  if (arrow == std::string_view::npos) throw BlockError("expected '=>' in sequent pattern", s.offset);
  Pattern p;
  Slice left = trim(s.text.substr(0, arrow), s.offset);
  if (!left.text.empty()) {
    for (const auto& item : split(left, ',')) {
      if (item.text.empty()) throw BlockError("empty antecedent item", item.offset);
      if (auto ctx = parse_context_item(item)) {
        p.antecedent.push_back(std::move(*ctx));
      } else {
        p.antecedent.push_back(ContextItem::of(parse_lowercase_template(item)));
      }
    }
  }
  Slice right = trim(s.text.substr(arrow + 2), s.offset + arrow + 2);
  if (right.text.empty() || right.text == "_") {
    p.succedent = SuccedentPattern::empty();
  } else if (is_context_name(right.text)) {
    p.succedent = SuccedentPattern::variable(std::string(right.text));
  } else {
    p.succedent = SuccedentPattern::of(parse_lowercase_template(right));
  }
  return p;
}

RuleSchema parse_block(std::string name, Slice body) {
  RuleSchema r;
  r.name = std::move(name);
  r.provenance = Provenance{Provenance::Origin::User, {}};
  auto segments = split(body, ';');
  if (segments.empty() || !starts_with_keyword(segments[0].text, "premises")) {
    throw BlockError("expected 'premises:'", body.offset);
  }
  std::size_t i = 0;
  Slice first = after_colon(segments[0]);
  bool none = first.text == "none";
  bool seen_conclusion = false;
  if (!none) {
    if (first.text.empty()) throw BlockError("empty premise list; write 'none' for axioms", first.offset);
    r.premises.push_back(parse_seqpat(first));
  }
  for (i = 1; i < segments.size(); ++i) {
    const Slice& seg = segments[i];
    if (starts_with_keyword(seg.text, "conclusion")) {
      if (seen_conclusion) throw BlockError("duplicate conclusion", seg.offset);
      r.conclusion = parse_seqpat(after_colon(seg));
      seen_conclusion = true;
    } else if (starts_with_keyword(seg.text, "atoms")) {
      if (!seen_conclusion) throw BlockError("'atoms:' must follow the conclusion", seg.offset);
      for (const auto& a : split(after_colon(seg), ',')) {
        if (a.text.empty() || !std::islower(static_cast<unsigned char>(a.text.front())) ||
            !std::all_of(a.text.begin(), a.text.end(), is_identifier_char)) {
          throw BlockError("invalid atom metavariable '" + std::string(a.text) + "'", a.offset);
        }
        r.atom_vars.insert(std::string(a.text));
      }
    } else if (seen_conclusion) {
      throw BlockError("unexpected text after the conclusion", seg.offset);
    } else {
      if (none) throw BlockError("premises given after 'none'", seg.offset);
      if (seg.text.empty()) throw BlockError("empty premise", seg.offset);
      r.premises.push_back(parse_seqpat(seg));
    }
  }
  if (!seen_conclusion) throw BlockError("missing 'conclusion:'", body.offset + body.text.size());
  r.kind = classify(r);
  return r;
}

std::string print_context_item(const ContextItem& item) {
  if (item.kind == ContextItem::Kind::Formula) {
    const Template& t = item.formula;
    bool binary = t.connective() == Connective::And || t.connective() == Connective::Or ||
                  (t.connective() == Connective::Imp && t.right().connective() != Connective::Bot);
    std::string body = print_template(t);
    return binary ? "(" + body + ")" : body;
  }
  std::string out;
  for (unsigned index : item.boxes) out += index == 0 ? "box " : "box(" + std::to_string(index) + ") ";
  return out + item.var;
}

std::string print_pattern(const Pattern& p) {
  std::string out;
  for (const auto& item : p.antecedent) {
    if (!out.empty()) out += ", ";
    out += print_context_item(item);
  }
  out += out.empty() ? "=> " : " => ";
  switch (p.succedent.kind) {
    case SuccedentPattern::Kind::Empty:
      out += "_";
      break;
    case SuccedentPattern::Kind::Var:
      out += p.succedent.var;
      break;
    case SuccedentPattern::Kind::Formula:
      out += print_template(p.succedent.formula);
      break;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DslError("cannot read rule file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<RuleSchema> rules_from_file(const std::string& path) {
  auto result = parse_rules(read_file(path));
  if (!result.errors.empty()) {
    std::string msg = path + ": " + result.errors.front().to_string();
    throw DslError(msg, result.errors);
  }
  return result.rules;
}

}  // namespace

std::string DslValidationError::to_string() const {
  return "line " + std::to_string(line) + (rule.empty() ? "" : " (rule " + rule + ")") + ": " + message;
}

RuleParseResult parse_rules(std::string_view input) {
  std::string text(input);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') text[i++] = ' ';
    }
  }
  auto line_of = [&text](std::size_t offset) {
    return static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(offset, text.size()), '\n')) + 1;
  };

  RuleParseResult result;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    std::size_t block_start = pos;
    if (text.compare(pos, 4, "rule") != 0 || (pos + 4 < text.size() && !is_space(text[pos + 4]))) {
      auto next = text.find("rule", pos + 1);
      result.errors.push_back({line_of(pos), "", "expected 'rule'"});
      if (next == std::string::npos) break;
      pos = next;
      continue;
    }
    pos += 4;
    while (pos < text.size() && is_space(text[pos])) ++pos;
    std::size_t name_start = pos;
    while (pos < text.size() && !is_space(text[pos]) && text[pos] != '{' && text[pos] != '}') ++pos;
    std::string name = text.substr(name_start, pos - name_start);
    auto open = text.find('{', pos);
    auto close = open == std::string::npos ? std::string::npos : text.find('}', open);
    if (name.empty() || open == std::string::npos || close == std::string::npos ||
        text.find_first_not_of(" \t\r\n", pos) != open) {
      result.errors.push_back({line_of(block_start), name, "malformed rule block; expected 'rule NAME { ... }'"});
      if (close == std::string::npos) break;
      pos = close + 1;
      continue;
    }
    Slice body = trim(std::string_view(text).substr(open + 1, close - open - 1), open + 1);
    pos = close + 1;
    try {
      RuleSchema r = parse_block(name, body);
      auto problems = validate_schema(r);
      if (!problems.empty()) {
        for (const auto& p : problems) result.errors.push_back({line_of(block_start), name, p});
        continue;
      }
      bool clash = std::any_of(result.rules.begin(), result.rules.end(),
                               [&](const RuleSchema& other) { return other.name == r.name; });
      if (clash) {
        result.errors.push_back({line_of(block_start), name, "duplicate rule name"});
        continue;
      }
      result.rules.push_back(std::move(r));
    } catch (const BlockError& e) {
      result.errors.push_back({line_of(e.offset), name, e.what()});
    }
  }
  return result;
}

std::string print_rule(const RuleSchema& r) {
  std::string out = "rule " + r.name + " { premises: ";
  if (r.premises.empty()) {
    out += "none";
  } else {
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
      if (i > 0) out += " ; ";
      out += print_pattern(r.premises[i]);
    }
  }
  out += " ; conclusion: " + print_pattern(r.conclusion);
  if (!r.atom_vars.empty()) {
    out += " ; atoms: ";
    bool first = true;
    for (const auto& a : r.atom_vars) {
      out += (first ? "" : ", ") + a;
      first = false;
    }
  }
  return out + " }";
}

std::string print_rules(const std::vector<RuleSchema>& rs) {
  std::string out;
  for (const auto& r : rs) out += print_rule(r) + "\n";
  return out;
}

std::vector<RuleSchema> load_rule_list(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return rules_from_file(spec);
  std::vector<RuleSchema> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto comma = spec.find(',', start);
    std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    Slice t = trim(item, 0);
    std::string name(t.text);
    if (name.empty()) {
      if (spec.empty()) break;
      throw DslError("empty entry in rule list '" + spec + "'");
    }
    if (auto builtin = builtin_modal_rule(name)) {
      out.push_back(*builtin);
    } else if (std::filesystem::is_regular_file(name, ec)) {
      auto loaded = rules_from_file(name);
      out.insert(out.end(), loaded.begin(), loaded.end());
    } else {
      throw DslError("unknown rule '" + name + "' (neither a built-in modal rule nor a readable file)");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Calculus calculus_from_name(const std::string& name) {
  if (name == "G3ip") return g3ip();
  if (name == "G4ip") return g4ip();
  auto extended = [&](std::string_view prefix) { return name.rfind(prefix, 0) == 0; };
  // Letter shorthand: G4iK, G3iKD, G4iKT, ...
  if (name.size() > 3 && (extended("G3i") || extended("G4i")) && name[3] != '+') {
    std::string list;
    for (char c : name.substr(3)) {
      if (c != 'K' && c != 'D' && c != 'T' && c != 'X') {
        list.clear();
        break;
      }
      list += (list.empty() ? "R_" : ",R_") + std::string(1, c);
    }
    if (!list.empty()) return name[1] == '3' ? build_g3ix(load_rule_list(list)) : build_g4ix(load_rule_list(list));
  }
  try {
    if (extended("G3i+")) return build_g3ix(load_rule_list(name.substr(4)));
    if (extended("G4i+")) return build_g4ix(load_rule_list(name.substr(4)));
  } catch (const SchemaError& e) {
    std::vector<DslValidationError> errors;
    for (const auto& p : e.problems()) errors.push_back({0, "", p});
    throw DslError(std::string("invalid calculus ") + name + ": " + e.what(), errors);
  }
  throw DslError("unknown calculus '" + name + "'; expected G3ip, G4ip, G3i+<rules> or G4i+<rules>");
}

}  // namespace g4ix

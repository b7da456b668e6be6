#include "g4ix/sequent.hpp"

#include <algorithm>

namespace g4ix {

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

Formula parse_at(std::string_view text, std::size_t offset) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    // Re-anchor the position to the whole sequent text.
    std::string msg = e.what();
    auto cut = msg.rfind(" at position ");
    throw ParseError(msg.substr(0, cut), offset + e.position());
  }
}

}  // namespace

FMultiset::FMultiset(std::initializer_list<Formula> items) {
  for (const auto& f : items) insert(f);
}

FMultiset::FMultiset(const std::vector<Formula>& items) {
  for (const auto& f : items) insert(f);
}

std::vector<FMultiset::Entry>::const_iterator FMultiset::find(const Formula& f) const {
  return std::lower_bound(entries_.begin(), entries_.end(), f,
                          [](const Entry& e, const Formula& g) { return Formula::compare(e.first, g) < 0; });
}

void FMultiset::insert(const Formula& f, std::size_t k) {
  if (k == 0) return;
  auto it = find(f);
  auto pos = entries_.begin() + (it - entries_.cbegin());
  if (pos != entries_.end() && pos->first == f) {
    pos->second += k;
  } else {
    entries_.insert(pos, Entry{f, k});
  }
  total_ += k;
}

void FMultiset::erase(const Formula& f, std::size_t k) {
  if (k == 0) return;
  auto it = find(f);
  auto pos = entries_.begin() + (it - entries_.cbegin());
  if (pos == entries_.end() || pos->first != f || pos->second < k) {
    throw ContractViolation("multiset removal exceeds multiplicity of " + print_formula(f));
  }
  pos->second -= k;
  total_ -= k;
  if (pos->second == 0) entries_.erase(pos);
}

std::size_t FMultiset::count(const Formula& f) const noexcept {
  auto it = find(f);
  return (it != entries_.end() && it->first == f) ? it->second : 0;
}

std::vector<Formula> FMultiset::elements() const {
  std::vector<Formula> out;
  out.reserve(total_);
  for (const auto& [f, k] : entries_) out.insert(out.end(), k, f);
  return out;
}

bool FMultiset::subset_of(const FMultiset& other) const {
  if (total_ > other.total_) return false;
  for (const auto& [f, k] : entries_) {
    if (other.count(f) < k) return false;
  }
  return true;
}

std::size_t FMultiset::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [f, k] : entries_) {
    h ^= f.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= k * 0x100000001b3ULL;
  }
  return h;
}

bool operator==(const FMultiset& a, const FMultiset& b) {
  if (a.total_ != b.total_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].second != b.entries_[i].second || a.entries_[i].first != b.entries_[i].first) return false;
  }
  return true;
}

bool operator<(const FMultiset& a, const FMultiset& b) {
  std::size_t n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = Formula::compare(a.entries_[i].first, b.entries_[i].first);
    if (c != 0) return c < 0;
    if (a.entries_[i].second != b.entries_[i].second) return a.entries_[i].second < b.entries_[i].second;
  }
  return a.entries_.size() < b.entries_.size();
}

FMultiset mset_union(const FMultiset& a, const FMultiset& b) {
  FMultiset out = a;
  for (const auto& [f, k] : b.entries()) out.insert(f, k);
  return out;
}

FMultiset mset_remove(const FMultiset& a, const Formula& f, std::size_t k) {
  FMultiset out = a;
  out.erase(f, k);
  return out;
}

FMultiset mset_difference(const FMultiset& a, const FMultiset& b) {
  FMultiset out;
  for (const auto& [f, k] : a.entries()) {
    std::size_t other = b.count(f);
    if (k > other) out.insert(f, k - other);
  }
  return out;
}

FMultiset Sequent::all_formulas() const {
  FMultiset out = antecedent;
  if (succedent) out.insert(*succedent);
  return out;
}

std::size_t Sequent::hash() const noexcept {
  std::size_t h = antecedent.hash();
  return h ^ (succedent ? succedent->hash() * 31 + 7 : 0x2545F4914F6CDD1DULL);
}

bool operator==(const Sequent& a, const Sequent& b) {
  if (a.succedent.has_value() != b.succedent.has_value()) return false;
  if (a.succedent && *a.succedent != *b.succedent) return false;
  return a.antecedent == b.antecedent;
}

bool operator<(const Sequent& a, const Sequent& b) {
  if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
  if (a.succedent.has_value() != b.succedent.has_value()) return !a.succedent.has_value();
  return a.succedent && Formula::compare(*a.succedent, *b.succedent) < 0;
}

Formula interpret(const Sequent& s) {
  Formula goal = s.succedent ? *s.succedent : Formula::bot();
  auto items = s.antecedent.elements();
  if (items.empty()) return goal;
  Formula conj = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) conj = Formula::conj(conj, items[i]);
  return Formula::imp(conj, goal);
}

Sequent parse_sequent(std::string_view text) {
  auto arrow = text.find("=>");
  if (arrow == std::string_view::npos) throw ParseError("expected '=>' in sequent", text.size());
  if (text.find("=>", arrow + 2) != std::string_view::npos) {
    throw ParseError("more than one '=>' in sequent", text.find("=>", arrow + 2));
  }
  Sequent s;
  std::string_view ante = text.substr(0, arrow);
  if (!blank(ante)) {
    std::size_t start = 0;
    while (true) {
      auto comma = ante.find(',', start);
      std::string_view item = ante.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (blank(item)) throw ParseError("empty antecedent item", start);
      s.antecedent.insert(parse_at(item, start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  std::string_view succ = text.substr(arrow + 2);
  if (!blank(succ)) s.succedent = parse_at(succ, arrow + 2);
  return s;
}

std::string print_multiset(const FMultiset& m) {
  std::string out;
  for (const auto& f : m.elements()) {
    if (!out.empty()) out += ", ";
    out += print_formula(f);
  }
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out = print_multiset(s.antecedent);
  out += out.empty() ? "=>" : " =>";
  if (s.succedent) out += " " + print_formula(*s.succedent);
  return out;
}

}  // namespace g4ix

// Curated sequents with known verdicts, checked against both engines.

#ifndef G4IX_TESTS_GOLDEN_HPP
#define G4IX_TESTS_GOLDEN_HPP

#include <vector>

namespace testing {

struct Golden {
  const char* logic;  // the G4 calculus; the G3 counterpart is checked too
  const char* sequent;
  bool provable;
};

inline const std::vector<Golden>& golden_sequents() {
  static const std::vector<Golden> list = {
      {"G4ip", "=> p -> p", true},
      {"G4ip", "=> ((p -> q) -> p) -> p", false},
      {"G4ip", "=> p | ~p", false},
      {"G4ip", "=> ~~(p | ~p)", true},
      {"G4ip", "=> ~~p -> p", false},
      {"G4ip", "=> p -> ~~p", true},
      {"G4ip", "=> ~~~p -> ~p", true},
      {"G4ip", "=> (p -> q) -> ~q -> ~p", true},
      {"G4ip", "=> (~q -> ~p) -> p -> q", false},
      {"G4ip", "=> ~(p & ~p)", true},
      {"G4ip", "=> ~(p | q) -> ~p & ~q", true},
      {"G4ip", "=> ~p & ~q -> ~(p | q)", true},
      {"G4ip", "=> ~(p & q) -> ~p | ~q", false},
      {"G4ip", "=> (p -> q) | (q -> p)", false},
      {"G4ip", "=> ~~(~~p -> p)", true},
      {"G4ip", "p & q => q & p", true},
      {"G4ip", "p | q => q | p", true},
      {"G4ip", "false => q", true},
      {"G4ip", "p -> q, q -> r => p -> r", true},
      {"G4ip", "p => q", false},
      {"G4ip", "p, p -> q, q -> r =>", false},
      {"G4ip", "p, ~p =>", true},
      {"G4i+R_K", "[]p & []q => [](p & q)", true},
      {"G4i+R_K", "=> [](p -> q) -> []p -> []q", true},
      {"G4i+R_K", "=> [](p & q) -> []p", true},
      {"G4i+R_K", "[]p => p", false},
      {"G4i+R_K", "[]false =>", false},
      {"G4i+R_K", "[](p | q) => []p | []q", false},
      {"G4i+R_K", "=> []p | ~[]p", false},
      {"G4i+R_K", "[]p -> q, []p => q", true},
      {"G4i+R_K,R_D", "[]false =>", true},
      {"G4i+R_K,R_D", "=> ~[]false", true},
      {"G4i+R_K,R_D", "[]p => p", false},
      {"G4i+R_K,R_T", "[]p => p", true},
      {"G4i+R_K,R_T", "=> [][]p -> []p", true},
      {"G4i+R_K,R_T", "[]p => [][]p", false},
      {"G4i+R_K,R_T", "[]false =>", true},
  };
  return list;
}

}  // namespace testing

#endif  // G4IX_TESTS_GOLDEN_HPP

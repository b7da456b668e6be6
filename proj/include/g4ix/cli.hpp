// The g4ix command line: prove, transform, check-termination, equiv-test, rules-parse.
//
// Exit codes: 0 provable / success, 1 unprovable / negative, 2 unknown,
// 3 usage or configuration error, 4 unreadable input (formula, sequent, rules),
// 5 the g4 engine on a calculus that is not terminating.

#ifndef G4IX_CLI_HPP
#define G4IX_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace g4ix {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kUsage = 3;
inline constexpr int kInput = 4;
inline constexpr int kNotTerminating = 5;
}  // namespace exit_code

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace g4ix

#endif  // G4IX_CLI_HPP

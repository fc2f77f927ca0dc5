#pragma once

// Command-line front end: poset, verify, oracle, dl-sim, weyl.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
// ZIPSTRATA_CAP (a positive integer) replaces the default |W| and |H(F)| caps;
// explicit --weyl-cap / --group-cap flags take precedence over it.

#include <iosfwd>
#include <string>
#include <vector>

namespace zipstrata {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zipstrata

#pragma once

// Command-line front end. Subcommands:
//
//   ortho, recover, moments, psd, fcalc, specmap, gmres, equiv, symmetrize,
//   krylov-decompose
//
// Exit codes: 0 ok, 2 invalid input, 3 numerical breakdown, 4 invariant violated.

#include <iosfwd>
#include <string>
#include <vector>

#include "antilinear/core.hpp"

namespace antilinear::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBreakdown = 3;
inline constexpr int kExitViolated = 4;

int exit_code(ErrorKind kind);

/// `args` excludes the program name. `in`/`out` stand in for --in/--out when
/// those are omitted; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// "1", "-2.5i", "1+2i", "3e-1-4i".
cplx parse_complex(const std::string& token);
/// Comma-separated parse_complex tokens; empty string gives an empty list.
std::vector<cplx> parse_complex_list(const std::string& text);

}  // namespace antilinear::cli

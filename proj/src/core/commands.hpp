#pragma once

#include <string>
#include <vector>

#include "error.hpp"
#include "theorems.hpp"

namespace gconv::cli {

struct Report {
  std::string text;  // human-readable, newline terminated
  std::string json;  // one JSON document
  int exit_code = 0;
};

// Exit codes: 0 success or Proved, 1 Refuted, 2 Unfalsified, 3 HypothesisFailed,
// 4 input error. Errors that are hypothesis gates in disguise map to 3.
int exit_code_for(VerdictStatus s);
int exit_code_for(ErrorCode e);

// args[0] is the subcommand: norm, endo-norm, mu, rho, invert, hull,
// is-convex, is-n-convex, family, recursion, verify, search. Names that do
// not resolve raise ParseError; module failures propagate as Error.
Report run_command(const Instance& inst, const std::vector<std::string>& args);

std::string verdict_json(const GroupSpec& g, std::string_view property, const Verdict& v);
std::string error_json(const Error& e);

}  // namespace gconv::cli

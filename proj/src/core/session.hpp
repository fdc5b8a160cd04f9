#pragma once

#include <string>
#include <string_view>

#include "theorems.hpp"

namespace gconv::cli {

// Session files are JSON objects with the keys "group", "metric", "endos",
// "sets" and "params". Scalars are strings ("3", "-1/3", "5/2^3") or integers.
//
// Syntax errors raise ParseError with a line number; a missing field or a
// dangling name raises ParseError naming the JSON path; a well-formed literal
// rejected by the algebra (bad congruence, invalid metric, ...) raises
// ValidationError whose cause() is the module error.
Instance parse_session(std::string_view text);
Instance load_session(const std::string& path);

// Canonical JSON text; parse_session(print_session(s)) == s.
std::string print_session(const Instance& inst);

// "7", "3/2,-1/4" or "(3/2, -1/4)".
Element parse_element_literal(const GroupSpec& g, std::string_view text);

// Overrides one of n0, horizon, budget, seed, max_iter, n_max.
void set_param(Instance& inst, std::string_view name, std::string_view value);

bool same_session(const Instance& a, const Instance& b);

}  // namespace gconv::cli

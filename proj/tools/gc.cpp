// gc: command-line front end over the gconv shared library.
//
//   gc [--session FILE] [--json] [--seed N] [--budget N] [--horizon N] [--max-iter N]
//      <subcommand> [args...]

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gconv/gconv.h"

namespace {

int report_error(gc_status st, bool json) {
  if (json) std::printf("%s\n", gc_last_error_json());
  std::fprintf(stderr, "gc: %s\n", gc_last_error());
  return gc_exit_code_for_status(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convexity in metric Abelian groups: exact computations and property checks"};
  app.set_version_flag("--version", std::string(gc_version()));

  std::string session_path = "session.json";
  bool json = false;
  std::optional<std::string> seed, budget, horizon, max_iter;
  std::vector<std::string> words;
  app.add_option("-s,--session", session_path, "Session file")->capture_default_str();
  app.add_flag("--json", json, "Print the machine-readable record");
  app.add_option("--seed", seed, "Random seed for search");
  app.add_option("--budget", budget, "Instance budget for search");
  app.add_option("--horizon", horizon, "Power horizon for spectral radius bounds");
  app.add_option("--max-iter", max_iter, "Iteration cap for hulls and Neumann sums");
  app.add_option("command", words,
                 "norm X | endo-norm T | mu T | rho T | invert [S] T | hull S [T...] | is-convex D [T...] | "
                 "is-n-convex D n | family D | recursion T n | verify PROP | search PROP [GEN]")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  gc_session* session = nullptr;
  if (gc_status st = gc_session_load_file(session_path.c_str(), &session); st != GC_OK) return report_error(st, json);

  const std::pair<const char*, std::optional<std::string>*> overrides[] = {
      {"seed", &seed}, {"budget", &budget}, {"horizon", &horizon}, {"max_iter", &max_iter}};
  for (const auto& [name, value] : overrides) {
    if (!*value) continue;
    if (gc_status st = gc_session_set_param(session, name, (*value)->c_str()); st != GC_OK) {
      gc_session_free(session);
      return report_error(st, json);
    }
  }

  std::vector<const char*> args;
  for (const auto& w : words) args.push_back(w.c_str());
  gc_report* report = nullptr;
  const gc_status st = gc_run(session, args.data(), args.size(), &report);
  gc_session_free(session);
  if (st != GC_OK) return report_error(st, json);

  std::fputs(json ? gc_report_json(report) : gc_report_text(report), stdout);
  if (json) std::fputc('\n', stdout);
  const int rc = gc_report_exit_code(report);
  gc_report_free(report);
  return rc;
}

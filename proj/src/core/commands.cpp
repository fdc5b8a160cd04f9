#include "commands.hpp"

#include <charconv>

#include <json.hpp>

#include "convexity.hpp"
#include "operator.hpp"
#include "session.hpp"

namespace gconv::cli {

namespace {

using Json = nlohmann::ordered_json;

Json scalar_json(const GroupSpec& g, const Rational& q) { return g.format_scalar(q); }

Json element_json(const GroupSpec& g, const Element& x) {
  Json a = Json::array();
  for (const auto& c : x.coords) a.push_back(scalar_json(g, c));
  return a;
}

Json endo_json(const Endomorphism& t) {
  Json rows = Json::array();
  const Matrix& a = t.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(scalar_json(t.group(), a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json set_json(const PointSet& s) {
  const GroupSpec& g = s.group();
  if (s.is_box()) return {{"kind", "box"}, {"lo", element_json(g, s.lo())}, {"hi", element_json(g, s.hi())}};
  Json elems = Json::array();
  for (const auto& x : s.elements()) elems.push_back(element_json(g, x));
  return {{"kind", "finite"}, {"elements", elems}};
}

Json witness_value(const GroupSpec& g, const WitnessItem& w) {
  struct Visitor {
    const GroupSpec& g;
    Json operator()(const Element& x) const { return element_json(g, x); }
    Json operator()(const Endomorphism& t) const { return endo_json(t); }
    Json operator()(const Rational& q) const { return scalar_json(g, q); }
    Json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{g}, w.value);
}

[[noreturn]] void usage(const std::string& msg) { throw ParseError(0, msg); }

void arity(const std::vector<std::string>& args, std::size_t min, std::size_t max, const char* shape) {
  if (args.size() < min || args.size() > max) usage(std::string("usage: ") + shape);
}

Endomorphism endo_ref(const Instance& inst, const std::string& ref) {
  if (ref.rfind("pi:", 0) == 0) {
    try {
      return Endomorphism::pi(inst.group, Integer(ref.substr(3)));
    } catch (const std::invalid_argument&) {
      usage("bad multiplier in '" + ref + "'");
    }
  }
  if (ref == "I") return Endomorphism::identity(inst.group);
  if (const Endomorphism* t = inst.find_endo(ref)) return *t;
  usage("undefined endomorphism '" + ref + "'");
}

const PointSet& set_ref(const Instance& inst, const std::string& ref) {
  if (const PointSet* s = inst.find_set(ref)) return *s;
  usage("undefined set '" + ref + "'");
}

unsigned count_arg(const std::string& s, const char* what) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) usage(std::string(what) + " must be a positive integer");
  return v;
}

// Explicit endomorphism names, else the session family, else every endomorphism.
std::vector<Endomorphism> family_args(const Instance& inst, const std::vector<std::string>& args, std::size_t from) {
  std::vector<Endomorphism> out;
  for (std::size_t i = from; i < args.size(); ++i) out.push_back(endo_ref(inst, args[i]));
  if (!out.empty()) return out;
  if (!inst.family.empty()) {
    for (const auto& n : inst.family) out.push_back(endo_ref(inst, n));
    return out;
  }
  for (const auto& [name, t] : inst.endos) out.push_back(t);
  if (out.empty()) usage("no endomorphisms given and none defined in the session");
  return out;
}

Report value_report(const GroupSpec& g, const std::string& cmd, const Rational& v) {
  Json j = {{"command", cmd}, {"value", scalar_json(g, v)}};
  return {g.format_scalar(v) + "\n", j.dump(), 0};
}

Report endo_report(const std::string& cmd, const Endomorphism& t) {
  Json j = {{"command", cmd}, {"value", endo_json(t)}};
  return {t.format() + "\n", j.dump(), 0};
}

Report verdict_report(const GroupSpec& g, const std::string& label, const Verdict& v) {
  std::string text = label + ": " + std::string(status_name(v.status)) + "\n";
  if (v.status == VerdictStatus::HypothesisFailed) text += "  hypothesis failed: " + v.hypothesis + "\n";
  for (const auto& w : v.witness) text += "  " + format_witness(g, w) + "\n";
  if (v.status == VerdictStatus::Unfalsified) text += "  samples: " + std::to_string(v.samples) + "\n";
  if (!v.note.empty()) text += "  note: " + v.note + "\n";
  return {text, verdict_json(g, label, v), exit_code_for(v.status)};
}

PropertyId property_arg(const std::string& s) {
  if (auto p = parse_property(s)) return *p;
  std::string known;
  for (PropertyId p : all_properties()) known += (known.empty() ? "" : ", ") + std::string(property_name(p));
  usage("unknown property '" + s + "' (expected one of " + known + ")");
}

Report cmd_rho(const Instance& inst, const std::vector<std::string>& args) {
  arity(args, 2, 2, "rho T");
  const RhoBracket r = spectral_radius(endo_ref(inst, args[1]), inst.metric, inst.params.horizon);
  const GroupSpec& g = inst.group;
  Json j = {{"command", "rho"}, {"lower", scalar_json(g, r.lower)}, {"upper", scalar_json(g, r.upper)},
            {"exact", r.exact}};
  if (r.exact) return {g.format_scalar(r.upper) + "\n", j.dump(), 0};
  return {"[" + g.format_scalar(r.lower) + ", " + g.format_scalar(r.upper) + "]\n", j.dump(), 0};
}

Report cmd_hull(const Instance& inst, const std::vector<std::string>& args) {
  arity(args, 2, SIZE_MAX, "hull S [T...]");
  const HullResult h = convex_hull(set_ref(inst, args[1]), family_args(inst, args, 2), inst.params.max_iter);
  Json j = {{"command", "hull"}, {"set", set_json(h.hull)}, {"complete", h.complete}, {"iterations", h.iterations}};
  std::string text = h.hull.format() + "\n";
  if (!h.complete) text += "  partial: stopped after " + std::to_string(h.iterations) + " rounds\n";
  return {text, j.dump(), 0};
}

Report cmd_family(const Instance& inst, const std::vector<std::string>& args) {
  arity(args, 2, 2, "family D");
  const auto fam = family_of(set_ref(inst, args[1]));
  Json list = Json::array();
  std::string text;
  for (const auto& t : fam) {
    list.push_back(endo_json(t));
    text += t.format() + "\n";
  }
  text += std::to_string(fam.size()) + " endomorphisms\n";
  Json j = {{"command", "family"}, {"count", fam.size()}, {"family", list}};
  return {text, j.dump(), 0};
}

Report cmd_recursion(const Instance& inst, const std::vector<std::string>& args) {
  arity(args, 3, 3, "recursion T n");
  const Endomorphism t = endo_ref(inst, args[1]);
  const unsigned n = count_arg(args[2], "n");
  Json steps = Json::array();
  std::string text;
  for (unsigned k = 1; k <= n; ++k) {
    const Endomorphism tk = midpoint_recursion(t, k);
    steps.push_back(endo_json(tk));
    text += "T_" + std::to_string(k) + " = " + tk.format() + "\n";
  }
  Json j = {{"command", "recursion"}, {"steps", steps}};
  return {text, j.dump(), 0};
}

Report cmd_search(const Instance& inst, const std::vector<std::string>& args) {
  arity(args, 2, 3, "search PROP [finite-exhaustive|finite|int|dyadic]");
  const PropertyId p = property_arg(args[1]);
  GeneratorParams gen;
  gen.n0 = inst.params.n0;
  if (args.size() == 3) {
    auto k = parse_generator_kind(args[2]);
    if (!k) usage("unknown generator '" + args[2] + "'");
    gen.kind = *k;
  }
  if (gen.kind == GeneratorKind::FiniteExhaustive && inst.group.is_finite()) {
    gen.group = inst.group;
    gen.metric = inst.metric;
  }
  const Verdict v = counterexample_search(p, gen, inst.params.budget, inst.params.seed);
  return verdict_report(inst.group, std::string(property_name(p)), v);
}

}  // namespace

int exit_code_for(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Proved: return 0;
    case VerdictStatus::Refuted: return 1;
    case VerdictStatus::Unfalsified: return 2;
    case VerdictStatus::HypothesisFailed: return 3;
  }
  return 4;
}

int exit_code_for(ErrorCode e) {
  switch (e) {
    case ErrorCode::RhoNotCertifiedBelowOne:
    case ErrorCode::NotComplete:
    case ErrorCode::SNotInvertible:
    case ErrorCode::NotDivisible:
    case ErrorCode::GeneratorExhausted:
      return 3;
    case ErrorCode::NoConvergenceWithinBudget:
      return 2;
    default:
      return 4;
  }
}

std::string verdict_json(const GroupSpec& g, std::string_view property, const Verdict& v) {
  Json j;
  j["property"] = std::string(property);
  j["status"] = std::string(status_name(v.status));
  if (!v.witness.empty()) {
    Json w = Json::object();
    for (const auto& item : v.witness) {
      std::string key = item.label;
      for (int k = 2; w.contains(key); ++k) key = item.label + "#" + std::to_string(k);
      w[key] = witness_value(g, item);
    }
    j["witness"] = w;
  }
  if (v.status == VerdictStatus::Unfalsified) j["samples"] = v.samples;
  if (v.status == VerdictStatus::HypothesisFailed) j["hypothesis_failed"] = v.hypothesis;
  if (!v.note.empty()) j["note"] = v.note;
  return j.dump();
}

std::string error_json(const Error& e) {
  Json j = {{"error", std::string(error_name(e.code()))}, {"message", e.what()}};
  if (e.cause()) j["cause"] = std::string(error_name(*e.cause()));
  return j.dump();
}

Report run_command(const Instance& inst, const std::vector<std::string>& args) {
  if (args.empty()) usage("missing subcommand");
  const std::string& cmd = args[0];
  const GroupSpec& g = inst.group;
  const MetricSpec& m = inst.metric;
  if (cmd == "norm") {
    arity(args, 2, 2, "norm X");
    return value_report(g, cmd, norm(g, m, parse_element_literal(g, args[1])));
  }
  if (cmd == "endo-norm") {
    arity(args, 2, 2, "endo-norm T");
    return value_report(g, cmd, op_norm(endo_ref(inst, args[1]), m));
  }
  if (cmd == "mu") {
    arity(args, 2, 2, "mu T");
    return value_report(g, cmd, injectivity_measure(endo_ref(inst, args[1]), m));
  }
  if (cmd == "rho") return cmd_rho(inst, args);
  if (cmd == "invert") {
    arity(args, 2, 3, "invert T | invert S T");
    const unsigned terms = inst.params.max_iter;
    if (args.size() == 2) return endo_report(cmd, neumann_inverse(endo_ref(inst, args[1]), m, terms, inst.params.horizon));
    return endo_report(cmd, shifted_inverse(endo_ref(inst, args[1]), endo_ref(inst, args[2]), m, terms,
                                            inst.params.horizon));
  }
  if (cmd == "hull") return cmd_hull(inst, args);
  if (cmd == "is-convex") {
    arity(args, 2, SIZE_MAX, "is-convex D [T...]");
    return verdict_report(g, cmd, is_family_convex(set_ref(inst, args[1]), family_args(inst, args, 2)));
  }
  if (cmd == "is-n-convex") {
    arity(args, 3, 3, "is-n-convex D n");
    return verdict_report(g, cmd, is_n_convex(set_ref(inst, args[1]), count_arg(args[2], "n")));
  }
  if (cmd == "family") return cmd_family(inst, args);
  if (cmd == "recursion") return cmd_recursion(inst, args);
  if (cmd == "verify") {
    arity(args, 2, 2, "verify PROP");
    const PropertyId p = property_arg(args[1]);
    return verdict_report(g, std::string(property_name(p)), verify(p, inst));
  }
  if (cmd == "search") return cmd_search(inst, args);
  usage("unknown subcommand '" + cmd + "'");
}

}  // namespace gconv::cli

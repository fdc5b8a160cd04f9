#include "session.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace gconv::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void structural(const std::string& path, const std::string& msg) {
  throw ParseError(0, (path.empty() ? std::string("/") : path) + ": " + msg);
}

// Runs a constructor and turns a module rejection into ValidationError.
template <class F>
auto validated(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, e.code(), path + ": " + e.what());
  }
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) structural(path, std::string("missing \"") + key + "\"");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) structural(path, "unknown key \"" + it.key() + "\"");
  }
}

Rational scalar_of(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) structural(path, "expected a scalar (string or integer)");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const Error& e) {
    structural(path, e.what());
  }
}

unsigned long count_of(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) structural(path, "expected a nonnegative integer");
  return j.get<unsigned long>();
}

std::vector<Rational> scalars_of(const Json& j, const std::string& path) {
  if (!j.is_array()) structural(path, "expected an array of scalars");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_of(j[i], path + "/" + std::to_string(i)));
  return out;
}

Element element_of(const GroupSpec& g, const Json& j, const std::string& path) {
  std::vector<Rational> c = j.is_array() ? scalars_of(j, path) : std::vector<Rational>{scalar_of(j, path)};
  if (c.size() != g.dim()) {
    throw Error(ErrorCode::ValidationError, ErrorCode::DimensionMismatch,
                path + ": expected " + std::to_string(g.dim()) + " coordinates");
  }
  return validated(path, [&] {
    Element x(std::move(c));
    g.require_member(x);
    return x;
  });
}

GroupSpec group_of(const Json& j) {
  const std::string path = "/group";
  if (!j.is_object()) structural(path, "expected an object");
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) structural(path + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "finite") {
    only_keys(j, {"kind", "moduli"}, path);
    const Json& mj = field(j, "moduli", path);
    if (!mj.is_array() || mj.empty()) structural(path + "/moduli", "expected a nonempty array");
    std::vector<Integer> moduli;
    for (std::size_t i = 0; i < mj.size(); ++i) moduli.emplace_back(count_of(mj[i], path + "/moduli/" + std::to_string(i)));
    return validated(path, [&] { return GroupSpec::finite(moduli); });
  }
  if (k == "int" || k == "dyadic") {
    only_keys(j, {"kind", "dim"}, path);
    const unsigned long dim = count_of(field(j, "dim", path), path + "/dim");
    return validated(path, [&] { return k == "int" ? GroupSpec::int_lattice(dim) : GroupSpec::dyadic_lattice(dim); });
  }
  structural(path + "/kind", "expected \"finite\", \"int\" or \"dyadic\"");
}

MetricSpec metric_of(const GroupSpec& g, const Json* j) {
  const std::string path = "/metric";
  if (!j) return MetricSpec::unit(g.is_finite() ? MetricKind::WeightedCyclic : MetricKind::WeightedLinf, g.dim());
  if (!j->is_object()) structural(path, "expected an object");
  const Json& kind = field(*j, "kind", path);
  if (!kind.is_string()) structural(path + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  MetricSpec m = MetricSpec::unit(MetricKind::WeightedCyclic, 1);
  if (k == "table") {
    only_keys(*j, {"kind", "entries"}, path);
    const Json& ej = field(*j, "entries", path);
    if (!ej.is_array()) structural(path + "/entries", "expected an array of [element, value] pairs");
    std::vector<std::pair<Element, Rational>> entries;
    for (std::size_t i = 0; i < ej.size(); ++i) {
      const std::string p = path + "/entries/" + std::to_string(i);
      if (!ej[i].is_array() || ej[i].size() != 2) structural(p, "expected [element, value]");
      entries.emplace_back(element_of(g, ej[i][0], p + "/0"), scalar_of(ej[i][1], p + "/1"));
    }
    m = validated(path, [&] { return MetricSpec::table(std::move(entries)); });
  } else if (k == "cyclic" || k == "linf" || k == "l1") {
    only_keys(*j, {"kind", "weights"}, path);
    auto it = j->find("weights");
    std::vector<Rational> w = it == j->end() ? std::vector<Rational>(g.dim(), Rational(1)) : scalars_of(*it, path + "/weights");
    m = validated(path, [&] {
      if (k == "cyclic") return MetricSpec::weighted_cyclic(std::move(w));
      if (k == "linf") return MetricSpec::weighted_linf(std::move(w));
      return MetricSpec::weighted_l1(std::move(w));
    });
  } else {
    structural(path + "/kind", "expected \"cyclic\", \"linf\", \"l1\" or \"table\"");
  }
  validated(path, [&] {
    require_compatible(g, m);
    const Verdict v = validate_metric(g, m);
    if (!v.is_proved()) {
      std::string msg = "not a norm";
      for (const auto& w : v.witness) msg += "; " + format_witness(g, w);
      throw Error(ErrorCode::InvalidMetric, msg);
    }
    return 0;
  });
  return m;
}

Endomorphism endo_of(const GroupSpec& g, const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != g.dim()) {
    structural(path, "expected a " + std::to_string(g.dim()) + "x" + std::to_string(g.dim()) + " matrix");
  }
  Matrix a(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const auto row = scalars_of(j[i], path + "/" + std::to_string(i));
    if (row.size() != g.dim()) structural(path + "/" + std::to_string(i), "wrong row length");
    for (std::size_t c = 0; c < g.dim(); ++c) a(i, c) = row[c];
  }
  return validated(path, [&] { return Endomorphism::make(g, std::move(a)); });
}

PointSet set_of(const GroupSpec& g, const Json& j, const std::string& path) {
  if (!j.is_object()) structural(path, "expected an object");
  const Json& kind = field(j, "kind", path);
  if (kind == "finite") {
    only_keys(j, {"kind", "elements"}, path);
    const Json& ej = field(j, "elements", path);
    if (!ej.is_array()) structural(path + "/elements", "expected an array");
    std::vector<Element> elems;
    for (std::size_t i = 0; i < ej.size(); ++i) elems.push_back(element_of(g, ej[i], path + "/elements/" + std::to_string(i)));
    return validated(path, [&] { return PointSet::finite(g, std::move(elems)); });
  }
  if (kind == "box") {
    only_keys(j, {"kind", "lo", "hi"}, path);
    Element lo = element_of(g, field(j, "lo", path), path + "/lo");
    Element hi = element_of(g, field(j, "hi", path), path + "/hi");
    return validated(path, [&] { return PointSet::box(g, std::move(lo), std::move(hi)); });
  }
  structural(path + "/kind", "expected \"finite\" or \"box\"");
}

void params_of(Instance& inst, const Json& j) {
  const std::string path = "/params";
  if (!j.is_object()) structural(path, "expected an object");
  only_keys(j, {"n0", "horizon", "budget", "seed", "max_iter", "n_max", "family"}, path);
  Params& p = inst.params;
  auto small = [&](const char* key, unsigned& out, unsigned min) {
    if (auto it = j.find(key); it != j.end()) {
      const unsigned long v = count_of(*it, path + "/" + key);
      if (v < min || v > 1'000'000) structural(path + "/" + key, "out of range");
      out = static_cast<unsigned>(v);
    }
  };
  small("n0", p.n0, 1);
  small("horizon", p.horizon, 1);
  small("max_iter", p.max_iter, 1);
  small("n_max", p.n_max, 1);
  if (auto it = j.find("budget"); it != j.end()) {
    p.budget = count_of(*it, path + "/budget");
    if (p.budget < 1) structural(path + "/budget", "must be >= 1");
  }
  if (auto it = j.find("seed"); it != j.end()) p.seed = count_of(*it, path + "/seed");
  if (auto it = j.find("family"); it != j.end()) {
    if (!it->is_array()) structural(path + "/family", "expected an array of endomorphism names");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& n = (*it)[i];
      const std::string p2 = path + "/family/" + std::to_string(i);
      if (!n.is_string()) structural(p2, "expected a name");
      if (!inst.find_endo(n.get<std::string>())) structural(p2, "undefined endomorphism '" + n.get<std::string>() + "'");
      inst.family.push_back(n.get<std::string>());
    }
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Json scalar_json(const GroupSpec& g, const Rational& q) { return g.format_scalar(q); }

Json element_json(const GroupSpec& g, const Element& x) {
  Json a = Json::array();
  for (const auto& c : x.coords) a.push_back(scalar_json(g, c));
  return a;
}

}  // namespace

Instance parse_session(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line 3, column 5: ".
    if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(line_of(text, e.byte ? e.byte - 1 : 0), msg);
  }
  if (!root.is_object()) structural("", "expected an object");
  only_keys(root, {"group", "metric", "endos", "sets", "params"}, "");
  const GroupSpec g = group_of(field(root, "group", ""));
  auto mit = root.find("metric");
  Instance inst(g, metric_of(g, mit == root.end() ? nullptr : &*mit));
  if (auto it = root.find("endos"); it != root.end()) {
    if (!it->is_object()) structural("/endos", "expected an object of named matrices");
    for (auto e = it->begin(); e != it->end(); ++e) {
      const std::string path = "/endos/" + e.key();
      inst.add_endo(e.key(), endo_of(g, e.value(), path));
    }
  }
  if (auto it = root.find("sets"); it != root.end()) {
    if (!it->is_object()) structural("/sets", "expected an object of named sets");
    for (auto s = it->begin(); s != it->end(); ++s) inst.add_set(s.key(), set_of(g, s.value(), "/sets/" + s.key()));
  }
  if (auto it = root.find("params"); it != root.end()) params_of(inst, *it);
  return inst;
}

Instance load_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read session file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_session(ss.str());
}

std::string print_session(const Instance& inst) {
  const GroupSpec& g = inst.group;
  Json root;
  Json gj;
  switch (g.kind()) {
    case GroupKind::Finite: {
      gj["kind"] = "finite";
      Json mods = Json::array();
      for (const auto& m : g.moduli()) mods.push_back(m.get_ui());
      gj["moduli"] = mods;
      break;
    }
    case GroupKind::IntLattice: gj = {{"kind", "int"}, {"dim", g.dim()}}; break;
    case GroupKind::DyadicLattice: gj = {{"kind", "dyadic"}, {"dim", g.dim()}}; break;
  }
  root["group"] = gj;
  const MetricSpec& m = inst.metric;
  Json mj;
  mj["kind"] = std::string(metric_kind_name(m.kind()));
  if (m.kind() == MetricKind::Table) {
    Json entries = Json::array();
    for (const auto& [x, v] : m.table_entries()) entries.push_back(Json::array({element_json(g, x), format_rational(v)}));
    mj["entries"] = entries;
  } else {
    Json w = Json::array();
    for (const auto& x : m.weights()) w.push_back(format_rational(x));
    mj["weights"] = w;
  }
  root["metric"] = mj;
  Json endos = Json::object();
  for (const auto& [name, t] : inst.endos) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < g.dim(); ++j) row.push_back(scalar_json(g, t.matrix()(i, j)));
      rows.push_back(row);
    }
    endos[name] = rows;
  }
  root["endos"] = endos;
  Json sets = Json::object();
  for (const auto& [name, s] : inst.sets) {
    Json sj;
    if (s.is_box()) {
      sj = {{"kind", "box"}, {"lo", element_json(g, s.lo())}, {"hi", element_json(g, s.hi())}};
    } else {
      Json elems = Json::array();
      for (const auto& x : s.elements()) elems.push_back(element_json(g, x));
      sj = {{"kind", "finite"}, {"elements", elems}};
    }
    sets[name] = sj;
  }
  root["sets"] = sets;
  const Params& p = inst.params;
  Json pj = {{"n0", p.n0},         {"horizon", p.horizon}, {"budget", p.budget},
             {"seed", p.seed},     {"max_iter", p.max_iter}, {"n_max", p.n_max}};
  if (!inst.family.empty()) pj["family"] = inst.family;
  root["params"] = pj;
  return root.dump(2) + "\n";
}

Element parse_element_literal(const GroupSpec& g, std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    try {
      coords.push_back(parse_scalar(part));
    } catch (const Error& e) {
      throw ParseError(0, std::string("element literal: ") + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (coords.size() != g.dim()) {
    throw ParseError(0, "element literal needs " + std::to_string(g.dim()) + " coordinates");
  }
  return validated("element", [&] { return g.make_element(std::move(coords)); });
}

void set_param(Instance& inst, std::string_view name, std::string_view value) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError(0, "parameter " + std::string(name) + ": expected a nonnegative integer");
  }
  Params& p = inst.params;
  auto small = [&](unsigned& out, unsigned long long min) {
    if (v < min || v > 1'000'000) throw ParseError(0, "parameter " + std::string(name) + " out of range");
    out = static_cast<unsigned>(v);
  };
  if (name == "n0") {
    small(p.n0, 1);
  } else if (name == "horizon") {
    small(p.horizon, 1);
  } else if (name == "max_iter") {
    small(p.max_iter, 1);
  } else if (name == "n_max") {
    small(p.n_max, 1);
  } else if (name == "budget") {
    if (v < 1) throw ParseError(0, "budget must be >= 1");
    p.budget = v;
  } else if (name == "seed") {
    p.seed = v;
  } else {
    throw ParseError(0, "unknown parameter '" + std::string(name) + "'");
  }
}

bool same_session(const Instance& a, const Instance& b) {
  return a.group == b.group && a.metric == b.metric && a.endos == b.endos && a.sets == b.sets &&
         a.params == b.params && a.family == b.family;
}

}  // namespace gconv::cli

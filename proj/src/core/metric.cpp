#include "metric.hpp"

#include <algorithm>

#include "error.hpp"
#include "operator.hpp"

namespace gconv {

namespace {

void require_positive(const std::vector<Rational>& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidMetric, "metric needs at least one weight");
  for (const auto& v : w) {
    if (v <= 0) throw Error(ErrorCode::InvalidMetric, "metric weights must be positive, got " + v.get_str());
  }
}

}  // namespace

MetricSpec MetricSpec::weighted_cyclic(std::vector<Rational> weights) {
  require_positive(weights);
  return MetricSpec(MetricKind::WeightedCyclic, std::move(weights));
}

MetricSpec MetricSpec::weighted_linf(std::vector<Rational> weights) {
  require_positive(weights);
  return MetricSpec(MetricKind::WeightedLinf, std::move(weights));
}

MetricSpec MetricSpec::weighted_l1(std::vector<Rational> weights) {
  require_positive(weights);
  return MetricSpec(MetricKind::WeightedL1, std::move(weights));
}

MetricSpec MetricSpec::unit(MetricKind kind, std::size_t dim) {
  std::vector<Rational> w(dim, Rational(1));
  switch (kind) {
    case MetricKind::WeightedCyclic: return weighted_cyclic(std::move(w));
    case MetricKind::WeightedLinf: return weighted_linf(std::move(w));
    case MetricKind::WeightedL1: return weighted_l1(std::move(w));
    case MetricKind::Table: break;
  }
  throw Error(ErrorCode::InvalidMetric, "a table metric has no unit form");
}

MetricSpec MetricSpec::table(std::vector<std::pair<Element, Rational>> entries) {
  MetricSpec m(MetricKind::Table, {});
  for (auto& [x, v] : entries) {
    if (!m.table_.emplace(x, v).second) {
      throw Error(ErrorCode::InvalidMetric, "duplicate table entry");
    }
  }
  return m;
}

Rational MetricSpec::max_weight() const {
  if (weights_.empty()) return Rational(1);
  return *std::max_element(weights_.begin(), weights_.end(),
                           [](const Rational& a, const Rational& b) { return a < b; });
}

bool operator==(const MetricSpec& a, const MetricSpec& b) {
  if (a.kind_ != b.kind_ || a.weights_.size() != b.weights_.size() || a.table_.size() != b.table_.size())
    return false;
  for (std::size_t i = 0; i < a.weights_.size(); ++i)
    if (a.weights_[i] != b.weights_[i]) return false;
  auto it = b.table_.begin();
  for (const auto& [x, v] : a.table_) {
    if (!(x == it->first) || v != it->second) return false;
    ++it;
  }
  return true;
}

std::string_view metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::WeightedCyclic: return "cyclic";
    case MetricKind::WeightedLinf: return "linf";
    case MetricKind::WeightedL1: return "l1";
    case MetricKind::Table: return "table";
  }
  return "?";
}

void require_compatible(const GroupSpec& g, const MetricSpec& m) {
  auto mismatch = [&](const std::string& why) {
    return Error(ErrorCode::MetricGroupMismatch,
                 std::string(metric_kind_name(m.kind())) + " metric on " + g.describe() + ": " + why);
  };
  switch (m.kind()) {
    case MetricKind::WeightedCyclic:
      if (!g.is_finite()) throw mismatch("cyclic weights need a finite group");
      if (m.weights().size() != g.dim()) throw mismatch("one weight per cyclic factor required");
      return;
    case MetricKind::WeightedLinf:
    case MetricKind::WeightedL1:
      if (g.is_finite()) throw mismatch("l1/linf weights need a lattice group");
      if (m.weights().size() != g.dim()) throw mismatch("one weight per coordinate required");
      return;
    case MetricKind::Table: {
      if (!g.is_finite()) throw mismatch("table metrics need a finite group");
      std::size_t n = g.enumerable_order();
      if (m.table_entries().size() != n) throw mismatch("table must list every element exactly once");
      for (const auto& [x, v] : m.table_entries()) {
        if (!g.contains(x)) throw mismatch(g.format_element(x) + " is not an element");
      }
      return;
    }
  }
}

Rational norm(const GroupSpec& g, const MetricSpec& m, const Element& x) {
  g.require_member(x);
  switch (m.kind()) {
    case MetricKind::WeightedCyclic: {
      if (!g.is_finite() || m.weights().size() != g.dim()) require_compatible(g, m);
      Rational s;
      for (std::size_t i = 0; i < g.dim(); ++i) {
        Rational r = x[i];
        Rational other = Rational(g.moduli()[i]) - r;
        s += m.weights()[i] * (r < other ? r : other);
      }
      return s;
    }
    case MetricKind::WeightedLinf: {
      if (g.is_finite() || m.weights().size() != g.dim()) require_compatible(g, m);
      Rational s;
      for (std::size_t i = 0; i < g.dim(); ++i) {
        Rational v = m.weights()[i] * abs(x[i]);
        if (v > s) s = v;
      }
      return s;
    }
    case MetricKind::WeightedL1: {
      if (g.is_finite() || m.weights().size() != g.dim()) require_compatible(g, m);
      Rational s;
      for (std::size_t i = 0; i < g.dim(); ++i) s += m.weights()[i] * abs(x[i]);
      return s;
    }
    case MetricKind::Table: {
      if (!g.is_finite()) require_compatible(g, m);
      auto it = m.table_entries().find(x);
      if (it == m.table_entries().end()) {
        throw Error(ErrorCode::MetricGroupMismatch, "table has no value for " + g.format_element(x));
      }
      return it->second;
    }
  }
  throw Error(ErrorCode::InvalidMetric, "unknown metric kind");
}

Rational distance(const GroupSpec& g, const MetricSpec& m, const Element& x, const Element& y) {
  return norm(g, m, g.sub(x, y));
}

Verdict validate_metric(const GroupSpec& g, const MetricSpec& m) {
  if (m.kind() == MetricKind::Table && !g.is_finite()) {
    throw Error(ErrorCode::UnsupportedCombination, "table metric on infinite group " + g.describe());
  }
  require_compatible(g, m);
  if (!g.is_finite()) {
    return Verdict::proved("weighted l1/linf norms with positive weights satisfy the axioms");
  }
  const auto xs = g.elements();
  std::vector<Rational> values;
  values.reserve(xs.size());
  for (const auto& x : xs) values.push_back(norm(g, m, x));
  const Element zero = g.zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool is_zero = xs[i] == zero;
    if (values[i] < 0 || (values[i] == 0) != is_zero) {
      return Verdict::refuted({{"x", xs[i]}, {"norm(x)", values[i]}}, "positive definiteness fails");
    }
    const Rational& neg_value = values[g.index_of(g.neg(xs[i]))];
    if (neg_value != values[i]) {
      return Verdict::refuted({{"x", xs[i]}, {"norm(x)", values[i]}, {"norm(-x)", neg_value}},
                              "evenness fails");
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      Element s = g.add(xs[i], xs[j]);
      const Rational& ns = values[g.index_of(s)];
      if (ns > values[i] + values[j]) {
        return Verdict::refuted({{"x", xs[i]}, {"y", xs[j]}, {"x+y", s}, {"norm(x+y)", ns},
                                 {"norm(x)+norm(y)", Rational(values[i] + values[j])}},
                                "subadditivity fails");
      }
    }
  Verdict v = Verdict::proved("exhaustive over " + std::to_string(xs.size() * xs.size()) + " pairs");
  v.samples = xs.size() * xs.size();
  return v;
}

Rational norm_of_n(const GroupSpec& g, const MetricSpec& m, const Integer& n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  return op_norm(Endomorphism::pi(g, n), m);
}

Rational mu_of_n(const GroupSpec& g, const MetricSpec& m, const Integer& n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  return injectivity_measure(Endomorphism::pi(g, n), m);
}

}  // namespace gconv

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "group.hpp"
#include "scalar.hpp"
#include "verdict.hpp"

namespace gconv {

enum class MetricKind { WeightedCyclic, WeightedLinf, WeightedL1, Table };

// A translation-invariant metric given by its d-norm ||x|| = d(x, 0).
//   WeightedCyclic  sum_i w_i * min(x_i, m_i - x_i)   (finite groups)
//   WeightedLinf    max_i w_i * |x_i|                 (lattices)
//   WeightedL1      sum_i w_i * |x_i|                 (lattices)
//   Table           explicit value per element        (finite groups)
class MetricSpec {
 public:
  static MetricSpec weighted_cyclic(std::vector<Rational> weights);
  static MetricSpec weighted_linf(std::vector<Rational> weights);
  static MetricSpec weighted_l1(std::vector<Rational> weights);
  static MetricSpec unit(MetricKind kind, std::size_t dim);
  static MetricSpec table(std::vector<std::pair<Element, Rational>> entries);

  MetricKind kind() const { return kind_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::map<Element, Rational>& table_entries() const { return table_; }
  Rational max_weight() const;

  friend bool operator==(const MetricSpec& a, const MetricSpec& b);

 private:
  MetricSpec(MetricKind kind, std::vector<Rational> w) : kind_(kind), weights_(std::move(w)) {}

  MetricKind kind_;
  std::vector<Rational> weights_;
  std::map<Element, Rational> table_;
};

std::string_view metric_kind_name(MetricKind k);

// Throws MetricGroupMismatch when the metric family does not fit the group
// (wrong weight count, cyclic weights on a lattice, incomplete table, ...).
void require_compatible(const GroupSpec& g, const MetricSpec& m);

Rational norm(const GroupSpec& g, const MetricSpec& m, const Element& x);
Rational distance(const GroupSpec& g, const MetricSpec& m, const Element& x, const Element& y);

// Finite groups: exhaustive scan of positive definiteness, evenness and
// subadditivity. Weighted l1/linf on lattices hold by construction.
// Table on a lattice throws UnsupportedCombination.
Verdict validate_metric(const GroupSpec& g, const MetricSpec& m);

// ||n||* = sup ||n.x|| / ||x|| and mu(n) = inf ||n.x|| / ||x|| over x != 0.
Rational norm_of_n(const GroupSpec& g, const MetricSpec& m, const Integer& n);
Rational mu_of_n(const GroupSpec& g, const MetricSpec& m, const Integer& n);

}  // namespace gconv

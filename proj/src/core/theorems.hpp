#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "endo.hpp"
#include "metric.hpp"
#include "pointset.hpp"
#include "verdict.hpp"

namespace gconv {

enum class PropertyId {
  LEMMA_MU,
  COR_MU,
  LEMMA_NX,
  THM_RCT,
  LEMMA_SR,
  THM_NIT,
  COR_NIT,
  THM_0,
  LEM_TC,
  THM_P1,
  COR_1,
  THM_2,
  THM_NK,
  THM_NK_PLUS,
  COR_NKC1,
  COR_NKC2,
  EXA_TILDE,
};

std::string_view property_name(PropertyId p);
std::optional<PropertyId> parse_property(std::string_view name);
const std::vector<PropertyId>& all_properties();

struct Params {
  unsigned n0 = 2;
  unsigned horizon = 8;
  std::uint64_t budget = 1000;
  std::uint64_t seed = 0;
  unsigned max_iter = 16;
  // Upper bound for n in the checks quantified over n (the mu inequalities, n-convexity).
  unsigned n_max = 20;

  friend bool operator==(const Params&, const Params&) = default;
};

// Named endomorphisms and sets over one group. Checkers look their roles up by
// name ("T", "S", "D", "A", "B", "C") and fall back to declaration order.
struct Instance {
  Instance(GroupSpec g, MetricSpec m) : group(std::move(g)), metric(std::move(m)) {}

  GroupSpec group;
  MetricSpec metric;
  std::vector<std::pair<std::string, Endomorphism>> endos;
  std::vector<std::pair<std::string, PointSet>> sets;
  Params params;
  // Names of the endomorphisms forming the family; empty means all of them.
  std::vector<std::string> family;

  const Endomorphism* find_endo(std::string_view name) const;
  const PointSet* find_set(std::string_view name) const;
  void add_endo(std::string name, Endomorphism t);
  void add_set(std::string name, PointSet s);
};

Verdict verify(PropertyId p, const Instance& inst);

// Is {T_i} closed under (T, T1, T2) -> T o T1 + (I - T) o T2? Refuted carries
// the first combination that leaves the family, starting from the triple
// (F[0], F[1], F[2]).
Verdict check_family_closure(const std::vector<Endomorphism>& family);

enum class GeneratorKind { FiniteExhaustive, Finite, IntLattice, DyadicLattice };

struct GeneratorParams {
  GeneratorKind kind = GeneratorKind::DyadicLattice;
  // Exhaustive generator: the group (default Z12) and metric (default unit cyclic).
  std::optional<GroupSpec> group;
  std::optional<MetricSpec> metric;
  unsigned max_dim = 3;
  int entry_bound = 3;
  unsigned n0 = 2;
};

std::string_view generator_kind_name(GeneratorKind k);
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

// Instance i is drawn from seed + i. Returns the first Refuted, Proved when an
// exhaustive generator finishes within the budget, Unfalsified otherwise.
Verdict counterexample_search(PropertyId p, const GeneratorParams& gen, std::uint64_t budget,
                              std::uint64_t seed);

}  // namespace gconv

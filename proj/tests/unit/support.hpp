#pragma once

// Shared fixtures plus brute-force oracles. The oracles work on plain machine
// integers over Z_m and never call into the finite kernel or the library's
// enumeration routines, so agreement is an independent check.

#include <cstdint>
#include <initializer_list>
#include <set>
#include <vector>

#include "convexity.hpp"
#include "endo.hpp"
#include "error.hpp"
#include "group.hpp"
#include "metric.hpp"
#include "operator.hpp"
#include "pointset.hpp"
#include "scalar.hpp"
#include "theorems.hpp"

namespace test {

using namespace gconv;

inline Rational q(const char* s) { return parse_scalar(s); }

inline GroupSpec zmod(unsigned long m) { return GroupSpec::finite({Integer(m)}); }

inline MetricSpec cyclic1() { return MetricSpec::unit(MetricKind::WeightedCyclic, 1); }
inline MetricSpec linf(std::size_t dim) { return MetricSpec::unit(MetricKind::WeightedLinf, dim); }

inline Element el(const GroupSpec& g, std::initializer_list<Rational> c) {
  return g.make_element(std::vector<Rational>(c));
}

inline PointSet fin1(const GroupSpec& g, std::initializer_list<long> xs) {
  std::vector<Element> v;
  for (long x : xs) v.push_back(g.make_element({Rational(x)}));
  return PointSet::finite(g, std::move(v));
}

inline PointSet box1(const GroupSpec& g, const char* lo, const char* hi) {
  return PointSet::box(g, el(g, {q(lo)}), el(g, {q(hi)}));
}

inline Endomorphism pi(const GroupSpec& g, long k) { return Endomorphism::pi(g, Integer(k)); }

inline Endomorphism mat(const GroupSpec& g, std::size_t n, std::initializer_list<Rational> entries) {
  return Endomorphism::make(g, Matrix(n, n, std::vector<Rational>(entries)));
}

// ---- oracles on Z_m with the unit cyclic norm ------------------------------

inline long cyc(long x, long m) {
  x = ((x % m) + m) % m;
  return std::min(x, m - x);
}

// sup and inf of |a x| / |x| over x != 0.
inline Rational oracle_op_norm(long a, long m) {
  Rational best(0);
  for (long x = 1; x < m; ++x) best = std::max(best, ratio(cyc(a * x, m), cyc(x, m)));
  return best;
}

inline Rational oracle_mu(long a, long m) {
  Rational best(cyc(a, m));
  for (long x = 1; x < m; ++x) best = std::min(best, ratio(cyc(a * x, m), cyc(x, m)));
  return best;
}

// a^k mod m eventually cycles; rho is 0 iff the cycle is {0}.
inline int oracle_rho(long a, long m) {
  std::set<long> seen;
  long p = ((a % m) + m) % m;
  while (seen.insert(p).second) {
    if (p == 0) return 0;
    p = (p * a) % m;
  }
  return 1;
}

inline bool oracle_t_convex(const std::vector<long>& d, long t, long m) {
  std::set<long> in(d.begin(), d.end());
  for (long x : d)
    for (long y : d)
      if (!in.count((((t * x + (1 - t) * y) % m) + m) % m)) return false;
  return true;
}

inline std::vector<long> members(std::uint32_t mask, long m) {
  std::vector<long> out;
  for (long i = 0; i < m; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

// Intersection of every family-convex superset of s.
inline std::uint32_t oracle_hull(std::uint32_t s, const std::vector<long>& family, long m) {
  std::uint32_t hull = (std::uint32_t{1} << m) - 1;
  for (std::uint32_t sup = 0; sup < (std::uint32_t{1} << m); ++sup) {
    if ((sup & s) != s) continue;
    bool ok = true;
    for (long t : family) ok = ok && oracle_t_convex(members(sup, m), t, m);
    if (ok) hull &= sup;
  }
  return hull;
}

inline std::uint32_t mask_of(const PointSet& s) {
  std::uint32_t out = 0;
  for (const auto& x : s.elements()) out |= std::uint32_t{1} << x[0].get_num().get_ui();
  return out;
}

inline std::vector<long> oracle_family(const std::vector<long>& d, long m) {
  std::vector<long> out;
  for (long t = 0; t < m; ++t)
    if (oracle_t_convex(d, t, m)) out.push_back(t);
  return out;
}

}  // namespace test

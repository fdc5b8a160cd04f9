#include "theorems.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "convexity.hpp"
#include "error.hpp"
#include "finite_kernel.hpp"
#include "operator.hpp"

namespace gconv {

namespace {

constexpr std::array<std::pair<PropertyId, std::string_view>, 17> kNames{{
    {PropertyId::LEMMA_MU, "LEMMA_MU"},
    {PropertyId::COR_MU, "COR_MU"},
    {PropertyId::LEMMA_NX, "LEMMA_NX"},
    {PropertyId::THM_RCT, "THM_RCT"},
    {PropertyId::LEMMA_SR, "LEMMA_SR"},
    {PropertyId::THM_NIT, "THM_NIT"},
    {PropertyId::COR_NIT, "COR_NIT"},
    {PropertyId::THM_0, "THM_0"},
    {PropertyId::LEM_TC, "LEM_TC"},
    {PropertyId::THM_P1, "THM_P1"},
    {PropertyId::COR_1, "COR_1"},
    {PropertyId::THM_2, "THM_2"},
    {PropertyId::THM_NK, "THM_NK"},
    {PropertyId::THM_NK_PLUS, "THM_NK_PLUS"},
    {PropertyId::COR_NKC1, "COR_NKC1"},
    {PropertyId::COR_NKC2, "COR_NKC2"},
    {PropertyId::EXA_TILDE, "EXA_TILDE"},
}};

// Quantifying over a whole finite endomorphism ring is capped at this size.
constexpr std::size_t kRingCap = 4096;
// Finite groups up to this order have all their subsets enumerated.
constexpr std::size_t kSubsetOrder = 10;

using Table = FiniteKernel::Table;
using Mask = FiniteKernel::Mask;

WitnessItem violated(std::string what) { return {"violated", std::move(what)}; }

std::vector<Endomorphism> family_endos(const Instance& inst) {
  std::vector<Endomorphism> out;
  if (inst.family.empty()) {
    for (const auto& [name, t] : inst.endos) out.push_back(t);
    return out;
  }
  for (const auto& name : inst.family) {
    const Endomorphism* t = inst.find_endo(name);
    if (!t) throw Error(ErrorCode::InvalidArgument, "family member '" + name + "' is not defined");
    out.push_back(*t);
  }
  return out;
}

std::vector<Endomorphism> whole_ring(const GroupSpec& g) {
  if (endomorphism_count(g) > kRingCap) {
    throw Error(ErrorCode::TooLarge, "endomorphism ring of " + g.describe() + " is too large to enumerate");
  }
  return enumerate_endomorphisms(g);
}

// The endomorphisms a checker quantifies over: the family, else the whole
// ring of a finite group.
std::vector<Endomorphism> endo_pool(const Instance& inst) {
  auto f = family_endos(inst);
  if (!f.empty() || !inst.group.is_finite()) return f;
  return whole_ring(inst.group);
}

const Endomorphism& role_endo(const Instance& inst, std::string_view name, std::size_t pos) {
  if (const Endomorphism* t = inst.find_endo(name)) return *t;
  if (pos < inst.endos.size()) return inst.endos[pos].second;
  throw Error(ErrorCode::InvalidArgument, "instance has no endomorphism '" + std::string(name) + "'");
}

const PointSet& role_set(const Instance& inst, std::string_view name, std::size_t pos) {
  if (const PointSet* s = inst.find_set(name)) return *s;
  if (pos < inst.sets.size()) return inst.sets[pos].second;
  throw Error(ErrorCode::InvalidArgument, "instance has no set '" + std::string(name) + "'");
}

std::vector<PointSet> all_nonempty_subsets(const GroupSpec& g) {
  const auto elems = g.elements();
  std::vector<PointSet> out;
  const std::size_t n = elems.size();
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<Element> s;
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1) s.push_back(elems[i]);
    out.push_back(PointSet::finite(g, std::move(s)));
  }
  return out;
}

// Instance sets, else every nonempty subset of a small finite group, else X.
std::vector<PointSet> set_pool(const Instance& inst) {
  std::vector<PointSet> out;
  for (const auto& [name, s] : inst.sets) out.push_back(s);
  if (!out.empty() || !inst.group.is_finite()) return out;
  if (inst.group.enumerable_order() <= kSubsetOrder) return all_nonempty_subsets(inst.group);
  out.push_back(PointSet::whole(inst.group));
  return out;
}

// Compact sets in the instantiated topologies: explicit finite sets (a box
// of Z^n or a single-point box converts to one).
std::optional<PointSet> as_compact(const PointSet& d) {
  if (d.is_finite()) return d;
  if (d.degenerate() || d.group().kind() == GroupKind::IntLattice) return to_finite(d);
  return std::nullopt;
}

Endomorphism sum_of(const GroupSpec& g, const std::vector<Endomorphism>& ts) {
  Endomorphism s = Endomorphism::zero(g);
  for (const auto& t : ts) s = add(s, t);
  return s;
}

Verdict with_samples(Verdict v, std::uint64_t samples) {
  v.samples = samples;
  return v;
}

// ---------------------------------------------------------------- norms

struct Norms {
  Rational norm, mu;
};

std::vector<Norms> norms_of(const std::vector<Endomorphism>& pool, const MetricSpec& m) {
  std::vector<Norms> out;
  out.reserve(pool.size());
  for (const auto& t : pool) out.push_back({op_norm(t, m), injectivity_measure(t, m)});
  return out;
}

Verdict check_lemma_mu(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const MetricSpec& m = inst.metric;
  const auto pool = endo_pool(inst);
  const auto nm = norms_of(pool, m);
  std::uint64_t samples = 0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const Endomorphism ts = compose(pool[i], pool[j]);
      auto fail = [&](std::string what) {
        return Verdict::refuted({{"T", pool[i]}, {"S", pool[j]}, violated(std::move(what))});
      };
      if (nm[i].mu * nm[j].norm > op_norm(ts, m)) return fail("mu(T) ||S|| <= ||T o S||");
      if (nm[i].mu * nm[j].mu > injectivity_measure(ts, m)) return fail("mu(T) mu(S) <= mu(T o S)");
      if (abs(nm[i].mu - nm[j].mu) > operator_distance(pool[i], pool[j], m)) {
        return fail("|mu(T) - mu(S)| <= ||T - S||");
      }
      ++samples;
    }
  // The pi_n specialization for n, m <= n_max.
  const unsigned top = inst.params.n_max;
  std::map<unsigned, Norms> cache;
  auto of_n = [&](unsigned k) -> const Norms& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, Norms{norm_of_n(g, m, k), mu_of_n(g, m, k)}).first;
    return it->second;
  };
  for (unsigned a = 1; a <= top; ++a)
    for (unsigned b = 1; b <= top; ++b) {
      auto fail = [&](std::string what) {
        return Verdict::refuted({{"n", Rational(a)}, {"m", Rational(b)}, violated(std::move(what))});
      };
      const Norms& na = of_n(a);
      const Norms& nb = of_n(b);
      const Norms& nab = of_n(a * b);
      if (na.mu * nb.norm > nab.norm) return fail("mu(n) ||m|| <= ||nm||");
      if (na.mu * nb.mu > nab.mu) return fail("mu(n) mu(m) <= mu(nm)");
      if (abs(na.mu - nb.mu) > abs(Rational(a) - Rational(b))) return fail("|mu(n) - mu(m)| <= |n - m|");
      ++samples;
    }
  return with_samples(Verdict::proved("all pairs and pi_n for n, m <= " + std::to_string(top)), samples);
}

Verdict check_cor_mu(const Instance& inst) {
  const MetricSpec& m = inst.metric;
  const auto pool = endo_pool(inst);
  const auto nm = norms_of(pool, m);
  std::uint64_t samples = 0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      auto fail = [&](std::string what) {
        return Verdict::refuted({{"T", pool[i]}, {"S", pool[j]}, violated(std::move(what))});
      };
      if (nm[i].mu > 0 && nm[j].mu > 0 && injectivity_measure(compose(pool[i], pool[j]), m) <= 0) {
        return fail("mu(T) > 0 and mu(S) > 0 imply mu(T o S) > 0");
      }
      if (nm[i].mu > 0 && operator_distance(pool[i], pool[j], m) < nm[i].mu && nm[j].mu <= 0) {
        return fail("||T - S|| < mu(T) implies mu(S) > 0");
      }
      ++samples;
    }
  return with_samples(Verdict::proved("semigroup closure and openness over all pairs"), samples);
}

Verdict check_lemma_nx(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const MetricSpec& m = inst.metric;
  const auto pool = endo_pool(inst);
  const auto sets = set_pool(inst);
  std::uint64_t samples = 0, skipped = 0;
  for (const auto& t : pool) {
    const Rational nt = op_norm(t, m);
    const Rational mt = injectivity_measure(t, m);
    const bool closed_range = g.complete() || inverse(t).has_value();
    for (const auto& d : sets) {
      if (d.empty()) continue;
      std::optional<PointSet> exact, enclosing;
      try {
        exact = image(d, t);
        enclosing = exact;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedRepresentation) throw;
        try {
          enclosing = image_closure(d, t);
        } catch (const Error& e2) {
          if (e2.code() != ErrorCode::UnsupportedRepresentation) throw;
        }
      }
      if (!enclosing) {
        ++skipped;
        continue;
      }
      auto fail = [&](std::string what) {
        return Verdict::refuted({{"T", t}, {"D", d.format()}, violated(std::move(what))});
      };
      if (diameter(*enclosing, m) > nt * diameter(d, m)) return fail("diam T(D) <= ||T|| diam D");
      if (d.is_finite() && !(exact && exact->is_finite())) return fail("T maps compact sets to compact sets");
      if (mt > 0 && closed_range && t.is_diagonal() && !exact) return fail("T maps closed sets to closed sets");
      ++samples;
    }
  }
  std::string note = "bounded, compact and closed images";
  if (skipped) note += "; " + std::to_string(skipped) + " images not representable";
  return with_samples(Verdict::proved(std::move(note)), samples);
}

// ---------------------------------------------------------------- RCT

struct Piece {
  Element lo, hi;
};

std::vector<Piece> pieces_of_sum(const PointSet& x, const PointSet& c) {
  const GroupSpec& g = x.group();
  std::vector<Piece> out;
  if (x.is_finite() && c.is_finite()) {
    const PointSet sum = sumset(x, c);
    for (const auto& z : sum.elements()) out.push_back({z, z});
  } else if (x.is_box() && c.is_box()) {
    out.push_back({g.add(x.lo(), c.lo()), g.add(x.hi(), c.hi())});
  } else if (x.is_finite()) {
    for (const auto& p : x.elements()) out.push_back({g.add(p, c.lo()), g.add(p, c.hi())});
  } else {
    for (const auto& p : c.elements()) out.push_back({g.add(x.lo(), p), g.add(x.hi(), p)});
  }
  return out;
}

bool piece_within(const Piece& p, const Piece& q) {
  for (std::size_t i = 0; i < p.lo.size(); ++i)
    if (p.lo[i] < q.lo[i] || p.hi[i] > q.hi[i]) return false;
  return true;
}

// Whether a piece of A + C lies in the union of the pieces of B + C. Boxes
// (dyadic lattice only) must sit in one piece, or be swept in dimension 1.
bool covered(const Piece& p, const std::vector<Piece>& cover) {
  for (const auto& q : cover)
    if (piece_within(p, q)) return true;
  if (p.lo == p.hi || p.lo.size() != 1) {
    if (p.lo != p.hi) {
      throw Error(ErrorCode::UnsupportedRepresentation, "covering a box by a union of boxes in dimension > 1");
    }
    return false;
  }
  Rational cur = p.lo[0];
  bool started = false;
  while (true) {
    std::optional<Rational> best;
    for (const auto& q : cover) {
      const bool reaches = started ? q.lo[0] <= cur : q.lo[0] <= cur && cur <= q.hi[0];
      if (reaches && q.hi[0] >= cur && (!best || q.hi[0] > *best)) best = q.hi[0];
    }
    if (!best) return false;
    if (*best >= p.hi[0]) return true;
    if (started && *best == cur) return false;
    cur = *best;
    started = true;
  }
}

std::optional<Element> point_outside(const PointSet& a, const PointSet& b) {
  if (a.is_finite()) {
    for (const auto& x : a.elements())
      if (!b.contains(x)) return x;
    return std::nullopt;
  }
  if (!b.contains(a.lo())) return a.lo();
  if (!b.contains(a.hi())) return a.hi();
  const GroupSpec& g = a.group();
  for (unsigned e = 1; e <= 10; ++e) {
    const unsigned long steps = 1ul << e;
    for (unsigned long k = 1; k < steps; k += 2) {
      std::vector<Rational> c(g.dim());
      for (std::size_t i = 0; i < g.dim(); ++i)
        c[i] = a.lo()[i] + (a.hi()[i] - a.lo()[i]) * ratio(Integer(k), Integer(steps));
      Element x(std::move(c));
      if (!b.contains(x)) return x;
    }
  }
  return std::nullopt;
}

Verdict check_rct(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const unsigned n0 = inst.params.n0;
  auto lattice_view = [&](const PointSet& s) {
    return g.kind() == GroupKind::IntLattice && s.is_box() ? to_finite(s) : s;
  };
  const PointSet a = lattice_view(role_set(inst, "A", 0));
  const PointSet b = lattice_view(role_set(inst, "B", 1));
  const PointSet c = lattice_view(role_set(inst, "C", 2));
  const Rational mu0 = mu_of_n(g, inst.metric, n0);
  if (mu0 <= 1) return Verdict::hypothesis_failed("mu_d(n0) > 1", "mu_d(" + std::to_string(n0) + ") = " + g.format_scalar(mu0));
  // Finite sets and boxes are closed in every instantiated topology.
  if (!is_n_convex(b, n0).is_proved()) return Verdict::hypothesis_failed("B is n0-convex");
  // Both representations are bounded.
  if (c.empty()) return Verdict::hypothesis_failed("C bounded nonempty");
  if (!a.empty()) {
    const auto cover = pieces_of_sum(b, c);
    for (const auto& p : pieces_of_sum(a, c))
      if (!covered(p, cover)) return Verdict::hypothesis_failed("A + C subset of B + C");
  }
  if (auto x = point_outside(a, b)) {
    return Verdict::refuted({{"a", *x}}, "a point of A outside B");
  }
  return Verdict::proved("A is contained in B");
}

// ---------------------------------------------------------------- spectral

Verdict check_lemma_sr(const Instance& inst) {
  const MetricSpec& m = inst.metric;
  const unsigned h = inst.params.horizon;
  const auto pool = endo_pool(inst);
  std::vector<RhoBracket> rho;
  std::uint64_t samples = 0;
  for (const auto& t : pool) {
    RhoBracket r = spectral_radius(t, m, h);
    auto fail = [&](std::string what) { return Verdict::refuted({{"T", t}, violated(std::move(what))}); };
    if (r.lower > r.upper) return fail("rho bracket lower <= upper");
    if (injectivity_measure(t, m) > r.upper) return fail("mu(T) <= rho(T)");
    // upper is a minimum over powers that includes ||T||^1 itself.
    if (r.upper > op_norm(t, m)) return fail("rho(T) <= ||T||");
    rho.push_back(std::move(r));
    ++samples;
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (!commutes(pool[i], pool[j])) continue;
      auto fail = [&](std::string what) {
        return Verdict::refuted({{"T", pool[i]}, {"S", pool[j]}, violated(std::move(what))});
      };
      const RhoBracket sum = spectral_radius(add(pool[i], pool[j]), m, h);
      const RhoBracket prod = spectral_radius(compose(pool[i], pool[j]), m, h);
      if (sum.lower > rho[i].upper + rho[j].upper) return fail("rho(T + S) <= rho(T) + rho(S)");
      if (injectivity_measure(pool[i], m) * rho[j].lower > prod.upper) return fail("mu(T) rho(S) <= rho(T o S)");
      if (prod.lower > rho[i].upper * rho[j].upper) return fail("rho(T o S) <= rho(T) rho(S)");
      ++samples;
    }
  return with_samples(Verdict::proved("all commuting pairs"), samples);
}

Verdict check_nit(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const Endomorphism& t = role_endo(inst, "T", 0);
  if (!g.complete()) return Verdict::hypothesis_failed("X complete");
  const RhoBracket r = spectral_radius(t, inst.metric, inst.params.horizon);
  if (!r.certified_below_one()) {
    return Verdict::hypothesis_failed("rho_d(T) < 1", "certified upper bound " + g.format_scalar(r.upper));
  }
  Endomorphism s = Endomorphism::zero(g);
  try {
    s = neumann_inverse(t, inst.metric, static_cast<unsigned>(inst.params.budget), inst.params.horizon);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoConvergenceWithinBudget) throw;
    return Verdict::unfalsified(inst.params.budget, e.what());
  }
  const Endomorphism id = Endomorphism::identity(g);
  const Endomorphism one_minus = sub(id, t);
  if (compose(one_minus, s) != id || compose(s, one_minus) != id) {
    return Verdict::refuted({{"T", t}, {"sum", s}}, "the Neumann sum does not invert I - T");
  }
  Verdict v = Verdict::proved("(I - T) o sum = sum o (I - T) = I");
  v.witness.push_back({"(I-T)^-1", s});
  return v;
}

Verdict check_cor_nit(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const Endomorphism& s = role_endo(inst, "S", 0);
  const Endomorphism& t = role_endo(inst, "T", 1);
  if (!g.complete()) return Verdict::hypothesis_failed("X complete");
  const auto s_inv = inverse(s);
  if (!s_inv) return Verdict::hypothesis_failed("S invertible with bounded inverse");
  const unsigned h = inst.params.horizon;
  const RhoBracket r1 = spectral_radius(compose(t, *s_inv), inst.metric, h);
  const RhoBracket r2 = spectral_radius(compose(*s_inv, t), inst.metric, h);
  if (!r1.certified_below_one() && !r2.certified_below_one()) {
    return Verdict::hypothesis_failed("min(rho(T o S^-1), rho(S^-1 o T)) < 1");
  }
  Endomorphism r = Endomorphism::zero(g);
  try {
    r = shifted_inverse(s, t, inst.metric, static_cast<unsigned>(inst.params.budget), h);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoConvergenceWithinBudget) throw;
    return Verdict::unfalsified(inst.params.budget, e.what());
  }
  const Endomorphism id = Endomorphism::identity(g);
  const Endomorphism diff = sub(s, t);
  if (compose(diff, r) != id || compose(r, diff) != id) {
    return Verdict::refuted({{"S", s}, {"T", t}, {"candidate", r}}, "S - T is not inverted");
  }
  Verdict v = Verdict::proved("(S - T) o R = R o (S - T) = I");
  v.witness.push_back({"(S-T)^-1", r});
  return v;
}

// ---------------------------------------------------------------- convex sets

struct FiniteFamily {
  const FiniteKernel& k;
  std::vector<std::pair<Table, Table>> maps;  // T and I - T

  FiniteFamily(const FiniteKernel& kernel, const std::vector<Endomorphism>& family) : k(kernel) {
    for (const auto& t : family) {
      Table tt = k.table(t);
      Table ut(k.size());
      for (std::size_t y = 0; y < k.size(); ++y) ut[y] = k.sub(static_cast<FiniteKernel::Index>(y), tt[y]);
      maps.emplace_back(std::move(tt), std::move(ut));
    }
  }

  bool convex(const Mask& m) const {
    for (const auto& [t, u] : maps)
      if (!k.convex(m, t, u)) return false;
    return true;
  }
};

Verdict check_thm0_finite(const Instance& inst, const std::vector<Endomorphism>& family) {
  const GroupSpec& g = inst.group;
  FiniteKernel k(g);
  const FiniteFamily fam(k, family);
  const std::size_t n = k.size();
  auto fail = [&](const std::string& what, const Mask& a, const Mask* b = nullptr) {
    std::vector<WitnessItem> w{{"A", k.to_set(a).format()}};
    if (b) w.push_back({"B", k.to_set(*b).format()});
    w.push_back(violated(what));
    return Verdict::refuted(std::move(w));
  };
  std::uint64_t samples = 0;

  const Mask empty(n, 0), full(n, 1);
  if (!fam.convex(empty)) return fail("the empty set is convex", empty);
  if (!fam.convex(full)) return fail("X is convex", full);
  for (std::size_t x = 0; x < n; ++x) {
    Mask s(n, 0);
    s[x] = 1;
    if (!fam.convex(s)) return fail("singletons are convex", s);
  }

  std::vector<Mask> sets;
  if (n <= kSubsetOrder) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Mask m(n, 0);
      for (std::size_t i = 0; i < n; ++i) m[i] = bits >> i & 1;
      if (fam.convex(m)) sets.push_back(std::move(m));
    }
  } else {
    sets = {empty, full};
    for (const auto& [name, s] : inst.sets) {
      Mask m = k.mask(s);
      if (fam.convex(m)) sets.push_back(std::move(m));
    }
  }

  auto subset = [&](const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] && !b[i]) return false;
    return true;
  };
  std::vector<std::vector<FiniteKernel::Index>> members;
  for (const auto& m : sets) members.push_back(FiniteKernel::members(m));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i; j < sets.size(); ++j) {
      const Mask& a = sets[i];
      const Mask& b = sets[j];
      Mask r(n, 0);
      for (std::size_t x = 0; x < n; ++x) r[x] = a[x] && b[x];
      if (!fam.convex(r)) return fail("intersection is convex", a, &b);
      if (subset(a, b) || subset(b, a)) {
        for (std::size_t x = 0; x < n; ++x) r[x] = a[x] || b[x];
        if (!fam.convex(r)) return fail("chain union is convex", a, &b);
      }
      std::fill(r.begin(), r.end(), 0);
      for (auto x : members[i])
        for (auto y : members[j]) r[k.add(x, y)] = 1;
      if (!fam.convex(r)) return fail("A + B is convex", a, &b);
      ++samples;
    }

  // Maps commuting with every member of the family.
  std::vector<Table> commuting;
  for (const auto& a : whole_ring(g)) {
    Table at = k.table(a);
    bool ok = true;
    for (const auto& [t, u] : fam.maps) {
      for (std::size_t x = 0; x < n && ok; ++x) ok = t[at[x]] == at[t[x]];
      if (!ok) break;
    }
    if (ok) commuting.push_back(std::move(at));
  }
  for (const auto& at : commuting)
    for (const auto& d : sets) {
      Mask img(n, 0), pre(n, 0);
      for (std::size_t x = 0; x < n; ++x) {
        if (d[x]) img[at[x]] = 1;
        pre[x] = d[at[x]];
      }
      if (!fam.convex(img)) return fail("A(D) is convex", d);
      if (!fam.convex(pre)) return fail("A^-1(D) is convex", d);
      ++samples;
    }
  return with_samples(Verdict::proved(std::to_string(sets.size()) + " convex sets, " +
                                      std::to_string(commuting.size()) + " commuting maps"),
                      samples);
}

Verdict check_thm0_lattice(const Instance& inst, const std::vector<Endomorphism>& family) {
  const GroupSpec& g = inst.group;
  auto convex = [&](const PointSet& s) { return is_family_convex(s, family).is_proved(); };
  auto fail = [&](const std::string& what, const PointSet& a, const PointSet* b = nullptr) {
    std::vector<WitnessItem> w{{"A", a.format()}};
    if (b) w.push_back({"B", b->format()});
    w.push_back(violated(what));
    return Verdict::refuted(std::move(w));
  };
  std::uint64_t samples = 0, skipped = 0;
  std::vector<PointSet> sets;
  for (const auto& [name, s] : inst.sets)
    if (convex(s)) sets.push_back(s);

  const PointSet empty = PointSet::finite(g, {});
  if (!convex(empty)) return fail("the empty set is convex", empty);
  std::vector<Element> points{g.zero()};
  for (const auto& s : sets) points.push_back(s.is_box() ? s.lo() : s.elements().empty() ? g.zero() : s.elements()[0]);
  for (const auto& x : points) {
    const PointSet one = PointSet::singleton(g, x);
    if (!convex(one)) return fail("singletons are convex", one);
  }

  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i; j < sets.size(); ++j) {
      const PointSet& a = sets[i];
      const PointSet& b = sets[j];
      if (!convex(intersection(a, b))) return fail("intersection is convex", a, &b);
      if (is_subset(a, b) || is_subset(b, a)) {
        if (!convex(set_union(a, b))) return fail("chain union is convex", a, &b);
      }
      try {
        if (!convex(sumset(a, b))) return fail("A + B is convex", a, &b);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedMixedSum) throw;
        ++skipped;
      }
      ++samples;
    }

  for (const auto& [name, a] : inst.endos) {
    if (!std::all_of(family.begin(), family.end(), [&](const Endomorphism& t) { return commutes(a, t); })) continue;
    for (const auto& d : sets) {
      for (auto dir : {MapDirection::Image, MapDirection::Preimage}) {
        try {
          if (!convex(image_preimage(d, a, dir))) {
            return fail(dir == MapDirection::Image ? "A(D) is convex" : "A^-1(D) is convex", d);
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UnsupportedRepresentation && e.code() != ErrorCode::NotEnumerable) throw;
          ++skipped;
        }
      }
      ++samples;
    }
  }
  std::string note = std::to_string(sets.size()) + " convex instance sets";
  if (skipped) note += "; " + std::to_string(skipped) + " results not representable";
  return with_samples(Verdict::proved(std::move(note)), samples);
}

Verdict check_thm0(const Instance& inst) {
  const auto family = family_endos(inst);
  if (family.empty()) return Verdict::hypothesis_failed("family nonempty");
  return inst.group.is_finite() ? check_thm0_finite(inst, family) : check_thm0_lattice(inst, family);
}

Verdict check_lem_tc(const Instance& inst) {
  const auto pool = endo_pool(inst);
  std::uint64_t samples = 0;
  for (const auto& s : set_pool(inst)) {
    const auto d = as_compact(s);
    if (!d) continue;
    for (const auto& t : pool) {
      const bool direct = is_T_convex(*d, t).is_proved();
      const bool translated = is_T_convex_pointwise(*d, t).is_proved();
      if (direct != translated) {
        return Verdict::refuted({{"T", t}, {"D", d->format()}, violated("T-convex iff T(D - p) in D - p")});
      }
      ++samples;
    }
  }
  return with_samples(Verdict::proved("both tests agree"), samples);
}

// ---------------------------------------------------------------- T_D

// T_D over a finite group as image tables, with a membership index.
struct FiniteTD {
  FiniteKernel k;
  std::vector<Endomorphism> endos;
  std::vector<Table> tables;
  std::set<Table> index;

  explicit FiniteTD(const PointSet& d) : k(d.group()) {
    const Mask m = k.mask(d);
    for (auto& t : whole_ring(d.group())) {
      Table tt = k.table(t);
      Table ut(k.size());
      for (std::size_t y = 0; y < k.size(); ++y) ut[y] = k.sub(static_cast<FiniteKernel::Index>(y), tt[y]);
      if (!k.convex(m, tt, ut)) continue;
      index.insert(tt);
      tables.push_back(std::move(tt));
      endos.push_back(std::move(t));
    }
  }

  // T(u(x)) + (I - T)(v(x)).
  Table combine(const Table& t, const Table& u, const Table& v) const {
    Table out(k.size());
    for (std::size_t x = 0; x < k.size(); ++x) out[x] = k.add(t[u[x]], k.sub(v[x], t[v[x]]));
    return out;
  }
  bool contains(const Table& t) const { return index.count(t) > 0; }
};

Endomorphism p1_combination(const Endomorphism& t, const Endomorphism& t1, const Endomorphism& t2) {
  const Endomorphism id = Endomorphism::identity(t.group());
  return add(compose(t, t1), compose(sub(id, t), t2));
}

// The lattice stand-in for T_D: the instance family, plus 0 and I.
std::optional<std::vector<Endomorphism>> lattice_td(const Instance& inst, const PointSet& d, std::string* bad) {
  std::vector<Endomorphism> out{Endomorphism::zero(inst.group), Endomorphism::identity(inst.group)};
  for (std::size_t i = 0; i < inst.endos.size(); ++i) {
    const auto& [name, t] = inst.endos[i];
    if (!inst.family.empty() && std::find(inst.family.begin(), inst.family.end(), name) == inst.family.end()) continue;
    if (!is_T_convex(d, t).is_proved()) {
      *bad = name;
      return std::nullopt;
    }
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

Verdict check_p1(const Instance& inst) {
  const PointSet& d = role_set(inst, "D", 0);
  if (d.empty()) return Verdict::hypothesis_failed("D nonempty");
  std::uint64_t samples = 0;
  if (inst.group.is_finite()) {
    const FiniteTD td(d);
    const std::size_t n = td.tables.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (!td.contains(td.combine(td.tables[a], td.tables[b], td.tables[c]))) {
            const auto& e = td.endos;
            return Verdict::refuted({{"T", e[a]}, {"T1", e[b]}, {"T2", e[c]}, {"S", p1_combination(e[a], e[b], e[c])}},
                                    "T o T1 + (I - T) o T2 is not in T_D");
          }
          ++samples;
        }
    return with_samples(Verdict::proved("exhaustive over T_D^3, |T_D| = " + std::to_string(n)), samples);
  }
  std::string bad;
  const auto fam = lattice_td(inst, d, &bad);
  if (!fam) return Verdict::hypothesis_failed("family inside T_D", bad + " does not make D convex");
  for (const auto& t : *fam)
    for (const auto& t1 : *fam)
      for (const auto& t2 : *fam) {
        const Endomorphism s = p1_combination(t, t1, t2);
        if (!is_T_convex(d, s).is_proved()) {
          return Verdict::refuted({{"T", t}, {"T1", t1}, {"T2", t2}, {"S", s}}, "T o T1 + (I - T) o T2 is not in T_D");
        }
        ++samples;
      }
  return with_samples(Verdict::proved("all triples from the family"), samples);
}

Verdict check_cor1(const Instance& inst) {
  const PointSet& d = role_set(inst, "D", 0);
  if (d.empty()) return Verdict::hypothesis_failed("D nonempty");
  std::uint64_t samples = 0;
  if (inst.group.is_finite()) {
    const FiniteTD td(d);
    const Table id = td.k.identity_table();
    const Table zero(td.k.size(), 0);
    const std::size_t n = td.tables.size();
    const GroupSpec& g = inst.group;
    const Endomorphism eid = Endomorphism::identity(g);
    for (std::size_t a = 0; a < n; ++a) {
      const Table& t = td.tables[a];
      const Endomorphism& te = td.endos[a];
      if (!td.contains(td.combine(t, zero, id))) {
        return Verdict::refuted({{"T", te}, {"I-T", sub(eid, te)}}, "I - T is not in T_D");
      }
      for (std::size_t b = 0; b < n; ++b) {
        const Table& s = td.tables[b];
        const Endomorphism& se = td.endos[b];
        if (!td.contains(td.combine(t, s, zero))) {
          return Verdict::refuted({{"T", te}, {"S", se}, {"T o S", compose(te, se)}}, "T o S is not in T_D");
        }
        Table one_minus_s(td.k.size());
        for (std::size_t x = 0; x < td.k.size(); ++x) one_minus_s[x] = td.k.sub(static_cast<FiniteKernel::Index>(x), s[x]);
        if (!td.contains(td.combine(t, s, one_minus_s))) {
          return Verdict::refuted({{"T", te}, {"S", se}, {"R", p1_combination(te, se, sub(eid, se))}},
                                  "T o S + (I - T) o (I - S) is not in T_D");
        }
        ++samples;
      }
    }
    return with_samples(Verdict::proved("exhaustive over T_D^2, |T_D| = " + std::to_string(n)), samples);
  }
  std::string bad;
  const auto fam = lattice_td(inst, d, &bad);
  if (!fam) return Verdict::hypothesis_failed("family inside T_D", bad + " does not make D convex");
  const Endomorphism id = Endomorphism::identity(inst.group);
  for (const auto& t : *fam) {
    if (!is_T_convex(d, sub(id, t)).is_proved()) return Verdict::refuted({{"T", t}}, "I - T is not in T_D");
    for (const auto& s : *fam) {
      if (!is_T_convex(d, compose(t, s)).is_proved()) {
        return Verdict::refuted({{"T", t}, {"S", s}}, "T o S is not in T_D");
      }
      if (!is_T_convex(d, p1_combination(t, s, sub(id, s))).is_proved()) {
        return Verdict::refuted({{"T", t}, {"S", s}}, "T o S + (I - T) o (I - S) is not in T_D");
      }
      ++samples;
    }
  }
  return with_samples(Verdict::proved("all pairs from the family"), samples);
}

Verdict check_thm2(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const MetricSpec& m = inst.metric;
  const Endomorphism& t = role_endo(inst, "T", 0);
  const PointSet& d = role_set(inst, "D", 0);
  if (!g.divisible_by(2)) return Verdict::hypothesis_failed("X uniquely 2-divisible");
  const Endomorphism id = Endomorphism::identity(g);
  const RhoBracket r = spectral_radius(sub(scale(2, t), id), m, inst.params.horizon);
  if (!r.certified_below_one()) {
    return Verdict::hypothesis_failed("rho_d(2T - I) < 1", "certified upper bound " + g.format_scalar(r.upper));
  }
  if (d.empty()) return Verdict::hypothesis_failed("D nonempty");
  if (!is_T_convex(d, t).is_proved()) return Verdict::hypothesis_failed("D is T-convex");

  const Endomorphism half = divide(id, 2);
  Endomorphism tn = t;
  std::optional<Rational> prev;
  unsigned reached = 0;
  std::uint64_t samples = 0;
  for (unsigned n = 1; n <= inst.params.horizon; ++n) {
    if (n > 1) {
      const Endomorphism u = sub(id, tn);
      tn = add(compose(tn, tn), compose(u, u));
    }
    auto fail = [&](std::string what) {
      return Verdict::refuted({{"n", Rational(n)}, {"T_n", tn}, violated(std::move(what))});
    };
    if (midpoint_closed_form(t, n) != tn) return fail("T_n = 1/2 (I + (2T - I)^(2^(n-1)))");
    if (!is_T_convex(d, tn).is_proved()) return fail("T_n in T_D");
    const Rational dn = operator_distance(tn, half, m);
    if (prev && dn > 2 * *prev * *prev) return fail("d(T_{n+1}, I/2) <= 2 d(T_n, I/2)^2");
    if (prev && *prev <= Rational(1, 2) && dn > *prev) return fail("d(T_n, I/2) nonincreasing");
    if (!reached && tn == half) reached = n;
    prev = dn;
    ++samples;
  }
  if (!is_T_convex(d, half).is_proved()) {
    return Verdict::refuted({{"D", d.format()}, violated("D is midpoint convex")});
  }
  if (!g.is_finite()) {
    Verdict v = Verdict::proved("recursion and D midpoint convex; cl(T_D) is not enumerable here");
    if (prev) v.witness.push_back({"d(T_horizon, I/2)", *prev});
    return with_samples(std::move(v), samples);
  }
  if (!reached) {
    return Verdict::unfalsified(samples, "T_n did not reach I/2 within the horizon");
  }
  const FiniteTD td(d);
  for (const auto& a : td.endos)
    for (const auto& b : td.endos) {
      const Endomorphism mid = divide(add(a, b), 2);
      if (!td.contains(td.k.table(mid))) {
        return Verdict::refuted({{"R", a}, {"S", b}, {"(R+S)/2", mid}}, "T_D is not midpoint convex");
      }
      ++samples;
    }
  Verdict v = Verdict::proved("T_n = I/2 from n = " + std::to_string(reached) + "; D and T_D midpoint convex");
  v.witness.push_back({"T_" + std::to_string(reached), half});
  return with_samples(std::move(v), samples);
}

// ---------------------------------------------------------------- nk

// Shared hypotheses of the nk results. Returns a HypothesisFailed verdict or nothing.
std::optional<Verdict> nk_hypotheses(const Instance& inst, const PointSet& d, const std::vector<Endomorphism>& ts,
                                     bool need_closed_multiple) {
  const GroupSpec& g = inst.group;
  const unsigned n0 = inst.params.n0;
  const Rational mu0 = mu_of_n(g, inst.metric, n0);
  if (mu0 <= 1) {
    return Verdict::hypothesis_failed("mu_d(n0) > 1", "mu_d(" + std::to_string(n0) + ") = " + g.format_scalar(mu0));
  }
  // The dyadic lattice is incomplete; n0.X = X exactly when n0 is a power of 2.
  if (need_closed_multiple && !g.complete() && !is_power_of_two(Integer(n0))) {
    return Verdict::hypothesis_failed("X complete or n0.X closed");
  }
  if (d.empty()) return Verdict::hypothesis_failed("D nonempty");
  if (!is_n_convex(d, n0).is_proved()) return Verdict::hypothesis_failed("D is n0-convex");
  if (ts.empty()) return Verdict::hypothesis_failed("T_1, ..., T_n given");
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (!is_T_convex(d, ts[i]).is_proved()) {
      return Verdict::hypothesis_failed("T_i in T_D", "T_" + std::to_string(i + 1) + " does not make D convex");
    }
  return std::nullopt;
}

// T_1(D) + ... + T_n(D) subset of rhs; boxes need diagonal maps and use the
// enclosing boxes of the images.
Verdict nk_inclusion(const PointSet& d, const std::vector<Endomorphism>& ts, bool closure) {
  const GroupSpec& g = d.group();
  const Endomorphism total = sum_of(g, ts);
  if (auto fin = as_compact(d)) {
    PointSet lhs = image(*fin, ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) lhs = sumset(lhs, image(*fin, ts[i]));
    const PointSet rhs = image(*fin, total);
    for (const auto& z : lhs.elements())
      if (!rhs.contains(z)) return Verdict::refuted({{"z", z}}, "a point of T_1(D) + ... + T_n(D) outside the image");
    Verdict v = Verdict::proved(lhs == rhs ? "inclusion holds with equality" : "inclusion holds");
    v.samples = lhs.size();
    return v;
  }
  PointSet lhs = image_closure(d, ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) lhs = sumset(lhs, image_closure(d, ts[i]));
  const PointSet rhs = closure ? image_closure(d, total) : image(d, total);
  if (auto z = point_outside(lhs, rhs)) {
    return Verdict::refuted({{"z", *z}}, "a point of T_1(D) + ... + T_n(D) outside the image");
  }
  return Verdict::proved(lhs == rhs ? "inclusion holds with equality" : "inclusion holds");
}

Verdict check_nk(const Instance& inst) {
  const PointSet& d = role_set(inst, "D", 0);
  const auto ts = family_endos(inst);
  if (auto h = nk_hypotheses(inst, d, ts, true)) return *h;
  return nk_inclusion(d, ts, true);
}

Verdict check_nk_plus(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const PointSet& d = role_set(inst, "D", 0);
  const auto ts = family_endos(inst);
  if (auto h = nk_hypotheses(inst, d, ts, false)) return *h;
  const Endomorphism total = sum_of(g, ts);
  const bool positive = injectivity_measure(total, inst.metric) > 0;
  // Closed range: every subgroup of a discrete group is closed; on the dyadic
  // lattice we take T(X) = X, i.e. a dyadic inverse.
  const bool closed_range = g.kind() != GroupKind::DyadicLattice || inverse(total).has_value();
  std::string cond;
  if (as_compact(d)) {
    cond = "(i) D compact";
  } else if (g.complete() && positive) {
    cond = "(ii) X complete, mu > 0";
  } else if (closed_range && positive) {
    cond = "(iii) closed range, mu > 0";
  } else {
    return Verdict::hypothesis_failed("one of (i) D compact, (ii) X complete and mu(T_1+...+T_n) > 0, "
                                      "(iii) (T_1+...+T_n)(X) closed and mu(T_1+...+T_n) > 0");
  }
  Verdict v = nk_inclusion(d, ts, false);
  if (v.is_proved()) v.note = cond + "; " + v.note;
  return v;
}

Verdict check_nkc1(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const PointSet& s = role_set(inst, "D", 0);
  const unsigned n0 = inst.params.n0;
  const Rational mu0 = mu_of_n(g, inst.metric, n0);
  if (mu0 <= 1) {
    return Verdict::hypothesis_failed("mu_d(n0) > 1", "mu_d(" + std::to_string(n0) + ") = " + g.format_scalar(mu0));
  }
  const auto d = as_compact(s);
  if (!d) return Verdict::hypothesis_failed("D compact");
  if (!is_n_convex(*d, n0).is_proved()) return Verdict::hypothesis_failed("D is n0-convex");
  std::uint64_t samples = 0;
  for (unsigned n = 1; n <= inst.params.n_max; ++n) {
    Verdict v = is_n_convex(*d, n);
    if (!v.is_proved()) {
      v.witness.insert(v.witness.begin(), WitnessItem{"n", Rational(n)});
      return v;
    }
    samples += v.samples;
  }
  return with_samples(Verdict::proved("n-convex for n <= " + std::to_string(inst.params.n_max)), samples);
}

Verdict check_nkc2(const Instance& inst) {
  const GroupSpec& g = inst.group;
  const PointSet& d = role_set(inst, "D", 0);
  const auto ts = family_endos(inst);
  if (auto h = nk_hypotheses(inst, d, ts, false)) return *h;
  const auto inv = inverse(sum_of(g, ts));
  if (!inv) return Verdict::hypothesis_failed("T_1 + ... + T_n invertible with bounded inverse");
  Verdict v = Verdict::proved(ts.size() == 1 ? "nothing to check for n = 1" : "every partial sum");
  Endomorphism partial = Endomorphism::zero(g);
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    partial = add(partial, ts[k]);
    const Endomorphism r = compose(*inv, partial);
    if (!is_T_convex(d, r).is_proved()) {
      return Verdict::refuted({{"k", Rational(k + 1)}, {"T^-1 o (T_1+...+T_k)", r}}, "not in T_D");
    }
    v.witness.push_back({"T^-1 o (T_1+...+T_" + std::to_string(k + 1) + ")", r});
    ++v.samples;
  }
  return v;
}

Verdict check_tilde(const Instance& inst) {
  auto family = family_endos(inst);
  if (family.empty()) {
    for (int k : {3, 4, 5}) family.push_back(Endomorphism::pi(inst.group, k));
  }
  Verdict closure = check_family_closure(family);
  if (closure.is_refuted()) {
    closure.status = VerdictStatus::Proved;
    closure.note = "the family is not closed under T o T1 + (I - T) o T2";
    return closure;
  }
  Verdict v = Verdict::refuted({}, "the family is closed under the combination");
  v.samples = closure.samples;
  return v;
}

}  // namespace

std::string_view property_name(PropertyId p) {
  for (const auto& [id, name] : kNames)
    if (id == p) return name;
  return "?";
}

std::optional<PropertyId> parse_property(std::string_view name) {
  for (const auto& [id, n] : kNames)
    if (n == name) return id;
  return std::nullopt;
}

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> all = [] {
    std::vector<PropertyId> out;
    for (const auto& [id, name] : kNames) out.push_back(id);
    return out;
  }();
  return all;
}

const Endomorphism* Instance::find_endo(std::string_view name) const {
  for (const auto& [n, t] : endos)
    if (n == name) return &t;
  return nullptr;
}

const PointSet* Instance::find_set(std::string_view name) const {
  for (const auto& [n, s] : sets)
    if (n == name) return &s;
  return nullptr;
}

void Instance::add_endo(std::string name, Endomorphism t) {
  require_same_group(group, t.group());
  if (find_endo(name)) throw Error(ErrorCode::InvalidArgument, "duplicate endomorphism name '" + name + "'");
  endos.emplace_back(std::move(name), std::move(t));
}

void Instance::add_set(std::string name, PointSet s) {
  require_same_group(group, s.group());
  if (find_set(name)) throw Error(ErrorCode::InvalidArgument, "duplicate set name '" + name + "'");
  sets.emplace_back(std::move(name), std::move(s));
}

Verdict check_family_closure(const std::vector<Endomorphism>& family) {
  const std::size_t n = family.size();
  auto in_family = [&](const Endomorphism& s) { return std::find(family.begin(), family.end(), s) != family.end(); };
  auto probe = [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<Verdict> {
    const Endomorphism s = p1_combination(family[a], family[b], family[c]);
    if (in_family(s)) return std::nullopt;
    return Verdict::refuted({{"T", family[a]}, {"T1", family[b]}, {"T2", family[c]}, {"S", s}},
                            "T o T1 + (I - T) o T2 lies outside the family");
  };
  if (n >= 3)
    if (auto v = probe(0, 1, 2)) return *v;
  std::uint64_t samples = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (auto v = probe(a, b, c)) return *v;
        ++samples;
      }
  return with_samples(Verdict::proved("closed under the combination"), samples);
}

Verdict verify(PropertyId p, const Instance& inst) {
  require_compatible(inst.group, inst.metric);
  switch (p) {
    case PropertyId::LEMMA_MU: return check_lemma_mu(inst);
    case PropertyId::COR_MU: return check_cor_mu(inst);
    case PropertyId::LEMMA_NX: return check_lemma_nx(inst);
    case PropertyId::THM_RCT: return check_rct(inst);
    case PropertyId::LEMMA_SR: return check_lemma_sr(inst);
    case PropertyId::THM_NIT: return check_nit(inst);
    case PropertyId::COR_NIT: return check_cor_nit(inst);
    case PropertyId::THM_0: return check_thm0(inst);
    case PropertyId::LEM_TC: return check_lem_tc(inst);
    case PropertyId::THM_P1: return check_p1(inst);
    case PropertyId::COR_1: return check_cor1(inst);
    case PropertyId::THM_2: return check_thm2(inst);
    case PropertyId::THM_NK: return check_nk(inst);
    case PropertyId::THM_NK_PLUS: return check_nk_plus(inst);
    case PropertyId::COR_NKC1: return check_nkc1(inst);
    case PropertyId::COR_NKC2: return check_nkc2(inst);
    case PropertyId::EXA_TILDE: return check_tilde(inst);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown property");
}

}  // namespace gconv

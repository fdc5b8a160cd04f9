#include <algorithm>
#include <functional>
#include <stdexcept>

#include "convexity.hpp"
#include "error.hpp"
#include "operator.hpp"
#include "random.hpp"
#include "theorems.hpp"

namespace gconv {

namespace {

const char* const kFiniteMuExplanation =
    "mu_d(n0) <= 1 on every finite group: a maximal-norm x gives ||n0.x|| <= ||x||";

bool needs_expanding_multiple(PropertyId p) {
  switch (p) {
    case PropertyId::THM_RCT:
    case PropertyId::THM_NK:
    case PropertyId::THM_NK_PLUS:
    case PropertyId::COR_NKC1:
    case PropertyId::COR_NKC2: return true;
    default: return false;
  }
}

// ---------------------------------------------------------------- draws

struct Drawer {
  Rng rng;
  GroupSpec g;
  int bound;

  Drawer(std::uint64_t seed, GroupSpec group, int b) : rng(seed), g(std::move(group)), bound(b) {}

  bool dyadic() const { return g.kind() == GroupKind::DyadicLattice; }
  std::size_t dim() const { return g.dim(); }

  // Integer in [-b, b], or a dyadic p/2^e, e <= 2, of the same magnitude.
  Rational scalar(int b) {
    if (!dyadic()) return Rational(uniform_int(rng, -b, b));
    const unsigned e = static_cast<unsigned>(uniform_below(rng, 3));
    const long scale = 1l << e;
    return ratio(uniform_int(rng, -b * scale, b * scale), scale);
  }

  Element point(int b) {
    if (g.is_finite()) {
      std::vector<Rational> c;
      for (const auto& m : g.moduli()) c.emplace_back(Integer(uniform_below(rng, m.get_ui())));
      return g.make_element(std::move(c));
    }
    std::vector<Rational> c(dim());
    for (auto& x : c) x = scalar(b);
    return Element(std::move(c));
  }

  PointSet box(int b) {
    std::vector<Rational> lo(dim()), hi(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      Rational p = scalar(b), q = scalar(b);
      lo[i] = std::min(p, q);
      hi[i] = std::max(p, q);
    }
    return PointSet::box(g, Element(std::move(lo)), Element(std::move(hi)));
  }

  PointSet finite_set(std::size_t max_size, int b) {
    std::vector<Element> pts;
    const std::size_t n = 1 + uniform_below(rng, max_size);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(point(b));
    return PointSet::finite(g, std::move(pts));
  }

  PointSet subset() {
    const auto elems = g.elements();
    std::vector<Element> pts;
    for (const auto& x : elems)
      if (coin(rng)) pts.push_back(x);
    if (pts.empty()) pts.push_back(elems[uniform_below(rng, elems.size())]);
    return PointSet::finite(g, std::move(pts));
  }

  Endomorphism endo() {
    const std::size_t n = dim();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (g.is_finite()) {
          const Integer& mi = g.moduli()[i];
          const Integer step = mi / gcd(mi, g.moduli()[j]);
          a(i, j) = Rational(step * Integer(uniform_below(rng, Integer(mi / step).get_ui())));
        } else {
          a(i, j) = scalar(bound);
        }
      }
    return Endomorphism::make(g, std::move(a));
  }

  Matrix unimodular() {
    const std::size_t n = dim();
    Matrix u = Matrix::identity(n);
    if (n < 2) return coin(rng) ? u : -u;
    for (std::size_t step = 0; step < 2 * n; ++step) {
      const std::size_t i = uniform_below(rng, n);
      std::size_t j = uniform_below(rng, n - 1);
      if (j >= i) ++j;
      const Rational k(uniform_int(rng, -2, 2));
      for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    }
    return u;
  }

  // U N U^-1 with N strictly upper triangular.
  Endomorphism nilpotent() {
    const std::size_t n = dim();
    Matrix nm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) nm(i, j) = scalar(bound);
    const Matrix u = unimodular();
    return Endomorphism::make(g, u * nm * *u.inverse());
  }

  // Diagonal with entries in [0, 1]: multiples of 1/4 (dyadic) or {0, 1}.
  Endomorphism unit_interval_diagonal() {
    std::vector<Rational> d(dim());
    for (auto& x : d) x = dyadic() ? ratio(uniform_int(rng, 0, 4), 4) : Rational(uniform_int(rng, 0, 1));
    return Endomorphism::diagonal(g, d);
  }

  // Diagonal with entries 0 or +-2^k (dyadic, |k| <= 1) or +-1.
  Endomorphism unit_diagonal(bool allow_zero) {
    std::vector<Rational> d(dim());
    for (auto& x : d) {
      if (allow_zero && uniform_below(rng, 4) == 0) {
        x = 0;
        continue;
      }
      const Rational sign = coin(rng) ? 1 : -1;
      if (!dyadic()) {
        x = sign;
        continue;
      }
      const int k = static_cast<int>(uniform_int(rng, -1, 1));
      x = sign * (k >= 0 ? Rational(1 << k) : Rational(1, 2));
    }
    return Endomorphism::diagonal(g, d);
  }
};

GroupSpec draw_group(GeneratorKind kind, Rng& rng, unsigned max_dim, bool odd) {
  const std::size_t dim = 1 + uniform_below(rng, std::max(1u, max_dim));
  switch (kind) {
    case GeneratorKind::IntLattice: return GroupSpec::int_lattice(dim);
    case GeneratorKind::DyadicLattice: return GroupSpec::dyadic_lattice(dim);
    default: break;
  }
  static const std::vector<long> all{4, 5, 6, 7, 8, 9, 10, 11, 12};
  static const std::vector<long> odds{5, 7, 9, 11};
  const auto& pool = odd ? odds : all;
  std::vector<Integer> moduli{Integer(pool[uniform_below(rng, pool.size())])};
  if (coin(rng) && max_dim > 1) {
    const long second = pool[uniform_below(rng, pool.size())];
    if (moduli[0] * second <= 48) moduli.emplace_back(second);
  }
  return GroupSpec::finite(std::move(moduli));
}

MetricSpec draw_metric(const GroupSpec& g, Rng& rng) {
  std::vector<Rational> w(g.dim());
  for (auto& x : w) x = Rational(uniform_int(rng, 1, 3));
  if (g.is_finite()) return MetricSpec::weighted_cyclic(std::move(w));
  return coin(rng) ? MetricSpec::weighted_linf(std::move(w)) : MetricSpec::weighted_l1(std::move(w));
}

// Splits 8 sigma units of 1/8 into n parts of at most 8 units each.
std::vector<Rational> split(Rng& rng, unsigned units, std::size_t n) {
  std::vector<unsigned> parts(n, 0);
  for (unsigned u = 0; u < units; ++u) {
    std::size_t i;
    do {
      i = uniform_below(rng, n);
    } while (parts[i] >= 8);
    ++parts[i];
  }
  std::vector<Rational> out;
  for (unsigned p : parts) out.emplace_back(p, 8u);
  return out;
}

// Random instance for p satisfying (most of) its hypotheses by construction.
Instance draw_instance(PropertyId p, const GeneratorParams& gen, std::uint64_t seed) {
  Rng rng(seed);
  const bool odd = p == PropertyId::THM_2;
  GroupSpec g = draw_group(gen.kind, rng, gen.max_dim, odd);
  MetricSpec m = p == PropertyId::THM_RCT || gen.kind == GeneratorKind::Finite
                     ? (g.is_finite() ? MetricSpec::unit(MetricKind::WeightedCyclic, g.dim())
                                      : MetricSpec::unit(MetricKind::WeightedLinf, g.dim()))
                     : draw_metric(g, rng);
  Instance inst(g, m);
  inst.params.n0 = gen.n0;
  Drawer dr(rng(), g, gen.entry_bound);
  auto set_or_subset = [&]() { return g.is_finite() ? dr.subset() : (coin(dr.rng) ? dr.box(3) : dr.finite_set(4, 3)); };

  switch (p) {
    case PropertyId::LEMMA_MU:
    case PropertyId::COR_MU:
      inst.add_endo("T", dr.endo());
      inst.add_endo("S", dr.endo());
      inst.params.n_max = 6;
      break;
    case PropertyId::LEMMA_SR: {
      Endomorphism t = dr.endo();
      const GroupSpec& gg = inst.group;
      Endomorphism s = add(scale(uniform_int(dr.rng, -2, 2), Endomorphism::identity(gg)),
                           add(scale(uniform_int(dr.rng, -2, 2), t), scale(uniform_int(dr.rng, -1, 1), compose(t, t))));
      inst.add_endo("T", t);
      inst.add_endo("S", s);
      break;
    }
    case PropertyId::LEMMA_NX:
      inst.add_endo("T", dr.endo());
      inst.add_set("D", set_or_subset());
      break;
    case PropertyId::THM_NIT:
      inst.add_endo("T", g.is_finite() ? dr.endo() : dr.nilpotent());
      break;
    case PropertyId::COR_NIT: {
      if (g.is_finite()) {
        inst.add_endo("S", dr.endo());
        inst.add_endo("T", dr.endo());
        break;
      }
      const Endomorphism s = Endomorphism::make(g, dr.unimodular());
      inst.add_endo("S", s);
      inst.add_endo("T", compose(dr.nilpotent(), s));
      break;
    }
    case PropertyId::THM_0: {
      const std::size_t members = 1 + uniform_below(dr.rng, 2);
      for (std::size_t i = 0; i < members; ++i) {
        const std::string name = "T" + std::to_string(i + 1);
        inst.add_endo(name, g.is_finite() ? dr.endo() : dr.unit_interval_diagonal());
        inst.family.push_back(name);
      }
      const std::size_t nsets = 2 + uniform_below(dr.rng, 2);
      for (std::size_t i = 0; i < nsets; ++i) inst.add_set("D" + std::to_string(i + 1), set_or_subset());
      if (!g.is_finite()) inst.add_endo("A", dr.unit_diagonal(false));
      break;
    }
    case PropertyId::LEM_TC:
      inst.add_endo("T", dr.endo());
      inst.add_set("D", g.is_finite() ? dr.subset() : dr.finite_set(5, 3));
      break;
    case PropertyId::THM_P1:
    case PropertyId::COR_1: {
      inst.add_set("D", g.is_finite() ? dr.subset() : dr.box(3));
      if (!g.is_finite()) {
        const std::size_t members = 1 + uniform_below(dr.rng, 2);
        for (std::size_t i = 0; i < members; ++i) inst.add_endo("T" + std::to_string(i + 1), dr.unit_interval_diagonal());
      }
      break;
    }
    case PropertyId::THM_2: {
      if (g.is_finite()) {
        inst.add_endo("T", dr.endo());
        inst.add_set("D", dr.subset());
        break;
      }
      // Z^n fails 2-divisibility whatever T is; keep T integral there.
      std::vector<Rational> d(g.dim());
      for (auto& x : d) x = dr.dyadic() ? (1 + ratio(uniform_int(dr.rng, -3, 3), 4)) / 2 : Rational(uniform_int(dr.rng, 0, 1));
      inst.add_endo("T", Endomorphism::diagonal(g, d));
      inst.add_set("D", dr.box(3));
      inst.params.horizon = 6;
      break;
    }
    case PropertyId::THM_RCT: {
      PointSet b = coin(dr.rng) || !dr.dyadic() ? PointSet::singleton(g, dr.point(3)) : dr.box(3);
      const PointSet c = dr.finite_set(4, 2);
      const PointSet wide = PointSet::box(g, g.sub(b.is_box() ? b.lo() : b.elements()[0], Element(std::vector<Rational>(g.dim(), 1))),
                                          g.add(b.is_box() ? b.hi() : b.elements()[0], Element(std::vector<Rational>(g.dim(), 1))));
      std::vector<Element> cand;
      const std::size_t n = 1 + uniform_below(dr.rng, 6);
      for (std::size_t i = 0; i < n; ++i) {
        Element x = coin(dr.rng) ? (b.is_box() ? b.sample(dr.rng) : b.elements()[0]) : wide.sample(dr.rng);
        const bool fits = std::all_of(c.elements().begin(), c.elements().end(), [&](const Element& z) {
          return sum_contains(b, c, g.add(x, z));
        });
        if (fits) cand.push_back(std::move(x));
      }
      inst.add_set("A", PointSet::finite(g, std::move(cand)));
      inst.add_set("B", std::move(b));
      inst.add_set("C", c);
      break;
    }
    case PropertyId::THM_NK:
    case PropertyId::THM_NK_PLUS:
    case PropertyId::COR_NKC2: {
      const std::size_t n = 1 + uniform_below(dr.rng, 3);
      if (!dr.dyadic()) {
        inst.add_set("D", PointSet::singleton(g, dr.point(3)));
        for (std::size_t i = 0; i < n; ++i) inst.add_endo("T" + std::to_string(i + 1), dr.endo());
        break;
      }
      inst.add_set("D", dr.box(3));
      std::vector<std::vector<Rational>> diag(n, std::vector<Rational>(g.dim()));
      for (std::size_t j = 0; j < g.dim(); ++j) {
        static const unsigned sigma[] = {2, 4, 8, 16};
        const unsigned units = sigma[uniform_below(dr.rng, n >= 2 ? 4 : 3)];
        const auto parts = split(dr.rng, units, n);
        for (std::size_t i = 0; i < n; ++i) diag[i][j] = parts[i];
      }
      for (std::size_t i = 0; i < n; ++i) inst.add_endo("T" + std::to_string(i + 1), Endomorphism::diagonal(g, diag[i]));
      break;
    }
    case PropertyId::COR_NKC1:
      inst.add_set("D", coin(dr.rng) ? PointSet::singleton(g, dr.point(3)) : dr.finite_set(3, 2));
      inst.params.n_max = 8;
      break;
    case PropertyId::EXA_TILDE: break;
  }
  return inst;
}

std::string describe(const Instance& inst) {
  const GroupSpec& g = inst.group;
  std::string s = g.describe() + " " + std::string(metric_kind_name(inst.metric.kind()));
  for (const auto& [name, t] : inst.endos) s += "; " + name + " = " + t.format();
  for (const auto& [name, d] : inst.sets) s += "; " + name + " = " + d.format();
  return s;
}

// Runs one instance; nullopt when its hypotheses fail or a result is not representable.
std::optional<Verdict> run_one(PropertyId p, const Instance& inst) {
  try {
    Verdict v = verify(p, inst);
    if (v.status == VerdictStatus::HypothesisFailed) return std::nullopt;
    return v;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnsupportedRepresentation || e.code() == ErrorCode::UnsupportedMixedSum) {
      return std::nullopt;
    }
    throw;
  }
}

Verdict found(Verdict v, const Instance& inst, std::uint64_t index) {
  v.witness.push_back({"instance", describe(inst)});
  v.note = "instance " + std::to_string(index) + (v.note.empty() ? "" : ": " + v.note);
  return v;
}

[[noreturn]] void finite_exhausted(const std::vector<GroupSpec>& groups, const MetricSpec* metric, unsigned n0) {
  // A nontrivial finite group always has mu_d(n0) <= 1; confirm on what was drawn.
  for (const auto& g : groups) {
    const MetricSpec m = metric ? *metric : MetricSpec::unit(MetricKind::WeightedCyclic, g.dim());
    if (mu_of_n(g, m, n0) > 1) throw std::logic_error("finite group with mu_d(n0) > 1");
  }
  throw Error(ErrorCode::GeneratorExhausted, kFiniteMuExplanation);
}

Verdict exhaustive_search(PropertyId p, const GeneratorParams& gen, std::uint64_t budget) {
  const GroupSpec g = gen.group ? *gen.group : GroupSpec::finite({Integer(12)});
  if (!g.is_finite()) throw Error(ErrorCode::NotFinite, "exhaustive generator needs a finite group");
  const MetricSpec m = gen.metric ? *gen.metric : MetricSpec::unit(MetricKind::WeightedCyclic, g.dim());
  if (needs_expanding_multiple(p)) finite_exhausted({g}, &m, gen.n0);

  const auto ring = enumerate_endomorphisms(g);
  std::vector<PointSet> subsets;
  if (g.enumerable_order() <= 10) {
    const auto elems = g.elements();
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << elems.size()); ++bits) {
      std::vector<Element> s;
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (bits >> i & 1) s.push_back(elems[i]);
      subsets.push_back(PointSet::finite(g, std::move(s)));
    }
  } else {
    subsets.push_back(PointSet::whole(g));
  }

  auto base = [&] {
    Instance inst(g, m);
    inst.params.n0 = gen.n0;
    return inst;
  };
  std::vector<std::function<Instance()>> items;
  switch (p) {
    case PropertyId::LEMMA_MU:
    case PropertyId::COR_MU:
    case PropertyId::LEMMA_SR:
    case PropertyId::COR_NIT:
      for (const auto& t : ring)
        for (const auto& s : ring)
          items.push_back([&, t, s] {
            Instance inst = base();
            inst.add_endo(p == PropertyId::COR_NIT ? "S" : "T", t);
            inst.add_endo(p == PropertyId::COR_NIT ? "T" : "S", s);
            if (p == PropertyId::LEMMA_MU) inst.params.n_max = 6;
            return inst;
          });
      break;
    case PropertyId::THM_NIT:
    case PropertyId::THM_0:
      for (const auto& t : ring)
        items.push_back([&, t] {
          Instance inst = base();
          inst.add_endo("T", t);
          return inst;
        });
      break;
    case PropertyId::LEMMA_NX:
    case PropertyId::LEM_TC:
    case PropertyId::THM_2:
      for (const auto& t : ring)
        for (const auto& d : subsets)
          items.push_back([&, t, d] {
            Instance inst = base();
            inst.add_endo("T", t);
            inst.add_set("D", d);
            return inst;
          });
      break;
    case PropertyId::THM_P1:
    case PropertyId::COR_1:
      for (const auto& d : subsets)
        items.push_back([&, d] {
          Instance inst = base();
          inst.add_set("D", d);
          return inst;
        });
      break;
    case PropertyId::EXA_TILDE: items.push_back(base); break;
    default: break;
  }

  std::uint64_t valid = 0, index = 0;
  for (const auto& make : items) {
    if (index == budget) {
      return Verdict::unfalsified(budget, "budget reached after " + std::to_string(index) + " of " +
                                              std::to_string(items.size()) + " instances");
    }
    const Instance inst = make();
    if (auto v = run_one(p, inst)) {
      if (v->is_refuted()) return found(*v, inst, index);
      ++valid;
    }
    ++index;
  }
  Verdict v = Verdict::proved("exhaustive over " + std::to_string(items.size()) + " instances on " + g.describe() +
                              ", " + std::to_string(items.size() - valid) + " outside the hypotheses");
  v.samples = items.size();
  return v;
}

}  // namespace

std::string_view generator_kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::FiniteExhaustive: return "finite-exhaustive";
    case GeneratorKind::Finite: return "finite";
    case GeneratorKind::IntLattice: return "int";
    case GeneratorKind::DyadicLattice: return "dyadic";
  }
  return "?";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  for (auto k : {GeneratorKind::FiniteExhaustive, GeneratorKind::Finite, GeneratorKind::IntLattice,
                 GeneratorKind::DyadicLattice})
    if (generator_kind_name(k) == name) return k;
  return std::nullopt;
}

Verdict counterexample_search(PropertyId p, const GeneratorParams& gen, std::uint64_t budget, std::uint64_t seed) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  if (gen.kind == GeneratorKind::FiniteExhaustive) return exhaustive_search(p, gen, budget);
  if (gen.kind == GeneratorKind::Finite && needs_expanding_multiple(p)) {
    std::vector<GroupSpec> drawn;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(budget, 32); ++i) {
      Rng rng(seed + i);
      drawn.push_back(draw_group(GeneratorKind::Finite, rng, gen.max_dim, false));
    }
    finite_exhausted(drawn, nullptr, gen.n0);
  }
  std::uint64_t valid = 0;
  for (std::uint64_t i = 0; i < budget; ++i) {
    const Instance inst = draw_instance(p, gen, seed + i);
    if (auto v = run_one(p, inst)) {
      if (v->is_refuted()) return found(*v, inst, i);
      ++valid;
    }
  }
  if (valid == 0) {
    throw Error(ErrorCode::GeneratorExhausted,
                "no drawn instance satisfied the hypotheses of " + std::string(property_name(p)));
  }
  return Verdict::unfalsified(budget, std::to_string(valid) + " instances inside the hypotheses");
}

}  // namespace gconv

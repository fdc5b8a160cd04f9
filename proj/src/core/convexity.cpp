#include "convexity.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "error.hpp"
#include "finite_kernel.hpp"

namespace gconv {

namespace {

void require_same(const PointSet& a, const PointSet& b) { require_same_group(a.group(), b.group()); }

Element box_corner_sum(const PointSet& a, const PointSet& b, bool upper) {
  const GroupSpec& g = a.group();
  return g.add(upper ? a.hi() : a.lo(), upper ? b.hi() : b.lo());
}

Element scaled_point(const GroupSpec& g, const Integer& n, const Element& x) { return g.scale(n, x); }

bool dyadic_unit(const Rational& t) {
  return t != 0 && is_power_of_two(abs(t.get_num())) && is_power_of_two(t.get_den());
}

}  // namespace

PointSet sumset(const PointSet& a, const PointSet& b) {
  require_same(a, b);
  const GroupSpec& g = a.group();
  if (a.is_finite() && b.is_finite()) {
    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.elements())
      for (const auto& y : b.elements()) out.push_back(g.add(x, y));
    return PointSet::finite(g, std::move(out));
  }
  if (a.is_box() && b.is_box()) {
    return PointSet::box(g, box_corner_sum(a, b, false), box_corner_sum(a, b, true));
  }
  throw Error(ErrorCode::UnsupportedMixedSum, "sum of a finite set and a box is not representable");
}

PointSet n_fold_sum(const PointSet& a, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (a.is_box()) {
    const GroupSpec& g = a.group();
    return PointSet::box(g, g.scale(n, a.lo()), g.scale(n, a.hi()));
  }
  PointSet acc = a;
  for (unsigned k = 1; k < n; ++k) acc = sumset(acc, a);
  return acc;
}

PointSet n_dilate(const PointSet& a, const Integer& n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const GroupSpec& g = a.group();
  if (a.is_finite()) {
    std::vector<Element> out;
    out.reserve(a.size());
    for (const auto& x : a.elements()) out.push_back(g.nat_mul(n, x));
    return PointSet::finite(g, std::move(out));
  }
  if (n == 1) return a;
  if (a.degenerate() || (g.kind() == GroupKind::DyadicLattice && is_power_of_two(n))) {
    return PointSet::box(g, scaled_point(g, n, a.lo()), scaled_point(g, n, a.hi()));
  }
  throw Error(ErrorCode::UnsupportedRepresentation,
              n.get_str() + ".box is not a box in " + g.describe());
}

Verdict is_n_convex(const PointSet& a, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (n == 1) return Verdict::proved("every set is 1-convex");
  const GroupSpec& g = a.group();
  if (a.is_finite()) {
    // Each element of [k]A remembers one decomposition into k summands.
    std::map<Element, std::vector<Element>> level;
    for (const auto& x : a.elements()) level.emplace(x, std::vector<Element>{x});
    for (unsigned k = 1; k < n; ++k) {
      std::map<Element, std::vector<Element>> next;
      for (const auto& [s, parts] : level)
        for (const auto& x : a.elements()) {
          Element z = g.add(s, x);
          if (next.count(z)) continue;
          auto p = parts;
          p.push_back(x);
          next.emplace(std::move(z), std::move(p));
        }
      level = std::move(next);
    }
    const PointSet dil = n_dilate(a, n);
    for (const auto& [s, parts] : level) {
      if (dil.contains(s)) continue;
      std::vector<WitnessItem> w;
      for (std::size_t i = 0; i < parts.size(); ++i) w.push_back({"x" + std::to_string(i + 1), parts[i]});
      w.push_back({"sum", s});
      return Verdict::refuted(std::move(w), "sum of " + std::to_string(n) + " points is not in n.A");
    }
    Verdict v = Verdict::proved("exhaustive over [n]A");
    v.samples = level.size();
    return v;
  }
  // Boxes: [n]B = box(n lo, n hi). A degenerate coordinate is harmless.
  std::size_t wide = g.dim();
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (a.lo()[i] < a.hi()[i]) {
      wide = i;
      break;
    }
  if (wide == g.dim()) return Verdict::proved("single-point box");
  if (g.kind() == GroupKind::DyadicLattice && is_power_of_two(Integer(n))) {
    return Verdict::proved("dyadic box: [n]B = n.B since D is divisible by n");
  }
  // n lo + delta e_i with delta a power of two <= width has no n-th part in B.
  Rational delta = 1;
  if (g.kind() == GroupKind::DyadicLattice) {
    const Rational width = a.hi()[wide] - a.lo()[wide];
    while (delta > width) delta /= 2;
  }
  std::vector<Rational> bumped = a.lo().coords;
  bumped[wide] += delta;
  Element last(std::move(bumped));
  std::vector<WitnessItem> w;
  for (unsigned i = 1; i < n; ++i) w.push_back({"x" + std::to_string(i), a.lo()});
  w.push_back({"x" + std::to_string(n), last});
  w.push_back({"sum", g.add(g.scale(Integer(n - 1), a.lo()), last)});
  return Verdict::refuted(std::move(w), "sum of box points with no n-th part in the box");
}

Verdict is_T_convex(const PointSet& d, const Endomorphism& t) {
  require_same_group(d.group(), t.group());
  const GroupSpec& g = d.group();
  if (d.is_box()) {
    const Matrix& a = t.matrix();
    const Matrix u = Matrix::identity(g.dim()) - a;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      // Extreme values of sum_j a_ij x_j + u_ij y_j over the box are taken at corners.
      std::vector<Rational> xmax(g.dim()), ymax(g.dim()), xmin(g.dim()), ymin(g.dim());
      Rational vmax, vmin;
      for (std::size_t j = 0; j < g.dim(); ++j) {
        const Rational& lo = d.lo()[j];
        const Rational& hi = d.hi()[j];
        xmax[j] = a(i, j) >= 0 ? hi : lo;
        xmin[j] = a(i, j) >= 0 ? lo : hi;
        ymax[j] = u(i, j) >= 0 ? hi : lo;
        ymin[j] = u(i, j) >= 0 ? lo : hi;
        vmax += a(i, j) * xmax[j] + u(i, j) * ymax[j];
        vmin += a(i, j) * xmin[j] + u(i, j) * ymin[j];
      }
      auto refute = [&](std::vector<Rational> xs, std::vector<Rational> ys) {
        Element x(std::move(xs)), y(std::move(ys));
        Element z = g.add(t.apply(x), g.sub(y, t.apply(y)));
        return Verdict::refuted({{"x", x}, {"y", y}, {"T(x)+(I-T)(y)", z}}, "combination leaves the box");
      };
      if (vmax > d.hi()[i]) return refute(xmax, ymax);
      if (vmin < d.lo()[i]) return refute(xmin, ymin);
    }
    return Verdict::proved("box: extreme corners stay inside");
  }
  if (g.is_finite()) {
    FiniteKernel k(g);
    auto tt = k.table(t);
    FiniteKernel::Table ut(k.size());
    for (std::size_t y = 0; y < k.size(); ++y) ut[y] = k.sub(static_cast<FiniteKernel::Index>(y), tt[y]);
    FiniteKernel::Index bx = 0, by = 0;
    if (k.convex(k.mask(d), tt, ut, &bx, &by)) {
      Verdict v = Verdict::proved("exhaustive over ordered pairs");
      v.samples = d.size() * d.size();
      return v;
    }
    Element x = k.element(bx), y = k.element(by);
    return Verdict::refuted({{"x", x}, {"y", y}, {"T(x)+(I-T)(y)", k.element(k.add(tt[bx], ut[by]))}});
  }
  for (const auto& y : d.elements()) {
    Element uy = g.sub(y, t.apply(y));
    for (const auto& x : d.elements()) {
      Element z = g.add(t.apply(x), uy);
      if (!d.contains(z)) return Verdict::refuted({{"x", x}, {"y", y}, {"T(x)+(I-T)(y)", z}});
    }
  }
  Verdict v = Verdict::proved("exhaustive over ordered pairs");
  v.samples = d.size() * d.size();
  return v;
}

Verdict is_T_convex_pointwise(const PointSet& d, const Endomorphism& t) {
  require_same_group(d.group(), t.group());
  if (!d.is_finite()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "translated convexity test needs a finite set");
  }
  const GroupSpec& g = d.group();
  for (const auto& p : d.elements())
    for (const auto& x : d.elements()) {
      Element z = g.add(t.apply(g.sub(x, p)), p);
      if (!d.contains(z)) {
        return Verdict::refuted({{"p", p}, {"x", x}, {"T(x-p)+p", z}}, "T(D-p) is not inside D-p");
      }
    }
  return Verdict::proved("exhaustive over translates");
}

Verdict is_family_convex(const PointSet& d, const std::vector<Endomorphism>& family) {
  std::uint64_t samples = 0;
  for (const auto& t : family) {
    Verdict v = is_T_convex(d, t);
    if (!v.is_proved()) {
      v.witness.insert(v.witness.begin(), WitnessItem{"T", t});
      return v;
    }
    samples += v.samples;
  }
  Verdict v = Verdict::proved("every member of the family");
  v.samples = samples;
  return v;
}

HullResult convex_hull(const PointSet& s, const std::vector<Endomorphism>& family, unsigned max_iter) {
  if (!s.is_finite()) throw Error(ErrorCode::NotFinite, "hull iteration needs a finite seed set");
  const GroupSpec& g = s.group();
  for (const auto& t : family) require_same_group(g, t.group());
  std::set<Element> cur(s.elements().begin(), s.elements().end());
  HullResult r{s, false, 0};
  while (true) {
    if (!g.is_finite() && r.iterations >= max_iter) break;
    std::set<Element> next = cur;
    for (const auto& t : family) {
      std::vector<Element> tx, uy;
      for (const auto& x : cur) {
        Element img = t.apply(x);
        uy.push_back(g.sub(x, img));
        tx.push_back(std::move(img));
      }
      for (const auto& a : tx)
        for (const auto& b : uy) next.insert(g.add(a, b));
    }
    ++r.iterations;
    if (next.size() == cur.size()) {
      r.complete = true;
      break;
    }
    cur = std::move(next);
    if (cur.size() > kMaxEnumeration) break;
  }
  r.hull = PointSet::finite(g, std::vector<Element>(cur.begin(), cur.end()));
  return r;
}

std::vector<Endomorphism> family_of(const PointSet& d) {
  const GroupSpec& g = d.group();
  if (!g.is_finite()) throw Error(ErrorCode::NotEnumerable, "T_D is only enumerable over finite groups");
  FiniteKernel k(g);
  const auto m = k.mask(d);
  std::vector<Endomorphism> out;
  for (auto& t : enumerate_endomorphisms(g)) {
    auto tt = k.table(t);
    FiniteKernel::Table ut(k.size());
    for (std::size_t y = 0; y < k.size(); ++y) ut[y] = k.sub(static_cast<FiniteKernel::Index>(y), tt[y]);
    if (k.convex(m, tt, ut)) out.push_back(std::move(t));
  }
  return out;
}

Rational diameter(const PointSet& a, const MetricSpec& m) {
  const GroupSpec& g = a.group();
  require_compatible(g, m);
  if (a.is_finite()) {
    if (a.empty()) throw Error(ErrorCode::EmptySet, "diameter of the empty set");
    Rational best;
    const auto& xs = a.elements();
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        Rational dist = distance(g, m, xs[i], xs[j]);
        if (dist > best) best = dist;
      }
    return best;
  }
  Rational r;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Rational w = m.weights()[i] * (a.hi()[i] - a.lo()[i]);
    if (m.kind() == MetricKind::WeightedL1) {
      r += w;
    } else if (w > r) {
      r = w;
    }
  }
  return r;
}

PointSet image(const PointSet& d, const Endomorphism& a) {
  require_same_group(d.group(), a.group());
  const GroupSpec& g = d.group();
  if (d.is_finite()) {
    std::vector<Element> out;
    out.reserve(d.size());
    for (const auto& x : d.elements()) out.push_back(a.apply(x));
    return PointSet::finite(g, std::move(out));
  }
  if (!a.is_diagonal()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "image of a box under a non-diagonal map");
  }
  std::vector<Rational> lo(g.dim()), hi(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Rational& t = a.matrix()(i, i);
    const bool flat = d.lo()[i] == d.hi()[i];
    const bool exact = flat || t == 0 ||
                       (g.kind() == GroupKind::IntLattice ? abs(t) == 1 : dyadic_unit(t));
    if (!exact) {
      throw Error(ErrorCode::UnsupportedRepresentation,
                  "scaling a box coordinate by " + t.get_str() + " does not give a box");
    }
    Rational p = t * d.lo()[i], q = t * d.hi()[i];
    lo[i] = p < q ? p : q;
    hi[i] = p < q ? q : p;
  }
  return PointSet::box(g, Element(std::move(lo)), Element(std::move(hi)));
}

PointSet image_closure(const PointSet& d, const Endomorphism& a) {
  const GroupSpec& g = d.group();
  if (d.is_finite() || g.kind() == GroupKind::IntLattice) return image(d, a);
  require_same_group(g, a.group());
  if (!a.is_diagonal()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "closure of a box image under a non-diagonal map");
  }
  std::vector<Rational> lo(g.dim()), hi(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Rational& t = a.matrix()(i, i);
    Rational p = t * d.lo()[i], q = t * d.hi()[i];
    lo[i] = p < q ? p : q;
    hi[i] = p < q ? q : p;
  }
  return PointSet::box(g, Element(std::move(lo)), Element(std::move(hi)));
}

PointSet preimage(const PointSet& d, const Endomorphism& a) {
  require_same_group(d.group(), a.group());
  const GroupSpec& g = d.group();
  if (g.is_finite() && d.is_finite()) {
    FiniteKernel k(g);
    const auto m = k.mask(d);
    const auto t = k.table(a);
    FiniteKernel::Mask out(k.size(), 0);
    for (std::size_t x = 0; x < k.size(); ++x) out[x] = m[t[x]];
    return k.to_set(out);
  }
  if (auto inv = inverse(a)) return image(d, *inv);
  // Injective on a lattice: each point has at most one rational preimage.
  if (d.is_finite() && !g.is_finite()) {
    if (auto q_inv = a.matrix().inverse()) {
      std::vector<Element> xs;
      for (const auto& y : d.elements()) {
        Element x(q_inv->apply(y.coords));
        if (g.contains(x)) xs.push_back(std::move(x));
      }
      return PointSet::finite(g, std::move(xs));
    }
  }
  throw Error(ErrorCode::NotEnumerable, "preimage under a non-invertible map of an infinite group");
}

PointSet image_preimage(const PointSet& d, const Endomorphism& a, MapDirection dir) {
  return dir == MapDirection::Image ? image(d, a) : preimage(d, a);
}

PointSet closure(const PointSet& a) { return a; }

PointSet to_finite(const PointSet& a) {
  if (a.is_finite()) return a;
  const GroupSpec& g = a.group();
  if (a.degenerate()) return PointSet::singleton(g, a.lo());
  if (g.kind() != GroupKind::IntLattice) {
    throw Error(ErrorCode::NotFinite, "a non-degenerate dyadic box is infinite");
  }
  Integer count = 1;
  for (std::size_t i = 0; i < g.dim(); ++i) count *= Rational(a.hi()[i] - a.lo()[i]).get_num() + 1;
  if (count > kMaxEnumeration) throw Error(ErrorCode::TooLarge, "box has too many lattice points");
  std::vector<Element> out;
  std::vector<Rational> cur = a.lo().coords;
  while (true) {
    out.emplace_back(cur);
    std::size_t i = g.dim();
    while (i-- > 0) {
      if (cur[i] < a.hi()[i]) {
        cur[i] += 1;
        break;
      }
      cur[i] = a.lo()[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return PointSet::finite(g, std::move(out));
}

bool is_subset(const PointSet& a, const PointSet& b) {
  require_same(a, b);
  if (a.is_finite()) {
    return std::all_of(a.elements().begin(), a.elements().end(),
                       [&](const Element& x) { return b.contains(x); });
  }
  if (b.is_box()) return b.contains(a.lo()) && b.contains(a.hi());
  if (a.degenerate()) return b.contains(a.lo());
  if (a.group().kind() == GroupKind::IntLattice) return is_subset(to_finite(a), b);
  return false;
}

PointSet intersection(const PointSet& a, const PointSet& b) {
  require_same(a, b);
  const GroupSpec& g = a.group();
  if (a.is_finite() || b.is_finite()) {
    const PointSet& f = a.is_finite() ? a : b;
    const PointSet& other = a.is_finite() ? b : a;
    std::vector<Element> out;
    for (const auto& x : f.elements())
      if (other.contains(x)) out.push_back(x);
    return PointSet::finite(g, std::move(out));
  }
  std::vector<Rational> lo(g.dim()), hi(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    lo[i] = a.lo()[i] > b.lo()[i] ? a.lo()[i] : b.lo()[i];
    hi[i] = a.hi()[i] < b.hi()[i] ? a.hi()[i] : b.hi()[i];
    if (lo[i] > hi[i]) return PointSet::finite(g, {});
  }
  return PointSet::box(g, Element(std::move(lo)), Element(std::move(hi)));
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  require_same(a, b);
  if (a.is_finite() && b.is_finite()) {
    std::vector<Element> out = a.elements();
    out.insert(out.end(), b.elements().begin(), b.elements().end());
    return PointSet::finite(a.group(), std::move(out));
  }
  if (is_subset(a, b)) return b;
  if (is_subset(b, a)) return a;
  throw Error(ErrorCode::UnsupportedRepresentation, "union of these sets is not representable");
}

bool sum_contains(const PointSet& b, const PointSet& c, const Element& z) {
  require_same(b, c);
  const GroupSpec& g = b.group();
  if (c.is_finite()) {
    return std::any_of(c.elements().begin(), c.elements().end(),
                       [&](const Element& x) { return b.contains(g.sub(z, x)); });
  }
  if (b.is_finite()) {
    return std::any_of(b.elements().begin(), b.elements().end(),
                       [&](const Element& x) { return c.contains(g.sub(z, x)); });
  }
  return sumset(b, c).contains(z);
}

}  // namespace gconv

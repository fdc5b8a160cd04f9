#include "operator.hpp"

#include <set>

#include "error.hpp"

namespace gconv {

namespace {

struct RatioRange {
  Rational sup;
  Rational inf;
};

// Exhaustive sup / inf of ||T x|| / ||x|| over a finite group.
RatioRange finite_ratios(const Endomorphism& t, const MetricSpec& m) {
  const GroupSpec& g = t.group();
  require_compatible(g, m);
  const auto xs = g.elements();
  bool first = true;
  RatioRange r;
  for (const auto& x : xs) {
    Rational nx = norm(g, m, x);
    if (nx == 0) continue;
    Rational q = norm(g, m, t.apply(x)) / nx;
    if (first || q > r.sup) r.sup = q;
    if (first || q < r.inf) r.inf = q;
    first = false;
  }
  return r;
}

}  // namespace

Rational matrix_op_norm(const Matrix& a, const MetricSpec& m) {
  const auto& w = m.weights();
  if (w.size() != a.rows() || !a.square()) {
    throw Error(ErrorCode::MetricGroupMismatch, "weight count does not match the matrix");
  }
  const std::size_t n = a.rows();
  Rational best;
  if (m.kind() == MetricKind::WeightedLinf) {
    // sup over y = D x with ||y||_inf = 1 of max_i w_i |sum_j a_ij y_j / w_j|.
    for (std::size_t i = 0; i < n; ++i) {
      Rational row;
      for (std::size_t j = 0; j < n; ++j) row += abs(a(i, j)) / w[j];
      row *= w[i];
      if (row > best) best = row;
    }
  } else if (m.kind() == MetricKind::WeightedL1) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational col;
      for (std::size_t i = 0; i < n; ++i) col += w[i] * abs(a(i, j));
      col /= w[j];
      if (col > best) best = col;
    }
  } else {
    throw Error(ErrorCode::MetricGroupMismatch, "closed-form operator norm needs an l1/linf metric");
  }
  return best;
}

Rational op_norm(const Endomorphism& t, const MetricSpec& m) {
  const GroupSpec& g = t.group();
  if (g.is_finite()) return finite_ratios(t, m).sup;
  require_compatible(g, m);
  return matrix_op_norm(t.matrix(), m);
}

Rational injectivity_measure(const Endomorphism& t, const MetricSpec& m) {
  const GroupSpec& g = t.group();
  if (g.is_finite()) return finite_ratios(t, m).inf;
  require_compatible(g, m);
  auto inv = t.matrix().inverse();
  if (!inv) return Rational(0);
  return Rational(1) / matrix_op_norm(*inv, m);
}

Rational operator_distance(const Endomorphism& t, const Endomorphism& s, const MetricSpec& m) {
  return op_norm(sub(t, s), m);
}

RhoBracket spectral_radius(const Endomorphism& t, const MetricSpec& m, unsigned horizon) {
  const GroupSpec& g = t.group();
  require_compatible(g, m);
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (g.is_finite()) {
    // ||T^k||* takes finitely many values, so their k-th roots tend to 1
    // unless the powers reach zero.
    std::set<Endomorphism> seen;
    Endomorphism p = t;
    while (seen.insert(p).second) {
      if (p.is_zero()) return {Rational(0), Rational(0), true};
      p = compose(p, t);
    }
    return {Rational(1), Rational(1), true};
  }
  const std::size_t n = g.dim();
  if (power(t, n).is_zero()) return {Rational(0), Rational(0), true};

  RhoBracket b;
  b.lower = g.kind() == GroupKind::IntLattice ? Rational(1) : Rational(0);
  Rational det = abs(t.matrix().determinant());
  if (det > 0) {
    Rational c = root_lower(det, n);
    if (c > b.lower) b.lower = c;
  }
  bool have_upper = false;
  Endomorphism p = t;
  for (unsigned k = 1; k <= horizon; ++k) {
    Rational u = root_upper(op_norm(p, m), k);
    if (!have_upper || u < b.upper) b.upper = u;
    have_upper = true;
    Rational tr = abs(p.matrix().trace()) / Rational(static_cast<unsigned long>(n));
    Rational c = root_lower(tr, k);
    if (c > b.lower) b.lower = c;
    c = root_lower(injectivity_measure(p, m), k);
    if (c > b.lower) b.lower = c;
    if (k < horizon) p = compose(p, t);
  }
  b.exact = b.lower == b.upper;
  return b;
}

Endomorphism neumann_inverse(const Endomorphism& t, const MetricSpec& m, unsigned max_terms,
                             unsigned horizon) {
  const GroupSpec& g = t.group();
  if (!g.complete()) {
    throw Error(ErrorCode::NotComplete, g.describe() + " is not complete; the series need not converge");
  }
  RhoBracket rho = spectral_radius(t, m, horizon);
  if (!rho.certified_below_one()) {
    throw Error(ErrorCode::RhoNotCertifiedBelowOne,
                "rho(T) <= " + rho.upper.get_str() + " is not certified below 1");
  }
  const Endomorphism id = Endomorphism::identity(g);
  Endomorphism sum = id;
  Endomorphism term = t;
  unsigned terms = 1;
  while (!term.is_zero()) {
    if (terms >= max_terms) {
      throw Error(ErrorCode::NoConvergenceWithinBudget,
                  "series did not terminate within " + std::to_string(max_terms) + " terms");
    }
    sum = add(sum, term);
    term = compose(term, t);
    ++terms;
  }
  const Endomorphism one_minus = sub(id, t);
  if (compose(one_minus, sum) != id || compose(sum, one_minus) != id) {
    throw std::logic_error("Neumann sum failed to invert I - T");
  }
  return sum;
}

Endomorphism shifted_inverse(const Endomorphism& s, const Endomorphism& t, const MetricSpec& m,
                             unsigned max_terms, unsigned horizon) {
  require_same_group(s.group(), t.group());
  const GroupSpec& g = s.group();
  if (!g.complete()) throw Error(ErrorCode::NotComplete, g.describe() + " is not complete");
  auto s_inv = inverse(s);
  if (!s_inv) throw Error(ErrorCode::SNotInvertible, "S has no inverse endomorphism");

  std::optional<Endomorphism> right, left;
  const Endomorphism ts = compose(t, *s_inv);
  if (spectral_radius(ts, m, horizon).certified_below_one()) {
    right = compose(*s_inv, neumann_inverse(ts, m, max_terms, horizon));
  }
  const Endomorphism st = compose(*s_inv, t);
  if (spectral_radius(st, m, horizon).certified_below_one()) {
    left = compose(neumann_inverse(st, m, max_terms, horizon), *s_inv);
  }
  if (!right && !left) {
    throw Error(ErrorCode::RhoNotCertifiedBelowOne,
                "neither rho(T o S^-1) nor rho(S^-1 o T) is certified below 1");
  }
  if (right && left && *right != *left) {
    throw std::logic_error("the two factorizations of (S - T)^-1 disagree");
  }
  Endomorphism r = right ? *right : *left;
  const Endomorphism diff = sub(s, t);
  const Endomorphism id = Endomorphism::identity(g);
  if (compose(diff, r) != id || compose(r, diff) != id) {
    throw std::logic_error("computed (S - T)^-1 does not invert S - T");
  }
  return r;
}

Endomorphism midpoint_recursion(const Endomorphism& t, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const Endomorphism id = Endomorphism::identity(t.group());
  Endomorphism cur = t;
  for (unsigned k = 1; k < n; ++k) {
    Endomorphism rest = sub(id, cur);
    cur = add(compose(cur, cur), compose(rest, rest));
  }
  return cur;
}

Endomorphism midpoint_closed_form(const Endomorphism& t, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const GroupSpec& g = t.group();
  if (!g.divisible_by(2)) {
    throw Error(ErrorCode::NotDivisible, g.describe() + " is not uniquely 2-divisible");
  }
  const Endomorphism id = Endomorphism::identity(g);
  Endomorphism p = sub(scale(2, t), id);
  for (unsigned k = 1; k < n; ++k) p = compose(p, p);
  return divide(add(id, p), 2);
}

}  // namespace gconv

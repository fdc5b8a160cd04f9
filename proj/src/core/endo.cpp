#include "endo.hpp"

#include <set>

#include "error.hpp"

namespace gconv {

namespace {

void canonicalize(const GroupSpec& g, Matrix& m) {
  const std::size_t n = g.dim();
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "endomorphism of " + g.describe() + " needs a " + std::to_string(n) + "x" +
                    std::to_string(n) + " matrix");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational& a = m(i, j);
      switch (g.kind()) {
        case GroupKind::Finite: {
          if (!is_integer(a)) {
            throw Error(ErrorCode::InvalidArgument, "entries over a finite group must be integers");
          }
          const Integer& mi = g.moduli()[i];
          const Integer& mj = g.moduli()[j];
          Integer r = mod(a.get_num(), mi);
          if (mod(r * mj, mi) != 0) {
            throw Error(ErrorCode::NotAHomomorphism,
                        "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                            a.get_str() + ": " + a.get_str() + "*" + mj.get_str() +
                            " is not 0 mod " + mi.get_str());
          }
          a = Rational(r);
          break;
        }
        case GroupKind::IntLattice:
          if (!is_integer(a)) {
            throw Error(ErrorCode::InvalidArgument, "entries over Z^n must be integers: " + a.get_str());
          }
          break;
        case GroupKind::DyadicLattice:
          if (!is_dyadic(a)) {
            throw Error(ErrorCode::InvalidArgument, "entries over D^n must be dyadic: " + a.get_str());
          }
          break;
      }
    }
}

#ifndef NDEBUG
void check_additive(const Endomorphism& t) {
  const GroupSpec& g = t.group();
  if (g.order() > 16) return;
  auto xs = g.elements();
  for (const auto& x : xs)
    for (const auto& y : xs) {
      if (t.apply(g.add(x, y)) != g.add(t.apply(x), t.apply(y))) {
        throw Error(ErrorCode::NotAHomomorphism, "not additive at " + g.format_element(x) + ", " +
                                                      g.format_element(y));
      }
    }
}
#endif

}  // namespace

Endomorphism Endomorphism::make(const GroupSpec& g, Matrix matrix) {
  canonicalize(g, matrix);
  Endomorphism t(g, std::move(matrix));
#ifndef NDEBUG
  if (g.is_finite()) check_additive(t);
#endif
  return t;
}

Endomorphism Endomorphism::identity(const GroupSpec& g) { return make(g, Matrix::identity(g.dim())); }

Endomorphism Endomorphism::zero(const GroupSpec& g) { return make(g, Matrix(g.dim(), g.dim())); }

Endomorphism Endomorphism::pi(const GroupSpec& g, const Integer& k) {
  return make(g, Matrix::scalar(g.dim(), Rational(k)));
}

Endomorphism Endomorphism::diagonal(const GroupSpec& g, const std::vector<Rational>& d) {
  return make(g, Matrix::diagonal(d));
}

Element Endomorphism::apply(const Element& x) const {
  group_.require_member(x);
  std::vector<Rational> y = matrix_.apply(x.coords);
  if (group_.is_finite()) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = Rational(mod(y[i].get_num(), group_.moduli()[i]));
  }
  return Element(std::move(y));
}

bool Endomorphism::is_identity() const { return matrix_ == Matrix::identity(group_.dim()); }

std::string Endomorphism::format() const {
  std::string s = "[";
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    if (i) s += ", ";
    s += "[";
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      if (j) s += ", ";
      s += group_.format_scalar(matrix_(i, j));
    }
    s += "]";
  }
  return s + "]";
}

bool operator==(const Endomorphism& a, const Endomorphism& b) {
  return a.group_ == b.group_ && a.matrix_ == b.matrix_;
}

bool operator<(const Endomorphism& a, const Endomorphism& b) { return a.matrix_ < b.matrix_; }

Endomorphism compose(const Endomorphism& t, const Endomorphism& s) {
  require_same_group(t.group(), s.group());
  return Endomorphism::make(t.group(), t.matrix() * s.matrix());
}

Endomorphism add(const Endomorphism& t, const Endomorphism& s) {
  require_same_group(t.group(), s.group());
  return Endomorphism::make(t.group(), t.matrix() + s.matrix());
}

Endomorphism sub(const Endomorphism& t, const Endomorphism& s) {
  require_same_group(t.group(), s.group());
  return Endomorphism::make(t.group(), t.matrix() - s.matrix());
}

Endomorphism neg(const Endomorphism& t) { return Endomorphism::make(t.group(), -t.matrix()); }

Endomorphism scale(const Integer& k, const Endomorphism& t) {
  return Endomorphism::make(t.group(), t.matrix().scaled(Rational(k)));
}

Endomorphism power(const Endomorphism& t, unsigned long k) {
  Endomorphism result = Endomorphism::identity(t.group());
  Endomorphism base = t;
  while (k) {
    if (k & 1) result = compose(result, base);
    k >>= 1;
    if (k) base = compose(base, base);
  }
  return result;
}

Endomorphism divide(const Endomorphism& t, const Integer& n) {
  const GroupSpec& g = t.group();
  if (!g.divisible_by(n)) {
    throw Error(ErrorCode::NotDivisible, g.describe() + " is not divisible by " + n.get_str());
  }
  Matrix m = t.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational factor;
    if (g.is_finite()) {
      Integer inv;
      mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), g.moduli()[i].get_mpz_t());
      factor = Rational(inv);
    } else {
      factor = Rational(1) / Rational(n);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= factor;
  }
  return Endomorphism::make(g, std::move(m));
}

bool commutes(const Endomorphism& t, const Endomorphism& s) { return compose(t, s) == compose(s, t); }

Endomorphism ring_op(RingOp op, const GroupSpec& g, const std::vector<Endomorphism>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "ring operation expects " + std::to_string(n) + " operands");
    }
    for (const auto& a : args) require_same_group(g, a.group());
  };
  switch (op) {
    case RingOp::Compose: need(2); return compose(args[0], args[1]);
    case RingOp::Add: need(2); return add(args[0], args[1]);
    case RingOp::Sub: need(2); return sub(args[0], args[1]);
    case RingOp::Identity: need(0); return Endomorphism::identity(g);
    case RingOp::Zero: need(0); return Endomorphism::zero(g);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown ring operation");
}

std::optional<Endomorphism> inverse(const Endomorphism& t) {
  const GroupSpec& g = t.group();
  if (g.is_finite()) {
    // In a finite monoid t is a unit iff its powers return to the identity.
    std::set<Endomorphism> seen;
    Endomorphism prev = Endomorphism::identity(g);
    Endomorphism cur = t;
    while (seen.insert(cur).second) {
      if (cur.is_identity()) return prev;
      prev = cur;
      cur = compose(cur, t);
    }
    return std::nullopt;
  }
  auto inv = t.matrix().inverse();
  if (!inv) return std::nullopt;
  for (const auto& v : inv->data()) {
    if (g.kind() == GroupKind::IntLattice ? !is_integer(v) : !is_dyadic(v)) return std::nullopt;
  }
  return Endomorphism::make(g, std::move(*inv));
}

Integer endomorphism_count(const GroupSpec& g) {
  if (!g.is_finite()) throw Error(ErrorCode::NotEnumerable, g.describe() + " has infinitely many endomorphisms");
  Integer count = 1;
  for (const auto& mi : g.moduli())
    for (const auto& mj : g.moduli()) count *= gcd(mi, mj);
  return count;
}

std::vector<Endomorphism> enumerate_endomorphisms(const GroupSpec& g) {
  Integer count = endomorphism_count(g);
  if (count > kMaxEnumeration) {
    throw Error(ErrorCode::TooLarge, "endomorphism ring of " + g.describe() + " has " + count.get_str() +
                                         " elements, beyond the enumeration limit");
  }
  const std::size_t n = g.dim();
  // Admissible entries at (i, j): multiples of step = m_i / gcd(m_i, m_j) below m_i.
  std::vector<Integer> step(n * n), choices(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer d = gcd(g.moduli()[i], g.moduli()[j]);
      step[i * n + j] = g.moduli()[i] / d;
      choices[i * n + j] = d;
    }
  std::vector<Endomorphism> out;
  out.reserve(count.get_ui());
  std::vector<unsigned long> digit(n * n, 0);
  for (std::size_t idx = 0; idx < count.get_ui(); ++idx) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = Rational(step[k] * digit[k]);
    out.push_back(Endomorphism::make(g, std::move(m)));
    for (std::size_t k = n * n; k-- > 0;) {
      if (++digit[k] < choices[k].get_ui()) break;
      digit[k] = 0;
    }
  }
  return out;
}

}  // namespace gconv

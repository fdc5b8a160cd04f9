#include <doctest.h>

#include "random.hpp"
#include "support.hpp"

using namespace test;

namespace {

// Largest ||T x|| / ||x|| over the window 0 < ||x||_inf <= r of Z^2.
Rational window_op_norm(const Endomorphism& t, const MetricSpec& m, long r) {
  const auto& g = t.group();
  Rational best(0);
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b) {
      if (!a && !b) continue;
      const Element x = el(g, {a, b});
      best = std::max(best, Rational(norm(g, m, t.apply(x)) / norm(g, m, x)));
    }
  return best;
}

Rational window_mu(const Endomorphism& t, const MetricSpec& m, long r) {
  const auto& g = t.group();
  Rational best(-1);
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b) {
      if (!a && !b) continue;
      const Element x = el(g, {a, b});
      const Rational v = norm(g, m, t.apply(x)) / norm(g, m, x);
      if (best < 0 || v < best) best = v;
    }
  return best;
}

Endomorphism random_int(const GroupSpec& g, Rng& rng, long bound) {
  const std::size_t n = g.dim();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = uniform_int(rng, -bound, bound);
  return Endomorphism::make(g, std::move(a));
}

}  // namespace

TEST_CASE("endomorphism construction") {
  const auto z9 = zmod(9);
  CHECK(mat(z9, 1, {2}) == pi(z9, 2));
  CHECK(mat(z9, 1, {11}) == pi(z9, 2));

  // Z2 x Z4 -> Z2 via x -> x on the second factor is fine; the reverse is not.
  const auto z2z4 = GroupSpec::finite({2, 4});
  CHECK_NOTHROW(mat(z2z4, 2, {1, 1, 0, 1}));
  const auto z4z2 = GroupSpec::finite({4, 2});
  try {
    mat(z4z2, 2, {1, 1, 0, 1});
    FAIL("expected NotAHomomorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAHomomorphism);
  }
  CHECK_THROWS_AS(mat(GroupSpec::int_lattice(1), 1, {q("1/2")}), Error);
  CHECK_NOTHROW(mat(GroupSpec::dyadic_lattice(1), 1, {q("1/2")}));
}

TEST_CASE("ring operations") {
  const auto z = GroupSpec::int_lattice(1);
  const auto id = Endomorphism::identity(z);
  CHECK(compose(pi(z, 3), pi(z, 4)) == pi(z, 12));
  CHECK(add(compose(pi(z, 3), pi(z, 4)), compose(sub(id, pi(z, 3)), pi(z, 5))) == pi(z, 2));
  CHECK(sub(id, id).is_zero());
  const auto z9 = zmod(9);
  CHECK(compose(pi(z9, 3), pi(z9, 3)).is_zero());
  CHECK(ring_op(RingOp::Identity, z9, {}) == Endomorphism::identity(z9));
  CHECK(ring_op(RingOp::Sub, z9, {pi(z9, 2), pi(z9, 6)}) == pi(z9, 5));
  CHECK(power(pi(z9, 2), 6) == Endomorphism::identity(z9));
  CHECK(endomorphism_count(GroupSpec::finite({2, 4})) == 2 * 2 * 2 * 4);
  CHECK(enumerate_endomorphisms(GroupSpec::finite({2, 4})).size() == 32);
  CHECK(enumerate_endomorphisms(zmod(12)).size() == 12);
}

TEST_CASE("ring axioms on the endomorphisms of Z2 x Z4") {
  const auto g = GroupSpec::finite({2, 4});
  const auto all = enumerate_endomorphisms(g);
  const auto xs = g.elements();
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (std::size_t j = 0; j < all.size(); j += 5) {
      const auto& t = all[i];
      const auto& s = all[j];
      for (const auto& x : xs) {
        CHECK(compose(t, s).apply(x) == t.apply(s.apply(x)));
        CHECK(add(t, s).apply(x) == g.add(t.apply(x), s.apply(x)));
        for (const auto& y : xs) CHECK(t.apply(g.add(x, y)) == g.add(t.apply(x), t.apply(y)));
      }
    }
}

TEST_CASE("operator norm") {
  const auto z9 = zmod(9);
  CHECK(op_norm(pi(z9, 2), cyclic1()) == 2);
  const auto z2 = GroupSpec::int_lattice(2);
  const auto shear = mat(z2, 2, {1, 1, 0, 1});
  CHECK(op_norm(shear, linf(2)) == 2);
  CHECK(window_op_norm(shear, linf(2), 3) == 2);
  CHECK(op_norm(Endomorphism::identity(z2), linf(2)) == 1);
  CHECK(op_norm(Endomorphism::identity(z9), cyclic1()) == 1);

  for (long m : {7, 9, 12})
    for (long a = 0; a < m; ++a) CHECK(op_norm(pi(zmod(m), a), cyclic1()) == oracle_op_norm(a, m));
}

TEST_CASE("lattice norms agree with windowed enumeration") {
  // Row sums (linf) and column sums (l1) are attained on the unit window; the
  // window never exceeds them.
  Rng rng(5);
  const auto z2 = GroupSpec::int_lattice(2);
  const std::vector<MetricSpec> metrics = {linf(2), MetricSpec::weighted_l1({1, 1}),
                                           MetricSpec::weighted_linf({1, 2})};
  for (int i = 0; i < 40; ++i) {
    const auto t = random_int(z2, rng, 3);
    for (const auto& m : metrics) {
      CHECK(window_op_norm(t, m, 2) == op_norm(t, m));
      const Rational mu = injectivity_measure(t, m);
      CHECK(mu <= window_mu(t, m, 3));
      if (t.matrix().determinant() == 0) CHECK(mu == 0);
    }
  }
}

TEST_CASE("measure of injectivity") {
  const auto z9 = zmod(9);
  CHECK(injectivity_measure(pi(z9, 2), cyclic1()) == q("1/4"));
  CHECK(injectivity_measure(mat(GroupSpec::int_lattice(2), 2, {1, 0, 0, 0}), linf(2)) == 0);
  CHECK(injectivity_measure(pi(GroupSpec::int_lattice(1), 3), linf(1)) == 3);
  for (long m : {7, 9, 12})
    for (long a = 0; a < m; ++a) CHECK(injectivity_measure(pi(zmod(m), a), cyclic1()) == oracle_mu(a, m));
}

TEST_CASE("spectral radius") {
  const auto z9 = zmod(9);
  RhoBracket r = spectral_radius(pi(z9, 3), cyclic1());
  CHECK(r.exact);
  CHECK(r.upper == 0);
  const auto z2 = GroupSpec::int_lattice(2);
  r = spectral_radius(mat(z2, 2, {0, 1, 0, 0}), linf(2));
  CHECK(r.exact);
  CHECK(r.upper == 0);
  r = spectral_radius(Endomorphism::identity(z2), linf(2));
  CHECK(r.exact);
  CHECK(r.upper == 1);
  const auto d1 = GroupSpec::dyadic_lattice(1);
  r = spectral_radius(mat(d1, 1, {q("1/2")}), linf(1));
  CHECK(r.exact);
  CHECK(r.upper == q("1/2"));
  CHECK(r.lower == q("1/2"));

  for (long m : {9, 12})
    for (long a = 0; a < m; ++a) {
      r = spectral_radius(pi(zmod(m), a), cyclic1());
      CHECK(r.exact);
      CHECK(r.upper == oracle_rho(a, m));
    }
}

TEST_CASE("on Z^n the spectral radius is below one only for nilpotent maps") {
  // An integer matrix with an eigenvalue of modulus in (0, 1) has a conjugate
  // of modulus > 1 (the product of nonzero eigenvalues is a nonzero integer),
  // so rho < 1 forces every eigenvalue to vanish. Nilpotency is checked by
  // powering: A^n == 0.
  Rng rng(17);
  const auto z2 = GroupSpec::int_lattice(2);
  int nilpotent = 0;
  for (int i = 0; i < 300; ++i) {
    auto t = random_int(z2, rng, 2);
    const bool nil = power(t, 2).is_zero();
    nilpotent += nil;
    const RhoBracket r = spectral_radius(t, linf(2));
    CHECK(r.lower <= r.upper);
    CHECK(r.certified_below_one() == nil);
    if (!nil) CHECK(r.lower >= 1);
  }
  CHECK(nilpotent > 0);
}

TEST_CASE("Neumann inverse") {
  const auto z9 = zmod(9);
  const auto id9 = Endomorphism::identity(z9);
  CHECK(neumann_inverse(pi(z9, 3), cyclic1(), 16) == pi(z9, 4));
  const auto z2 = GroupSpec::int_lattice(2);
  const auto n = mat(z2, 2, {0, 1, 0, 0});
  CHECK(neumann_inverse(n, linf(2), 16) == add(Endomorphism::identity(z2), n));
  CHECK(neumann_inverse(Endomorphism::zero(z9), cyclic1(), 16) == id9);
  try {
    neumann_inverse(id9, cyclic1(), 16);
    FAIL("expected RhoNotCertifiedBelowOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RhoNotCertifiedBelowOne);
  }
  // Dyadic lattices are not complete.
  try {
    neumann_inverse(Endomorphism::zero(GroupSpec::dyadic_lattice(1)), linf(1), 16);
    FAIL("expected NotComplete");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotComplete);
  }
}

TEST_CASE("shifted inverse") {
  const auto z9 = zmod(9);
  const auto id = Endomorphism::identity(z9);
  CHECK(shifted_inverse(id, pi(z9, 3), cyclic1(), 16) == pi(z9, 4));
  const auto r = shifted_inverse(pi(z9, 2), pi(z9, 6), cyclic1(), 16);
  CHECK(compose(sub(pi(z9, 2), pi(z9, 6)), r) == id);
  CHECK(compose(r, sub(pi(z9, 2), pi(z9, 6))) == id);
  CHECK(r == pi(z9, 2));
  const auto z2 = GroupSpec::int_lattice(2);
  const auto n = mat(z2, 2, {0, 3, 0, 0});
  CHECK(shifted_inverse(Endomorphism::identity(z2), n, linf(2), 16) == add(Endomorphism::identity(z2), n));
  try {
    shifted_inverse(pi(z9, 3), Endomorphism::zero(z9), cyclic1(), 16);
    FAIL("expected SNotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SNotInvertible);
  }
}

TEST_CASE("midpoint recursion and closed form") {
  const auto z9 = zmod(9);
  CHECK(midpoint_recursion(pi(z9, 2), 1) == pi(z9, 2));
  for (unsigned n = 2; n <= 8; ++n) CHECK(midpoint_recursion(pi(z9, 2), n) == pi(z9, 5));
  CHECK(midpoint_closed_form(pi(z9, 2), 1) == pi(z9, 2));
  CHECK(midpoint_closed_form(pi(z9, 2), 2) == pi(z9, 5));
  const auto d1 = GroupSpec::dyadic_lattice(1);
  const auto half = mat(d1, 1, {q("1/2")});
  for (unsigned n = 1; n <= 4; ++n) {
    CHECK(midpoint_recursion(half, n) == half);
    CHECK(midpoint_closed_form(half, n) == half);
  }
  CHECK(midpoint_recursion(Endomorphism::identity(z9), 2) == Endomorphism::identity(z9));
  CHECK_THROWS_AS(midpoint_closed_form(pi(GroupSpec::int_lattice(1), 2), 2), Error);

  // Agreement wherever the closed form exists.
  for (long m : {5, 7, 9, 11})
    for (long a = 0; a < m; ++a)
      for (unsigned n = 1; n <= 8; ++n)
        CHECK(midpoint_recursion(pi(zmod(m), a), n) == midpoint_closed_form(pi(zmod(m), a), n));
  Rng rng(3);
  const auto d2 = GroupSpec::dyadic_lattice(2);
  for (int i = 0; i < 10; ++i) {
    Matrix a(2, 2);
    for (auto k : {0, 1, 2, 3}) a(k / 2, k % 2) = uniform_dyadic(rng, -1, 1, 2);
    const auto t = Endomorphism::make(d2, a);
    for (unsigned n = 1; n <= 4; ++n) CHECK(midpoint_recursion(t, n) == midpoint_closed_form(t, n));
  }
}

TEST_CASE("inverse in the ring") {
  const auto z9 = zmod(9);
  CHECK(inverse(pi(z9, 2)) == pi(z9, 5));
  CHECK_FALSE(inverse(pi(z9, 3)));
  const auto z2 = GroupSpec::int_lattice(2);
  CHECK(inverse(mat(z2, 2, {2, 1, 1, 1})) == mat(z2, 2, {1, -1, -1, 2}));
  CHECK_FALSE(inverse(pi(z2, 2)));
  const auto d1 = GroupSpec::dyadic_lattice(1);
  CHECK(inverse(mat(d1, 1, {4})) == mat(d1, 1, {q("1/4")}));
  CHECK_FALSE(inverse(mat(d1, 1, {3})));
}

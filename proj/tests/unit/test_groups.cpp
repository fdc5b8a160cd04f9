#include <doctest.h>

#include "random.hpp"
#include "support.hpp"

using namespace test;

TEST_CASE("group arithmetic") {
  const auto z9 = zmod(9);
  CHECK(z9.add(el(z9, {4}), el(z9, {7})) == el(z9, {2}));
  CHECK(z9.nat_mul(2, el(z9, {5})) == el(z9, {1}));

  const auto z2 = GroupSpec::int_lattice(2);
  CHECK(z2.neg(el(z2, {3, -1})) == el(z2, {-3, 1}));
  const auto z1 = GroupSpec::int_lattice(1);
  CHECK(z1.nat_mul(3, el(z1, {4})) == el(z1, {12}));

  const auto d1 = GroupSpec::dyadic_lattice(1);
  const Element s = d1.add(el(d1, {q("1/2")}), el(d1, {q("1/4")}));
  CHECK(s == el(d1, {q("3/4")}));
  const DyadicParts parts = dyadic_parts(s[0]);
  CHECK(parts.numerator == 3);
  CHECK(parts.exponent == 2);
  CHECK(d1.format_element(s) == "(3/2^2)");
  CHECK(d1.nat_mul(2, el(d1, {q("1/2")})) == el(d1, {1}));
}

TEST_CASE("dyadic scalars print and parse as p/2^k") {
  CHECK(format_dyadic(q("5/8")) == "5/2^3");
  CHECK(format_dyadic(q("-3")) == "-3");
  CHECK(parse_scalar("5/2^3") == Rational(5, 8));
  CHECK(parse_scalar(" -1/3 ") == Rational(-1, 3));
  CHECK_THROWS_AS(format_dyadic(q("1/3")), Error);
  CHECK_THROWS_AS(parse_scalar("1.5"), Error);
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
}

TEST_CASE("membership is enforced") {
  const auto z1 = GroupSpec::int_lattice(1);
  CHECK_THROWS_AS(z1.make_element({q("1/2")}), Error);
  const auto d1 = GroupSpec::dyadic_lattice(1);
  CHECK_THROWS_AS(d1.make_element({q("1/3")}), Error);
  CHECK_THROWS_AS(d1.make_element({1, 2}), Error);
}

TEST_CASE("divisibility") {
  const auto z9 = zmod(9);
  CHECK(z9.divisible_by(2));
  CHECK(z9.div_apply(2, el(z9, {1})) == el(z9, {5}));
  CHECK_FALSE(z9.divisible_by(3));
  CHECK_FALSE(GroupSpec::int_lattice(1).divisible_by(2));
  CHECK(GroupSpec::dyadic_lattice(1).divisible_by(2));
  CHECK_FALSE(GroupSpec::dyadic_lattice(1).divisible_by(3));

  // div_apply inverts nat_mul wherever divisible_by holds.
  for (unsigned long m : {5ul, 9ul, 12ul}) {
    const auto g = zmod(m);
    for (long n = 1; n < 12; ++n) {
      if (!g.divisible_by(n)) continue;
      for (const auto& x : g.elements()) CHECK(g.div_apply(n, g.nat_mul(n, x)) == x);
    }
  }
  const auto d2 = GroupSpec::dyadic_lattice(2);
  const Element x = el(d2, {q("3/8"), -5});
  CHECK(d2.div_apply(4, d2.nat_mul(4, x)) == x);
}

TEST_CASE("norms") {
  const auto z9 = zmod(9);
  CHECK(norm(z9, cyclic1(), el(z9, {7})) == 2);
  CHECK(norm(z9, cyclic1(), el(z9, {4})) == 4);
  const auto d2 = GroupSpec::dyadic_lattice(2);
  CHECK(norm(d2, linf(2), el(d2, {q("3/2"), q("-1/4")})) == q("3/2"));
  const auto z2 = GroupSpec::int_lattice(2);
  CHECK(norm(z2, MetricSpec::weighted_l1({1, 3}), el(z2, {2, -1})) == 5);
}

TEST_CASE("metric validation") {
  CHECK(validate_metric(zmod(9), cyclic1()).is_proved());
  CHECK(validate_metric(GroupSpec::int_lattice(2), linf(2)).is_proved());

  const auto z4 = zmod(4);
  const auto bad = MetricSpec::table({{el(z4, {0}), 0}, {el(z4, {1}), 1}, {el(z4, {2}), 5}, {el(z4, {3}), 1}});
  const Verdict v = validate_metric(z4, bad);
  REQUIRE(v.is_refuted());
  const Element* x = v.get<Element>("x");
  const Element* y = v.get<Element>("y");
  REQUIRE(x);
  REQUIRE(y);
  CHECK(*x == el(z4, {1}));
  CHECK(*y == el(z4, {1}));

  // Not even: ||1|| != ||3||.
  const auto odd = MetricSpec::table({{el(z4, {0}), 0}, {el(z4, {1}), 1}, {el(z4, {2}), 1}, {el(z4, {3}), 2}});
  CHECK(validate_metric(z4, odd).is_refuted());

  CHECK_THROWS_AS(require_compatible(GroupSpec::int_lattice(1), cyclic1()), Error);
  CHECK_THROWS_AS(require_compatible(zmod(9), linf(1)), Error);
  CHECK_THROWS_AS(MetricSpec::weighted_linf({0}), Error);
}

TEST_CASE("norm axioms hold exhaustively on small finite groups") {
  const std::vector<GroupSpec> groups = {zmod(7), zmod(12), GroupSpec::finite({2, 4}), GroupSpec::finite({3, 3})};
  for (const auto& g : groups) {
    const auto m = g.dim() == 1 ? cyclic1() : MetricSpec::weighted_cyclic({1, 2});
    const auto xs = g.elements();
    for (const auto& x : xs) {
      CHECK(norm(g, m, g.neg(x)) == norm(g, m, x));
      CHECK((norm(g, m, x) == 0) == (x == g.zero()));
      for (const auto& y : xs) CHECK(norm(g, m, g.add(x, y)) <= norm(g, m, x) + norm(g, m, y));
      for (long n = 1; n <= 6; ++n) CHECK(norm(g, m, g.nat_mul(n, x)) <= n * norm(g, m, x));
    }
  }
}

TEST_CASE("norm axioms on sampled lattice points") {
  Rng rng(11);
  const auto g = GroupSpec::dyadic_lattice(3);
  for (const auto& m : {MetricSpec::weighted_linf({1, 2, q("1/2")}), MetricSpec::weighted_l1({3, 1, 1})}) {
    for (int i = 0; i < 200; ++i) {
      auto draw = [&] {
        std::vector<Rational> c;
        for (int k = 0; k < 3; ++k) c.push_back(uniform_dyadic(rng, -4, 4, 3));
        return g.make_element(std::move(c));
      };
      const Element x = draw(), y = draw();
      CHECK(norm(g, m, g.add(x, y)) <= norm(g, m, x) + norm(g, m, y));
      CHECK(norm(g, m, g.neg(x)) == norm(g, m, x));
      CHECK((norm(g, m, x) == 0) == (x == g.zero()));
    }
  }
}

TEST_CASE("norm and injectivity of multiplication by n") {
  const auto z9 = zmod(9);
  CHECK(norm_of_n(z9, cyclic1(), 2) == 2);
  CHECK(mu_of_n(z9, cyclic1(), 2) == q("1/4"));
  const auto z1 = GroupSpec::int_lattice(1);
  for (long n = 1; n < 6; ++n) {
    CHECK(norm_of_n(z1, linf(1), n) == n);
    CHECK(mu_of_n(z1, linf(1), n) == n);
  }
  CHECK(mu_of_n(GroupSpec::dyadic_lattice(1), linf(1), 2) == 2);

  // Cross-check against the integer oracle, and mu <= ||n|| everywhere;
  // mu <= 1 whenever pi_n is bijective on a finite group.
  for (long m : {5, 6, 9, 12}) {
    const auto g = zmod(m);
    for (long n = 1; n <= 13; ++n) {
      const Rational mu = mu_of_n(g, cyclic1(), n);
      CHECK(mu == oracle_mu(n, m));
      CHECK(norm_of_n(g, cyclic1(), n) == oracle_op_norm(n, m));
      CHECK(mu <= norm_of_n(g, cyclic1(), n));
      if (g.divisible_by(n)) CHECK(mu <= 1);
    }
  }
}

#include <doctest.h>

#include "support.hpp"

using namespace test;

TEST_CASE("sumsets and dilations") {
  const auto z = GroupSpec::int_lattice(1);
  CHECK(sumset(fin1(z, {0, 1}), fin1(z, {0, 1})) == fin1(z, {0, 1, 2}));
  const auto d = GroupSpec::dyadic_lattice(1);
  CHECK(sumset(box1(d, "0", "1"), box1(d, "0", "1/2")) == box1(d, "0", "3/2"));
  const auto z9 = zmod(9);
  const auto sub = fin1(z9, {0, 3, 6});
  CHECK(sumset(sub, sub) == sub);
  CHECK_THROWS_AS(sumset(box1(d, "0", "1"), PointSet::singleton(d, el(d, {0}))), Error);

  CHECK(n_fold_sum(fin1(z, {0, 1}), 2) == fin1(z, {0, 1, 2}));
  CHECK(n_dilate(fin1(z, {0, 1}), 2) == fin1(z, {0, 2}));
  CHECK(n_fold_sum(box1(d, "0", "1"), 2) == box1(d, "0", "2"));
  CHECK(n_dilate(box1(d, "0", "1"), 2) == box1(d, "0", "2"));
  CHECK(n_fold_sum(sub, 2) == sub);
  CHECK(n_dilate(sub, 2) == sub);
}

TEST_CASE("n-convexity") {
  const auto z = GroupSpec::int_lattice(1);
  const Verdict v = is_n_convex(fin1(z, {0, 1}), 2);
  REQUIRE(v.is_refuted());
  CHECK(*v.get<Element>("sum") == el(z, {1}));
  CHECK(is_n_convex(fin1(zmod(9), {0, 3, 6}), 2).is_proved());
  const auto d = GroupSpec::dyadic_lattice(1);
  CHECK(is_n_convex(box1(d, "0", "1"), 2).is_proved());
  CHECK(is_n_convex(box1(d, "0", "1"), 4).is_proved());
  // 1/3 of [0,1] is not dyadic: (0 + 0 + 1)/3 has no preimage under 3.
  CHECK(is_n_convex(box1(d, "0", "1"), 3).is_refuted());
  CHECK(is_n_convex(box1(d, "1/2", "1/2"), 3).is_proved());
  // Integer boxes are n-convex only when degenerate.
  CHECK(is_n_convex(PointSet::box(z, el(z, {0}), el(z, {2})), 2).is_refuted());
}

TEST_CASE("n.A is inside [n]A, and n- plus m-convex gives nm-convex") {
  for (long m : {6, 8, 9}) {
    const auto g = zmod(m);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); mask += 3) {
      const auto ms = members(mask, m);
      std::vector<Element> xs;
      for (long x : ms) xs.push_back(el(g, {x}));
      const auto a = PointSet::finite(g, xs);
      for (unsigned n = 1; n <= 4; ++n) CHECK(is_subset(n_dilate(a, n), n_fold_sum(a, n)));
      for (unsigned n = 2; n <= 3; ++n)
        for (unsigned k = 2; k <= 3; ++k)
          if (is_n_convex(a, n).is_proved() && is_n_convex(a, k).is_proved())
            CHECK(is_n_convex(a, n * k).is_proved());
    }
  }
}

TEST_CASE("T-convexity") {
  const auto z2 = GroupSpec::int_lattice(2);
  std::vector<Element> sq;
  for (long a : {0, 1})
    for (long b : {0, 1}) sq.push_back(el(z2, {a, b}));
  const auto d = PointSet::finite(z2, sq);
  CHECK(is_T_convex(d, mat(z2, 2, {1, 0, 0, 0})).is_proved());
  CHECK(is_T_convex(PointSet::singleton(z2, el(z2, {5, -2})), mat(z2, 2, {3, 1, 4, 1})).is_proved());

  const auto z9 = zmod(9);
  const Verdict v = is_T_convex(fin1(z9, {0, 1}), pi(z9, 5));
  REQUIRE(v.is_refuted());
  CHECK(*v.get<Element>("x") == el(z9, {1}));
  CHECK(*v.get<Element>("y") == el(z9, {0}));
  CHECK(*v.get<Element>("T(x)+(I-T)(y)") == el(z9, {5}));

  CHECK(is_family_convex(PointSet::whole(z9), {pi(z9, 2), pi(z9, 7)}).is_proved());
  std::vector<Endomorphism> all;
  for (long t = 0; t < 9; ++t) all.push_back(pi(z9, t));
  CHECK(is_family_convex(fin1(z9, {0, 3, 6}), all).is_proved());
  CHECK(is_family_convex(fin1(z9, {0, 1}), {pi(z9, 5)}).is_refuted());

  // Dyadic boxes under diagonal maps: T = 1/2 keeps [0,1]; T = 2 does not.
  const auto d1 = GroupSpec::dyadic_lattice(1);
  CHECK(is_T_convex(box1(d1, "0", "1"), mat(d1, 1, {q("1/2")})).is_proved());
  CHECK(is_T_convex(box1(d1, "0", "1"), mat(d1, 1, {q("3/4")})).is_proved());
  CHECK(is_T_convex(box1(d1, "0", "1"), mat(d1, 1, {2})).is_refuted());
}

TEST_CASE("both convexity tests agree (translated form)") {
  for (long m : {6, 7, 9}) {
    const auto g = zmod(m);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
      std::vector<Element> xs;
      for (long x : members(mask, m)) xs.push_back(el(g, {x}));
      const auto d = PointSet::finite(g, xs);
      for (long t = 0; t < m; ++t) {
        const bool direct = is_T_convex(d, pi(g, t)).is_proved();
        CHECK(direct == oracle_t_convex(members(mask, m), t, m));
        CHECK(direct == is_T_convex_pointwise(d, pi(g, t)).is_proved());
      }
    }
  }
}

TEST_CASE("hull") {
  const auto z9 = zmod(9);
  const HullResult h = convex_hull(fin1(z9, {0, 1}), {pi(z9, 5)}, 16);
  CHECK(h.complete);
  CHECK(h.hull == PointSet::whole(z9));
  const auto s = fin1(z9, {2, 4, 8});
  CHECK(convex_hull(s, {Endomorphism::identity(z9)}, 16).hull == s);
  CHECK(convex_hull(fin1(z9, {4}), {pi(z9, 5), pi(z9, 3)}, 16).hull == fin1(z9, {4}));

  // Lattices stop after max_iter rounds.
  const auto z = GroupSpec::int_lattice(1);
  const HullResult part = convex_hull(fin1(z, {0, 1}), {pi(z, 2)}, 3);
  CHECK_FALSE(part.complete);
  CHECK(part.iterations == 3);
  CHECK(is_subset(fin1(z, {-1, 0, 1, 2}), part.hull));
}

TEST_CASE("hull is the least convex superset, and a closure operator") {
  for (long m : {5, 6, 8}) {
    const auto g = zmod(m);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
      std::vector<Element> xs;
      for (long x : members(mask, m)) xs.push_back(el(g, {x}));
      const auto s = PointSet::finite(g, xs);
      for (std::vector<long> fam : {std::vector<long>{2}, {3}, {2, 3}, {m - 1}}) {
        std::vector<Endomorphism> family;
        for (long t : fam) family.push_back(pi(g, t));
        const HullResult h = convex_hull(s, family, 64);
        REQUIRE(h.complete);
        CHECK(mask_of(h.hull) == oracle_hull(mask, fam, m));
        CHECK(is_subset(s, h.hull));
        CHECK(convex_hull(h.hull, family, 64).hull == h.hull);
        CHECK(is_family_convex(h.hull, family).is_proved());
        // Monotone: adding a point never shrinks the hull.
        const auto bigger = set_union(s, fin1(g, {0}));
        CHECK(is_subset(h.hull, convex_hull(bigger, family, 64).hull));
      }
    }
  }
}

TEST_CASE("family of a set") {
  const auto z9 = zmod(9);
  CHECK(family_of(fin1(z9, {0, 1})) == std::vector<Endomorphism>{pi(z9, 0), pi(z9, 1)});
  CHECK(family_of(fin1(z9, {0, 3, 6})).size() == 9);
  CHECK(family_of(PointSet::whole(z9)).size() == 9);
  for (long m : {6, 9}) {
    const auto g = zmod(m);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); mask += 7) {
      std::vector<Element> xs;
      for (long x : members(mask, m)) xs.push_back(el(g, {x}));
      std::vector<Endomorphism> expect;
      for (long t : oracle_family(members(mask, m), m)) expect.push_back(pi(g, t));
      CHECK(family_of(PointSet::finite(g, xs)) == expect);
    }
  }
  CHECK_THROWS_AS(family_of(fin1(GroupSpec::int_lattice(1), {0})), Error);
}

TEST_CASE("diameter") {
  const auto z = GroupSpec::int_lattice(1);
  CHECK(diameter(fin1(z, {0, 3}), linf(1)) == 3);
  const auto d2 = GroupSpec::dyadic_lattice(2);
  CHECK(diameter(PointSet::box(d2, el(d2, {0, 0}), el(d2, {1, 1})), linf(2)) == 1);
  CHECK(diameter(PointSet::box(d2, el(d2, {0, 0}), el(d2, {1, 1})), MetricSpec::weighted_l1({1, 1})) == 2);
  CHECK(diameter(fin1(zmod(9), {0, 4, 5}), cyclic1()) == 4);
  CHECK_THROWS_AS(diameter(PointSet::finite(z, {}), linf(1)), Error);
}

TEST_CASE("images and preimages") {
  const auto z9 = zmod(9);
  CHECK(image(fin1(z9, {0, 1, 2}), pi(z9, 3)) == fin1(z9, {0, 3, 6}));
  CHECK(preimage(fin1(z9, {0}), pi(z9, 3)) == fin1(z9, {0, 3, 6}));
  const auto d = fin1(z9, {1, 5, 7});
  CHECK(image(d, Endomorphism::identity(z9)) == d);
  CHECK(preimage(d, Endomorphism::identity(z9)) == d);
  CHECK(image_preimage(d, pi(z9, 2), MapDirection::Image) == fin1(z9, {2, 1, 5}));

  const auto z = GroupSpec::int_lattice(1);
  CHECK(preimage(fin1(z, {-2, 3, 4}), pi(z, 2)) == fin1(z, {-1, 2}));
  const auto d1 = GroupSpec::dyadic_lattice(1);
  CHECK(image_closure(box1(d1, "0", "1"), mat(d1, 1, {q("-3/4")})) == box1(d1, "-3/4", "0"));
}

TEST_CASE("set algebra") {
  const auto z9 = zmod(9);
  CHECK(intersection(fin1(z9, {0, 1, 2}), fin1(z9, {2, 3})) == fin1(z9, {2}));
  CHECK(set_union(fin1(z9, {0}), fin1(z9, {4})) == fin1(z9, {0, 4}));
  const auto d1 = GroupSpec::dyadic_lattice(1);
  CHECK(set_union(box1(d1, "0", "1"), box1(d1, "1/4", "1/2")) == box1(d1, "0", "1"));
  CHECK(intersection(box1(d1, "0", "1"), box1(d1, "1/2", "2")) == box1(d1, "1/2", "1"));
  CHECK(sum_contains(box1(d1, "0", "1"), fin1(GroupSpec::dyadic_lattice(1), {0}), el(d1, {q("3/4")})));
  CHECK_FALSE(sum_contains(box1(d1, "0", "1"), fin1(d1, {0}), el(d1, {2})));
  const auto z = GroupSpec::int_lattice(1);
  CHECK(to_finite(PointSet::box(z, el(z, {-1}), el(z, {1}))) == fin1(z, {-1, 0, 1}));
  CHECK_THROWS_AS(to_finite(box1(d1, "0", "1")), Error);
}

TEST_CASE("closure of convex sets under the set operations") {
  const auto z9 = zmod(9);
  const std::vector<Endomorphism> family = {pi(z9, 2)};
  std::vector<PointSet> convex;
  for (std::uint32_t mask = 1; mask < 512; ++mask) {
    std::vector<Element> xs;
    for (long x : members(mask, 9)) xs.push_back(el(z9, {x}));
    auto s = PointSet::finite(z9, xs);
    if (is_family_convex(s, family).is_proved()) convex.push_back(std::move(s));
  }
  REQUIRE(convex.size() >= 3);
  for (const auto& a : convex)
    for (const auto& b : convex) {
      const auto i = intersection(a, b);
      if (!i.empty()) CHECK(is_family_convex(i, family).is_proved());
      CHECK(is_family_convex(sumset(a, b), family).is_proved());
      if (is_subset(a, b)) CHECK(is_family_convex(set_union(a, b), family).is_proved());
    }
}

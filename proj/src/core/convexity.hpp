#pragma once

#include <vector>

#include "endo.hpp"
#include "metric.hpp"
#include "pointset.hpp"
#include "verdict.hpp"

namespace gconv {

// Minkowski sum. Finite + finite and box + box only (UnsupportedMixedSum otherwise).
PointSet sumset(const PointSet& a, const PointSet& b);
// [n]A = A + ... + A (n terms) and n.A = {n.x}; n >= 1.
PointSet n_fold_sum(const PointSet& a, unsigned n);
PointSet n_dilate(const PointSet& a, const Integer& n);

// [n]A subset of n.A. Finite sets exhaustively, boxes symbolically.
Verdict is_n_convex(const PointSet& a, unsigned n);

// T(x) + (I - T)(y) in D for all x, y in D. Boxes are decided exactly from the
// extreme corners of each output coordinate.
Verdict is_T_convex(const PointSet& d, const Endomorphism& t);
// The translated form: T(D - p) subset of D - p for every p in D (finite sets).
Verdict is_T_convex_pointwise(const PointSet& d, const Endomorphism& t);
Verdict is_family_convex(const PointSet& d, const std::vector<Endomorphism>& family);

struct HullResult {
  PointSet hull;
  bool complete = false;
  unsigned iterations = 0;
};

// Least fixed point of S -> S u {T(x) + (I - T)(y)}. Finite groups always run
// to completion; lattices stop after max_iter rounds.
HullResult convex_hull(const PointSet& s, const std::vector<Endomorphism>& family, unsigned max_iter);

// T_D: every endomorphism of a finite group for which D is T-convex.
std::vector<Endomorphism> family_of(const PointSet& d);

Rational diameter(const PointSet& a, const MetricSpec& m);

enum class MapDirection { Image, Preimage };
PointSet image(const PointSet& d, const Endomorphism& a);
PointSet preimage(const PointSet& d, const Endomorphism& a);
PointSet image_preimage(const PointSet& d, const Endomorphism& a, MapDirection dir);
// cl(T(D)): the image itself for finite sets; the enclosing box for boxes
// under diagonal maps (the image is dense in it on the dyadic lattice).
PointSet image_closure(const PointSet& d, const Endomorphism& a);

// Topological closure in the instantiated topologies: identity on both kinds.
PointSet closure(const PointSet& a);

bool is_subset(const PointSet& a, const PointSet& b);
PointSet intersection(const PointSet& a, const PointSet& b);
// Union of two sets when representable (finite sets, or nested sets).
PointSet set_union(const PointSet& a, const PointSet& b);
// z in B + C, for any pair where at least one side is finite or both are boxes.
bool sum_contains(const PointSet& b, const PointSet& c, const Element& z);
// Lattice boxes (Z^n) as explicit finite sets.
PointSet to_finite(const PointSet& a);

}  // namespace gconv

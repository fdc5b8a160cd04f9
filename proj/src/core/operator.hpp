#pragma once

#include "endo.hpp"
#include "metric.hpp"

namespace gconv {

inline constexpr unsigned kDefaultHorizon = 8;

// Operator d-norm ||T||* = sup_{x != 0} ||T x|| / ||x||.
// Finite groups: exhaustive. Lattices: weighted row-sum (linf) or column-sum (l1).
Rational op_norm(const Endomorphism& t, const MetricSpec& m);

// mu(T) = inf_{x != 0} ||T x|| / ||x||. On lattices this is 0 for a singular
// matrix and 1 / ||T^{-1}||* otherwise (ratios are scale invariant, so the
// lattice infimum equals the real one).
Rational injectivity_measure(const Endomorphism& t, const MetricSpec& m);

// d*(T, S) = ||T - S||*.
Rational operator_distance(const Endomorphism& t, const Endomorphism& s, const MetricSpec& m);

// The same norms for an arbitrary rational matrix on a lattice metric.
Rational matrix_op_norm(const Matrix& a, const MetricSpec& m);

// Certified enclosure lower <= rho_d(T) <= upper.
struct RhoBracket {
  Rational lower;
  Rational upper;
  bool exact = false;

  bool certified_below_one() const { return upper < 1; }
};

// Finite groups: exact, 0 iff some power of T vanishes, else 1.
// Nilpotent matrices: exact 0. Otherwise upper = min_k ||T^k||^{1/k} over
// k <= horizon (rounded up); lower from eigenvalue certificates
// (|det T|^{1/n}, (|tr T^k| / n)^{1/k}, mu(T^k)^{1/k}), and 1 on Z^n.
RhoBracket spectral_radius(const Endomorphism& t, const MetricSpec& m, unsigned horizon = kDefaultHorizon);

// (I - T)^{-1} = sum_k T^k for complete groups and certified rho(T) < 1.
// The certified cases have T nilpotent, so the sum is finite; the result is
// checked against (I - T) on both sides before it is returned.
Endomorphism neumann_inverse(const Endomorphism& t, const MetricSpec& m, unsigned max_terms,
                             unsigned horizon = kDefaultHorizon);

// (S - T)^{-1} through S^{-1} o (I - T o S^{-1})^{-1} or (I - S^{-1} o T)^{-1} o S^{-1}.
Endomorphism shifted_inverse(const Endomorphism& s, const Endomorphism& t, const MetricSpec& m,
                             unsigned max_terms, unsigned horizon = kDefaultHorizon);

// T_1 = T, T_{k+1} = T_k^2 + (I - T_k)^2.
Endomorphism midpoint_recursion(const Endomorphism& t, unsigned n);
// T_n = 1/2 . (I + (2T - I)^(2^(n-1))); needs a 2-divisible group.
Endomorphism midpoint_closed_form(const Endomorphism& t, unsigned n);

}  // namespace gconv

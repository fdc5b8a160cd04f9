#pragma once

#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "matrix.hpp"

namespace gconv {

// Additive self-map of a GroupSpec, stored as a canonical exact matrix.
//
// Finite Z_{m1} x ... x Z_{mk}: integer a_ij acting by x -> (sum_j a_ij x_j mod m_i),
// reduced to 0 <= a_ij < m_i, and well defined iff a_ij * m_j = 0 (mod m_i).
// Z^n: integer matrix. Z[1/2]^n: dyadic matrix.
class Endomorphism {
 public:
  // Throws NotAHomomorphism naming the violated (i, j) congruence.
  static Endomorphism make(const GroupSpec& g, Matrix matrix);
  static Endomorphism identity(const GroupSpec& g);
  static Endomorphism zero(const GroupSpec& g);
  // pi_k: x -> k.x for any integer k.
  static Endomorphism pi(const GroupSpec& g, const Integer& k);
  static Endomorphism diagonal(const GroupSpec& g, const std::vector<Rational>& d);

  const GroupSpec& group() const { return group_; }
  const Matrix& matrix() const { return matrix_; }

  Element apply(const Element& x) const;
  bool is_zero() const { return matrix_.is_zero(); }
  bool is_identity() const;
  bool is_diagonal() const { return matrix_.is_diagonal(); }

  std::string format() const;

  friend bool operator==(const Endomorphism& a, const Endomorphism& b);
  friend bool operator!=(const Endomorphism& a, const Endomorphism& b) { return !(a == b); }
  friend bool operator<(const Endomorphism& a, const Endomorphism& b);

 private:
  Endomorphism(GroupSpec g, Matrix m) : group_(std::move(g)), matrix_(std::move(m)) {}

  GroupSpec group_;
  Matrix matrix_;
};

// Ring operations: composition is multiplication.
Endomorphism compose(const Endomorphism& t, const Endomorphism& s);
Endomorphism add(const Endomorphism& t, const Endomorphism& s);
Endomorphism sub(const Endomorphism& t, const Endomorphism& s);
Endomorphism neg(const Endomorphism& t);
Endomorphism scale(const Integer& k, const Endomorphism& t);
Endomorphism power(const Endomorphism& t, unsigned long k);
// (1/n).T = pi_n^{-1} o T; requires the group to be divisible by n.
Endomorphism divide(const Endomorphism& t, const Integer& n);
bool commutes(const Endomorphism& t, const Endomorphism& s);

enum class RingOp { Compose, Add, Sub, Identity, Zero };
// Generic dispatcher: Identity/Zero take no operands (the group comes from g).
Endomorphism ring_op(RingOp op, const GroupSpec& g, const std::vector<Endomorphism>& args);

// Two-sided inverse inside the endomorphism ring, if it exists and is
// representable (integer inverse on Z^n, dyadic inverse on Z[1/2]^n).
std::optional<Endomorphism> inverse(const Endomorphism& t);

// Finite groups: the full ring, in lexicographic order of canonical entries.
Integer endomorphism_count(const GroupSpec& g);
std::vector<Endomorphism> enumerate_endomorphisms(const GroupSpec& g);

}  // namespace gconv

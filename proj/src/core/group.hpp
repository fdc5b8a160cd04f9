#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace gconv {

// Exhaustive routines refuse groups (and endomorphism rings) larger than this.
inline constexpr std::size_t kMaxEnumeration = std::size_t{1} << 20;

struct Element {
  std::vector<Rational> coords;

  Element() = default;
  explicit Element(std::vector<Rational> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  // Lexicographic on coordinates.
  friend bool operator<(const Element& a, const Element& b);
};

enum class GroupKind { Finite, IntLattice, DyadicLattice };

// A computable metric Abelian group: Z_{m1} x ... x Z_{mk}, Z^n or the dyadic
// lattice Z[1/2]^n. Completeness is fixed by the kind.
class GroupSpec {
 public:
  static GroupSpec finite(std::vector<Integer> moduli);
  static GroupSpec int_lattice(std::size_t dim);
  static GroupSpec dyadic_lattice(std::size_t dim);

  GroupKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Integer>& moduli() const { return moduli_; }
  bool is_finite() const { return kind_ == GroupKind::Finite; }
  bool complete() const { return kind_ != GroupKind::DyadicLattice; }

  // Finite groups only.
  Integer order() const;
  // Finite groups with order <= kMaxEnumeration; throws TooLarge / NotFinite.
  std::size_t enumerable_order() const;

  // Whether the scalar belongs to the coefficient domain of coordinate i
  // (residue range for finite factors, Z or Z[1/2] for lattices).
  bool coordinate_ok(std::size_t i, const Rational& v) const;
  bool contains(const Element& x) const;
  // Validates the coordinates; finite coordinates are reduced mod m_i.
  Element make_element(std::vector<Rational> coords) const;
  void require_member(const Element& x) const;

  Element zero() const;
  Element add(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element sub(const Element& x, const Element& y) const;
  // k * x for any integer k (negative k means -(|k| x)).
  Element scale(const Integer& k, const Element& x) const;
  // pi_n(x) = n.x, n >= 1.
  Element nat_mul(const Integer& n, const Element& x) const;
  bool divisible_by(const Integer& n) const;
  Element div_apply(const Integer& n, const Element& x) const;

  // Mixed-radix enumeration, last coordinate fastest (lexicographic order).
  std::vector<Element> elements() const;
  Element element_at(std::size_t index) const;
  std::size_t index_of(const Element& x) const;

  // "Z9", "Z2xZ4", "Z^2", "D^1".
  std::string describe() const;
  std::string format_scalar(const Rational& v) const;
  std::string format_element(const Element& x) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

 private:
  GroupSpec(GroupKind kind, std::size_t dim, std::vector<Integer> moduli)
      : kind_(kind), dim_(dim), moduli_(std::move(moduli)) {}

  void require_dim(const Element& x) const;

  GroupKind kind_;
  std::size_t dim_;
  std::vector<Integer> moduli_;
};

void require_same_group(const GroupSpec& a, const GroupSpec& b);

}  // namespace gconv

#pragma once

#include <vector>

#include "group.hpp"
#include "random.hpp"

namespace gconv {

// A subset of a group: an explicit deduplicated list, or the lattice points
// of a box lo <= x <= hi (lattice groups only).
class PointSet {
 public:
  enum class Kind { Finite, Box };

  static PointSet finite(const GroupSpec& g, std::vector<Element> elements);
  static PointSet box(const GroupSpec& g, Element lo, Element hi);
  // Finite groups: every element.
  static PointSet whole(const GroupSpec& g);
  static PointSet singleton(const GroupSpec& g, Element x);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_box() const { return kind_ == Kind::Box; }
  const GroupSpec& group() const { return group_; }

  // Sorted, finite sets only.
  const std::vector<Element>& elements() const;
  std::size_t size() const;
  const Element& lo() const;
  const Element& hi() const;
  // A box with lo == hi.
  bool degenerate() const;

  bool empty() const;
  bool contains(const Element& x) const;
  // Deterministic member draw; boxes mix corners with interior dyadic points.
  Element sample(Rng& rng) const;

  std::string format() const;

  friend bool operator==(const PointSet& a, const PointSet& b);
  friend bool operator!=(const PointSet& a, const PointSet& b) { return !(a == b); }

 private:
  PointSet(GroupSpec g, Kind k) : group_(std::move(g)), kind_(k) {}

  GroupSpec group_;
  Kind kind_;
  std::vector<Element> elements_;
  Element lo_, hi_;
};

}  // namespace gconv

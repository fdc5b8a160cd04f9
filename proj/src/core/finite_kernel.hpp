#pragma once

#include <cstdint>
#include <vector>

#include "endo.hpp"
#include "group.hpp"
#include "pointset.hpp"

namespace gconv {

// Index arithmetic for a finite group: elements are mixed-radix indices
// (same order as GroupSpec::elements()), endomorphisms become image tables
// and subsets become membership masks.
class FiniteKernel {
 public:
  using Index = std::uint32_t;
  using Table = std::vector<Index>;
  using Mask = std::vector<char>;

  explicit FiniteKernel(const GroupSpec& g);

  const GroupSpec& group() const { return group_; }
  std::size_t size() const { return size_; }

  Index index(const Element& x) const { return static_cast<Index>(group_.index_of(x)); }
  Element element(Index i) const { return group_.element_at(i); }

  Index add(Index a, Index b) const;
  Index neg(Index a) const;
  Index sub(Index a, Index b) const { return add(a, neg(b)); }

  Table table(const Endomorphism& t) const;
  Table identity_table() const;

  Mask mask(const PointSet& s) const;
  Mask mask(const std::vector<Index>& members) const;
  PointSet to_set(const Mask& m) const;
  static std::vector<Index> members(const Mask& m);

  // T(x) + (I - T)(y) in D for all x, y in D; the first failing pair is
  // stored in bad_x / bad_y when given.
  bool convex(const Mask& d, const Table& t, const Table& one_minus_t, Index* bad_x = nullptr,
              Index* bad_y = nullptr) const;

 private:
  GroupSpec group_;
  std::size_t size_;
  std::vector<std::uint64_t> moduli_;
  std::vector<std::uint64_t> stride_;
};

}  // namespace gconv

#include "pointset.hpp"

#include <algorithm>

#include "error.hpp"

namespace gconv {

PointSet PointSet::finite(const GroupSpec& g, std::vector<Element> elements) {
  for (const auto& x : elements) g.require_member(x);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  PointSet s(g, Kind::Finite);
  s.elements_ = std::move(elements);
  return s;
}

PointSet PointSet::box(const GroupSpec& g, Element lo, Element hi) {
  if (g.is_finite()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "boxes need an ordered lattice group, not " + g.describe());
  }
  g.require_member(lo);
  g.require_member(hi);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (lo[i] > hi[i]) throw Error(ErrorCode::InvalidArgument, "box needs lo <= hi in every coordinate");
  }
  PointSet s(g, Kind::Box);
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

PointSet PointSet::whole(const GroupSpec& g) { return finite(g, g.elements()); }

PointSet PointSet::singleton(const GroupSpec& g, Element x) { return finite(g, {std::move(x)}); }

const std::vector<Element>& PointSet::elements() const {
  if (!is_finite()) throw Error(ErrorCode::NotFinite, "box sets have no element list");
  return elements_;
}

std::size_t PointSet::size() const { return elements().size(); }

const Element& PointSet::lo() const {
  if (!is_box()) throw Error(ErrorCode::UnsupportedRepresentation, "finite set has no box bounds");
  return lo_;
}

const Element& PointSet::hi() const {
  if (!is_box()) throw Error(ErrorCode::UnsupportedRepresentation, "finite set has no box bounds");
  return hi_;
}

bool PointSet::degenerate() const { return is_box() && lo_ == hi_; }

bool PointSet::empty() const { return is_finite() && elements_.empty(); }

bool PointSet::contains(const Element& x) const {
  if (!group_.contains(x)) return false;
  if (is_finite()) return std::binary_search(elements_.begin(), elements_.end(), x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  }
  return true;
}

Element PointSet::sample(Rng& rng) const {
  if (is_finite()) {
    if (elements_.empty()) throw Error(ErrorCode::EmptySet, "cannot sample the empty set");
    return elements_[uniform_below(rng, elements_.size())];
  }
  std::vector<Rational> c(group_.dim());
  const bool corner = uniform_below(rng, 4) == 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (corner) {
      c[i] = coin(rng) ? lo_[i] : hi_[i];
    } else if (group_.kind() == GroupKind::IntLattice) {
      Integer width = hi_[i].get_num() - lo_[i].get_num();
      std::uint64_t w = width.fits_ulong_p() ? width.get_ui() : UINT64_MAX - 1;
      c[i] = lo_[i] + Rational(static_cast<unsigned long>(uniform_below(rng, w + 1)));
    } else {
      c[i] = uniform_dyadic(rng, lo_[i], hi_[i], 6);
    }
  }
  return Element(std::move(c));
}

std::string PointSet::format() const {
  if (is_box()) return "box[" + group_.format_element(lo_) + ", " + group_.format_element(hi_) + "]";
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ", ";
    s += group_.format_element(elements_[i]);
  }
  return s + "}";
}

bool operator==(const PointSet& a, const PointSet& b) {
  if (a.group_ != b.group_ || a.kind_ != b.kind_) return false;
  if (a.is_finite()) return a.elements_ == b.elements_;
  return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

}  // namespace gconv

#include "group.hpp"

#include <algorithm>

#include "error.hpp"

namespace gconv {

bool operator==(const Element& a, const Element& b) {
  if (a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i] != b.coords[i]) return false;
  }
  return true;
}

bool operator<(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                      b.coords.end(),
                                      [](const Rational& x, const Rational& y) { return x < y; });
}

GroupSpec GroupSpec::finite(std::vector<Integer> moduli) {
  if (moduli.empty()) throw Error(ErrorCode::InvalidArgument, "finite group needs at least one modulus");
  for (const auto& m : moduli) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 2, got " + m.get_str());
  }
  std::size_t dim = moduli.size();
  return GroupSpec(GroupKind::Finite, dim, std::move(moduli));
}

GroupSpec GroupSpec::int_lattice(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "lattice dimension must be >= 1");
  return GroupSpec(GroupKind::IntLattice, dim, {});
}

GroupSpec GroupSpec::dyadic_lattice(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "lattice dimension must be >= 1");
  return GroupSpec(GroupKind::DyadicLattice, dim, {});
}

Integer GroupSpec::order() const {
  if (!is_finite()) throw Error(ErrorCode::NotFinite, describe() + " is infinite");
  Integer n = 1;
  for (const auto& m : moduli_) n *= m;
  return n;
}

std::size_t GroupSpec::enumerable_order() const {
  Integer n = order();
  if (n > kMaxEnumeration) {
    throw Error(ErrorCode::TooLarge, describe() + " has order " + n.get_str() +
                                         ", beyond the enumeration limit");
  }
  return n.get_ui();
}

bool GroupSpec::coordinate_ok(std::size_t i, const Rational& v) const {
  switch (kind_) {
    case GroupKind::Finite:
      return is_integer(v) && v >= 0 && v.get_num() < moduli_[i];
    case GroupKind::IntLattice:
      return is_integer(v);
    case GroupKind::DyadicLattice:
      return is_dyadic(v);
  }
  return false;
}

bool GroupSpec::contains(const Element& x) const {
  if (x.size() != dim_) return false;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!coordinate_ok(i, x.coords[i])) return false;
  }
  return true;
}

void GroupSpec::require_dim(const Element& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "element has " + std::to_string(x.size()) +
                                                  " coordinates, " + describe() + " needs " +
                                                  std::to_string(dim_));
  }
}

void GroupSpec::require_member(const Element& x) const {
  require_dim(x);
  if (!contains(x)) {
    throw Error(ErrorCode::InvalidArgument, format_element(x) + " is not an element of " + describe());
  }
}

Element GroupSpec::make_element(std::vector<Rational> coords) const {
  Element x(std::move(coords));
  require_dim(x);
  for (std::size_t i = 0; i < dim_; ++i) {
    Rational& v = x.coords[i];
    if (kind_ == GroupKind::Finite) {
      if (!is_integer(v)) throw Error(ErrorCode::InvalidArgument, "residue must be an integer: " + v.get_str());
      v = Rational(mod(v.get_num(), moduli_[i]));
    } else if (!coordinate_ok(i, v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate " + v.get_str() + " is not in the coefficient domain of " + describe());
    }
  }
  return x;
}

Element GroupSpec::zero() const { return Element(std::vector<Rational>(dim_, Rational(0))); }

Element GroupSpec::add(const Element& x, const Element& y) const {
  require_dim(x);
  require_dim(y);
  Element r = x;
  for (std::size_t i = 0; i < dim_; ++i) {
    r.coords[i] += y.coords[i];
    if (kind_ == GroupKind::Finite && r.coords[i] >= moduli_[i]) r.coords[i] -= moduli_[i];
  }
  return r;
}

Element GroupSpec::neg(const Element& x) const {
  require_dim(x);
  Element r = x;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (kind_ == GroupKind::Finite) {
      if (r.coords[i] != 0) r.coords[i] = Rational(moduli_[i]) - r.coords[i];
    } else {
      r.coords[i] = -r.coords[i];
    }
  }
  return r;
}

Element GroupSpec::sub(const Element& x, const Element& y) const { return add(x, neg(y)); }

Element GroupSpec::scale(const Integer& k, const Element& x) const {
  require_dim(x);
  Element r = x;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (kind_ == GroupKind::Finite) {
      r.coords[i] = Rational(mod(k * x.coords[i].get_num(), moduli_[i]));
    } else {
      r.coords[i] = Rational(k) * x.coords[i];
    }
  }
  return r;
}

Element GroupSpec::nat_mul(const Integer& n, const Element& x) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  return scale(n, x);
}

bool GroupSpec::divisible_by(const Integer& n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  switch (kind_) {
    case GroupKind::Finite:
      return std::all_of(moduli_.begin(), moduli_.end(),
                         [&](const Integer& m) { return gcd(n, m) == 1; });
    case GroupKind::IntLattice:
      return n == 1;
    case GroupKind::DyadicLattice:
      return is_power_of_two(n);
  }
  return false;
}

Element GroupSpec::div_apply(const Integer& n, const Element& x) const {
  if (!divisible_by(n)) {
    throw Error(ErrorCode::NotDivisible, describe() + " is not divisible by " + n.get_str());
  }
  require_dim(x);
  Element r = x;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (kind_ == GroupKind::Finite) {
      Integer inv;
      mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), moduli_[i].get_mpz_t());
      r.coords[i] = Rational(mod(inv * x.coords[i].get_num(), moduli_[i]));
    } else {
      r.coords[i] = x.coords[i] / Rational(n);
    }
  }
  return r;
}

std::vector<Element> GroupSpec::elements() const {
  std::size_t n = enumerable_order();
  std::vector<Element> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

Element GroupSpec::element_at(std::size_t index) const {
  std::size_t n = enumerable_order();
  if (index >= n) throw Error(ErrorCode::InvalidArgument, "element index out of range");
  std::vector<Rational> c(dim_);
  for (std::size_t i = dim_; i-- > 0;) {
    std::size_t m = moduli_[i].get_ui();
    c[i] = Rational(static_cast<unsigned long>(index % m));
    index /= m;
  }
  return Element(std::move(c));
}

std::size_t GroupSpec::index_of(const Element& x) const {
  enumerable_order();
  require_member(x);
  std::size_t index = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    index = index * moduli_[i].get_ui() + x.coords[i].get_num().get_ui();
  }
  return index;
}

std::string GroupSpec::describe() const {
  switch (kind_) {
    case GroupKind::Finite: {
      std::string s;
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) s += "x";
        s += "Z" + moduli_[i].get_str();
      }
      return s;
    }
    case GroupKind::IntLattice:
      return "Z^" + std::to_string(dim_);
    case GroupKind::DyadicLattice:
      return "D^" + std::to_string(dim_);
  }
  return "?";
}

std::string GroupSpec::format_scalar(const Rational& v) const {
  return kind_ == GroupKind::DyadicLattice && is_dyadic(v) ? format_dyadic(v) : format_rational(v);
}

std::string GroupSpec::format_element(const Element& x) const {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += format_scalar(x.coords[i]);
  }
  return s + ")";
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.moduli_ == b.moduli_;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b) {
  if (a != b) {
    throw Error(ErrorCode::GroupMismatch, "operands live in " + a.describe() + " and " + b.describe());
  }
}

}  // namespace gconv

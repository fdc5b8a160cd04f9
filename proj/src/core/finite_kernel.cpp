#include "finite_kernel.hpp"

#include "error.hpp"

namespace gconv {

FiniteKernel::FiniteKernel(const GroupSpec& g) : group_(g), size_(g.enumerable_order()) {
  const std::size_t k = g.dim();
  moduli_.resize(k);
  stride_.resize(k);
  std::uint64_t s = 1;
  for (std::size_t i = k; i-- > 0;) {
    moduli_[i] = g.moduli()[i].get_ui();
    stride_[i] = s;
    s *= moduli_[i];
  }
}

FiniteKernel::Index FiniteKernel::add(Index a, Index b) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::uint64_t da = (a / stride_[i]) % moduli_[i];
    std::uint64_t db = (b / stride_[i]) % moduli_[i];
    std::uint64_t d = da + db;
    if (d >= moduli_[i]) d -= moduli_[i];
    r += d * stride_[i];
  }
  return static_cast<Index>(r);
}

FiniteKernel::Index FiniteKernel::neg(Index a) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::uint64_t d = (a / stride_[i]) % moduli_[i];
    r += (d ? moduli_[i] - d : 0) * stride_[i];
  }
  return static_cast<Index>(r);
}

FiniteKernel::Table FiniteKernel::table(const Endomorphism& t) const {
  require_same_group(group_, t.group());
  const std::size_t k = moduli_.size();
  std::vector<std::uint64_t> a(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = t.matrix()(i, j).get_num().get_ui();
  Table out(size_);
  std::vector<std::uint64_t> digit(k);
  for (std::size_t x = 0; x < size_; ++x) {
    for (std::size_t j = 0; j < k; ++j) digit[j] = (x / stride_[j]) % moduli_[j];
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc = (acc + a[i * k + j] * digit[j]) % moduli_[i];
      r += acc * stride_[i];
    }
    out[x] = static_cast<Index>(r);
  }
  return out;
}

FiniteKernel::Table FiniteKernel::identity_table() const {
  Table out(size_);
  for (std::size_t x = 0; x < size_; ++x) out[x] = static_cast<Index>(x);
  return out;
}

FiniteKernel::Mask FiniteKernel::mask(const PointSet& s) const {
  require_same_group(group_, s.group());
  Mask m(size_, 0);
  for (const auto& x : s.elements()) m[index(x)] = 1;
  return m;
}

FiniteKernel::Mask FiniteKernel::mask(const std::vector<Index>& members) const {
  Mask m(size_, 0);
  for (Index i : members) m[i] = 1;
  return m;
}

PointSet FiniteKernel::to_set(const Mask& m) const {
  std::vector<Element> xs;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) xs.push_back(element(static_cast<Index>(i)));
  return PointSet::finite(group_, std::move(xs));
}

std::vector<FiniteKernel::Index> FiniteKernel::members(const Mask& m) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(static_cast<Index>(i));
  return out;
}

bool FiniteKernel::convex(const Mask& d, const Table& t, const Table& one_minus_t, Index* bad_x,
                          Index* bad_y) const {
  const auto pts = members(d);
  for (Index y : pts)
    for (Index x : pts) {
      if (!d[add(t[x], one_minus_t[y])]) {
        if (bad_x) *bad_x = x;
        if (bad_y) *bad_y = y;
        return false;
      }
    }
  return true;
}

}  // namespace gconv

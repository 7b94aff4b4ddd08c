#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// the kernels, the exp/log tables, or the library's set algebra.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "fqlab/field.hpp"
#include "fqlab/fqset.hpp"

namespace oracle {

using fqlab::Element;
using fqlab::Field;

/// Schoolbook polynomial arithmetic modulo the field's modulus.
class PolyArith {
 public:
  explicit PolyArith(const Field& f) : p_(f.p()), m_(f.m()), mod_(f.modulus()) {}

  Element add(Element a, Element b) const {
    auto x = decode(a), y = decode(b);
    for (unsigned i = 0; i < m_; ++i) x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }
  Element neg(Element a) const {
    auto x = decode(a);
    for (auto& c : x) c = (p_ - c) % p_;
    return encode(x);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    auto x = decode(a), y = decode(b);
    std::vector<std::uint64_t> prod(2 * m_, 0);
    for (unsigned i = 0; i < m_; ++i)
      for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    for (unsigned d = 2 * m_ - 1; d >= m_; --d) {
      const std::uint64_t lead = prod[d];
      if (lead == 0) continue;
      for (unsigned i = 0; i <= m_; ++i) prod[d - m_ + i] = (prod[d - m_ + i] + (p_ - lead) * mod_[i]) % p_;
    }
    std::vector<std::uint32_t> r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(r);
  }
  Element pow(Element a, std::uint64_t e) const {
    Element acc = 1;
    for (std::uint64_t i = 0; i < e; ++i) acc = mul(acc, a);
    return acc;
  }
  /// Inverse by exhaustive search.
  Element inv(Element a) const {
    const Element q = size();
    for (Element b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }
  Element size() const {
    Element q = 1;
    for (unsigned i = 0; i < m_; ++i) q *= p_;
    return q;
  }

 private:
  std::vector<std::uint32_t> decode(Element v) const {
    std::vector<std::uint32_t> r(m_);
    for (unsigned i = 0; i < m_; ++i) {
      r[i] = v % p_;
      v /= p_;
    }
    return r;
  }
  Element encode(const std::vector<std::uint32_t>& r) const {
    Element v = 0;
    for (unsigned i = m_; i-- > 0;) v = v * p_ + r[i];
    return v;
  }
  std::uint32_t p_;
  unsigned m_;
  std::vector<std::uint32_t> mod_;
};

namespace detail {

template <class Op>
std::set<Element> image(const std::vector<Element>& a, const std::vector<Element>& b, Op op) {
  std::set<Element> s;
  for (auto x : a)
    for (auto y : b) s.insert(op(x, y));
  return s;
}

/// a^(q-2) by square and multiply.
inline Element fermat_inv(const PolyArith& P, Element a) {
  Element acc = 1;
  for (std::uint64_t e = P.size() - 2; e > 0; e >>= 1) {
    if (e & 1) acc = P.mul(acc, a);
    a = P.mul(a, a);
  }
  return acc;
}

/// t[i][j] = op(a[i], b[j]).
template <class Op>
std::vector<std::vector<Element>> table(const std::vector<Element>& a, const std::vector<Element>& b, Op op) {
  std::vector<std::vector<Element>> t(a.size(), std::vector<Element>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) t[i][j] = op(a[i], b[j]);
  return t;
}

}  // namespace detail

inline std::set<Element> naive_sum(const Field& f, const std::vector<Element>& a, const std::vector<Element>& b) {
  const PolyArith P(f);
  return detail::image(a, b, [&](Element x, Element y) { return P.add(x, y); });
}
inline std::set<Element> naive_diff(const Field& f, const std::vector<Element>& a, const std::vector<Element>& b) {
  const PolyArith P(f);
  return detail::image(a, b, [&](Element x, Element y) { return P.sub(x, y); });
}
inline std::set<Element> naive_prod(const Field& f, const std::vector<Element>& a, const std::vector<Element>& b) {
  const PolyArith P(f);
  return detail::image(a, b, [&](Element x, Element y) { return P.mul(x, y); });
}
/// Every element of b must be nonzero.
inline std::set<Element> naive_ratio(const Field& f, const std::vector<Element>& a, const std::vector<Element>& b) {
  const PolyArith P(f);
  return detail::image(a, b, [&](Element x, Element y) { return P.mul(x, detail::fermat_inv(P, y)); });
}

inline std::set<Element> naive_quotient(const Field& f, const std::vector<Element>& x) {
  const PolyArith P(f);
  const auto d = detail::table(x, x, [&](Element a, Element b) { return P.sub(a, b); });
  std::set<Element> s;
  for (std::size_t c = 0; c < x.size(); ++c)
    for (std::size_t e = 0; e < x.size(); ++e) {
      if (c == e) continue;
      const Element inv = detail::fermat_inv(P, d[c][e]);
      for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b) s.insert(P.mul(d[a][b], inv));
    }
  return s;
}

inline std::uint64_t quad_additive_energy(const Field& f, const std::vector<Element>& a) {
  const PolyArith P(f);
  const auto t = detail::table(a, a, [&](Element x, Element y) { return P.add(x, y); });
  const std::size_t n = a.size();
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) c += t[i][j] == t[k][l];
  return c;
}

inline std::uint64_t quad_mult_energy(const Field& f, const std::vector<Element>& x, const std::vector<Element>& y) {
  const PolyArith P(f);
  const auto t = detail::table(x, y, [&](Element u, Element v) { return P.mul(u, v); });
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k)
      for (std::size_t j = 0; j < y.size(); ++j)
        for (std::size_t l = 0; l < y.size(); ++l) c += t[i][j] == t[k][l];
  return c;
}

/// Fewest translates t + sign*tile covering target, by trying every
/// combination of candidate shifts of increasing size.
inline std::size_t brute_cover(const Field& f, const std::vector<Element>& target, const std::vector<Element>& tile,
                               bool negative) {
  if (target.empty()) return 0;
  const PolyArith P(f);
  std::vector<std::uint32_t> masks;
  std::set<Element> shifts;
  for (auto a : target)
    for (auto b : tile) shifts.insert(P.sub(a, negative ? P.neg(b) : b));
  for (auto t : shifts) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < target.size(); ++i)
      for (auto b : tile)
        if (P.add(t, negative ? P.neg(b) : b) == target[i]) mask |= 1u << i;
    masks.push_back(mask);
  }
  const std::uint32_t full = (1u << target.size()) - 1;
  for (std::size_t k = 1; k <= target.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > masks.size()) break;
    while (true) {
      std::uint32_t m = 0;
      for (auto i : idx) m |= masks[i];
      if (m == full) return k;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == masks.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return target.size();
}

inline std::vector<Element> random_subset(std::mt19937_64& rng, Element lo, Element q, std::size_t size) {
  std::vector<Element> all;
  for (Element a = lo; a < q; ++a) all.push_back(a);
  for (std::size_t i = 0; i < size && i < all.size(); ++i) {
    std::uniform_int_distribution<std::size_t> d(i, all.size() - 1);
    std::swap(all[i], all[d(rng)]);
  }
  all.resize(std::min(size, all.size()));
  std::sort(all.begin(), all.end());
  return all;
}

inline std::vector<Element> to_vec(const std::set<Element>& s) { return {s.begin(), s.end()}; }
inline std::vector<Element> to_vec(const fqlab::FqSet& s) { return {s.begin(), s.end()}; }

}  // namespace oracle

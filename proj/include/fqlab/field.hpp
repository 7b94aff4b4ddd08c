#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fqlab {

/// Field elements are packed base-p coefficient vectors: digit i of the
/// value is the coefficient of X^i in the residue polynomial. 0 and 1 encode
/// the additive and multiplicative identities.
using Element = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 20;

enum class ArithOp { Add, Sub, Mul, Div, Neg, Inv, Pow };

/// F_{p^m} with the lexicographically smallest monic irreducible modulus
/// (coefficients compared low-degree first) and the smallest-valued
/// primitive element as generator. Immutable after construction.
class Field {
 public:
  static std::shared_ptr<const Field> build(std::uint32_t p, unsigned m,
                                            std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Order of the multiplicative group, q - 1.
  std::uint32_t group_order() const noexcept { return q_ - 1; }
  /// m + 1 coefficients, low degree first, leading coefficient 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Element generator() const noexcept { return generator_; }
  std::string descriptor() const;

  bool contains(Element a) const noexcept { return a < q_; }

  Element add(Element a, Element b) const noexcept {
    if (m_ == 1) return static_cast<Element>((std::uint64_t{a} + b) % p_);
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a];
    std::uint32_t d = log_[b] + (q_ - 1) - la;
    if (d >= q_ - 1) d -= q_ - 1;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return 0;
    return exp_[la + z];
  }
  Element neg(Element a) const noexcept {
    if (a == 0 || p_ == 2) return a;
    if (m_ == 1) return p_ - a;
    return exp_[log_[a] + half_order_];
  }
  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }
  Element mul(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DivisionByZero when b == 0.
  Element div(Element a, Element b) const;
  Element inv(Element a) const;
  /// Negative exponents are allowed for nonzero bases.
  Element pow(Element a, std::int64_t e) const;

  /// Discrete log with respect to generator(); a must be nonzero.
  std::uint32_t log(Element a) const noexcept { return log_[a]; }
  /// generator()^k for 0 <= k < 2(q-1).
  Element exp(std::uint32_t k) const noexcept { return exp_[k]; }

  std::uint32_t digit(Element a, unsigned i) const noexcept;
  /// Frobenius iterate x -> x^(p^d).
  Element frobenius(Element a, unsigned d) const noexcept;

  Element arith(ArithOp op, Element a, std::int64_t b) const;

  bool same_as(const Field& other) const noexcept { return p_ == other.p_ && m_ == other.m_; }

 private:
  Field() = default;
  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

  std::uint32_t p_ = 0;
  unsigned m_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t half_order_ = 0;
  Element generator_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Element> exp_;        // length 2(q-1)
  std::vector<std::uint32_t> log_;  // length q; log_[0] unused
  std::vector<std::uint32_t> zech_; // zech_[k] = log(1 + g^k)
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr build_field(std::uint32_t p, unsigned m, std::uint64_t cap = kDefaultFieldCap);

/// Accepts "p^m" or a bare prime "p".
FieldPtr parse_field(std::string_view descriptor, std::uint64_t cap = kDefaultFieldCap);

bool is_prime(std::uint64_t n) noexcept;

/// Trial division of a monic polynomial (coefficients low first) against
/// every monic polynomial of degree <= deg/2.
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p);

}  // namespace fqlab

#include "fqlab/field.hpp"

#include <charconv>
#include <string>

#include "fqlab/error.hpp"

namespace fqlab {
namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients low first, fixed length m

// Remainder of `num` modulo the monic `den`, in place. Both low first.
void poly_mod_inplace(Poly& num, std::span<const std::uint32_t> den, std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  while (!num.empty() && num.back() == 0) num.pop_back();
  while (num.size() > dd) {
    const std::uint64_t lead = num.back();
    const std::size_t shift = num.size() - 1 - dd;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dd; ++i) {
        const std::uint64_t sub = lead * den[i] % p;
        num[shift + i] = static_cast<std::uint32_t>((num[shift + i] + p - sub) % p);
      }
    }
    num.pop_back();
    while (!num.empty() && num.back() == 0) num.pop_back();
  }
}

// Arithmetic on residues mod a fixed monic modulus, used only at build time.
struct ResidueRing {
  std::uint32_t p;
  unsigned m;
  std::span<const std::uint32_t> modulus;

  // r <- r * X mod modulus
  void times_x(Poly& r) const {
    const std::uint32_t top = r[m - 1];
    for (unsigned i = m - 1; i > 0; --i) r[i] = r[i - 1];
    r[0] = 0;
    if (top != 0) {
      for (unsigned i = 0; i < m; ++i) {
        const std::uint64_t sub = std::uint64_t{top} * modulus[i] % p;
        r[i] = static_cast<std::uint32_t>((r[i] + p - sub) % p);
      }
    }
  }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly out(m, 0);
    Poly shifted = a;
    unsigned top = m;
    while (top > 0 && b[top - 1] == 0) --top;
    for (unsigned i = 0; i < top; ++i) {
      if (b[i] != 0) {
        for (unsigned j = 0; j < m; ++j) {
          out[j] = static_cast<std::uint32_t>((out[j] + std::uint64_t{b[i]} * shifted[j]) % p);
        }
      }
      if (i + 1 < top) times_x(shifted);
    }
    return out;
  }

  Poly pow(Poly base, std::uint64_t e) const {
    Poly acc(m, 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Poly decode(Element v) const {
    Poly r(m, 0);
    for (unsigned i = 0; i < m; ++i) {
      r[i] = v % p;
      v /= p;
    }
    return r;
  }

  Element encode(const Poly& r) const {
    Element v = 0;
    for (unsigned i = m; i-- > 0;) v = v * p + r[i];
    return v;
  }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Advances `c` to the next tuple in lexicographic order with c[0] most
// significant. Returns false after the last tuple.
bool next_lex(std::vector<std::uint32_t>& c, std::uint32_t p) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p) {
  const std::size_t deg = monic.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    Poly divisor(d + 1, 0);
    divisor[d] = 1;
    std::vector<std::uint32_t> low(d, 0);
    do {
      for (std::size_t i = 0; i < d; ++i) divisor[i] = low[i];
      Poly rem(monic.begin(), monic.end());
      poly_mod_inplace(rem, divisor, p);
      if (rem.empty()) return false;
    } while (next_lex(low, p));
  }
  return true;
}

std::shared_ptr<const Field> Field::build(std::uint32_t p, unsigned m, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (m == 0) throw Error(Errc::DegreeZero, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > cap) {
      throw Error(Errc::FieldTooLarge,
                  std::to_string(p) + "^" + std::to_string(m) + " exceeds cap " + std::to_string(cap));
    }
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->m_ = m;
  f->q_ = static_cast<std::uint32_t>(q);
  f->half_order_ = (p == 2) ? 0 : static_cast<std::uint32_t>((q - 1) / 2);

  std::vector<std::uint32_t> low(m, 0);
  bool found = false;
  do {
    Poly cand(low.begin(), low.end());
    cand.push_back(1);
    if (is_irreducible(cand, p)) {
      f->modulus_ = std::move(cand);
      found = true;
      break;
    }
  } while (next_lex(low, p));
  if (!found) throw Error(Errc::NoIrreducibleFound, f->descriptor());

  const ResidueRing ring{p, m, std::span<const std::uint32_t>(f->modulus_).first(m)};
  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  Poly one(m, 0);
  one[0] = 1;
  Element gen = 0;
  for (Element g = 1; g < q; ++g) {
    const Poly gp = ring.decode(g);
    bool primitive = true;
    for (auto r : factors) {
      if (ring.pow(gp, order / r) == one) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  if (gen == 0) throw Error(Errc::NoIrreducibleFound, "no primitive element in " + f->descriptor());
  f->generator_ = gen;

  f->exp_.assign(2 * order, 0);
  f->log_.assign(q, kNoLog);
  const Poly gp = ring.decode(gen);
  Poly cur = one;
  for (std::uint64_t k = 0; k < order; ++k) {
    const Element v = ring.encode(cur);
    f->exp_[k] = v;
    f->exp_[k + order] = v;
    f->log_[v] = static_cast<std::uint32_t>(k);
    cur = ring.mul(cur, gp);
  }

  f->zech_.assign(order, kNoLog);
  for (std::uint64_t k = 0; k < order; ++k) {
    const Element x = f->exp_[k];
    const std::uint32_t d0 = x % p;
    const Element y = x - d0 + (d0 + 1) % p;
    f->zech_[k] = (y == 0) ? kNoLog : f->log_[y];
  }
  return f;
}

std::string Field::descriptor() const { return std::to_string(p_) + "^" + std::to_string(m_); }

Element Field::div(Element a, Element b) const {
  if (b == 0) throw Error(Errc::DivisionByZero, "division by zero in " + descriptor());
  if (a == 0) return 0;
  return exp_[log_[a] + (q_ - 1) - log_[b]];
}

Element Field::inv(Element a) const { return div(1, a); }

Element Field::pow(Element a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t order = q_ - 1;
  std::int64_t r = e % order;
  if (r < 0) r += order;
  Element acc = 1;
  Element base = a;
  for (auto k = static_cast<std::uint64_t>(r); k > 0; k >>= 1) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
  }
  return acc;
}

std::uint32_t Field::digit(Element a, unsigned i) const noexcept {
  for (unsigned k = 0; k < i; ++k) a /= p_;
  return a % p_;
}

Element Field::frobenius(Element a, unsigned d) const noexcept {
  if (a == 0 || q_ == 2) return a;
  const std::uint64_t order = q_ - 1;
  std::uint64_t e = 1;
  for (unsigned i = 0; i < d; ++i) e = e * p_ % order;
  return exp_[static_cast<std::uint32_t>(std::uint64_t{log_[a]} * e % order)];
}

Element Field::arith(ArithOp op, Element a, std::int64_t b) const {
  auto check = [this](std::int64_t v) {
    if (v < 0 || v >= static_cast<std::int64_t>(q_)) {
      throw Error(Errc::ElementOutOfRange, std::to_string(v) + " not in " + descriptor());
    }
    return static_cast<Element>(v);
  };
  check(a);
  switch (op) {
    case ArithOp::Add: return add(a, check(b));
    case ArithOp::Sub: return sub(a, check(b));
    case ArithOp::Mul: return mul(a, check(b));
    case ArithOp::Div: return div(a, check(b));
    case ArithOp::Neg: return neg(a);
    case ArithOp::Inv: return inv(a);
    case ArithOp::Pow: return pow(a, b);
  }
  return 0;
}

FieldPtr build_field(std::uint32_t p, unsigned m, std::uint64_t cap) { return Field::build(p, m, cap); }

FieldPtr parse_field(std::string_view text, std::uint64_t cap) {
  auto parse_uint = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(Errc::ParseError, "bad field descriptor '" + std::string(text) + "'");
    }
    return v;
  };
  const auto caret = text.find('^');
  const std::uint64_t p = parse_uint(text.substr(0, caret));
  const std::uint64_t m = caret == std::string_view::npos ? 1 : parse_uint(text.substr(caret + 1));
  if (p > 0xFFFFFFFFull || m > 64) throw Error(Errc::FieldTooLarge, std::string(text));
  return build_field(static_cast<std::uint32_t>(p), static_cast<unsigned>(m), cap);
}

}  // namespace fqlab

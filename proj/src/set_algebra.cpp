#include "fqlab/set_algebra.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "fqlab/error.hpp"
#include "fqlab/kernels.hpp"
#include "fqlab/subfields.hpp"

namespace fqlab {

using boost::multiprecision::cpp_int;

FqSet set_op(const FqSet& a, const FqSet& b, SetOpKind kind) {
  require_same_field(a, b);
  kernels::PairOp op = kernels::PairOp::Sum;
  switch (kind) {
    case SetOpKind::Sum: op = kernels::PairOp::Sum; break;
    case SetOpKind::Diff: op = kernels::PairOp::Diff; break;
    case SetOpKind::Prod: op = kernels::PairOp::Prod; break;
    case SetOpKind::Ratio:
      if (b.contains(0)) throw Error(Errc::ZeroDivisorInRatio, "0 in denominator set");
      op = kernels::PairOp::Ratio;
      break;
  }
  return FqSet(a.field_ptr(), kernels::parallel::pair_image(a.field(), a.members(), b.members(), op));
}

FqSet shifted_product(const FqSet& a, Element alpha) {
  if (alpha == 0) throw Error(Errc::ZeroShift, "alpha must be nonzero");
  if (!a.field().contains(alpha)) throw Error(Errc::ElementOutOfRange, std::to_string(alpha));
  return set_op(a, a.translate(alpha), SetOpKind::Prod);
}

FqSet quotient_set(const FqSet& x) {
  if (x.size() < 2) throw Error(Errc::SetTooSmall, "R(X) needs |X| >= 2");
  return FqSet(x.field_ptr(), kernels::parallel::quotient_set(x.field(), x.members()));
}

RepSpectrum representation_spectrum(const FqSet& x, const FqSet& y) {
  require_same_field(x, y);
  if (x.contains(0)) throw Error(Errc::ZeroInDenominatorSet, "0 in X");
  const auto counts = kernels::parallel::ratio_counts(x.field(), x.members(), y.members());
  RepSpectrum out;
  for (Element xi = 0; xi < counts.size(); ++xi) {
    if (counts[xi] == 0) continue;
    out.counts.emplace(xi, counts[xi]);
    out.total += counts[xi];
    out.energy += counts[xi] * counts[xi];
  }
  return out;
}

std::uint64_t additive_energy(const FqSet& a) {
  if (a.empty()) throw Error(Errc::EmptySet, "E+ of the empty set");
  const auto counts = kernels::parallel::sum_counts(a.field(), a.members(), a.members());
  std::uint64_t e = 0;
  for (auto c : counts) e += c * c;
  return e;
}

std::uint64_t multiplicative_energy(const FqSet& x, const FqSet& y) {
  require_same_field(x, y);
  const FqSet xs = x.without(0);
  const FqSet ys = y.without(0);
  if (xs.empty() || ys.empty()) throw Error(Errc::EmptyAfterZeroStrip, "no nonzero elements left");
  const std::uint64_t zero_products = x.size() * y.size() - xs.size() * ys.size();
  return representation_spectrum(xs, ys).energy + zero_products * zero_products;
}

std::vector<std::pair<Element, std::uint64_t>> difference_profile(const FqSet& a) {
  const FqSet neg = a.negated();
  const auto counts = kernels::parallel::sum_counts(a.field(), a.members(), neg.members());
  std::vector<std::pair<Element, std::uint64_t>> out;
  for (Element d = 0; d < counts.size(); ++d) {
    if (counts[d] != 0) out.emplace_back(d, counts[d]);
  }
  return out;
}

bool power_bound_holds(std::uint64_t k, std::uint64_t r, std::uint32_t num, std::uint32_t den, std::uint32_t kappa) {
  const cpp_int lhs = boost::multiprecision::pow(cpp_int(k), den);
  const cpp_int rhs = boost::multiprecision::pow(cpp_int(kappa), den) * boost::multiprecision::pow(cpp_int(r), num);
  return lhs <= rhs;
}

bool coset_bound_holds(std::uint64_t k, std::uint64_t g, std::uint64_t r, std::uint32_t num, std::uint32_t den,
                       std::uint32_t kappa) {
  const cpp_int k2 = cpp_int(k) * k;
  if (k2 <= cpp_int(kappa) * kappa * g) return true;
  return power_bound_holds(k, r, num, den, kappa);
}

ProfileReport coset_profile(const FqSet& a, std::uint32_t exponent_num, std::uint32_t exponent_den,
                            const FqSet& reference, std::uint32_t kappa) {
  require_same_field(a, reference);
  if (exponent_den == 0) throw Error(Errc::InvalidArgument, "exponent denominator is zero");
  if (reference.empty()) throw Error(Errc::EmptySet, "reference set is empty");
  ProfileReport rep;
  rep.exponent_num = exponent_num;
  rep.exponent_den = exponent_den;
  rep.set_size = a.size();
  rep.reference_size = reference.size();
  rep.kappa = kappa;
  const std::uint32_t sweep_kappas[] = {1, 2, 4};
  for (auto k : sweep_kappas) rep.sweep.push_back({k, true});

  const Field& f = a.field();
  const auto lattice = enumerate_subfields(a.field_ptr());
  rep.no_proper_subfields = lattice.size() == 1;
  for (const auto& g : lattice) {
    if (!g.proper) continue;
    for (Element c : coset_representatives(g)) {
      CosetEntry e;
      e.degree = g.degree;
      e.subfield_order = g.order();
      e.representative = c;
      for (auto x : g.elements) {
        if (a.contains(f.mul(c, x))) ++e.intersection;
      }
      e.pass = coset_bound_holds(e.intersection, e.subfield_order, rep.reference_size, exponent_num, exponent_den,
                                 kappa);
      rep.pass = rep.pass && e.pass;
      for (auto& s : rep.sweep) {
        s.pass = s.pass && coset_bound_holds(e.intersection, e.subfield_order, rep.reference_size, exponent_num,
                                             exponent_den, s.kappa);
      }
      rep.max_intersection = std::max(rep.max_intersection, e.intersection);
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace fqlab

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fqlab/fqset.hpp"

namespace fqlab {

enum class SetOpKind { Sum, Diff, Prod, Ratio };

/// A + B, A - B, AB or A/B. Ratio requires 0 not in B.
FqSet set_op(const FqSet& a, const FqSet& b, SetOpKind kind);

/// A(A + alpha), alpha != 0.
FqSet shifted_product(const FqSet& a, Element alpha);

/// R(X) = {(x1 - x2)/(x3 - x4) : x3 != x4}. Requires |X| >= 2.
FqSet quotient_set(const FqSet& x);

/// r_{Y:X}(xi) = #{(x, y) in X x Y : y / x = xi}, listed for xi in Y/X.
struct RepSpectrum {
  std::map<Element, std::uint64_t> counts;
  std::uint64_t total = 0;   // sum of counts, equals |X||Y|
  std::uint64_t energy = 0;  // sum of squared counts, equals E_x(X, Y)
};

/// Requires 0 not in X.
RepSpectrum representation_spectrum(const FqSet& x, const FqSet& y);

/// E_+(A) = #{a1 + a2 = a3 + a4}, via sum-representation counts.
std::uint64_t additive_energy(const FqSet& a);

/// E_x(X, Y) = #{x1 y1 = x2 y2}. Zeros are stripped before the ratio
/// computation and the quadruples with x1 y1 = x2 y2 = 0 are added back as
/// Z^2 where Z = |X||Y| - |X*||Y*|.
std::uint64_t multiplicative_energy(const FqSet& x, const FqSet& y);

/// (alpha, |A ∩ (A - alpha)|) for every alpha in A - A, ascending alpha.
std::vector<std::pair<Element, std::uint64_t>> difference_profile(const FqSet& a);

struct CosetEntry {
  unsigned degree = 0;
  std::uint64_t subfield_order = 0;
  Element representative = 0;
  std::uint64_t intersection = 0;  // |A ∩ cG|
  bool pass = false;               // at the report's kappa
};

struct KappaVerdict {
  std::uint32_t kappa = 1;
  bool pass = true;
};

/// Outcome of checking |A ∩ cG| <= kappa * max(|G|^(1/2), |reference|^(num/den))
/// over every proper subfield G and every dilate cG.
struct ProfileReport {
  std::uint32_t exponent_num = 0;
  std::uint32_t exponent_den = 1;
  std::uint64_t set_size = 0;
  std::uint64_t reference_size = 0;
  std::uint32_t kappa = 1;
  bool no_proper_subfields = false;
  bool pass = true;                    // at `kappa`
  std::vector<KappaVerdict> sweep;     // kappa in {1, 2, 4}
  std::vector<CosetEntry> entries;
  std::uint64_t max_intersection = 0;
};

/// Exact integer form of k <= kappa * max(sqrt(g), r^(num/den)):
/// k^2 <= kappa^2 g  or  k^den <= kappa^den r^num.
bool coset_bound_holds(std::uint64_t k, std::uint64_t g, std::uint64_t r, std::uint32_t num, std::uint32_t den,
                       std::uint32_t kappa);

/// Exact integer form of k^den <= kappa^den r^num.
bool power_bound_holds(std::uint64_t k, std::uint64_t r, std::uint32_t num, std::uint32_t den, std::uint32_t kappa);

ProfileReport coset_profile(const FqSet& a, std::uint32_t exponent_num, std::uint32_t exponent_den,
                            const FqSet& reference, std::uint32_t kappa = 1);

}  // namespace fqlab

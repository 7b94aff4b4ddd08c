#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqlab/fqset.hpp"
#include "fqlab/set_algebra.hpp"

namespace fqlab {

// ---------------------------------------------------------------------------
// Popularity pigeonhole

struct PopularityResult {
  FqSet subset;                     // {x : f(x) >= K / (2|X|)}
  std::uint64_t threshold_num = 0;  // threshold as the fraction K / (2|X|)
  std::uint64_t threshold_den = 1;
  std::uint64_t retained_mass = 0;  // sum of f over the subset
  bool mass_certificate = false;    // retained_mass >= K / 2
  std::optional<bool> size_certificate;  // |subset| >= K / (2 M_cap), when a cap is given
};

/// `weights[i]` is f(domain[i]); every weight must be positive and sum to at
/// least K. All comparisons are exact.
PopularityResult popularity_subset(const FqSet& domain, std::span<const std::uint64_t> weights, std::uint64_t k,
                                   std::optional<std::uint64_t> m_cap = std::nullopt);

// ---------------------------------------------------------------------------
// Dyadic energy slice

struct SliceCertificates {
  bool counts_in_range = false;  // N <= r(xi) < 2N on D
  bool energy_bound = false;     // E_x <= (floor(log2|X|) + 1) * 4 L N^2
  bool ln_at_most_xy = false;    // L N <= |X||Y|
  bool ln_below_xy = false;      // L N < |X||Y|
  bool all_strict() const { return counts_in_range && energy_bound && ln_below_xy; }
};

/// The dominant dyadic level of r_{Y:X}: D = {xi : N <= r(xi) < 2N} with
/// N = 2^j and j maximising the level's share of E_x(X, Y) (smallest j on ties).
struct DyadicSlice {
  FqSet x;
  FqSet y;
  FqSet slopes;  // D
  unsigned level = 0;
  std::uint64_t n = 0;  // N
  std::uint64_t l = 0;  // L = |D|
  std::uint64_t m = 0;  // L N^2
  std::uint64_t energy = 0;
  std::uint64_t level_mass = 0;  // sum of r^2 over D
  RepSpectrum spectrum;
  std::vector<std::pair<Element, Element>> points;  // P, sorted
  SliceCertificates certificates;
};

/// Requires 0 not in X and |Y| <= |X|.
DyadicSlice dyadic_energy_slice(const FqSet& x, const FqSet& y);

/// Recomputes the certificates from the stored spectrum and sizes.
SliceCertificates verify_slice(const DyadicSlice& slice);

// ---------------------------------------------------------------------------
// Popular points

/// An explicit constant 1/2^shift.
struct PowerOfHalf {
  unsigned shift = 0;
  std::string str() const { return "1/" + std::to_string(std::uint64_t{1} << shift); }
};

/// measured >= constant * numerator / denominator, checked exactly.
struct BoundCheck {
  std::string quantity;
  std::string form;
  std::uint64_t measured = 0;
  PowerOfHalf constant;
  std::string numerator;    // decimal, may exceed 64 bits
  std::string denominator;
  bool holds = false;
};

struct PigeonholeStep {
  std::string name;
  std::uint64_t mass_in = 0;
  std::uint64_t mass_kept = 0;
  std::size_t domain_size = 0;
  std::size_t kept_size = 0;
  bool mass_ok = false;
  std::optional<bool> size_ok;
};

struct PopularPoints {
  Element x0 = 0;
  Element y0 = 0;
  FqSet rows;        // Y', popular ordinates
  FqSet columns;     // X', popular abscissas
  FqSet lines;       // D', popular slopes
  FqSet a_x0;        // {y : (x0, y) in P}
  FqSet b_y0;        // {x : (x, y0) in P}
  FqSet a_tilde;     // subset of a_x0
  std::map<Element, FqSet> s;  // z -> P_{z/x0} ∩ b_y0
  std::uint64_t sigma = 0;       // the double sum over X' x Y'
  std::uint64_t best_inner = 0;  // its largest (x, y) term
  std::vector<PigeonholeStep> steps;
  std::vector<BoundCheck> bounds;
  bool chain_holds = false;
};

/// Replays the popular abscissa/ordinate construction on the slice's point
/// set, tracking an explicit constant for every inequality.
PopularPoints popular_points(const DyadicSlice& slice);

/// Recomputes every S_z from the slice without using stored intermediates.
bool verify_popular_points(const DyadicSlice& slice, const PopularPoints& pts);

// ---------------------------------------------------------------------------
// Covering by translates

enum class Sign { Plus, Minus };
enum class CoverMode { Auto, Greedy, Exact };

inline constexpr std::size_t kExactCoverCutoff = 12;

struct Cover {
  std::size_t count = 0;
  std::vector<Element> shifts;  // target ⊆ ∪ (t + sign * tile)
  bool exact = false;
  std::size_t greedy_count = 0;
};

/// Greedy cover (largest new coverage, smallest shift on ties); Auto switches
/// to exhaustive branch and bound when |target| <= 12.
Cover covering_number(const FqSet& target, const FqSet& tile, Sign sign, CoverMode mode = CoverMode::Auto);

bool cover_is_complete(const FqSet& target, const FqSet& tile, Sign sign, std::span<const Element> shifts);

}  // namespace fqlab

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fqlab/decompositions.hpp"
#include "fqlab/fqset.hpp"

namespace fqlab {

enum class LemmaId {
  RBcard,
  RBFq,
  QuotientSubfield,
  Pivot,
  BouGlibPivot,
  RuzsaTriangle,
  RatioToShift,
  Plunnecke,
  PlunneckeRefined,
  CoveringByShifts,
  BasicShiftBound,
  Popularity,
  EnergyIdentities,
  EnergyCS,
  DyadicEnergy,
  Rudnev,
};

inline constexpr LemmaId kAllLemmas[] = {
    LemmaId::RBcard,           LemmaId::RBFq,          LemmaId::QuotientSubfield, LemmaId::Pivot,
    LemmaId::BouGlibPivot,     LemmaId::RuzsaTriangle, LemmaId::RatioToShift,     LemmaId::Plunnecke,
    LemmaId::PlunneckeRefined, LemmaId::CoveringByShifts, LemmaId::BasicShiftBound, LemmaId::Popularity,
    LemmaId::EnergyIdentities, LemmaId::EnergyCS,      LemmaId::DyadicEnergy,     LemmaId::Rudnev,
};

const char* lemma_name(LemmaId id) noexcept;
/// Case-insensitive; throws InvalidArgument for unknown names.
LemmaId parse_lemma(std::string_view name);

enum class Verdict { ExactPass, WitnessFound, MeasuredRatio, Fail };
const char* verdict_name(Verdict v) noexcept;

struct LemmaReport {
  LemmaId lemma = LemmaId::RBcard;
  std::string instance;
  Verdict verdict = Verdict::Fail;
  std::optional<double> ratio;  // set for MeasuredRatio
  nlohmann::json witness = nlohmann::json::object();
  std::optional<double> seconds;

  bool ok() const noexcept { return verdict != Verdict::Fail; }
};

/// Ratio given as num/den.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

enum class SearchMode { Auto, Exhaustive, Greedy };
inline constexpr std::size_t kExhaustiveSubsetCutoff = 12;

/// A subset search together with the report describing it.
struct SubsetSearch {
  FqSet subset;
  std::uint64_t objective = 0;  // the minimised sumset size
  bool exhaustive = false;
  LemmaReport report;
};

LemmaReport check_rbcard(const FqSet& x, Element r, const FqSet& x1, const FqSet& x2);
LemmaReport check_rbfq(const FqSet& x);
LemmaReport check_quotient_subfield(const FqSet& x);

/// Subsets of size ceil(3|X|/4) are exhaustive up to 10 elements, otherwise
/// `samples` random ones drawn from `seed`.
LemmaReport find_pivot_r(const FqSet& x, Rational c, std::uint64_t seed = 0, std::size_t samples = 32);
LemmaReport find_pivot_xi(const FqSet& x1, const FqSet& x2);

enum class SumsetKind { RuzsaTriangle, Plunnecke, RatioToShift };
/// RuzsaTriangle takes two sets in `bs`, Plunnecke one to four; RatioToShift
/// ignores `bs` and reads X as A.
LemmaReport check_sumset_inequalities(const FqSet& x, std::span<const FqSet> bs, SumsetKind kind);

SubsetSearch refined_plunnecke_subset(const FqSet& x, std::span<const FqSet> bs, Rational epsilon,
                                      SearchMode mode = SearchMode::Auto);
SubsetSearch basic_shift_subset(const FqSet& a, SearchMode mode = SearchMode::Auto);

LemmaReport check_popularity(const FqSet& domain, std::span<const std::uint64_t> weights, std::uint64_t k,
                             std::optional<std::uint64_t> m_cap = std::nullopt);
/// Spectrum identities for (X, Y) and the difference identities for Y.
LemmaReport check_energy_identities(const FqSet& x, const FqSet& y);
LemmaReport check_energy_cs(const FqSet& x, const FqSet& y);
LemmaReport check_dyadic_energy(const FqSet& x, const FqSet& y);
LemmaReport check_rudnev(const FqSet& x, const FqSet& y);

/// X = x·Xpre + y and Y = x·Ypre + y with Xpre, Ypre ⊆ Z ⊆ F_q*. Reports the
/// measured cover of X by translates of sign·Y against the unscaled bound.
LemmaReport check_covering_by_shifts(const FqSet& z, Element x, Element y, const FqSet& x_pre, const FqSet& y_pre,
                                     Sign sign);

}  // namespace fqlab

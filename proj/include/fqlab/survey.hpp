#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fqlab/fqset.hpp"

namespace fqlab {

enum class Sampler { Uniform, ArithmeticProgression, GeometricProgression, SubfieldCosetUnion };
const char* sampler_name(Sampler s) noexcept;
/// Accepts "uniform", "ap", "gp", "coset" and the long names.
Sampler parse_sampler(std::string_view name);

/// Deterministic in (field, sampler, size, seed).
FqSet sample_set(const FieldPtr& field, Sampler sampler, std::size_t size, std::uint64_t seed);

struct SurveyRecord {
  std::string field;
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::size_t size = 0;
  Element alpha = 1;
  std::string sampler;
  std::uint64_t seed = 0;
  std::uint64_t shifted_product = 0;
  double theorem_curve = 0;  // min(|A|^(1+1/52), q^(1/48) |A|^(1-1/48))
  double gs_curve = 0;       // min(q^(1/2) |A|^(1/2), |A|^2 / q^(1/2))
  double ratio = 0;          // shifted_product / theorem_curve
  bool structural_pass = false;
};

SurveyRecord expander_record(const FqSet& a, Element alpha);

struct CorollaryRecord {
  Element alpha = 1;
  std::uint64_t intersection = 0;      // |A ∩ (A - alpha)|
  std::uint64_t product_set = 0;       // |AA|
  std::uint64_t additive_energy = 0;   // E+(A)
  std::uint64_t max_intersection = 0;  // over alpha in A - A, zero included
  std::uint64_t shifted_intersection = 0;  // |S(S + alpha)|, S = A ∩ (A - alpha)
  double rhs = 0;                      // |AA|^(1-1/53) + q^(-1/47) |AA|^(1+1/47)
  double ratio = 0;                    // intersection / rhs
  bool energy_chain = false;           // E+ <= |A|^2 max_intersection
  bool shift_chain = false;            // |S(S + alpha)| <= |AA|
  bool structural_pass = false;        // coset profile 50/53 against AA
};

CorollaryRecord corollary_record(const FqSet& a, Element alpha);

struct MinExpanderResult {
  std::uint64_t min_value = 0;
  std::uint64_t minimizer_count = 0;
  std::vector<FqSet> minimizers;  // first 100 in canonical order
  std::uint64_t subsets_examined = 0;
};

inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

/// Minimum of |A(A + alpha)| over all A of size k inside F_q, or F_q* when
/// `nonzero` is set. Throws BudgetExceeded when C(n, k) > 10^7.
MinExpanderResult exhaustive_min_expander(const FieldPtr& field, unsigned k, Element alpha = 1,
                                          bool nonzero = false);

enum class AlphaPolicy { Fixed, Sweep, Random };

struct SurveyConfig {
  std::vector<std::string> fields;
  std::vector<std::size_t> sizes;
  std::vector<Sampler> samplers{Sampler::Uniform};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  AlphaPolicy alpha_policy = AlphaPolicy::Fixed;
  Element alpha = 1;
  std::string output;  // CSV path; the summary goes next to it as <output>.json
};

struct SurveyResult {
  std::vector<SurveyRecord> records;  // (field, size, sampler, trial, alpha) order
  std::vector<std::string> skipped;   // infeasible cells with the reason
};

SurveyResult collect_survey(const SurveyConfig& config);
std::string survey_csv(const std::vector<SurveyRecord>& records);
nlohmann::json survey_summary(const SurveyResult& result);

/// Writes CSV and JSON summary, returns the CSV path. Throws IoFailure.
std::string run_survey(const SurveyConfig& config);

}  // namespace fqlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqlab/decompositions.hpp"
#include "fqlab/lemmas.hpp"

namespace fqlab {

struct TraceParams {
  Rational plunnecke_epsilon{1, 4};
  std::uint32_t kappa = 1;
  SearchMode search = SearchMode::Auto;
};

enum class TraceCase { C11, C12, C2, C3, C41, C42, C43 };
const char* case_label(TraceCase c) noexcept;

struct TraceCertificate {
  std::string name;
  bool holds = false;
};

/// One measured cover from the covering claim: target ⊆ ∪ (t + sign·tile).
struct CoverMeasurement {
  std::string target;  // e.g. "a*B"
  std::string tile;    // "x0*A" or "y0*A"
  Sign sign = Sign::Plus;
  std::size_t target_size = 0;
  std::size_t tile_size = 0;
  std::size_t count = 0;
  bool exact = false;
};

/// The input A keeps its name; A' and A'' are the two surrogate subsets and
/// every later step works with A'' (called A below, X = A'' + alpha, Y = A'').
struct ProofTrace {
  explicit ProofTrace(const FieldPtr& field);

  FqSet input;
  Element alpha = 1;
  FqSet working;  // input without -alpha, so that 0 is not in X
  FqSet a_prime;
  FqSet a_second;
  FqSet x;
  FqSet y;

  std::uint64_t shifted_product = 0;    // |A(A+alpha)| of the working set
  std::uint64_t difference_size = 0;    // |A'' - A''|
  std::uint64_t iterated_size = 0;      // |A'' - A'' - A'' - A''|
  double difference_ratio = 0;          // |A''-A''| |A|^7 / |A(A+alpha)|^8
  double iterated_ratio = 0;            // |A''-A''-A''-A''| |A|^23 / |A(A+alpha)|^24
  LemmaReport basic_shift;
  LemmaReport refined_plunnecke;

  DyadicSlice slice;
  PopularPoints points;
  FqSet r_tilde;  // R(A~_x0)
  FqSet r_b;      // R(B_y0)

  TraceCase label = TraceCase::C43;
  std::vector<Element> witnesses;  // a, b, c, d (, e)
  std::optional<Element> r;        // the ratio exhibiting the case, or the pivot
  std::optional<unsigned> subfield_degree;
  std::uint64_t subfield_intersection = 0;  // |A'' ∩ x0 R| in Case 4
  bool hypothesis_violated = false;         // 4.3 with |A'' ∩ x0 R|^26 > kappa^26 |A''|^25

  std::vector<TraceCertificate> certificates;
  std::vector<CoverMeasurement> covers;
  double gamma = 0;  // |A|^2 |A(A+alpha)|^4 / M^2 with A = A''

  bool certificates_hold() const;
};

/// Requires alpha != 0 and 0 not in A; throws TraceDegenerate when fewer than
/// four elements survive or the popular sets are too small for quotient sets.
ProofTrace run_proof_trace(const FqSet& a, Element alpha, const TraceParams& params = {});

/// Re-derives the case predicate from the stored witnesses with quotient sets
/// computed by direct enumeration. Empty string on success, else the reason.
std::string verify_trace(const ProofTrace& t, const TraceParams& params = {});

}  // namespace fqlab

#pragma once

// Hot loops of the toolkit, each in two flavours. `serial::` is the plain
// reference implementation kept for testing and benchmarking; `parallel::`
// is the OpenMP version the library calls. Both return identical results.

#include <cstdint>
#include <span>
#include <vector>

#include "fqlab/bitmask.hpp"
#include "fqlab/field.hpp"

namespace fqlab::kernels {

enum class PairOp { Sum, Diff, Prod, Ratio };

struct MinExpander {
  std::uint64_t min_value = 0;
  std::uint64_t minimizer_count = 0;
  std::vector<std::vector<Element>> minimizers;  // lexicographic order, truncated
  std::uint64_t subsets_examined = 0;
};

namespace serial {

/// {a op b : a in A, b in B}. For Ratio every b must be nonzero.
Bitmask pair_image(const Field& f, std::span<const Element> a, std::span<const Element> b, PairOp op);
/// counts[s] = #{(a, b) : a + b = s}.
std::vector<std::uint64_t> sum_counts(const Field& f, std::span<const Element> a, std::span<const Element> b);
/// counts[xi] = #{(x, y) : y / x = xi}; every x must be nonzero.
std::vector<std::uint64_t> ratio_counts(const Field& f, std::span<const Element> x, std::span<const Element> y);
/// R(X) by direct double loop over the difference set.
Bitmask quotient_set(const Field& f, std::span<const Element> x);
/// Minimum of |A(A + alpha)| over all k-subsets A of `universe` (sorted).
MinExpander min_shifted_product(const Field& f, std::span<const Element> universe, unsigned k, Element alpha,
                                std::size_t max_witnesses);

}  // namespace serial

namespace parallel {

Bitmask pair_image(const Field& f, std::span<const Element> a, std::span<const Element> b, PairOp op);
std::vector<std::uint64_t> sum_counts(const Field& f, std::span<const Element> a, std::span<const Element> b);
std::vector<std::uint64_t> ratio_counts(const Field& f, std::span<const Element> x, std::span<const Element> y);
/// R(X) via cyclic difference sets of discrete logs of X - X.
Bitmask quotient_set(const Field& f, std::span<const Element> x);
MinExpander min_shifted_product(const Field& f, std::span<const Element> universe, unsigned k, Element alpha,
                                std::size_t max_witnesses);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count() noexcept;

}  // namespace fqlab::kernels

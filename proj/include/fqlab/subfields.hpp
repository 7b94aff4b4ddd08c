#pragma once

#include <vector>

#include "fqlab/fqset.hpp"

namespace fqlab {

struct Subfield {
  unsigned degree = 0;  // d | m, the subfield is F_{p^d}
  FqSet elements;
  bool proper = false;

  std::size_t order() const noexcept { return elements.size(); }
};

/// One handle per divisor d of m in increasing order; elements are the
/// fixed points of x -> x^(p^d).
std::vector<Subfield> enumerate_subfields(const FieldPtr& field);

/// Smallest-encoding representative of each distinct dilate cG, c != 0,
/// in increasing order. Throws NotProperSubfield for the full field.
std::vector<Element> coset_representatives(const Subfield& g);

/// The subfield of `field` generated by `set` (the smallest one containing it).
const Subfield& generated_subfield(const std::vector<Subfield>& lattice, const FqSet& set);

}  // namespace fqlab

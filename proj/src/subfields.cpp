#include "fqlab/subfields.hpp"

#include "fqlab/error.hpp"

namespace fqlab {

std::vector<Subfield> enumerate_subfields(const FieldPtr& field) {
  std::vector<Subfield> out;
  for (unsigned d = 1; d <= field->m(); ++d) {
    if (field->m() % d != 0) continue;
    std::vector<Element> fixed;
    for (Element a = 0; a < field->q(); ++a) {
      if (field->frobenius(a, d) == a) fixed.push_back(a);
    }
    out.push_back(Subfield{d, FqSet(field, std::move(fixed)), d != field->m()});
  }
  return out;
}

std::vector<Element> coset_representatives(const Subfield& g) {
  if (!g.proper) throw Error(Errc::NotProperSubfield, "cosets of the full field requested");
  const Field& f = g.elements.field();
  std::vector<char> seen(f.q(), 0);
  std::vector<Element> reps;
  for (Element c = 1; c < f.q(); ++c) {
    if (seen[c]) continue;
    reps.push_back(c);
    for (auto x : g.elements) {
      if (x != 0) seen[f.mul(c, x)] = 1;
    }
  }
  return reps;
}

const Subfield& generated_subfield(const std::vector<Subfield>& lattice, const FqSet& set) {
  for (const auto& s : lattice) {
    if (set.is_subset_of(s.elements)) return s;
  }
  return lattice.back();
}

}  // namespace fqlab

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fqlab/bitmask.hpp"
#include "fqlab/field.hpp"

namespace fqlab {

/// A subset of F_q held both as a strictly increasing member list and as a
/// membership bitmask. Immutable; all set-valued operations return new sets.
class FqSet {
 public:
  explicit FqSet(FieldPtr field);
  /// Sorts and deduplicates. Throws ElementOutOfRange for values >= q.
  FqSet(FieldPtr field, std::vector<Element> elements);
  FqSet(FieldPtr field, Bitmask mask);

  static FqSet full(FieldPtr field);
  static FqSet nonzero(FieldPtr field);
  /// Comma-separated integer encodings, e.g. "0,1,5". Empty string is the empty set.
  static FqSet parse(FieldPtr field, std::string_view literal);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Element a) const noexcept { return a < mask_.bits() && mask_.test(a); }
  std::span<const Element> members() const noexcept { return members_; }
  const Bitmask& mask() const noexcept { return mask_; }
  Element operator[](std::size_t i) const noexcept { return members_[i]; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  FqSet translate(Element t) const;
  FqSet dilate(Element c) const;
  FqSet negated() const;
  FqSet without(Element a) const;
  FqSet intersect(const FqSet& other) const;
  FqSet unite(const FqSet& other) const;
  bool is_subset_of(const FqSet& other) const;
  bool same_field(const FqSet& other) const noexcept { return field_->same_as(*other.field_); }

  std::string to_string() const;

  bool operator==(const FqSet& other) const {
    return same_field(other) && members_ == other.members_;
  }

 private:
  FieldPtr field_;
  std::vector<Element> members_;
  Bitmask mask_;
};

/// Throws MixedFields unless both sets live in the same field.
void require_same_field(const FqSet& a, const FqSet& b);

}  // namespace fqlab

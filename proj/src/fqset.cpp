#include "fqlab/fqset.hpp"

#include <algorithm>
#include <charconv>

#include "fqlab/error.hpp"

namespace fqlab {

FqSet::FqSet(FieldPtr field) : field_(std::move(field)), mask_(field_->q()) {}

FqSet::FqSet(FieldPtr field, std::vector<Element> elements)
    : field_(std::move(field)), mask_(field_->q()) {
  for (auto a : elements) {
    if (!field_->contains(a)) {
      throw Error(Errc::ElementOutOfRange, std::to_string(a) + " not in " + field_->descriptor());
    }
    mask_.set(a);
  }
  members_.reserve(elements.size());
  mask_.for_each([&](std::size_t i) { members_.push_back(static_cast<Element>(i)); });
}

FqSet::FqSet(FieldPtr field, Bitmask mask) : field_(std::move(field)), mask_(std::move(mask)) {
  if (mask_.bits() != field_->q()) throw Error(Errc::InvalidArgument, "bitmask length differs from q");
  members_.reserve(mask_.count());
  mask_.for_each([&](std::size_t i) { members_.push_back(static_cast<Element>(i)); });
}

FqSet FqSet::full(FieldPtr field) {
  std::vector<Element> all(field->q());
  for (Element a = 0; a < field->q(); ++a) all[a] = a;
  return FqSet(std::move(field), std::move(all));
}

FqSet FqSet::nonzero(FieldPtr field) {
  std::vector<Element> all;
  for (Element a = 1; a < field->q(); ++a) all.push_back(a);
  return FqSet(std::move(field), std::move(all));
}

FqSet FqSet::parse(FieldPtr field, std::string_view literal) {
  std::vector<Element> out;
  std::size_t pos = 0;
  while (pos < literal.size()) {
    auto comma = literal.find(',', pos);
    if (comma == std::string_view::npos) comma = literal.size();
    std::string_view tok = literal.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(Errc::ParseError, "bad set literal '" + std::string(literal) + "'");
    }
    if (v >= field->q()) {
      throw Error(Errc::ElementOutOfRange, std::to_string(v) + " not in " + field->descriptor());
    }
    out.push_back(static_cast<Element>(v));
    pos = comma + 1;
  }
  return FqSet(std::move(field), std::move(out));
}

FqSet FqSet::translate(Element t) const {
  std::vector<Element> out;
  out.reserve(size());
  for (auto a : members_) out.push_back(field_->add(a, t));
  return FqSet(field_, std::move(out));
}

FqSet FqSet::dilate(Element c) const {
  std::vector<Element> out;
  out.reserve(size());
  for (auto a : members_) out.push_back(field_->mul(a, c));
  return FqSet(field_, std::move(out));
}

FqSet FqSet::negated() const {
  std::vector<Element> out;
  out.reserve(size());
  for (auto a : members_) out.push_back(field_->neg(a));
  return FqSet(field_, std::move(out));
}

FqSet FqSet::without(Element a) const {
  std::vector<Element> out;
  for (auto x : members_) {
    if (x != a) out.push_back(x);
  }
  return FqSet(field_, std::move(out));
}

FqSet FqSet::intersect(const FqSet& other) const {
  require_same_field(*this, other);
  std::vector<Element> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return FqSet(field_, std::move(out));
}

FqSet FqSet::unite(const FqSet& other) const {
  require_same_field(*this, other);
  std::vector<Element> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return FqSet(field_, std::move(out));
}

bool FqSet::is_subset_of(const FqSet& other) const {
  require_same_field(*this, other);
  return std::all_of(members_.begin(), members_.end(), [&](Element a) { return other.contains(a); });
}

std::string FqSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members_[i]);
  }
  return out;
}

void require_same_field(const FqSet& a, const FqSet& b) {
  if (!a.same_field(b)) {
    throw Error(Errc::MixedFields, a.field().descriptor() + " vs " + b.field().descriptor());
  }
}

}  // namespace fqlab

#include "fqlab/kernels.hpp"

namespace fqlab::kernels {
namespace {

Element apply(const Field& f, Element a, Element b, PairOp op) {
  switch (op) {
    case PairOp::Sum: return f.add(a, b);
    case PairOp::Diff: return f.sub(a, b);
    case PairOp::Prod: return f.mul(a, b);
    case PairOp::Ratio: return f.div(a, b);
  }
  return 0;
}

}  // namespace

namespace serial {

Bitmask pair_image(const Field& f, std::span<const Element> a, std::span<const Element> b, PairOp op) {
  Bitmask out(f.q());
  for (auto x : a) {
    for (auto y : b) out.set(apply(f, x, y, op));
  }
  return out;
}

std::vector<std::uint64_t> sum_counts(const Field& f, std::span<const Element> a, std::span<const Element> b) {
  std::vector<std::uint64_t> counts(f.q(), 0);
  for (auto x : a) {
    for (auto y : b) ++counts[f.add(x, y)];
  }
  return counts;
}

std::vector<std::uint64_t> ratio_counts(const Field& f, std::span<const Element> x, std::span<const Element> y) {
  std::vector<std::uint64_t> counts(f.q(), 0);
  for (auto xv : x) {
    for (auto yv : y) ++counts[f.div(yv, xv)];
  }
  return counts;
}

Bitmask quotient_set(const Field& f, std::span<const Element> x) {
  Bitmask diffs = pair_image(f, x, x, PairOp::Diff);
  std::vector<Element> num;
  diffs.for_each([&](std::size_t d) { num.push_back(static_cast<Element>(d)); });
  std::vector<Element> den;
  for (auto d : num) {
    if (d != 0) den.push_back(d);
  }
  if (den.empty()) return Bitmask(f.q());
  return pair_image(f, num, den, PairOp::Ratio);
}

MinExpander min_shifted_product(const Field& f, std::span<const Element> universe, unsigned k, Element alpha,
                                std::size_t max_witnesses) {
  MinExpander out;
  const std::size_t n = universe.size();
  if (k == 0 || k > n) return out;
  std::vector<std::size_t> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  Bitmask scratch(f.q());
  std::vector<Element> touched;
  std::vector<Element> set(k), shifted(k);
  bool first = true;
  while (true) {
    for (unsigned i = 0; i < k; ++i) {
      set[i] = universe[idx[i]];
      shifted[i] = f.add(set[i], alpha);
    }
    touched.clear();
    for (auto a : set) {
      for (auto b : shifted) {
        const Element v = f.mul(a, b);
        if (!scratch.test(v)) {
          scratch.set(v);
          touched.push_back(v);
        }
      }
    }
    const std::uint64_t value = touched.size();
    for (auto v : touched) scratch.reset(v);
    ++out.subsets_examined;
    if (first || value < out.min_value) {
      first = false;
      out.min_value = value;
      out.minimizer_count = 0;
      out.minimizers.clear();
    }
    if (value == out.min_value) {
      ++out.minimizer_count;
      if (out.minimizers.size() < max_witnesses) out.minimizers.push_back(set);
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace serial
}  // namespace fqlab::kernels

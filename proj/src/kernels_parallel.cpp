#include "fqlab/kernels.hpp"

#include <atomic>

#include "fqlab/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fqlab::kernels {
namespace {

template <class Op>
Bitmask image_with(const Field& f, std::span<const Element> a, std::span<const Element> b, Op op) {
  Bitmask out(f.q());
  const auto na = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel
  {
    Bitmask local(f.q());
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < na; ++i) {
      const Element x = a[static_cast<std::size_t>(i)];
      for (auto y : b) local.set(op(x, y));
    }
#pragma omp critical(fqlab_image_merge)
    out |= local;
  }
  return out;
}

template <class Op>
std::vector<std::uint64_t> counts_with(const Field& f, std::span<const Element> a, std::span<const Element> b,
                                       Op op) {
  std::vector<std::uint64_t> counts(f.q(), 0);
  const auto na = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(f.q(), 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < na; ++i) {
      const Element x = a[static_cast<std::size_t>(i)];
      for (auto y : b) ++local[op(x, y)];
    }
#pragma omp critical(fqlab_counts_merge)
    for (std::size_t s = 0; s < counts.size(); ++s) counts[s] += local[s];
  }
  return counts;
}

// All k-subsets of universe whose smallest index is `lead`, in lex order.
MinExpander min_from_lead(const Field& f, std::span<const Element> universe, unsigned k, Element alpha,
                          std::size_t lead, std::size_t max_witnesses, Bitmask& scratch) {
  MinExpander out;
  const std::size_t n = universe.size();
  const unsigned rest = k - 1;
  std::vector<std::size_t> idx(rest);
  for (unsigned i = 0; i < rest; ++i) idx[i] = lead + 1 + i;
  std::vector<Element> set(k), shifted(k), touched;
  touched.reserve(std::size_t{k} * k);
  bool first = true;
  while (true) {
    set[0] = universe[lead];
    for (unsigned i = 0; i < rest; ++i) set[i + 1] = universe[idx[i]];
    for (unsigned i = 0; i < k; ++i) shifted[i] = f.add(set[i], alpha);
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
    std::size_t i = rest;
    while (i > 0 && idx[i - 1] == n - rest + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < rest; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

int thread_count() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

Bitmask pair_image(const Field& f, std::span<const Element> a, std::span<const Element> b, PairOp op) {
  switch (op) {
    case PairOp::Sum: return image_with(f, a, b, [&f](Element x, Element y) { return f.add(x, y); });
    case PairOp::Diff: return image_with(f, a, b, [&f](Element x, Element y) { return f.sub(x, y); });
    case PairOp::Prod: return image_with(f, a, b, [&f](Element x, Element y) { return f.mul(x, y); });
    case PairOp::Ratio:
      for (auto y : b) {
        if (y == 0) throw Error(Errc::DivisionByZero, "ratio with zero denominator");
      }
      return image_with(f, a, b, [&f](Element x, Element y) {
        return x == 0 ? Element{0} : f.exp(f.log(x) + f.group_order() - f.log(y));
      });
  }
  return Bitmask(f.q());
}

std::vector<std::uint64_t> sum_counts(const Field& f, std::span<const Element> a, std::span<const Element> b) {
  return counts_with(f, a, b, [&f](Element x, Element y) { return f.add(x, y); });
}

std::vector<std::uint64_t> ratio_counts(const Field& f, std::span<const Element> x, std::span<const Element> y) {
  for (auto v : x) {
    if (v == 0) throw Error(Errc::DivisionByZero, "ratio with zero denominator");
  }
  return counts_with(f, x, y, [&f](Element xv, Element yv) {
    return yv == 0 ? Element{0} : f.exp(f.log(yv) + f.group_order() - f.log(xv));
  });
}

Bitmask quotient_set(const Field& f, std::span<const Element> x) {
  const Bitmask diffs = pair_image(f, x, x, PairOp::Diff);
  const std::size_t n = f.group_order();
  std::vector<std::uint32_t> logs;
  diffs.for_each([&](std::size_t d) {
    if (d != 0) logs.push_back(f.log(static_cast<Element>(d)));
  });
  Bitmask out(f.q());
  if (logs.empty()) return out;

  // ext holds the log bitset twice in a row so a rotation by j is a window.
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> ext((2 * n + 63) / 64 + 1, 0);
  for (auto l : logs) {
    ext[l >> 6] |= std::uint64_t{1} << (l & 63);
    ext[(l + n) >> 6] |= std::uint64_t{1} << ((l + n) & 63);
  }
  const std::uint64_t tail_mask = (n % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n % 64)) - 1);

  std::vector<std::uint64_t> acc(words, 0);
  std::atomic<bool> saturated{false};
  const auto nl = static_cast<std::ptrdiff_t>(logs.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(words, 0);
    std::ptrdiff_t since_check = 0;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t t = 0; t < nl; ++t) {
      if (saturated.load(std::memory_order_relaxed)) continue;
      // bit k of the window is log-bit (k + j) mod n, i.e. ratio g^k = d_i / d_j.
      const std::size_t j = logs[static_cast<std::size_t>(t)];
      for (std::size_t w = 0; w < words; ++w) {
        const std::size_t o = j + 64 * w;
        const std::size_t s = o & 63;
        std::uint64_t v = ext[o >> 6] >> s;
        if (s != 0) v |= ext[(o >> 6) + 1] << (64 - s);
        local[w] |= v;
      }
      local[words - 1] &= tail_mask;
      if (++since_check == 32) {
        since_check = 0;
        std::size_t c = 0;
        for (auto wv : local) c += static_cast<std::size_t>(std::popcount(wv));
        if (c == n) saturated.store(true, std::memory_order_relaxed);
      }
    }
#pragma omp critical(fqlab_quotient_merge)
    for (std::size_t w = 0; w < words; ++w) acc[w] |= local[w];
  }
  out.set(0);
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = acc[w];
    while (word != 0) {
      const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
      out.set(f.exp(static_cast<std::uint32_t>(k)));
      word &= word - 1;
    }
  }
  return out;
}

MinExpander min_shifted_product(const Field& f, std::span<const Element> universe, unsigned k, Element alpha,
                                std::size_t max_witnesses) {
  MinExpander out;
  const std::size_t n = universe.size();
  if (k == 0 || k > n) return out;
  const std::size_t leads = n - k + 1;
  std::vector<MinExpander> partial(leads);
  const auto nleads = static_cast<std::ptrdiff_t>(leads);
#pragma omp parallel
  {
    Bitmask scratch(f.q());
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t lead = 0; lead < nleads; ++lead) {
      partial[static_cast<std::size_t>(lead)] =
          min_from_lead(f, universe, k, alpha, static_cast<std::size_t>(lead), max_witnesses, scratch);
    }
  }
  bool first = true;
  for (auto& part : partial) {
    out.subsets_examined += part.subsets_examined;
    if (first || part.min_value < out.min_value) {
      first = false;
      out.min_value = part.min_value;
      out.minimizer_count = 0;
      out.minimizers.clear();
    }
    if (part.min_value == out.min_value) {
      out.minimizer_count += part.minimizer_count;
      for (auto& w : part.minimizers) {
        if (out.minimizers.size() >= max_witnesses) break;
        out.minimizers.push_back(std::move(w));
      }
    }
  }
  return out;
}

}  // namespace parallel
}  // namespace fqlab::kernels

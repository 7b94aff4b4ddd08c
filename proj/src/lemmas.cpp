#include "fqlab/lemmas.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqlab/error.hpp"
#include "fqlab/rng.hpp"
#include "fqlab/set_algebra.hpp"
#include "fqlab/subfields.hpp"

namespace fqlab {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using nlohmann::json;

namespace {

constexpr const char* kLemmaNames[] = {
    "RBcard",       "RBFq",      "QuotientSubfield", "Pivot",           "BouGlibPivot", "RuzsaTriangle",
    "RatioToShift", "Plunnecke", "PlunneckeRefined", "CoveringByShifts", "BasicShiftBound", "Popularity",
    "EnergyIdentities", "EnergyCS", "DyadicEnergy",  "Rudnev",
};

using Clock = std::chrono::steady_clock;

LemmaReport start(LemmaId id, std::string instance) {
  LemmaReport r;
  r.lemma = id;
  r.instance = std::move(instance);
  return r;
}

void finish(LemmaReport& r, Clock::time_point t0) {
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(const FqSet& s) { return "{" + s.to_string() + "}"; }

std::string describe(std::string_view name, const FqSet& s) {
  return std::string(name) + "=" + describe(s);
}

std::vector<Element> members(const FqSet& s) { return {s.begin(), s.end()}; }

json members_json(const FqSet& s) { return json(members(s)); }

double to_double(const cpp_rational& v) { return static_cast<double>(v); }

void require_subset(const FqSet& part, const FqSet& whole, const char* name) {
  if (part.empty() || !part.is_subset_of(whole)) {
    throw Error(Errc::NotSubsets, std::string(name) + " must be a nonempty subset of X");
  }
}

// Sum of several sets; one set returns itself.
FqSet iterated_sum(std::span<const FqSet> bs) {
  FqSet acc = bs[0];
  for (std::size_t i = 1; i < bs.size(); ++i) acc = set_op(acc, bs[i], SetOpKind::Sum);
  return acc;
}

// Every mask of popcount k below 2^n, increasing.
template <class F>
void for_each_mask(std::size_t n, std::size_t k, F&& f) {
  if (k == 0 || k > n) return;
  std::uint32_t m = (1u << k) - 1;
  const std::uint32_t limit = 1u << n;
  while (m < limit) {
    f(m);
    const std::uint32_t c = m & -m;
    const std::uint32_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

FqSet masked(const FqSet& x, std::uint32_t mask) {
  std::vector<Element> v;
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((mask >> i) & 1u) v.push_back(x[i]);
  return FqSet(x.field_ptr(), std::move(v));
}

// Minimise objective(X') over |X'| = floor. The objective is monotone under
// inclusion so equality with the floor loses nothing.
template <class Objective>
std::pair<FqSet, std::uint64_t> exhaustive_min(const FqSet& x, std::size_t floor, Objective&& objective) {
  std::optional<FqSet> best;
  std::uint64_t best_value = 0;
  for_each_mask(x.size(), floor, [&](std::uint32_t m) {
    FqSet cand = masked(x, m);
    const std::uint64_t v = objective(cand);
    if (!best || v < best_value ||
        (v == best_value && std::lexicographical_compare(cand.begin(), cand.end(), best->begin(), best->end()))) {
      best = std::move(cand);
      best_value = v;
    }
  });
  return {*best, best_value};
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

const char* lemma_name(LemmaId id) noexcept { return kLemmaNames[static_cast<int>(id)]; }

LemmaId parse_lemma(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string key = lower(name);
  for (auto id : kAllLemmas) {
    if (lower(lemma_name(id)) == key) return id;
  }
  throw Error(Errc::InvalidArgument, "unknown lemma '" + std::string(name) + "'");
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::ExactPass: return "ExactPass";
    case Verdict::WitnessFound: return "WitnessFound";
    case Verdict::MeasuredRatio: return "MeasuredRatio";
    case Verdict::Fail: return "Fail";
  }
  return "?";
}

LemmaReport check_rbcard(const FqSet& x, Element r, const FqSet& x1, const FqSet& x2) {
  const auto t0 = Clock::now();
  require_same_field(x, x1);
  require_same_field(x, x2);
  require_subset(x1, x, "X1");
  require_subset(x2, x, "X2");
  if (r == 0 || !x.field().contains(r)) throw Error(Errc::InvalidArgument, "r must be a nonzero field element");
  const Field& f = x.field();
  auto rep = start(LemmaId::RBcard, f.descriptor() + " " + describe("X", x) + " r=" + std::to_string(r) + " " +
                                        describe("X1", x1) + " " + describe("X2", x2));
  const FqSet rq = quotient_set(x);
  const FqSet diff = set_op(x1, x2.dilate(r), SetOpKind::Diff);
  const std::uint64_t product = x1.size() * x2.size();
  const bool in_r = rq.contains(r);
  rep.witness = {{"r_in_quotient_set", in_r}, {"difference_size", diff.size()}, {"product", product}};
  if (!in_r) {
    rep.verdict = diff.size() == product ? Verdict::ExactPass : Verdict::Fail;
  } else {
    // first colliding pair in canonical order, if any
    std::vector<std::pair<Element, Element>> seen(f.q(), {0, 0});
    std::vector<char> hit(f.q(), 0);
    bool found = false;
    for (auto a : x1) {
      for (auto b : x2) {
        const Element v = f.sub(a, f.mul(r, b));
        if (hit[v]) {
          rep.witness["collision"] = {{seen[v].first, seen[v].second}, {a, b}};
          found = true;
          break;
        }
        hit[v] = 1;
        seen[v] = {a, b};
      }
      if (found) break;
    }
    rep.verdict = diff.size() > product ? Verdict::Fail : found ? Verdict::WitnessFound : Verdict::ExactPass;
  }
  finish(rep, t0);
  return rep;
}

LemmaReport check_rbfq(const FqSet& x) {
  const auto t0 = Clock::now();
  const Field& f = x.field();
  auto rep = start(LemmaId::RBFq, f.descriptor() + " " + describe("X", x));
  const FqSet rq = quotient_set(x);
  const bool hypothesis = static_cast<std::uint64_t>(x.size()) * x.size() > f.q();
  rep.witness = {{"hypothesis", hypothesis}, {"r_size", rq.size()}, {"q", f.q()}};
  rep.verdict = !hypothesis || rq.size() == f.q() ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_quotient_subfield(const FqSet& x) {
  const auto t0 = Clock::now();
  const Field& f = x.field();
  auto rep = start(LemmaId::QuotientSubfield, f.descriptor() + " " + describe("X", x));
  const FqSet rq = quotient_set(x);
  rep.witness = {{"r_size", rq.size()}};

  std::optional<Element> shift_violation;
  for (auto xi : rq) {
    if (!rq.contains(f.add(1, xi))) {
      shift_violation = xi;
      break;
    }
  }
  std::optional<std::pair<Element, Element>> dilate_violation;
  for (auto a : x) {
    for (auto xi : rq) {
      if (!rq.contains(f.mul(a, xi))) {
        dilate_violation = std::make_pair(a, xi);
        break;
      }
    }
    if (dilate_violation) break;
  }
  rep.witness["shift_closed"] = !shift_violation;
  rep.witness["dilate_closed"] = !dilate_violation;
  if (shift_violation) rep.witness["shift_violation"] = *shift_violation;
  if (dilate_violation) rep.witness["dilate_violation"] = {dilate_violation->first, dilate_violation->second};
  if (shift_violation || dilate_violation) {
    rep.verdict = Verdict::ExactPass;  // hypothesis fails, nothing to assert
    finish(rep, t0);
    return rep;
  }

  bool closed = true;
  for (auto a : rq) {
    for (auto b : rq) {
      closed = closed && rq.contains(f.add(a, b)) && rq.contains(f.sub(a, b)) && rq.contains(f.mul(a, b));
      if (b != 0) closed = closed && rq.contains(f.div(a, b));
      if (!closed) break;
    }
    if (!closed) break;
  }
  // normalise by the smallest nonzero member
  Element x0 = 0;
  for (auto a : x) {
    if (a != 0) {
      x0 = a;
      break;
    }
  }
  const auto lattice = enumerate_subfields(x.field_ptr());
  const Subfield& generated = generated_subfield(lattice, x.dilate(f.inv(x0)));
  rep.witness["field_closed"] = closed;
  rep.witness["generated_degree"] = generated.degree;
  rep.witness["x0"] = x0;
  rep.verdict = closed && generated.elements == rq ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport find_pivot_r(const FqSet& x, Rational c, std::uint64_t seed, std::size_t samples) {
  const auto t0 = Clock::now();
  const Field& f = x.field();
  if (c.den <= 0 || c.num < 0) throw Error(Errc::InvalidArgument, "threshold must be a nonnegative rational");
  const FqSet rq = quotient_set(x);
  const std::uint64_t n = x.size();
  if (cpp_int(rq.size()) * c.den < cpp_int(c.num) * n * n) {
    throw Error(Errc::NotApplicable, "|R(X)| = " + std::to_string(rq.size()) + " below c|X|^2");
  }
  auto rep = start(LemmaId::Pivot, f.descriptor() + " " + describe("X", x) + " c=" + std::to_string(c.num) + "/" +
                                       std::to_string(c.den));
  const std::size_t floor = ceil_div(3 * x.size(), 4);
  std::vector<FqSet> subsets;
  const bool exhaustive = x.size() <= 10;
  if (exhaustive) {
    for_each_mask(x.size(), floor, [&](std::uint32_t m) { subsets.push_back(masked(x, m)); });
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      std::vector<Element> v;
      for (auto idx : rng.sample(x.size(), floor)) v.push_back(x[idx]);
      subsets.emplace_back(x.field_ptr(), std::move(v));
    }
  }
  std::uint64_t best = 0;
  Element best_r = 0;
  bool any = false;
  for (auto r : rq) {
    std::uint64_t worst = ~std::uint64_t{0};
    for (const auto& s : subsets) {
      worst = std::min<std::uint64_t>(worst, set_op(s, s.dilate(r), SetOpKind::Sum).size());
      if (any && worst <= best) break;
    }
    if (!any || worst > best) {
      any = true;
      best = worst;
      best_r = r;
    }
  }
  rep.verdict = Verdict::MeasuredRatio;
  rep.ratio = static_cast<double>(best) / static_cast<double>(n * n);
  rep.witness = {{"r", best_r},          {"min_sumset", best},         {"subset_size", floor},
                 {"subsets", subsets.size()}, {"exhaustive", exhaustive}, {"r_size", rq.size()}};
  finish(rep, t0);
  return rep;
}

LemmaReport find_pivot_xi(const FqSet& x1, const FqSet& x2) {
  const auto t0 = Clock::now();
  require_same_field(x1, x2);
  if (x1.empty() || x2.empty()) throw Error(Errc::EmptySet, "pivot sets must be nonempty");
  const Field& f = x1.field();
  auto rep = start(LemmaId::BouGlibPivot, f.descriptor() + " " + describe("X1", x1) + " " + describe("X2", x2));
  const std::uint64_t ab = x1.size() * x2.size();
  const std::uint64_t g = f.group_order();
  // ceil(ab (q-1) / (ab + q - 1))
  const cpp_int num = cpp_int(ab) * g;
  const cpp_int den = cpp_int(ab) + g;
  const std::uint64_t bound = static_cast<std::uint64_t>((num + den - 1) / den);
  std::uint64_t best = 0;
  Element best_xi = 1;
  Bitmask seen(f.q());
  for (Element xi = 1; xi < f.q(); ++xi) {
    seen.clear();
    for (auto b : x2) {
      const Element t = f.mul(xi, b);
      for (auto a : x1) seen.set(f.add(a, t));
    }
    const std::uint64_t c = seen.count();
    if (c > best) {
      best = c;
      best_xi = xi;
    }
  }
  rep.witness = {{"xi", best_xi}, {"sumset_size", best}, {"bound", bound}};
  rep.verdict = best >= bound ? Verdict::WitnessFound : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_sumset_inequalities(const FqSet& x, std::span<const FqSet> bs, SumsetKind kind) {
  const auto t0 = Clock::now();
  const Field& f = x.field();
  if (x.empty()) throw Error(Errc::EmptySet, "X is empty");
  for (const auto& b : bs) {
    require_same_field(x, b);
    if (b.empty()) throw Error(Errc::EmptySet, "B_i is empty");
  }
  std::string inst = f.descriptor() + " " + describe("X", x);
  for (std::size_t i = 0; i < bs.size(); ++i) inst += " " + describe("B" + std::to_string(i + 1), bs[i]);

  LemmaReport rep;
  cpp_int lhs, rhs;
  switch (kind) {
    case SumsetKind::RuzsaTriangle: {
      if (bs.size() != 2) throw Error(Errc::InvalidArgument, "Ruzsa triangle takes two sets");
      rep = start(LemmaId::RuzsaTriangle, inst);
      const auto d = set_op(bs[0], bs[1], SetOpKind::Diff).size();
      const auto s1 = set_op(x, bs[0], SetOpKind::Sum).size();
      const auto s2 = set_op(x, bs[1], SetOpKind::Sum).size();
      lhs = cpp_int(d) * x.size();
      rhs = cpp_int(s1) * s2;
      rep.witness = {{"difference", d}, {"x_plus_b1", s1}, {"x_plus_b2", s2}};
      break;
    }
    case SumsetKind::Plunnecke: {
      if (bs.empty() || bs.size() > 4) throw Error(Errc::InvalidArgument, "Plunnecke takes one to four sets");
      rep = start(LemmaId::Plunnecke, inst);
      const auto total = iterated_sum(bs).size();
      rhs = 1;
      json sides = json::array();
      for (const auto& b : bs) {
        const auto s = set_op(x, b, SetOpKind::Sum).size();
        rhs *= s;
        sides.push_back(s);
      }
      lhs = cpp_int(total) * boost::multiprecision::pow(cpp_int(x.size()), static_cast<unsigned>(bs.size() - 1));
      rep.witness = {{"iterated_sum", total}, {"x_plus_b", sides}};
      break;
    }
    case SumsetKind::RatioToShift: {
      if (x.contains(0)) throw Error(Errc::ZeroInSet, "RatioToShift needs 0 outside A");
      rep = start(LemmaId::RatioToShift, f.descriptor() + " " + describe("A", x));
      const auto ratio = set_op(x, x, SetOpKind::Ratio).size();
      const auto shifted = shifted_product(x, 1).size();
      lhs = cpp_int(ratio) * x.size();
      rhs = cpp_int(shifted) * shifted;
      rep.witness = {{"ratio_set", ratio}, {"shifted_product", shifted}};
      break;
    }
  }
  rep.witness["lhs"] = lhs.str();
  rep.witness["rhs"] = rhs.str();
  rep.verdict = lhs <= rhs ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

SubsetSearch refined_plunnecke_subset(const FqSet& x, std::span<const FqSet> bs, Rational epsilon, SearchMode mode) {
  const auto t0 = Clock::now();
  if (epsilon.den <= 0 || epsilon.num <= 0 || epsilon.num >= epsilon.den) {
    throw Error(Errc::EpsilonOutOfRange, std::to_string(epsilon.num) + "/" + std::to_string(epsilon.den));
  }
  if (x.empty() || bs.empty()) throw Error(Errc::EmptySet, "X and the B_i must be nonempty");
  for (const auto& b : bs) {
    require_same_field(x, b);
    if (b.empty()) throw Error(Errc::EmptySet, "B_i is empty");
  }
  const Field& f = x.field();
  std::string inst = f.descriptor() + " " + describe("X", x);
  for (std::size_t i = 0; i < bs.size(); ++i) inst += " " + describe("B" + std::to_string(i + 1), bs[i]);
  inst += " eps=" + std::to_string(epsilon.num) + "/" + std::to_string(epsilon.den);

  // ceil((1 - eps)|X|), at least one element
  const std::size_t n = x.size();
  const auto keep_num = static_cast<std::uint64_t>(epsilon.den - epsilon.num) * n;
  std::size_t floor = static_cast<std::size_t>((keep_num + static_cast<std::uint64_t>(epsilon.den) - 1) /
                                               static_cast<std::uint64_t>(epsilon.den));
  floor = std::max<std::size_t>(floor, 1);

  const FqSet total = iterated_sum(bs);
  const bool exhaustive =
      mode == SearchMode::Exhaustive || (mode == SearchMode::Auto && n <= kExhaustiveSubsetCutoff);
  if (exhaustive && n > 24) throw Error(Errc::InvalidArgument, "exhaustive search limited to 24 elements");

  SubsetSearch out{FqSet(x.field_ptr()), 0, exhaustive, start(LemmaId::PlunneckeRefined, inst)};
  if (exhaustive) {
    auto [best, value] = exhaustive_min(x, floor, [&](const FqSet& s) {
      return static_cast<std::uint64_t>(set_op(s, total, SetOpKind::Sum).size());
    });
    out.subset = std::move(best);
    out.objective = value;
  } else {
    // cover[z] = #{x in X' : z in x + S}; drop the x owning the most singly covered points
    std::vector<std::uint32_t> cover(f.q(), 0);
    std::vector<char> alive(n, 1);
    for (auto a : x)
      for (auto s : total) ++cover[f.add(a, s)];
    for (std::size_t size = n; size > floor; --size) {
      std::size_t drop = n;
      std::uint64_t gain = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        std::uint64_t unique = 0;
        for (auto s : total) unique += cover[f.add(x[i], s)] == 1;
        if (drop == n || unique > gain) {
          drop = i;
          gain = unique;
        }
      }
      alive[drop] = 0;
      for (auto s : total) --cover[f.add(x[drop], s)];
    }
    std::vector<Element> kept;
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i]) kept.push_back(x[i]);
    out.subset = FqSet(x.field_ptr(), std::move(kept));
    out.objective = set_op(out.subset, total, SetOpKind::Sum).size();
  }

  cpp_int denom = 1;
  for (const auto& b : bs) denom *= set_op(x, b, SetOpKind::Sum).size();
  const cpp_int scale = boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(bs.size() - 1));
  const cpp_rational ratio = cpp_rational(cpp_int(out.objective) * scale) / denom;
  out.report.verdict = Verdict::MeasuredRatio;
  out.report.ratio = to_double(ratio);
  out.report.witness = {{"subset", members_json(out.subset)},
                        {"subset_size", out.subset.size()},
                        {"size_floor", floor},
                        {"sumset_size", out.objective},
                        {"exhaustive", exhaustive}};
  finish(out.report, t0);
  return out;
}

SubsetSearch basic_shift_subset(const FqSet& a, SearchMode mode) {
  const auto t0 = Clock::now();
  if (a.empty()) throw Error(Errc::EmptySet, "A is empty");
  if (a.contains(0)) throw Error(Errc::ZeroInSet, "A must avoid 0");
  const Field& f = a.field();
  const std::size_t n = a.size();
  const std::size_t floor = ceil_div(n, 2);
  const bool exhaustive =
      mode == SearchMode::Exhaustive || (mode == SearchMode::Auto && n <= kExhaustiveSubsetCutoff);
  if (exhaustive && n > 24) throw Error(Errc::InvalidArgument, "exhaustive search limited to 24 elements");

  SubsetSearch out{FqSet(a.field_ptr()), 0, exhaustive, start(LemmaId::BasicShiftBound, f.descriptor() + " " +
                                                                                          describe("A", a))};
  if (exhaustive) {
    auto [best, value] = exhaustive_min(a, floor, [](const FqSet& s) {
      return static_cast<std::uint64_t>(set_op(s, s, SetOpKind::Diff).size());
    });
    out.subset = std::move(best);
    out.objective = value;
  } else {
    // mult[d] = #{(u, v) in A'^2 : u - v = d}; drop the element losing the most differences
    std::vector<std::uint32_t> mult(f.q(), 0);
    std::vector<std::uint32_t> dec(f.q(), 0);
    std::vector<char> alive(n, 1);
    for (auto u : a)
      for (auto v : a) ++mult[f.sub(u, v)];
    std::vector<Element> touched;
    for (std::size_t size = n; size > floor; --size) {
      std::size_t drop = n;
      std::uint64_t loss = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        touched.clear();
        for (std::size_t j = 0; j < n; ++j) {
          if (!alive[j]) continue;
          const Element d1 = f.sub(a[i], a[j]);
          if (dec[d1]++ == 0) touched.push_back(d1);
          if (j != i) {
            const Element d2 = f.sub(a[j], a[i]);
            if (dec[d2]++ == 0) touched.push_back(d2);
          }
        }
        std::uint64_t lost = 0;
        for (auto d : touched) {
          lost += mult[d] == dec[d];
          dec[d] = 0;
        }
        if (drop == n || lost > loss) {
          drop = i;
          loss = lost;
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!alive[j]) continue;
        --mult[f.sub(a[drop], a[j])];
        if (j != drop) --mult[f.sub(a[j], a[drop])];
      }
      alive[drop] = 0;
    }
    std::vector<Element> kept;
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i]) kept.push_back(a[i]);
    out.subset = FqSet(a.field_ptr(), std::move(kept));
    out.objective = set_op(out.subset, out.subset, SetOpKind::Diff).size();
  }

  const auto shifted = shifted_product(a, 1).size();
  const auto ratio_set = set_op(a, a, SetOpKind::Ratio).size();
  const cpp_int top = cpp_int(out.objective) * boost::multiprecision::pow(cpp_int(n), 5);
  const cpp_int bottom = boost::multiprecision::pow(cpp_int(shifted), 4) * ratio_set * ratio_set;
  const cpp_rational ratio(top, bottom);
  out.report.verdict = Verdict::MeasuredRatio;
  out.report.ratio = to_double(ratio);
  out.report.witness = {{"subset", members_json(out.subset)},
                        {"subset_size", out.subset.size()},
                        {"size_floor", floor},
                        {"difference_size", out.objective},
                        {"shifted_product", shifted},
                        {"ratio_set", ratio_set},
                        {"exhaustive", exhaustive}};
  finish(out.report, t0);
  return out;
}

LemmaReport check_popularity(const FqSet& domain, std::span<const std::uint64_t> weights, std::uint64_t k,
                             std::optional<std::uint64_t> m_cap) {
  const auto t0 = Clock::now();
  auto rep = start(LemmaId::Popularity,
                   domain.field().descriptor() + " " + describe("X", domain) + " K=" + std::to_string(k));
  const auto r = popularity_subset(domain, weights, k, m_cap);
  rep.witness = {{"subset", members_json(r.subset)},
                 {"threshold", std::to_string(r.threshold_num) + "/" + std::to_string(r.threshold_den)},
                 {"retained_mass", r.retained_mass},
                 {"mass_certificate", r.mass_certificate}};
  if (r.size_certificate) rep.witness["size_certificate"] = *r.size_certificate;
  rep.verdict = r.mass_certificate && r.size_certificate.value_or(true) ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_energy_identities(const FqSet& x, const FqSet& y) {
  const auto t0 = Clock::now();
  require_same_field(x, y);
  const Field& f = x.field();
  auto rep = start(LemmaId::EnergyIdentities, f.descriptor() + " " + describe("X", x) + " " + describe("Y", y));
  const RepSpectrum spec = representation_spectrum(x, y);
  // second moment via product representations, a different route
  std::vector<std::uint64_t> prod(f.q(), 0);
  for (auto a : x)
    for (auto b : y) ++prod[f.mul(a, b)];
  std::uint64_t product_energy = 0;
  for (auto c : prod) product_energy += c * c;
  const bool first = spec.total == x.size() * y.size();
  const bool second = spec.energy == product_energy;

  // difference identities on Y
  std::uint64_t s1 = 0, s2 = 0;
  for (const auto& [alpha, c] : difference_profile(y)) {
    s1 += c;
    s2 += c * c;
  }
  const std::uint64_t ny = y.size();
  const bool third = s1 == ny * ny;
  const bool fourth = s2 == additive_energy(y);
  rep.witness = {{"total", spec.total},       {"energy", spec.energy},    {"product_energy", product_energy},
                 {"first_moment", first},     {"second_moment", second},  {"difference_sum", s1},
                 {"difference_square_sum", s2}, {"difference_count", third}, {"difference_energy", fourth}};
  rep.verdict = first && second && third && fourth ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_energy_cs(const FqSet& x, const FqSet& y) {
  const auto t0 = Clock::now();
  require_same_field(x, y);
  auto rep =
      start(LemmaId::EnergyCS, x.field().descriptor() + " " + describe("X", x) + " " + describe("Y", y));
  const std::uint64_t e = multiplicative_energy(x, y);
  const std::uint64_t xy = set_op(x, y, SetOpKind::Prod).size();
  const cpp_int lhs = cpp_int(e) * xy;
  const cpp_int rhs = cpp_int(x.size()) * x.size() * y.size() * y.size();
  rep.witness = {{"energy", e}, {"product_set", xy}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
  rep.verdict = lhs >= rhs ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_dyadic_energy(const FqSet& x, const FqSet& y) {
  const auto t0 = Clock::now();
  auto rep =
      start(LemmaId::DyadicEnergy, x.field().descriptor() + " " + describe("X", x) + " " + describe("Y", y));
  const DyadicSlice s = dyadic_energy_slice(x, y);
  const SliceCertificates c = verify_slice(s);
  rep.witness = {{"slopes", members_json(s.slopes)},  {"N", s.n},
                 {"L", s.l},                           {"M", s.m},
                 {"energy", s.energy},                 {"counts_in_range", c.counts_in_range},
                 {"energy_bound", c.energy_bound},     {"ln_at_most_xy", c.ln_at_most_xy},
                 {"ln_below_xy", c.ln_below_xy}};
  rep.verdict = c.all_strict() ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_rudnev(const FqSet& x, const FqSet& y) {
  const auto t0 = Clock::now();
  auto rep = start(LemmaId::Rudnev, x.field().descriptor() + " " + describe("X", x) + " " + describe("Y", y));
  const DyadicSlice s = dyadic_energy_slice(x, y);
  const PopularPoints pts = popular_points(s);
  const bool replay = verify_popular_points(s, pts);
  json bounds = json::array();
  for (const auto& b : pts.bounds) {
    bounds.push_back({{"quantity", b.quantity},
                      {"measured", b.measured},
                      {"constant", b.constant.str()},
                      {"form", b.form},
                      {"holds", b.holds}});
  }
  rep.witness = {{"x0", pts.x0},
                 {"y0", pts.y0},
                 {"a_tilde", members_json(pts.a_tilde)},
                 {"bounds", bounds},
                 {"chain_holds", pts.chain_holds},
                 {"replay_matches", replay}};
  rep.verdict = pts.chain_holds && replay ? Verdict::ExactPass : Verdict::Fail;
  finish(rep, t0);
  return rep;
}

LemmaReport check_covering_by_shifts(const FqSet& z, Element x, Element y, const FqSet& x_pre, const FqSet& y_pre,
                                     Sign sign) {
  const auto t0 = Clock::now();
  require_same_field(z, x_pre);
  require_same_field(z, y_pre);
  if (z.contains(0)) throw Error(Errc::ZeroInSet, "Z must avoid 0");
  if (x == 0) throw Error(Errc::InvalidArgument, "x must be nonzero");
  if (x_pre.empty() || y_pre.empty() || !x_pre.is_subset_of(z) || !y_pre.is_subset_of(z)) {
    throw Error(Errc::NotSubsets, "preimages must be nonempty subsets of Z");
  }
  const Field& f = z.field();
  auto rep = start(LemmaId::CoveringByShifts, f.descriptor() + " " + describe("Z", z) + " x=" + std::to_string(x) +
                                                  " y=" + std::to_string(y) + " " + describe("Xpre", x_pre) + " " +
                                                  describe("Ypre", y_pre) + (sign == Sign::Plus ? " +" : " -"));
  const FqSet big_x = x_pre.dilate(x).translate(y);
  const FqSet big_y = y_pre.dilate(x).translate(y);
  const Cover c = covering_number(big_x, big_y, sign);
  const auto shifted = shifted_product(z, 1).size();
  const auto ratio_set = set_op(z, z, SetOpKind::Ratio).size();
  const cpp_rational bound(cpp_int(shifted) * shifted * ratio_set,
                           cpp_int(big_x.size()) * big_y.size() * big_y.size());
  rep.verdict = Verdict::MeasuredRatio;
  rep.ratio = to_double(cpp_rational(cpp_int(c.count)) / bound);
  rep.witness = {{"count", c.count},
                 {"exact", c.exact},
                 {"greedy_count", c.greedy_count},
                 {"shifts", c.shifts},
                 {"bound", to_double(bound)}};
  finish(rep, t0);
  return rep;
}

}  // namespace fqlab

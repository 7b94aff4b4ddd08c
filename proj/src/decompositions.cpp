#include "fqlab/decompositions.hpp"

#include <algorithm>
#include <bit>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqlab/error.hpp"

namespace fqlab {

using boost::multiprecision::cpp_int;

namespace {

unsigned floor_log2(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v) - 1); }

std::string dec(const cpp_int& v) { return v.str(); }

BoundCheck make_bound(std::string quantity, std::string form, std::uint64_t measured, unsigned shift,
                      const cpp_int& numerator, const cpp_int& denominator) {
  BoundCheck b;
  b.quantity = std::move(quantity);
  b.form = std::move(form);
  b.measured = measured;
  b.constant.shift = shift;
  b.numerator = dec(numerator);
  b.denominator = dec(denominator);
  b.holds = cpp_int(measured) * denominator * (cpp_int(1) << shift) >= numerator;
  return b;
}

PigeonholeStep make_step(std::string name, std::uint64_t mass_in, std::size_t domain, const PopularityResult& r) {
  PigeonholeStep s;
  s.name = std::move(name);
  s.mass_in = mass_in;
  s.mass_kept = r.retained_mass;
  s.domain_size = domain;
  s.kept_size = r.subset.size();
  s.mass_ok = r.mass_certificate;
  s.size_ok = r.size_certificate;
  return s;
}

// Popularity over the support of `weight` restricted to `candidates`.
template <class Weight>
PopularityResult popular_over_support(const FqSet& candidates, Weight&& weight, std::uint64_t& mass,
                                      std::size_t& support, std::optional<std::uint64_t> cap) {
  std::vector<Element> dom;
  std::vector<std::uint64_t> w;
  for (auto e : candidates) {
    const std::uint64_t v = weight(e);
    if (v == 0) continue;
    dom.push_back(e);
    w.push_back(v);
  }
  mass = 0;
  for (auto v : w) mass += v;
  support = dom.size();
  return popularity_subset(FqSet(candidates.field_ptr(), dom), w, mass, cap);
}

}  // namespace

PopularityResult popularity_subset(const FqSet& domain, std::span<const std::uint64_t> weights, std::uint64_t k,
                                   std::optional<std::uint64_t> m_cap) {
  if (weights.size() != domain.size()) throw Error(Errc::InvalidArgument, "one weight per domain element required");
  std::uint64_t total = 0;
  for (auto w : weights) {
    if (w == 0) throw Error(Errc::NonPositiveWeight, "popularity weights must be positive");
    total += w;
  }
  if (total < k || domain.empty()) {
    throw Error(Errc::SumBelowK, std::to_string(total) + " < " + std::to_string(k));
  }
  PopularityResult out{FqSet(domain.field_ptr()), 0, 1, 0, false, std::nullopt};
  out.threshold_num = k;
  out.threshold_den = 2 * domain.size();
  std::vector<Element> kept;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    // f(x) >= K / (2|X|)
    if (static_cast<unsigned __int128>(weights[i]) * out.threshold_den >= k) {
      kept.push_back(domain[i]);
      out.retained_mass += weights[i];
    }
  }
  out.subset = FqSet(domain.field_ptr(), std::move(kept));
  out.mass_certificate = 2 * static_cast<unsigned __int128>(out.retained_mass) >= k;
  if (m_cap) {
    for (auto w : weights) {
      if (w > *m_cap) throw Error(Errc::InvalidArgument, "weight exceeds M_cap");
    }
    out.size_certificate = static_cast<unsigned __int128>(out.subset.size()) * 2 * *m_cap >= k;
  }
  return out;
}

SliceCertificates verify_slice(const DyadicSlice& s) {
  SliceCertificates c;
  c.counts_in_range = !s.slopes.empty();
  for (auto xi : s.slopes) {
    const auto it = s.spectrum.counts.find(xi);
    const std::uint64_t r = it == s.spectrum.counts.end() ? 0 : it->second;
    c.counts_in_range = c.counts_in_range && s.n <= r && r < 2 * s.n;
  }
  const cpp_int levels = floor_log2(s.x.size()) + 1;
  c.energy_bound = cpp_int(s.energy) <= levels * 4 * cpp_int(s.l) * s.n * s.n;
  const cpp_int ln = cpp_int(s.l) * s.n;
  const cpp_int xy = cpp_int(s.x.size()) * s.y.size();
  c.ln_at_most_xy = ln <= xy;
  c.ln_below_xy = ln < xy;
  return c;
}

DyadicSlice dyadic_energy_slice(const FqSet& x, const FqSet& y) {
  require_same_field(x, y);
  if (x.empty() || y.empty()) throw Error(Errc::EmptySpectrum, "empty point set");
  if (x.contains(0)) throw Error(Errc::ZeroInDenominatorSet, "0 in X");
  if (y.size() > x.size()) throw Error(Errc::InvalidArgument, "slice requires |Y| <= |X|");

  DyadicSlice s{x, y, FqSet(x.field_ptr()), 0, 0, 0, 0, 0, 0, {}, {}, {}};
  s.spectrum = representation_spectrum(x, y);
  s.energy = s.spectrum.energy;
  std::vector<std::uint64_t> level_mass(64, 0);
  for (const auto& [xi, r] : s.spectrum.counts) level_mass[floor_log2(r)] += r * r;
  unsigned best = 0;
  for (unsigned j = 1; j < level_mass.size(); ++j) {
    if (level_mass[j] > level_mass[best]) best = j;
  }
  s.level = best;
  s.n = std::uint64_t{1} << best;
  s.level_mass = level_mass[best];
  std::vector<Element> d;
  for (const auto& [xi, r] : s.spectrum.counts) {
    if (floor_log2(r) == best) d.push_back(xi);
  }
  s.slopes = FqSet(x.field_ptr(), std::move(d));
  s.l = s.slopes.size();
  s.m = s.l * s.n * s.n;
  const Field& f = x.field();
  for (auto xv : x) {
    for (auto yv : y) {
      if (s.slopes.contains(f.div(yv, xv))) s.points.emplace_back(xv, yv);
    }
  }
  s.certificates = verify_slice(s);
  return s;
}

PopularPoints popular_points(const DyadicSlice& slice) {
  if (slice.l == 0 || slice.n == 0 || slice.points.empty()) throw Error(Errc::DegenerateSlice, "L = 0");
  const Field& f = slice.x.field();
  const FieldPtr& fp = slice.x.field_ptr();
  const std::size_t nx = slice.x.size();
  const std::size_t ny = slice.y.size();
  const std::uint64_t L = slice.l, N = slice.n;

  // X-side bitsets sized over the index of X.
  std::vector<std::int32_t> xpos(f.q(), -1);
  for (std::size_t i = 0; i < nx; ++i) xpos[slice.x[i]] = static_cast<std::int32_t>(i);
  const std::size_t words = (nx + 63) / 64;
  auto bit = [&](std::vector<std::uint64_t>& v, Element xe) {
    const auto i = static_cast<std::size_t>(xpos[xe]);
    v[i >> 6] |= std::uint64_t{1} << (i & 63);
  };
  auto overlap = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
    return c;
  };

  std::map<Element, std::vector<std::uint64_t>> x_of_y;   // X_y
  std::map<Element, std::vector<Element>> y_of_x;         // Y_x
  std::map<Element, std::vector<std::uint64_t>> line;     // P_xi
  for (auto xi : slice.slopes) line[xi].assign(words, 0);
  for (auto yv : slice.y) x_of_y[yv].assign(words, 0);
  for (auto [xv, yv] : slice.points) {
    bit(x_of_y[yv], xv);
    y_of_x[xv].push_back(yv);
    bit(line[f.div(yv, xv)], xv);
  }
  auto popcount_all = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t c = 0;
    for (auto w : v) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  };

  PopularPoints out{0, 0, FqSet(fp), FqSet(fp), FqSet(fp), FqSet(fp), FqSet(fp), FqSet(fp), {}, 0, 0, {}, {}, false};
  const std::uint64_t p_size = slice.points.size();
  const cpp_int ln = cpp_int(L) * N;
  out.bounds.push_back(make_bound("|P|", "LN", p_size, 0, ln, 1));

  // rows: f(y) = |X_y|
  std::uint64_t mass = 0;
  std::size_t support = 0;
  auto rows = popular_over_support(
      slice.y, [&](Element yv) { return popcount_all(x_of_y[yv]); }, mass, support, std::nullopt);
  out.steps.push_back(make_step("rows", mass, support, rows));
  out.rows = rows.subset;
  const std::uint64_t p1 = rows.retained_mass;  // |P'|
  out.bounds.push_back(make_bound("|P'|", "LN", p1, 1, ln, 1));

  // columns: f(x) = |Y_x ∩ Y'|
  auto y_hits = [&](Element xv) {
    std::uint64_t c = 0;
    for (auto yv : y_of_x[xv]) c += out.rows.contains(yv);
    return c;
  };
  auto cols = popular_over_support(slice.x, y_hits, mass, support, std::nullopt);
  out.steps.push_back(make_step("columns", mass, support, cols));
  out.columns = cols.subset;
  const std::uint64_t p2 = cols.retained_mass;  // |P''|
  out.bounds.push_back(make_bound("|P''|", "LN", p2, 2, ln, 1));

  // lines: f(xi) = |P''_xi|
  std::map<Element, std::vector<std::uint64_t>> line2;
  for (auto xi : slice.slopes) line2[xi].assign(words, 0);
  for (auto [xv, yv] : slice.points) {
    if (out.rows.contains(yv) && out.columns.contains(xv)) bit(line2[f.div(yv, xv)], xv);
  }
  auto lines = popular_over_support(
      slice.slopes, [&](Element xi) { return popcount_all(line2[xi]); }, mass, support, 2 * N - 1);
  out.steps.push_back(make_step("lines", mass, support, lines));
  out.lines = lines.subset;
  std::uint64_t min_line = ~std::uint64_t{0};
  for (auto xi : out.lines) min_line = std::min(min_line, popcount_all(line2[xi]));
  out.bounds.push_back(make_bound("|D'|", "L", out.lines.size(), 4, cpp_int(L), 1));
  out.bounds.push_back(make_bound("min |P''_xi|", "N", min_line, 3, cpp_int(N), 1));

  // Sigma over X' x Y' and its largest term.
  bool have_best = false;
  for (auto xv : out.columns) {
    for (auto yv : out.rows) {
      std::uint64_t inner = 0;
      const auto& xy = x_of_y[yv];
      for (auto z : y_of_x[xv]) inner += overlap(line[f.div(z, xv)], xy);
      out.sigma += inner;
      if (!have_best || inner > out.best_inner) {
        have_best = true;
        out.best_inner = inner;
        out.x0 = xv;
        out.y0 = yv;
      }
    }
  }
  const cpp_int l2n3 = cpp_int(L) * L * N * N * N;
  out.bounds.push_back(make_bound("Sigma", "L^2 N^3 / |X|", out.sigma, 12, l2n3, cpp_int(nx)));
  out.bounds.push_back(
      make_bound("inner(x0,y0)", "L^2 N^3 / (|X|^2 |Y|)", out.best_inner, 12, l2n3, cpp_int(nx) * nx * ny));

  out.a_x0 = FqSet(fp, y_of_x[out.x0]);
  std::vector<Element> bx;
  for (auto xv : slice.x) {
    const auto i = static_cast<std::size_t>(xpos[xv]);
    if ((x_of_y[out.y0][i >> 6] >> (i & 63)) & 1u) bx.push_back(xv);
  }
  out.b_y0 = FqSet(fp, std::move(bx));
  out.bounds.push_back(make_bound("|A_x0|", "LN / |X|", out.a_x0.size(), 2, ln, cpp_int(nx)));
  out.bounds.push_back(make_bound("|B_y0|", "LN / |Y|", out.b_y0.size(), 1, ln, cpp_int(ny)));

  // final: f(z) = |P_{z/x0} ∩ X_{y0}| over z in A_x0
  const auto& xy0 = x_of_y[out.y0];
  auto s_count = [&](Element z) { return overlap(line[f.div(z, out.x0)], xy0); };
  auto tilde = popular_over_support(out.a_x0, s_count, mass, support, 2 * N - 1);
  out.steps.push_back(make_step("a_tilde", mass, support, tilde));
  out.a_tilde = tilde.subset;
  const cpp_int l2n2 = cpp_int(L) * L * N * N;
  out.bounds.push_back(
      make_bound("|A_tilde|", "L^2 N^2 / (|X|^2 |Y|)", out.a_tilde.size(), 14, l2n2, cpp_int(nx) * nx * ny));

  std::uint64_t min_s = ~std::uint64_t{0};
  for (auto z : out.a_tilde) {
    const auto& lz = line[f.div(z, out.x0)];
    std::vector<Element> members;
    for (auto xv : out.b_y0) {
      const auto i = static_cast<std::size_t>(xpos[xv]);
      if ((lz[i >> 6] >> (i & 63)) & 1u) members.push_back(xv);
    }
    min_s = std::min<std::uint64_t>(min_s, members.size());
    out.s.emplace(z, FqSet(fp, std::move(members)));
  }
  if (out.a_tilde.empty()) min_s = 0;
  out.bounds.push_back(
      make_bound("min |S_z|", "L^2 N^3 / (|X|^2 |Y|^2)", min_s, 13, l2n3, cpp_int(nx) * nx * ny * ny));

  out.chain_holds = true;
  for (const auto& b : out.bounds) out.chain_holds = out.chain_holds && b.holds;
  for (const auto& s : out.steps) out.chain_holds = out.chain_holds && s.mass_ok && s.size_ok.value_or(true);
  return out;
}

bool verify_popular_points(const DyadicSlice& slice, const PopularPoints& pts) {
  const Field& f = slice.x.field();
  auto in_p = [&](Element xv, Element yv) {
    return slice.x.contains(xv) && slice.y.contains(yv) && xv != 0 && slice.slopes.contains(f.div(yv, xv));
  };
  for (auto yv : slice.y) {
    if (pts.a_x0.contains(yv) != in_p(pts.x0, yv)) return false;
  }
  for (auto xv : slice.x) {
    if (pts.b_y0.contains(xv) != in_p(xv, pts.y0)) return false;
  }
  if (!pts.a_tilde.is_subset_of(pts.a_x0)) return false;
  if (pts.s.size() != pts.a_tilde.size()) return false;
  for (auto z : pts.a_tilde) {
    const Element xi = f.div(z, pts.x0);
    std::vector<Element> fresh;
    for (auto xv : slice.x) {
      if (in_p(xv, f.mul(xi, xv)) && in_p(xv, pts.y0)) fresh.push_back(xv);
    }
    const auto it = pts.s.find(z);
    if (it == pts.s.end() || it->second != FqSet(slice.x.field_ptr(), fresh)) return false;
  }
  return true;
}

bool cover_is_complete(const FqSet& target, const FqSet& tile, Sign sign, std::span<const Element> shifts) {
  const Field& f = target.field();
  for (auto a : target) {
    bool hit = false;
    for (auto t : shifts) {
      // a in t + s*tile  <=>  s*(a - t) in tile
      Element d = f.sub(a, t);
      if (sign == Sign::Minus) d = f.neg(d);
      if (tile.contains(d)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

namespace {

struct CoverSearch {
  std::vector<std::uint32_t> masks;  // coverage of each candidate, distinct
  std::vector<Element> shift_of;
  std::uint32_t full = 0;
  std::size_t best = 0;
  std::vector<std::size_t> best_pick;
  std::vector<std::size_t> pick;
  std::uint32_t max_cover = 1;

  void run(std::uint32_t covered) {
    if (covered == full) {
      if (pick.size() < best) {
        best = pick.size();
        best_pick = pick;
      }
      return;
    }
    const auto remaining = static_cast<std::size_t>(std::popcount(full & ~covered));
    const std::size_t lower = pick.size() + (remaining + max_cover - 1) / max_cover;
    if (lower >= best) return;
    const int first = std::countr_zero(full & ~covered);
    for (std::size_t c = 0; c < masks.size(); ++c) {
      if (!((masks[c] >> first) & 1u)) continue;
      pick.push_back(c);
      run(covered | masks[c]);
      pick.pop_back();
    }
  }
};

}  // namespace

Cover covering_number(const FqSet& target, const FqSet& tile, Sign sign, CoverMode mode) {
  require_same_field(target, tile);
  Cover out;
  if (target.empty()) {
    out.exact = true;
    return out;
  }
  if (tile.empty()) throw Error(Errc::EmptySet, "tile is empty");
  const Field& f = target.field();
  const FqSet signed_tile = sign == Sign::Plus ? tile : tile.negated();

  std::vector<Element> cands;
  {
    Bitmask seen(f.q());
    for (auto a : target)
      for (auto b : signed_tile) seen.set(f.sub(a, b));
    seen.for_each([&](std::size_t t) { cands.push_back(static_cast<Element>(t)); });
  }
  const std::size_t nt = target.size();
  auto coverage = [&](Element t, const std::vector<char>& covered) {
    std::size_t c = 0;
    for (auto b : signed_tile) {
      const Element v = f.add(t, b);
      if (target.contains(v)) {
        const auto pos = static_cast<std::size_t>(std::lower_bound(target.begin(), target.end(), v) - target.begin());
        c += !covered[pos];
      }
    }
    return c;
  };

  // greedy
  std::vector<char> covered(nt, 0);
  std::size_t left = nt;
  std::vector<Element> greedy;
  while (left > 0) {
    std::size_t best_gain = 0;
    Element best_t = 0;
    for (auto t : cands) {
      const std::size_t g = coverage(t, covered);
      if (g > best_gain) {
        best_gain = g;
        best_t = t;
      }
    }
    greedy.push_back(best_t);
    for (auto b : signed_tile) {
      const Element v = f.add(best_t, b);
      if (target.contains(v)) {
        const auto pos = static_cast<std::size_t>(std::lower_bound(target.begin(), target.end(), v) - target.begin());
        if (!covered[pos]) {
          covered[pos] = 1;
          --left;
        }
      }
    }
  }
  out.greedy_count = greedy.size();

  const bool want_exact = mode == CoverMode::Exact || (mode == CoverMode::Auto && nt <= kExactCoverCutoff);
  if (!want_exact) {
    out.count = greedy.size();
    out.shifts = std::move(greedy);
    return out;
  }
  if (nt > 24) throw Error(Errc::InvalidArgument, "exact cover limited to 24 target elements");

  CoverSearch search;
  search.full = nt == 32 ? ~0u : ((1u << nt) - 1);
  std::map<std::uint32_t, Element> by_mask;  // keep the smallest shift per coverage pattern
  for (auto t : cands) {
    std::uint32_t m = 0;
    for (auto b : signed_tile) {
      const Element v = f.add(t, b);
      if (target.contains(v)) {
        m |= 1u << (std::lower_bound(target.begin(), target.end(), v) - target.begin());
      }
    }
    by_mask.emplace(m, t);
  }
  // drop patterns dominated by a strict superset
  for (const auto& [m, t] : by_mask) {
    bool dominated = false;
    for (const auto& [m2, t2] : by_mask) {
      if (m2 != m && (m2 & m) == m) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      search.masks.push_back(m);
      search.shift_of.push_back(t);
      search.max_cover = std::max<std::uint32_t>(search.max_cover, static_cast<std::uint32_t>(std::popcount(m)));
    }
  }
  // order candidates by coverage, largest first, to find good covers early
  std::vector<std::size_t> order(search.masks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(search.masks[a]) > std::popcount(search.masks[b]);
  });
  std::vector<std::uint32_t> masks;
  std::vector<Element> shifts;
  for (auto i : order) {
    masks.push_back(search.masks[i]);
    shifts.push_back(search.shift_of[i]);
  }
  search.masks = std::move(masks);
  search.shift_of = std::move(shifts);
  search.best = greedy.size() + 1;
  search.run(0);
  out.exact = true;
  if (search.best_pick.empty() || search.best > greedy.size()) {
    out.count = greedy.size();
    out.shifts = std::move(greedy);
  } else {
    out.count = search.best;
    for (auto c : search.best_pick) out.shifts.push_back(search.shift_of[c]);
    std::sort(out.shifts.begin(), out.shifts.end());
  }
  return out;
}

}  // namespace fqlab

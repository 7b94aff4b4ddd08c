#include "fqlab/proof_trace.hpp"

#include <array>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqlab/error.hpp"
#include "fqlab/set_algebra.hpp"
#include "fqlab/subfields.hpp"

namespace fqlab {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

DyadicSlice empty_slice(const FieldPtr& f) {
  return DyadicSlice{FqSet(f), FqSet(f), FqSet(f), 0, 0, 0, 0, 0, 0, {}, {}, {}};
}

PopularPoints empty_points(const FieldPtr& f) {
  return PopularPoints{0, 0, FqSet(f), FqSet(f), FqSet(f), FqSet(f), FqSet(f), FqSet(f), {}, 0, 0, {}, {}, false};
}

cpp_int ipow(std::uint64_t b, unsigned e) { return boost::multiprecision::pow(cpp_int(b), e); }

double ratio(const cpp_int& num, const cpp_int& den) { return static_cast<double>(cpp_rational(num, den)); }

// First (a, b, c, d) in s^4, c != d, whose ratio (a-b)/(c-d) satisfies pred.
template <class Pred>
std::optional<std::array<Element, 4>> first_quadruple(const Field& f, const FqSet& s, Pred&& pred) {
  for (auto a : s)
    for (auto b : s)
      for (auto c : s)
        for (auto d : s) {
          if (c == d) continue;
          if (pred(f.div(f.sub(a, b), f.sub(c, d)))) return std::array<Element, 4>{a, b, c, d};
        }
  return std::nullopt;
}

std::array<Element, 4> quadruple_for(const Field& f, const FqSet& s, Element target) {
  auto q = first_quadruple(f, s, [&](Element v) { return v == target; });
  if (!q) throw Error(Errc::InvalidArgument, "ratio has no representation in the set");
  return *q;
}

// Direct enumeration, kept apart from the kernels on purpose.
FqSet naive_quotient(const FqSet& s) {
  const Field& f = s.field();
  Bitmask m(f.q());
  for (auto a : s)
    for (auto b : s)
      for (auto c : s)
        for (auto d : s)
          if (c != d) m.set(f.div(f.sub(a, b), f.sub(c, d)));
  return FqSet(s.field_ptr(), std::move(m));
}

}  // namespace

ProofTrace::ProofTrace(const FieldPtr& field)
    : input(field),
      working(field),
      a_prime(field),
      a_second(field),
      x(field),
      y(field),
      slice(empty_slice(field)),
      points(empty_points(field)),
      r_tilde(field),
      r_b(field) {}

bool ProofTrace::certificates_hold() const {
  for (const auto& c : certificates)
    if (!c.holds) return false;
  return true;
}

const char* case_label(TraceCase c) noexcept {
  switch (c) {
    case TraceCase::C11: return "1.1";
    case TraceCase::C12: return "1.2";
    case TraceCase::C2: return "2";
    case TraceCase::C3: return "3";
    case TraceCase::C41: return "4.1";
    case TraceCase::C42: return "4.2";
    case TraceCase::C43: return "4.3";
  }
  return "?";
}

ProofTrace run_proof_trace(const FqSet& a, Element alpha, const TraceParams& params) {
  const Field& f = a.field();
  const FieldPtr& fp = a.field_ptr();
  if (alpha == 0) throw Error(Errc::ZeroShift, "alpha must be nonzero");
  if (!f.contains(alpha)) throw Error(Errc::ElementOutOfRange, std::to_string(alpha));
  if (a.contains(0)) throw Error(Errc::ZeroInSet, "translate or dilate A away from 0 first");
  if (params.kappa == 0) throw Error(Errc::InvalidArgument, "kappa must be positive");

  ProofTrace t(fp);
  t.input = a;
  t.alpha = alpha;
  t.working = a.without(f.neg(alpha));
  if (t.working.size() < 4) throw Error(Errc::TraceDegenerate, "fewer than four usable elements");

  // surrogate subsets
  const auto basic = basic_shift_subset(t.working, params.search);
  t.a_prime = basic.subset;
  t.basic_shift = basic.report;
  const FqSet minus = t.a_prime.negated();
  const std::vector<FqSet> bs{minus, minus, minus};
  const auto refined = refined_plunnecke_subset(t.a_prime, bs, params.plunnecke_epsilon, params.search);
  t.a_second = refined.subset;
  t.refined_plunnecke = refined.report;

  const FqSet& w = t.working;
  const FqSet& as = t.a_second;
  t.shifted_product = shifted_product(w, alpha).size();
  const FqSet diff = set_op(as, as, SetOpKind::Diff);
  t.difference_size = diff.size();
  t.iterated_size = set_op(set_op(diff, as, SetOpKind::Diff), as, SetOpKind::Diff).size();
  t.difference_ratio = ratio(cpp_int(t.difference_size) * ipow(w.size(), 7), ipow(t.shifted_product, 8));
  t.iterated_ratio = ratio(cpp_int(t.iterated_size) * ipow(w.size(), 23), ipow(t.shifted_product, 24));

  t.x = as.translate(alpha);
  t.y = as;
  t.certificates.push_back({"0 not in X", !t.x.contains(0)});
  t.slice = dyadic_energy_slice(t.x, t.y);
  t.points = popular_points(t.slice);
  t.certificates.push_back({"pigeonhole chain", t.points.chain_holds});
  t.certificates.push_back({"S_z replay", verify_popular_points(t.slice, t.points)});

  const FqSet& at = t.points.a_tilde;
  const FqSet& b = t.points.b_y0;
  const Element x0 = t.points.x0;
  const Element y0 = t.points.y0;
  if (at.size() < 2 || b.size() < 2) throw Error(Errc::TraceDegenerate, "popular sets too small for R(.)");

  t.r_tilde = quotient_set(at);
  t.r_b = quotient_set(b);
  const FqSet& rt = t.r_tilde;
  const FqSet& rb = t.r_b;

  const std::uint64_t as_size = as.size();
  const std::uint64_t as_shift = shifted_product(as, alpha).size();
  t.gamma = ratio(cpp_int(as_size) * as_size * ipow(as_shift, 4), cpp_int(t.slice.m) * t.slice.m);

  const FqSet x0a = as.dilate(x0);
  const FqSet y0a = as.dilate(y0);
  auto measure = [&](std::string target_name, const FqSet& target, const FqSet& tile, std::string tile_name,
                     Sign sign) {
    const Cover c = covering_number(target, tile, sign, CoverMode::Auto);
    t.covers.push_back({std::move(target_name), std::move(tile_name), sign, target.size(), tile.size(), c.count,
                        c.exact});
  };
  auto set_witnesses = [&](std::span<const Element> v) { t.witnesses.assign(v.begin(), v.end()); };
  auto elem = [](Element e) { return std::to_string(e); };

  // Case 1
  if (rt != rb) {
    std::optional<Element> extra;
    for (auto v : rt) {
      if (!rb.contains(v)) {
        extra = v;
        break;
      }
    }
    if (extra) {
      t.label = TraceCase::C11;
      t.r = *extra;
      const auto q = quadruple_for(f, at, *extra);
      set_witnesses(q);
      t.certificates.push_back({"r in R(A~)", true});
      t.certificates.push_back({"r not in R(B)", !rb.contains(*extra)});
      for (int i = 0; i < 3; ++i) measure(elem(q[i]) + "*B", b.dilate(q[i]), x0a, "x0*A", Sign::Plus);
      measure(elem(q[3]) + "*B", b.dilate(q[3]), x0a, "x0*A", Sign::Minus);
    } else {
      Element v2 = 0;
      for (auto v : rb) {
        if (!rt.contains(v)) {
          v2 = v;
          break;
        }
      }
      t.label = TraceCase::C12;
      t.r = v2;
      const auto q = quadruple_for(f, b, v2);
      set_witnesses(q);
      t.certificates.push_back({"R(A~) within R(B)", rt.is_subset_of(rb)});
      t.certificates.push_back({"r not in R(A~)", !rt.contains(v2)});
      for (int i = 0; i < 3; ++i) measure(elem(q[i]) + "*A~", at.dilate(q[i]), y0a, "y0*A", Sign::Plus);
      measure(elem(q[3]) + "*A~", at.dilate(q[3]), y0a, "y0*A", Sign::Minus);
    }
    return t;
  }
  t.certificates.push_back({"R(A~) = R(B)", true});

  // Case 2
  {
    Bitmask bad(f.q());
    bool any = false;
    for (auto v : rt) {
      if (!rt.contains(f.add(1, v))) {
        bad.set(v);
        any = true;
      }
    }
    if (any) {
      t.label = TraceCase::C2;
      const auto q = *first_quadruple(f, at, [&](Element v) { return bad.test(v); });
      set_witnesses(q);
      t.r = f.add(1, f.div(f.sub(q[0], q[1]), f.sub(q[2], q[3])));
      t.certificates.push_back({"r not in R(A~)", !rt.contains(*t.r)});
      measure(elem(q[2]) + "*B", b.dilate(q[2]), x0a, "x0*A", Sign::Plus);
      measure(elem(q[3]) + "*B", b.dilate(q[3]), x0a, "x0*A", Sign::Plus);
      measure(elem(q[1]) + "*S_a", t.points.s.at(q[0]).dilate(q[1]), x0a, "x0*A", Sign::Minus);
      return t;
    }
  }
  t.certificates.push_back({"1 + R(A~) within R(A~)", true});

  // Case 3
  const Element x0inv = f.inv(x0);
  for (auto a1 : at) {
    const Element u = f.mul(a1, x0inv);
    Bitmask bad(f.q());
    bool any = false;
    for (auto v : rt) {
      if (!rt.contains(f.mul(u, v))) {
        bad.set(v);
        any = true;
      }
    }
    if (!any) continue;
    t.label = TraceCase::C3;
    const auto q = *first_quadruple(f, at, [&](Element v) { return bad.test(v); });
    const std::array<Element, 5> wit{a1, q[0], q[1], q[2], q[3]};
    set_witnesses(wit);
    t.r = f.mul(u, f.div(f.sub(q[0], q[1]), f.sub(q[2], q[3])));
    t.certificates.push_back({"r not in R(A~)", !rt.contains(*t.r)});
    // e*S_d by x0 A, b*P_{c/x0} by -x0 A
    measure(elem(wit[4]) + "*S_d", t.points.s.at(wit[3]).dilate(wit[4]), x0a, "x0*A", Sign::Plus);
    FqSet pc(fp);
    {
      const Element xi = f.mul(wit[2], x0inv);
      std::vector<Element> v;
      for (auto xv : t.x)
        if (t.y.contains(f.mul(xi, xv)) && t.slice.slopes.contains(xi)) v.push_back(xv);
      pc = FqSet(fp, std::move(v));
    }
    measure(elem(wit[1]) + "*P_c/x0", pc.dilate(wit[1]), x0a, "x0*A", Sign::Minus);
    return t;
  }
  t.certificates.push_back({"x0^-1 A~ R(A~) within R(A~)", true});

  // Case 4: R(A~) is the subfield generated by x0^-1 A~
  const auto lattice = enumerate_subfields(fp);
  const Subfield* sub = nullptr;
  for (const auto& g : lattice)
    if (g.elements == rt) sub = &g;
  t.certificates.push_back({"R(A~) is a subfield", sub != nullptr});
  t.certificates.push_back({"x0^-1 A~ within R(A~)", at.dilate(x0inv).is_subset_of(rt)});
  if (sub) t.subfield_degree = sub->degree;
  const std::uint64_t at_size = at.size();
  const std::uint64_t kappa = params.kappa;

  auto pivot_cover = [&](const std::array<Element, 4>& q) {
    measure(elem(q[0]) + "*A~", at.dilate(q[0]), y0a, "y0*A", Sign::Plus);
    measure(elem(q[1]) + "*A~", at.dilate(q[1]), y0a, "y0*A", Sign::Plus);
    measure(elem(q[2]) + "*A~", at.dilate(q[2]), y0a, "y0*A", Sign::Minus);
    measure(elem(q[3]) + "*A~", at.dilate(q[3]), y0a, "y0*A", Sign::Plus);
  };
  auto case42 = [&] {
    t.label = TraceCase::C42;
    const auto rep = find_pivot_r(at, Rational{1, static_cast<std::int64_t>(kappa * kappa)});
    const Element r = rep.witness["r"].get<Element>();
    t.r = r;
    const auto q = quadruple_for(f, b, r);
    set_witnesses(q);
    t.certificates.push_back({"pivot in R(B)", rb.contains(r)});
    pivot_cover(q);
  };

  if (rt.size() == f.q()) {
    t.subfield_intersection = as.size();
    if (at_size * at_size > f.q()) {
      t.label = TraceCase::C41;
      const auto rep = find_pivot_xi(at, at);
      const Element xi = rep.witness["xi"].get<Element>();
      t.r = xi;
      const auto q = quadruple_for(f, b, xi);
      set_witnesses(q);
      t.certificates.push_back({"Bourgain-Glibichuk bound", rep.verdict == Verdict::WitnessFound});
      pivot_cover(q);
    } else {
      case42();
    }
    return t;
  }

  const FqSet coset = rt.dilate(x0);
  const std::uint64_t k = as.intersect(coset).size();
  t.subfield_intersection = k;
  t.certificates.push_back({"A~ within x0 R(A~)", at.is_subset_of(coset)});
  if (cpp_int(k) * k <= cpp_int(kappa) * kappa * rt.size()) {
    case42();
    return t;
  }
  t.label = TraceCase::C43;
  t.hypothesis_violated = !power_bound_holds(k, as.size(), 25, 26, params.kappa);
  return t;
}

std::string verify_trace(const ProofTrace& t, const TraceParams& params) {
  const Field& f = t.input.field();
  const FqSet& at = t.points.a_tilde;
  const FqSet& b = t.points.b_y0;
  if (!verify_popular_points(t.slice, t.points)) return "popular points do not replay";
  const FqSet rt = naive_quotient(at);
  const FqSet rb = naive_quotient(b);
  if (rt != t.r_tilde || rb != t.r_b) return "stored quotient sets differ from enumeration";

  auto ratio_of = [&](const std::vector<Element>& w, std::size_t i) {
    return f.div(f.sub(w[i], w[i + 1]), f.sub(w[i + 2], w[i + 3]));
  };
  auto all_in = [](const std::vector<Element>& w, const FqSet& s, std::size_t from) {
    for (std::size_t i = from; i < w.size(); ++i)
      if (!s.contains(w[i])) return false;
    return true;
  };
  auto one_plus_closed = [&] {
    for (auto v : rt)
      if (!rt.contains(f.add(1, v))) return false;
    return true;
  };
  auto dilate_closed = [&] {
    const Element x0inv = f.inv(t.points.x0);
    for (auto a : at)
      for (auto v : rt)
        if (!rt.contains(f.mul(f.mul(a, x0inv), v))) return false;
    return true;
  };
  const auto& w = t.witnesses;

  switch (t.label) {
    case TraceCase::C11: {
      if (w.size() != 4 || !all_in(w, at, 0)) return "1.1 witnesses outside A~";
      const Element r = ratio_of(w, 0);
      if (!t.r || r != *t.r || rb.contains(r)) return "1.1 ratio lies in R(B)";
      return "";
    }
    case TraceCase::C12: {
      if (!rt.is_subset_of(rb)) return "1.2 but R(A~) has a ratio outside R(B)";
      if (w.size() != 4 || !all_in(w, b, 0)) return "1.2 witnesses outside B";
      const Element r = ratio_of(w, 0);
      if (!t.r || r != *t.r || rt.contains(r)) return "1.2 ratio lies in R(A~)";
      return "";
    }
    default: break;
  }
  if (rt != rb) return "R(A~) != R(B) but case 1 not taken";
  if (t.label == TraceCase::C2) {
    if (w.size() != 4 || !all_in(w, at, 0)) return "2 witnesses outside A~";
    const Element r = f.add(1, ratio_of(w, 0));
    if (!t.r || r != *t.r || rt.contains(r)) return "2 shifted ratio lies in R(A~)";
    return "";
  }
  if (!one_plus_closed()) return "1 + R(A~) not closed but case 2 not taken";
  if (t.label == TraceCase::C3) {
    if (w.size() != 5 || !all_in(w, at, 0)) return "3 witnesses outside A~";
    const Element r = f.mul(f.div(w[0], t.points.x0), ratio_of(w, 1));
    if (!t.r || r != *t.r || rt.contains(r)) return "3 product lies in R(A~)";
    return "";
  }
  if (!dilate_closed()) return "x0^-1 A~ R(A~) not closed but case 3 not taken";

  // Case 4 family
  for (auto u : rt)
    for (auto v : rt) {
      if (!rt.contains(f.add(u, v)) || !rt.contains(f.mul(u, v))) return "R(A~) is not a field";
    }
  const std::uint64_t n = at.size();
  const bool full = rt.size() == f.q();
  const std::uint64_t k = full ? t.a_second.size() : t.a_second.intersect(rt.dilate(t.points.x0)).size();
  const bool small = cpp_int(k) * k <= cpp_int(params.kappa) * params.kappa * rt.size();
  switch (t.label) {
    case TraceCase::C41:
      if (!full || n * n <= f.q()) return "4.1 conditions fail";
      return "";
    case TraceCase::C42:
      if (full ? n * n > f.q() : !small) return "4.2 conditions fail";
      if (w.size() != 4 || !all_in(w, b, 0) || !t.r || ratio_of(w, 0) != *t.r) return "4.2 pivot not realised in B";
      return "";
    case TraceCase::C43:
      if (full || small) return "4.3 conditions fail";
      if (t.hypothesis_violated == power_bound_holds(k, t.a_second.size(), 25, 26, params.kappa))
        return "4.3 hypothesis flag is wrong";
      return "";
    default: return "unknown label";
  }
}

}  // namespace fqlab

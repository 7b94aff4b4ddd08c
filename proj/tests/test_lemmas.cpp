#include <gtest/gtest.h>

#include <random>

#include "fqlab/error.hpp"
#include "fqlab/lemmas.hpp"
#include "fqlab/set_algebra.hpp"
#include "fqlab/subfields.hpp"
#include "oracles.hpp"

using namespace fqlab;

namespace {

FqSet S(const FieldPtr& f, std::vector<Element> v) { return FqSet(f, std::move(v)); }

template <class Fn>
void expect_errc(Errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

const char* kFields[] = {"2^2", "5", "7", "2^3", "3^2", "11", "13", "2^4", "5^2", "3^3", "2^6", "3^4", "11^2"};

FqSet embedded_prime_field(const FieldPtr& f) { return enumerate_subfields(f).front().elements; }

}  // namespace

TEST(LemmaNames, RoundTrip) {
  for (auto id : kAllLemmas) EXPECT_EQ(parse_lemma(lemma_name(id)), id);
  EXPECT_EQ(parse_lemma("rbfq"), LemmaId::RBFq);
  expect_errc(Errc::InvalidArgument, [] { parse_lemma("nope"); });
  EXPECT_STREQ(verdict_name(Verdict::MeasuredRatio), "MeasuredRatio");
}

TEST(RBcard, SpecExamples) {
  auto f = build_field(7, 1);
  const FqSet x = S(f, {0, 1});
  auto rep = check_rbcard(x, 3, x, x);
  EXPECT_EQ(rep.verdict, Verdict::ExactPass);
  EXPECT_EQ(rep.witness["difference_size"], 4);
  EXPECT_FALSE(rep.witness["r_in_quotient_set"].get<bool>());

  auto one = check_rbcard(x, 1, x, x);
  EXPECT_EQ(one.verdict, Verdict::WitnessFound);
  EXPECT_TRUE(one.witness.contains("collision"));

  auto single = check_rbcard(x, 1, S(f, {0}), S(f, {1}));
  EXPECT_EQ(single.verdict, Verdict::ExactPass);
  EXPECT_EQ(single.witness["difference_size"], 1);

  expect_errc(Errc::NotSubsets, [&] { check_rbcard(x, 3, S(f, {2}), x); });
}

TEST(RBcard, RandomOutsideQuotientSet) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int it = 0; it < 2000 && checked < 300; ++it) {
    auto f = parse_field(kFields[it % std::size(kFields)]);
    const Element q = f->q();
    const FqSet x = S(f, oracle::random_subset(rng, 0, q, 2 + rng() % 4));
    const FqSet rq = quotient_set(x);
    if (rq.size() == q) continue;
    Element r = 1;
    while (rq.contains(r)) ++r;
    auto rep = check_rbcard(x, r, x, x);
    ASSERT_EQ(rep.verdict, Verdict::ExactPass) << rep.instance;
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(RBFq, SpecExamples) {
  auto f4 = build_field(2, 2);
  auto r = check_rbfq(S(f4, {0, 1, 2}));
  EXPECT_EQ(r.verdict, Verdict::ExactPass);
  EXPECT_TRUE(r.witness["hypothesis"].get<bool>());
  EXPECT_EQ(r.witness["r_size"], 4);

  auto f9 = build_field(3, 2);
  auto sub = check_rbfq(embedded_prime_field(f9));
  EXPECT_EQ(sub.verdict, Verdict::ExactPass);
  EXPECT_FALSE(sub.witness["hypothesis"].get<bool>());
  EXPECT_EQ(sub.witness["r_size"], 3);

  auto f2 = build_field(2, 1);
  EXPECT_EQ(check_rbfq(S(f2, {0, 1})).witness["r_size"], 2);
  expect_errc(Errc::SetTooSmall, [&] { check_rbfq(S(f2, {1})); });
}

TEST(QuotientSubfield, SpecExamples) {
  auto f9 = build_field(3, 2);
  auto r = check_quotient_subfield(embedded_prime_field(f9));
  EXPECT_EQ(r.verdict, Verdict::ExactPass);
  EXPECT_TRUE(r.witness["field_closed"].get<bool>());
  EXPECT_EQ(r.witness["generated_degree"], 1);

  auto f8 = build_field(2, 3);
  auto g = check_quotient_subfield(S(f8, {1, f8->generator()}));
  EXPECT_EQ(g.verdict, Verdict::ExactPass);
  if (g.witness["shift_closed"].get<bool>() && g.witness["dilate_closed"].get<bool>()) {
    EXPECT_EQ(g.witness["r_size"], 8);
  }

  auto f16 = build_field(2, 4);
  auto big = check_quotient_subfield(S(f16, {1, 2, 3, 4, 5}));
  EXPECT_EQ(big.verdict, Verdict::ExactPass);
  EXPECT_EQ(big.witness["r_size"], 16);
}

TEST(QuotientSubfield, CosetsOfSubfields) {
  for (const char* name : {"2^4", "3^4", "2^6"}) {
    auto f = parse_field(name);
    for (const auto& g : enumerate_subfields(f)) {
      if (!g.proper) continue;
      for (auto c : coset_representatives(g)) {
        auto rep = check_quotient_subfield(g.elements.dilate(c));
        EXPECT_EQ(rep.verdict, Verdict::ExactPass) << rep.instance;
        // the hypotheses hold only when c lies in G, so the dilate is G itself
        if (rep.witness["shift_closed"].get<bool>() && rep.witness["dilate_closed"].get<bool>()) {
          EXPECT_EQ(rep.witness["r_size"], g.order());
        }
      }
    }
  }
}

TEST(Pivot, SpecExamples) {
  auto f = build_field(31, 1);
  auto r = find_pivot_r(S(f, {1, 2, 4}), {1, 2});
  EXPECT_EQ(r.verdict, Verdict::MeasuredRatio);
  ASSERT_TRUE(r.ratio.has_value());
  EXPECT_GT(*r.ratio, 0.0);

  auto f9 = build_field(3, 2);
  expect_errc(Errc::NotApplicable, [&] { find_pivot_r(embedded_prime_field(f9), {1, 2}); });

  auto two = find_pivot_r(S(f, {1, 5}), {0, 1});
  EXPECT_LE(*two.ratio, 1.0);
}

TEST(Pivot, SampledSubsetsAreSeeded) {
  auto f = build_field(101, 1);
  std::mt19937_64 rng(8);
  const FqSet x = S(f, oracle::random_subset(rng, 1, 101, 14));
  auto a = find_pivot_r(x, {0, 1}, 42, 8);
  auto b = find_pivot_r(x, {0, 1}, 42, 8);
  EXPECT_FALSE(a.witness["exhaustive"].get<bool>());
  EXPECT_EQ(a.witness, b.witness);
}

TEST(BouGlib, SpecExamples) {
  auto f5 = build_field(5, 1);
  auto r = find_pivot_xi(S(f5, {1, 2}), S(f5, {1, 2}));
  EXPECT_EQ(r.verdict, Verdict::WitnessFound);
  EXPECT_EQ(r.witness["bound"], 2);
  EXPECT_GE(r.witness["sumset_size"].get<int>(), 2);

  EXPECT_EQ(find_pivot_xi(S(f5, {3}), S(f5, {4})).verdict, Verdict::WitnessFound);
  auto full = find_pivot_xi(FqSet::full(f5), FqSet::full(f5));
  EXPECT_EQ(full.witness["sumset_size"], 5);
  expect_errc(Errc::EmptySet, [&] { find_pivot_xi(S(f5, {}), S(f5, {1})); });
}

TEST(BouGlib, Random) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 300; ++it) {
    auto f = parse_field(kFields[it % std::size(kFields)]);
    const Element q = f->q();
    auto r = find_pivot_xi(S(f, oracle::random_subset(rng, 0, q, 1 + rng() % std::min<Element>(q, 10))),
                           S(f, oracle::random_subset(rng, 0, q, 1 + rng() % std::min<Element>(q, 10))));
    ASSERT_EQ(r.verdict, Verdict::WitnessFound) << r.instance;
  }
}

TEST(SumsetInequalities, SpecExamples) {
  auto f = build_field(7, 1);
  const FqSet b = S(f, {0, 1});
  const std::vector<FqSet> two{b, b};
  auto ru = check_sumset_inequalities(b, two, SumsetKind::RuzsaTriangle);
  EXPECT_EQ(ru.verdict, Verdict::ExactPass);
  EXPECT_EQ(ru.witness["difference"], 3);

  const FqSet ap = S(f, {0, 1, 2});
  const std::vector<FqSet> aps{ap, ap};
  auto pl = check_sumset_inequalities(ap, aps, SumsetKind::Plunnecke);
  EXPECT_EQ(pl.verdict, Verdict::ExactPass);
  EXPECT_EQ(pl.witness["iterated_sum"], 5);
  EXPECT_EQ(pl.witness["lhs"], "15");
  EXPECT_EQ(pl.witness["rhs"], "25");

  const FqSet a = S(f, {1, 2, 4});
  auto rs = check_sumset_inequalities(a, {}, SumsetKind::RatioToShift);
  EXPECT_EQ(rs.verdict, Verdict::ExactPass);
  EXPECT_EQ(rs.witness["ratio_set"], 3);
  EXPECT_EQ(rs.witness["shifted_product"], shifted_product(a, 1).size());
  expect_errc(Errc::ZeroInSet, [&] { check_sumset_inequalities(S(f, {0, 1}), {}, SumsetKind::RatioToShift); });
}

TEST(SumsetInequalities, RatioToShiftExhaustiveF11) {
  auto f = build_field(11, 1);
  for (std::uint32_t mask = 1; mask < (1u << 10); ++mask) {
    std::vector<Element> v;
    for (Element i = 0; i < 10; ++i)
      if ((mask >> i) & 1u) v.push_back(i + 1);
    ASSERT_EQ(check_sumset_inequalities(S(f, v), {}, SumsetKind::RatioToShift).verdict, Verdict::ExactPass);
  }
}

TEST(SumsetInequalities, Random) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 400; ++it) {
    auto f = parse_field(kFields[it % std::size(kFields)]);
    const Element q = f->q();
    auto pick = [&] { return S(f, oracle::random_subset(rng, 0, q, 1 + rng() % std::min<Element>(q, 8))); };
    const FqSet x = pick();
    const std::vector<FqSet> pair{pick(), pick()};
    ASSERT_TRUE(check_sumset_inequalities(x, pair, SumsetKind::RuzsaTriangle).ok());
    std::vector<FqSet> bs;
    for (std::size_t k = 0; k < 1 + it % 4; ++k) bs.push_back(pick());
    ASSERT_TRUE(check_sumset_inequalities(x, bs, SumsetKind::Plunnecke).ok());
  }
}

TEST(RefinedPlunnecke, Examples) {
  auto f = build_field(13, 1);
  const FqSet x = S(f, {1, 3, 4, 9, 10});
  const std::vector<FqSet> singles{S(f, {2}), S(f, {5})};
  auto s = refined_plunnecke_subset(x, singles, {1, 4});
  EXPECT_EQ(s.objective, s.subset.size());
  EXPECT_LE(*s.report.ratio, 1.0);

  const std::vector<FqSet> bs{S(f, {0, 1}), S(f, {0, 2})};
  auto tight = refined_plunnecke_subset(x, bs, {99, 100});
  EXPECT_EQ(tight.subset.size(), 1u);
  EXPECT_EQ(tight.objective, set_op(bs[0], bs[1], SetOpKind::Sum).size());

  expect_errc(Errc::EpsilonOutOfRange, [&] { refined_plunnecke_subset(x, bs, {1, 1}); });
  expect_errc(Errc::EpsilonOutOfRange, [&] { refined_plunnecke_subset(x, bs, {0, 3}); });
}

TEST(RefinedPlunnecke, ExhaustiveBeatsGreedy) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 150; ++it) {
    auto f = parse_field(kFields[it % std::size(kFields)]);
    const Element q = f->q();
    const FqSet x = S(f, oracle::random_subset(rng, 0, q, 1 + rng() % std::min<Element>(q, 12)));
    const std::vector<FqSet> bs{S(f, oracle::random_subset(rng, 0, q, 1 + rng() % std::min<Element>(q, 4))),
                                S(f, oracle::random_subset(rng, 0, q, 1 + rng() % std::min<Element>(q, 4)))};
    const Rational eps{1 + static_cast<std::int64_t>(rng() % 3), 4};
    auto ex = refined_plunnecke_subset(x, bs, eps, SearchMode::Exhaustive);
    auto gr = refined_plunnecke_subset(x, bs, eps, SearchMode::Greedy);
    ASSERT_EQ(ex.subset.size(), gr.subset.size());
    ASSERT_LE(ex.objective, gr.objective);
    EXPECT_TRUE(gr.subset.is_subset_of(x));
  }
}

TEST(BasicShift, Examples) {
  auto f = build_field(13, 1);
  const FqSet gp = S(f, {1, 2, 4, 8, 3});
  auto r = basic_shift_subset(gp);
  EXPECT_EQ(r.report.verdict, Verdict::MeasuredRatio);
  EXPECT_EQ(r.subset.size(), 3u);
  EXPECT_GT(*r.report.ratio, 0.0);

  auto two = basic_shift_subset(S(f, {5, 7}));
  EXPECT_EQ(two.subset.size(), 1u);
  EXPECT_EQ(two.objective, 1u);
  expect_errc(Errc::ZeroInSet, [&] { basic_shift_subset(S(f, {0, 1})); });
}

TEST(BasicShift, ExhaustiveBeatsGreedy) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 150; ++it) {
    auto f = parse_field(kFields[it % std::size(kFields)]);
    const Element q = f->q();
    const FqSet a = S(f, oracle::random_subset(rng, 1, q, 1 + rng() % std::min<Element>(q - 1, 12)));
    auto ex = basic_shift_subset(a, SearchMode::Exhaustive);
    auto gr = basic_shift_subset(a, SearchMode::Greedy);
    ASSERT_EQ(ex.subset.size(), gr.subset.size());
    ASSERT_LE(ex.objective, gr.objective) << a.to_string();
    ASSERT_EQ(gr.objective, set_op(gr.subset, gr.subset, SetOpKind::Diff).size());
  }
}

TEST(EnergyChecks, Random) {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 300; ++it) {
    auto f = parse_field(kFields[it % std::size(kFields)]);
    const Element q = f->q();
    const FqSet x = S(f, oracle::random_subset(rng, 1, q, 1 + rng() % std::min<Element>(q - 1, 15)));
    const FqSet y = S(f, oracle::random_subset(rng, 0, q, 2 + rng() % std::min<Element>(q - 1, 14)));
    ASSERT_EQ(check_energy_identities(x, y).verdict, Verdict::ExactPass);
    ASSERT_EQ(check_energy_cs(x, y).verdict, Verdict::ExactPass);
  }
}

TEST(DyadicAndRudnev, Examples) {
  auto f = build_field(7, 1);
  const FqSet a = S(f, {1, 2, 4});
  auto d = check_dyadic_energy(S(f, {2, 3, 5}), a);
  EXPECT_EQ(d.verdict, Verdict::ExactPass);
  // constant spectrum at a power of two: LN = |X||Y| and the strict form fails
  auto f17 = build_field(17, 1);
  auto flat = check_dyadic_energy(S(f17, {1, 4, 13, 16}), S(f17, {1, 4, 13, 16}));
  EXPECT_EQ(flat.verdict, Verdict::Fail);
  EXPECT_TRUE(flat.witness["ln_at_most_xy"].get<bool>());
  EXPECT_EQ(check_rudnev(a, a).verdict, Verdict::ExactPass);
}

TEST(Popularity, Report) {
  auto f = build_field(7, 1);
  const std::vector<std::uint64_t> w{4, 1, 1};
  auto r = check_popularity(S(f, {1, 2, 3}), w, 6, 4);
  EXPECT_EQ(r.verdict, Verdict::ExactPass);
  EXPECT_EQ(r.witness["threshold"], "6/6");
}

TEST(CoveringByShifts, Measured) {
  auto f = build_field(13, 1);
  const FqSet z = S(f, {1, 2, 3, 4, 5, 6});
  auto r = check_covering_by_shifts(z, 2, 1, S(f, {1, 2, 3, 4}), S(f, {1, 2}), Sign::Minus);
  EXPECT_EQ(r.verdict, Verdict::MeasuredRatio);
  EXPECT_GT(*r.ratio, 0.0);
  EXPECT_GE(r.witness["count"].get<int>(), 2);
  expect_errc(Errc::NotSubsets, [&] { check_covering_by_shifts(z, 2, 1, S(f, {7}), S(f, {1}), Sign::Plus); });
}

#include <gtest/gtest.h>

#include <random>

#include "fqlab/kernels.hpp"
#include "oracles.hpp"

using namespace fqlab;
namespace k = fqlab::kernels;

TEST(Kernels, ParallelMatchesSerial) {
  std::mt19937_64 rng(17);
  for (const char* desc : {"2^2", "7", "3^2", "2^4", "5^2", "2^7", "3^5", "1021", "2^10", "31^2"}) {
    auto f = parse_field(desc);
    for (int t = 0; t < 25; ++t) {
      std::uniform_int_distribution<std::size_t> sz(1, std::min<std::size_t>(90, f->q() - 1));
      const auto a = oracle::random_subset(rng, 0, f->q(), sz(rng));
      const auto b = oracle::random_subset(rng, 1, f->q(), sz(rng));
      for (auto op : {k::PairOp::Sum, k::PairOp::Diff, k::PairOp::Prod, k::PairOp::Ratio}) {
        ASSERT_EQ(k::parallel::pair_image(*f, a, b, op), k::serial::pair_image(*f, a, b, op));
      }
      ASSERT_EQ(k::parallel::sum_counts(*f, a, b), k::serial::sum_counts(*f, a, b));
      ASSERT_EQ(k::parallel::ratio_counts(*f, b, a), k::serial::ratio_counts(*f, b, a));
      const auto small = oracle::random_subset(rng, 0, f->q(), 2 + t % 12);
      ASSERT_EQ(k::parallel::quotient_set(*f, small), k::serial::quotient_set(*f, small)) << desc;
    }
  }
}

TEST(Kernels, QuotientSetSaturatesOnLargeSets) {
  auto f = parse_field("2^10");
  std::mt19937_64 rng(3);
  const auto x = oracle::random_subset(rng, 0, f->q(), 60);
  const Bitmask r = k::parallel::quotient_set(*f, x);
  EXPECT_EQ(r.count(), f->q());
  EXPECT_EQ(r, k::serial::quotient_set(*f, x));
}

TEST(Kernels, QuotientSetOfSingleton) {
  auto f = parse_field("7");
  const std::vector<Element> x{3};
  EXPECT_EQ(k::parallel::quotient_set(*f, x).count(), 0u);
  EXPECT_EQ(k::serial::quotient_set(*f, x).count(), 0u);
}

TEST(Kernels, MinShiftedProductParallelMatchesSerial) {
  for (const char* desc : {"5", "7", "2^3", "3^2", "13", "2^4"}) {
    auto f = parse_field(desc);
    std::vector<Element> all, star;
    for (Element a = 0; a < f->q(); ++a) {
      all.push_back(a);
      if (a) star.push_back(a);
    }
    for (unsigned kk = 1; kk <= 4; ++kk) {
      for (const auto* u : {&all, &star}) {
        const auto s = k::serial::min_shifted_product(*f, *u, kk, 1, 100);
        const auto p = k::parallel::min_shifted_product(*f, *u, kk, 1, 100);
        ASSERT_EQ(s.min_value, p.min_value);
        ASSERT_EQ(s.minimizer_count, p.minimizer_count);
        ASSERT_EQ(s.minimizers, p.minimizers);
        ASSERT_EQ(s.subsets_examined, p.subsets_examined);
      }
    }
  }
}

TEST(Kernels, ThreadCountIsPositive) { EXPECT_GE(k::thread_count(), 1); }

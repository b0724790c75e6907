#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/symgrp.hpp"

using namespace steinlab;
using la::Field;
using sym::Partition;

TEST(Permutations, GroupLaws) {
  const auto perms = sym::all_permutations(4);
  EXPECT_EQ(perms.size(), 24u);
  for (const auto& s : perms) {
    EXPECT_EQ(sym::compose(s, sym::inverse(s)), (sym::Permutation{0, 1, 2, 3}));
    for (const auto& t : perms) EXPECT_EQ(sym::sign(sym::compose(s, t)), sym::sign(s) * sym::sign(t));
  }
  EXPECT_EQ(sym::sign(sym::transposition_generator(4)), -1);
  EXPECT_EQ(sym::sign(sym::cycle_generator(4)), -1);
}

TEST(Partition, Conjugate) {
  EXPECT_EQ(sym::conjugate(Partition{3}), (Partition{1, 1, 1}));
  EXPECT_EQ(sym::conjugate(Partition{2, 1}), (Partition{2, 1}));
  for (int d = 0; d <= 8; ++d)
    for (const auto& p : sym::partitions_of(d)) EXPECT_EQ(sym::conjugate(sym::conjugate(p)), p.trimmed());
}

TEST(Partition, CountsAndOrder) {
  const std::vector<std::size_t> counts = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int d = 0; d <= 8; ++d) EXPECT_EQ(sym::partitions_of(d).size(), counts[static_cast<std::size_t>(d)]);
  const auto p4 = sym::partitions_of(4);
  for (std::size_t i = 1; i < p4.size(); ++i) EXPECT_GT(p4[i - 1], p4[i]);
  EXPECT_EQ(sym::partitions_of(4, 2).size(), 3u);
  EXPECT_THROW(Partition({1, 2}), Error);
  EXPECT_THROW(Partition({2, -1}), Error);
}

TEST(Partition, Restricted) {
  EXPECT_TRUE(sym::is_p_restricted(Partition{1, 1}, 2));
  EXPECT_FALSE(sym::is_p_restricted(Partition{2}, 2));
  EXPECT_TRUE(sym::is_p_restricted(Partition{3, 1}, 3));
  // conjugation swaps restricted and regular
  for (int p : {2, 3})
    for (int d = 1; d <= 7; ++d)
      for (const auto& l : sym::partitions_of(d)) EXPECT_EQ(sym::is_p_restricted(l, p), sym::is_p_regular(sym::conjugate(l), p));
}

TEST(Partition, DigitExamples) {
  EXPECT_EQ(sym::digit_decomposition(Partition{3}, 2, 2), (std::vector<Partition>{Partition{1}, Partition{1}}));
  EXPECT_EQ(sym::digit_decomposition(Partition{3, 2}, 2, 2), (std::vector<Partition>{Partition{1, 0}, Partition{1, 1}}));
  EXPECT_EQ(sym::digit_decomposition(Partition{2, 1}, 3, 1), (std::vector<Partition>{Partition{2, 1}}));
  EXPECT_THROW(sym::digit_decomposition(Partition{4}, 2, 2), Error);
}

TEST(Partition, DigitsRecompose) {
  for (auto [p, r] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    int q = 1;
    for (int i = 0; i < r; ++i) q *= p;
    for (int d = 0; d <= 8; ++d)
      for (int n = 1; n <= 3; ++n)
        for (const auto& l : sym::partitions_of(d, n)) {
          const Partition full = l.padded(static_cast<std::size_t>(n));
          if (!sym::is_p_restricted(full, q)) continue;
          const auto digits = sym::digit_decomposition(full, p, r);
          ASSERT_EQ(digits.size(), static_cast<std::size_t>(r));
          for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            int v = 0, pw = 1;
            for (const auto& dg : digits) {
              v += pw * dg[j];
              pw *= p;
            }
            EXPECT_EQ(v, full[j]);
          }
          for (const auto& dg : digits) EXPECT_TRUE(sym::is_p_restricted(dg, p));
        }
  }
}

TEST(Partition, RestrictedCountIsPowerOfP) {
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      // n-part partitions with every consecutive difference (and last part) below p
      int count = 0;
      for (int d = 0; d <= n * n * p; ++d)
        for (const auto& l : sym::partitions_of(d, n)) count += sym::is_p_restricted(l.padded(static_cast<std::size_t>(n)), p);
      int want = 1;
      for (int i = 0; i < n; ++i) want *= p;
      EXPECT_EQ(count, want) << p << " " << n;
    }
}

TEST(Specht, Examples) {
  for (const auto& k : {Field::rationals(), Field::gf(2), Field::gf(3)}) {
    const auto triv = sym::specht_module(Partition{4}, k);
    EXPECT_EQ(triv.dim, 1u);
    EXPECT_TRUE(triv.transposition.is_identity());
    const auto sgn = sym::specht_module(Partition{1, 1, 1}, k);
    EXPECT_EQ(sgn.dim, 1u);
    EXPECT_EQ(sgn.transposition.at(0, 0), la::Scalar::from_int(k, -1));
    EXPECT_EQ(sym::specht_module(Partition{2, 1}, k).dim, 2u);
  }
}

TEST(Specht, DimensionsAreHookLengths) {
  for (int d = 1; d <= 6; ++d) {
    std::uint64_t sum = 0;
    for (const auto& l : sym::partitions_of(d)) {
      const auto m = sym::specht_module(l, Field::rationals());
      EXPECT_EQ(m.dim, oracle::hook_length(l.parts()));
      EXPECT_EQ(sym::standard_tableaux(l).size(), m.dim);
      sum += m.dim * m.dim;
    }
    EXPECT_EQ(sum, oracle::factorial(d));
  }
}

TEST(Specht, IsRepresentation) {
  // Coxeter relations for s and c acting on the Specht module
  for (const auto& k : {Field::rationals(), Field::gf(3)})
    for (const auto& l : sym::partitions_of(4)) {
      const auto m = sym::specht_module(l, k);
      EXPECT_TRUE((m.transposition * m.transposition).is_identity());
      EXPECT_TRUE(la::power(m.cycle, 4).is_identity());
      EXPECT_TRUE(la::power(m.transposition * m.cycle, 3).is_identity());
      const auto acts = sym::all_actions(m);
      const auto perms = sym::all_permutations(4);
      for (std::size_t i = 0; i < perms.size(); i += 5)
        for (std::size_t j = 0; j < perms.size(); j += 7) {
          const auto comp = sym::compose(perms[i], perms[j]);
          const auto idx = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), comp) - perms.begin());
          EXPECT_EQ(acts[i] * acts[j], acts[idx]);
        }
    }
}

TEST(Specht, AbsolutelySimpleInCharZero) {
  for (int d = 1; d <= 5; ++d)
    for (const auto& l : sym::partitions_of(d)) {
      const auto m = sym::specht_module(l, Field::rationals()).as_module();
      EXPECT_TRUE(meataxe::is_simple(m)) << l.to_string();
      EXPECT_EQ(meataxe::end_dim(m), 1u);
    }
}

TEST(SimpleModule, Examples) {
  EXPECT_EQ(sym::simple_module(Partition{2, 1}, Field::gf(3)).dim, 1u);
  const auto d21 = sym::simple_module(Partition{2, 1}, Field::gf(3));
  EXPECT_EQ(d21.transposition.at(0, 0), la::Scalar::from_int(Field::gf(3), -1));
  EXPECT_EQ(sym::simple_module(Partition{2, 1}, Field::gf(2)).dim, 2u);
  EXPECT_EQ(sym::simple_module(Partition{2}, Field::gf(2)).dim, 1u);
  EXPECT_THROW(sym::simple_module(Partition{1, 1}, Field::gf(2)), Error);
}

TEST(SimpleModule, SimpleAndPairwiseDistinct) {
  for (int p : {2, 3})
    for (int d = 1; d <= 5; ++d) {
      std::vector<meataxe::AlgebraModule> seen;
      for (const auto& l : sym::partitions_of(d)) {
        if (!sym::is_p_regular(l, p)) continue;
        const auto m = sym::simple_module(l, Field::gf(p)).as_module();
        EXPECT_TRUE(meataxe::is_simple(m));
        EXPECT_EQ(meataxe::end_dim(m), 1u);
        for (const auto& o : seen) EXPECT_FALSE(meataxe::are_isomorphic(o, m));
        seen.push_back(m);
      }
    }
}

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steinlab/schurfun.hpp"

using namespace steinlab;
using la::Field;
using la::Matrix;
using sym::Partition;

namespace {

std::uint64_t schur_dim(const Partition& l, int n, const Field& k) { return schur::schur_value(l, n, k).dim(); }

}  // namespace

TEST(Oracle, HookContentMatchesTableaux) {
  for (int d = 0; d <= 6; ++d)
    for (const auto& l : sym::partitions_of(d))
      for (int n = 1; n <= 4; ++n) EXPECT_EQ(oracle::ssyt_count(l.parts(), n), oracle::hook_content(l.parts(), n));
}

TEST(Elementary, Examples) {
  const Field q = Field::rationals(), f2 = Field::gf(2);
  EXPECT_EQ(schur::elementary_value(sym::specht_module(Partition{2}, q), 2).dim(), 3u);
  EXPECT_EQ(schur::elementary_value(sym::specht_module(Partition{1, 1}, q), 2).dim(), 1u);
  EXPECT_EQ(schur::elementary_value(sym::specht_module(Partition{2}, f2), 2).dim(), 1u);
}

TEST(SchurValue, Examples) {
  for (const auto& k : {Field::rationals(), Field::gf(2), Field::gf(3)}) {
    EXPECT_EQ(schur_dim(Partition{1, 1}, 2, k), 1u);
    EXPECT_EQ(schur_dim(Partition{2, 1}, 1, k), 0u);
  }
  EXPECT_EQ(schur_dim(Partition{2, 1}, 2, Field::rationals()), 2u);
}

TEST(SchurValue, CharZeroDimensionsMatchTableaux) {
  for (int d = 1; d <= 3; ++d)
    for (const auto& l : sym::partitions_of(d))
      for (int n = 1; n <= 3; ++n) EXPECT_EQ(schur_dim(l, n, Field::rationals()), oracle::ssyt_count(l.parts(), n));
}

TEST(SchurValue, DimensionIndependentOfCharacteristic) {
  // Weyl-module dimension is characteristic free
  for (const auto& l : sym::partitions_of(3))
    for (const auto& k : {Field::gf(2), Field::gf(3)}) EXPECT_EQ(schur_dim(l, 2, k), oracle::ssyt_count(l.parts(), 2));
}

TEST(SchurValue, IsMonoidRepresentation) {
  for (const auto& k : {Field::rationals(), Field::gf(3)}) {
    const auto rep = schur::schur_value(Partition{2, 1}, 2, k);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Matrix g = oracle::random_matrix(k, 2, 2, s), h = oracle::random_matrix(k, 2, 2, s + 50);
      EXPECT_EQ(rep.act(g * h), rep.act(g) * rep.act(h));
    }
    EXPECT_TRUE(rep.act(Matrix::identity(k, 2)).is_identity());
  }
}

TEST(ElementaryValue, SpechtMatchesSchurInCharZero) {
  const Field q = Field::rationals();
  for (int d = 1; d <= 3; ++d)
    for (const auto& l : sym::partitions_of(d))
      for (int n = 1; n <= 2; ++n) {
        const auto e = schur::elementary_value(sym::specht_module(l, q), n);
        const auto s = schur::schur_value(l, n, q);
        ASSERT_EQ(e.dim(), s.dim());
        if (e.dim()) EXPECT_TRUE(meataxe::are_isomorphic(e.module(), s.module())) << l.to_string();
      }
}

TEST(SocleSimple, Examples) {
  const Field f2 = Field::gf(2);
  const auto lam2 = schur::socle_simple(Partition{1, 1}, 2, f2);
  EXPECT_EQ(lam2.dim(), 1u);
  EXPECT_EQ(lam2.subspace().dim(), schur::schur_value(Partition{1, 1}, 2, f2).dim());
  EXPECT_EQ(schur::socle_simple(Partition{2, 1}, 2, f2).dim(), 2u);
  for (const auto& k : {Field::gf(2), Field::gf(3), Field::gf(5)}) EXPECT_EQ(schur::socle_simple(Partition{1}, 3, k).dim(), 3u);
  EXPECT_THROW(schur::socle_simple(Partition{2}, 2, f2), Error);
}

TEST(SocleSimple, AbsolutelySimple) {
  for (int p : {2, 3})
    for (int d = 1; d <= 3; ++d)
      for (const auto& l : sym::partitions_of(d)) {
        if (!sym::is_p_restricted(l, p)) continue;
        const auto rep = schur::socle_simple(l, 2, Field::gf(p));
        if (!rep.dim()) continue;
        const auto m = rep.extend(Field::gf(p, 2)).module();
        EXPECT_TRUE(meataxe::is_simple(m)) << l.to_string() << " p=" << p;
        EXPECT_EQ(meataxe::end_dim(m), 1u);
      }
}

TEST(Weights, Examples) {
  const Field f7 = Field::gf(7);
  const auto sym2 = schur::schur_value(Partition{2}, 2, f7);
  EXPECT_EQ(schur::highest_weight(sym2), (schur::WeightVector{2, 0}));
  const auto ws = schur::weights(sym2);
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[0].weight, (schur::WeightVector{2, 0}));
  EXPECT_EQ(ws[1].weight, (schur::WeightVector{1, 1}));
  EXPECT_EQ(ws[2].weight, (schur::WeightVector{0, 2}));
  for (const auto& k : {Field::rationals(), Field::gf(2), Field::gf(3)}) {
    EXPECT_EQ(schur::highest_weight(schur::schur_value(Partition{1, 1}, 2, k)), (schur::WeightVector{1, 1}));
    EXPECT_EQ(schur::highest_weight(schur::socle_simple(Partition{1}, 3, k.is_finite() ? k : Field::gf(5))),
              (schur::WeightVector{1, 0, 0}));
  }
}

TEST(Weights, MultiplicitiesSumToDimension) {
  for (const auto& l : sym::partitions_of(3)) {
    const auto rep = schur::schur_value(l, 3, Field::rationals());
    std::size_t total = 0;
    for (const auto& w : schur::weights(rep)) {
      total += w.multiplicity;
      int s = 0;
      for (int x : w.weight) s += x;
      EXPECT_EQ(s, 3);
    }
    EXPECT_EQ(total, rep.dim());
    // weight multiplicities of S_lambda are Kostka numbers; the top one is 1
    EXPECT_EQ(schur::weights(rep).front().multiplicity, 1u);
  }
}

TEST(DetTwist, Examples) {
  EXPECT_TRUE(schur::det_twist_check(Partition{1, 1}, 2, Field::gf(2)).holds());
  EXPECT_TRUE(schur::det_twist_check(Partition{1, 1}, 2, Field::gf(3)).holds());
  EXPECT_TRUE(schur::det_twist_check(Partition{2, 1}, 2, Field::gf(2)).holds());
  EXPECT_TRUE(schur::det_twist_check(Partition{2, 2}, 2, Field::gf(3)).holds());
  EXPECT_THROW(schur::det_twist_check(Partition{2}, 2, Field::gf(3)), Error);
}

TEST(MonoidGenerators, GenerateAllOfM2F2) {
  const Field f2 = Field::gf(2);
  const auto gens = schur::monoid_generators(2, f2);
  std::set<std::vector<std::uint32_t>> seen = {Matrix::identity(f2, 2).codes()};
  std::vector<Matrix> frontier = {Matrix::identity(f2, 2)};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& x : frontier)
      for (const auto& [name, g] : gens) {
        Matrix y = x * g;
        if (seen.insert(y.codes()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  EXPECT_EQ(seen.size(), 16u);
  EXPECT_EQ(schur::monoid_generators(1, f2).size(), 2u);
}

TEST(Caps, DimensionCapThrows) {
  schur::Caps caps;
  caps.max_dim = 4;
  try {
    schur::schur_value(Partition{2, 1}, 3, Field::rationals(), caps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::CapExceeded);
  }
}

TEST(FieldLargerThan, PicksSmallestExtension) {
  EXPECT_EQ(schur::field_larger_than(Field::gf(2), 3), Field::gf(2, 2));
  EXPECT_EQ(schur::field_larger_than(Field::gf(2), 1), Field::gf(2));
  EXPECT_EQ(schur::field_larger_than(Field::gf(3), 4), Field::gf(3, 2));
  EXPECT_TRUE(schur::field_larger_than(Field::rationals(), 100).is_rational());
}

TEST(GLRep, ExtendKeepsDimension) {
  const auto rep = schur::socle_simple(Partition{2, 1}, 2, Field::gf(2));
  const auto big = rep.extend(Field::gf(2, 2));
  EXPECT_EQ(big.dim(), rep.dim());
  const Matrix g = oracle::random_matrix(Field::gf(2), 2, 2, 4);
  EXPECT_EQ(big.act(g.embed(Field::gf(2, 2))), rep.act(g).embed(Field::gf(2, 2)));
}

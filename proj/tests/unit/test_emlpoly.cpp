#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "steinlab/emlpoly.hpp"

using namespace steinlab;
using eml::AbGroup;
using eml::AbMap;
using la::Field;
using la::Matrix;

namespace {

AbMap power_map(const ring::FiniteRing& a, const Field& k, int e) {
  std::vector<std::uint32_t> codes(a.size());
  for (ring::Elem x = 0; x < a.size(); ++x) {
    ring::Elem y = a.one();
    for (int i = 0; i < e; ++i) y = a.mul(y, x);
    codes[x] = y;
  }
  return AbMap::field_table(AbGroup::of_ring(a), k, codes);
}

std::uint32_t code_of(const eml::Value& v) { return std::get<Matrix>(v).code(0, 0); }

AbMap rational_poly(std::vector<long long> coeffs, long long window) {
  const Field q = Field::rationals();
  return AbMap(AbGroup::integers(window), eml::Target::vectors(q), [coeffs, q](long long x) -> eml::Value {
    long long v = 0, pw = 1;
    for (long long c : coeffs) {
      v += c * pw;
      pw *= x;
    }
    return Matrix::from_ints(q, 1, 1, {v});
  });
}

// Deviation straight from the alternating-sum definition, on Z/m -> Z/m tables.
long long reference_deviation(const std::vector<long long>& table, long long m, const std::vector<long long>& args) {
  const std::size_t d = args.size();
  long long total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    long long s = 0;
    int bits = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) {
        s += args[i];
        ++bits;
      }
    const long long sign = (d - static_cast<std::size_t>(bits)) % 2 ? -1 : 1;
    total += sign * table[static_cast<std::size_t>(s % m)];
  }
  return ((total % m) + m) % m;
}

}  // namespace

TEST(AbGroup, Basics) {
  const auto g = AbGroup::finite({2, 4});
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.elements().size(), 8u);
  for (long long x : g.elements()) EXPECT_EQ(g.add(x, g.neg(x)), 0);
  EXPECT_EQ(g.scale(4, 7), 0);
  const auto z = AbGroup::integers(5);
  EXPECT_TRUE(z.is_integers());
  EXPECT_EQ(z.elements().size(), 11u);
}

TEST(Deviation, SquareOnZ5) {
  const auto g = AbGroup::finite({5});
  std::vector<long long> table;
  for (long long x = 0; x < 5; ++x) table.push_back(x * x % 5);
  const auto f = AbMap::group_table(g, g, table);
  for (long long u = 0; u < 5; ++u)
    for (long long v = 0; v < 5; ++v) EXPECT_EQ(std::get<long long>(eml::deviation(f, {u, v})), 2 * u * v % 5);
}

TEST(Deviation, MatchesDefinition) {
  std::mt19937_64 rng(3);
  const auto g = AbGroup::finite({6});
  for (int t = 0; t < 20; ++t) {
    std::vector<long long> table(6);
    for (auto& x : table) x = static_cast<long long>(rng() % 6);
    const auto f = AbMap::group_table(g, g, table);
    for (int s = 0; s < 20; ++s) {
      std::vector<long long> args(1 + rng() % 4);
      for (auto& a : args) a = static_cast<long long>(rng() % 6);
      EXPECT_EQ(std::get<long long>(eml::deviation(f, args)), reference_deviation(table, 6, args));
    }
  }
}

TEST(Deviation, AdditiveHasVanishingSecondDeviation) {
  const auto g = AbGroup::finite({2, 4});
  for (const auto& hom : eml::homomorphisms(g, AbGroup::finite({4}))) {
    std::vector<long long> shifted = hom;
    for (auto& x : shifted) x = (x + 1) % 4;  // f - f(0) additive
    const auto f = AbMap::group_table(g, AbGroup::finite({4}), shifted);
    EXPECT_EQ(eml::eml_degree(f, 4), hom == std::vector<long long>(8, 0) ? 0 : 1);
  }
}

TEST(Deviation, CubeOnF4) {
  const auto f4 = ring::FiniteRing::galois(2, 2);
  const Field k = Field::gf(2, 2);
  const auto f = power_map(f4, k, 3);
  for (ring::Elem u = 0; u < 4; ++u)
    for (ring::Elem v = 0; v < 4; ++v) {
      EXPECT_EQ(code_of(eml::deviation(f, {u, v})), k.mul(k.mul(u, v), k.add(u, v)));
      for (ring::Elem w = 0; w < 4; ++w) EXPECT_EQ(code_of(eml::deviation(f, {u, v, w})), 0u);
    }
}

TEST(Deviation, Symmetric) {
  std::mt19937_64 rng(11);
  const auto g = AbGroup::finite({3, 3});
  for (int t = 0; t < 10; ++t) {
    std::vector<long long> table(9);
    for (auto& x : table) x = static_cast<long long>(rng() % 5);
    const auto f = AbMap::group_table(g, AbGroup::finite({5}), table);
    std::vector<long long> args = {static_cast<long long>(rng() % 9), static_cast<long long>(rng() % 9),
                                   static_cast<long long>(rng() % 9)};
    const auto base = eml::deviation(f, args);
    std::sort(args.begin(), args.end());
    do EXPECT_EQ(eml::deviation(f, args), base);
    while (std::next_permutation(args.begin(), args.end()));
  }
}

TEST(Degree, Examples) {
  const auto z9 = AbGroup::finite({9});
  EXPECT_EQ(eml::eml_degree(AbMap::group_table(z9, z9, std::vector<long long>(9, 4)), 6), 0);
  std::vector<long long> id(9);
  for (long long i = 0; i < 9; ++i) id[static_cast<std::size_t>(i)] = i;
  EXPECT_EQ(eml::eml_degree(AbMap::group_table(z9, z9, id), 6), 1);
  const auto indicator = AbMap::field_table(AbGroup::finite({2}), Field::gf(3), {0, 1});
  EXPECT_FALSE(eml::eml_degree(indicator, 6).has_value());
  EXPECT_EQ(eml::eml_degree(rational_poly({1, 0, 0, 2}, 12), 6), 3);
}

TEST(Homogeneous, XSquaredPlusX) {
  const auto parts = eml::homogeneous_decomposition(rational_poly({0, 1, 1}, 10), 6);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].degree, 1);
  EXPECT_EQ(parts[1].degree, 2);
  const Field q = Field::rationals();
  for (long long x = -5; x <= 5; ++x) {
    EXPECT_EQ(std::get<Matrix>(parts[0].map(x)), Matrix::from_ints(q, 1, 1, {x}));
    EXPECT_EQ(std::get<Matrix>(parts[1].map(x)), Matrix::from_ints(q, 1, 1, {x * x}));
  }
}

TEST(Homogeneous, SingleComponents) {
  auto one = eml::homogeneous_decomposition(rational_poly({0, 3}, 10), 6);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].degree, 1);
  auto cst = eml::homogeneous_decomposition(rational_poly({7}, 10), 6);
  ASSERT_EQ(cst.size(), 1u);
  EXPECT_EQ(cst[0].degree, 0);
  const auto f4 = ring::FiniteRing::galois(2, 2);
  EXPECT_THROW(eml::homogeneous_decomposition(power_map(f4, Field::gf(2, 2), 1), 3), Error);
}

TEST(Factor, Examples) {
  const auto f9 = ring::FiniteRing::galois(3, 2);
  const Field k9 = Field::gf(3, 2);
  const auto phi = eml::MultiplicativeMap{f9, k9, [&] {
                                            std::vector<std::uint32_t> v;
                                            for (std::uint32_t x = 0; x < 9; ++x) v.push_back(k9.pow(x, 4));
                                            return v;
                                          }()};
  const auto fac = eml::factor_multiplicative(phi, 8);
  EXPECT_EQ(fac.degree, 2);
  ASSERT_EQ(fac.factors.size(), 2u);
  std::vector<std::vector<std::uint32_t>> got = {fac.factors[0].values, fac.factors[1].values};
  std::vector<std::uint32_t> id(9), frob(9);
  for (std::uint32_t x = 0; x < 9; ++x) {
    id[x] = x;
    frob[x] = k9.frobenius(x);
  }
  std::sort(got.begin(), got.end());
  auto want = std::vector<std::vector<std::uint32_t>>{id, frob};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);

  const Field k4 = Field::gf(2, 2);
  const auto ident = eml::factor_multiplicative({ring::FiniteRing::galois(2, 2), k4, {0, 1, 2, 3}}, 4);
  ASSERT_EQ(ident.factors.size(), 1u);
  EXPECT_EQ(ident.factors[0].values, (std::vector<std::uint32_t>{0, 1, 2, 3}));

  const auto sq = eml::factor_multiplicative({ring::FiniteRing::cyclic(4), Field::gf(2), {0, 1, 0, 1}}, 4);
  EXPECT_EQ(sq.degree, 1);
  ASSERT_EQ(sq.factors.size(), 1u);
  EXPECT_EQ(sq.factors[0].values, (std::vector<std::uint32_t>{0, 1, 0, 1}));

  EXPECT_EQ(eml::factor_multiplicative_integers(rational_poly({0, 0, 0, 1}, 8), 6), 3);
  EXPECT_THROW(eml::factor_multiplicative_integers(rational_poly({0, 2}, 8), 6), Error);
}

TEST(Factor, RejectsNonMultiplicative) {
  const Field k4 = Field::gf(2, 2);
  EXPECT_THROW(eml::factor_multiplicative({ring::FiniteRing::galois(2, 2), k4, {0, 1, 2, 2}}, 4), Error);
}

TEST(Linearization, Examples) {
  const auto z2 = AbGroup::finite({2}), z4 = AbGroup::finite({4});
  const auto r = eml::linearization_exactness({z2, z4, z2, {0, 2}, {0, 1, 0, 1}}, Field::gf(3));
  EXPECT_TRUE(r.exact());
  EXPECT_TRUE(r.right_composite_zero);
  EXPECT_TRUE(r.left_composite_zero);
  const auto b = AbGroup::finite({2, 3}), z3 = AbGroup::finite({3});
  EXPECT_TRUE(eml::linearization_exactness({z2, b, z3, {0, 1}, {0, 0, 1, 1, 2, 2}}, Field::gf(5)).exact());
  const auto zero = AbGroup::finite({});
  EXPECT_TRUE(eml::linearization_exactness({zero, zero, zero, {0}, {0}}, Field::gf(5)).exact());
  EXPECT_THROW(eml::linearization_exactness({z2, z4, z2, {0, 1}, {0, 1, 0, 1}}, Field::gf(3)), Error);
}

TEST(Homomorphisms, CountMatchesGcd) {
  for (std::uint32_t m = 2; m <= 8; ++m)
    for (std::uint32_t n = 2; n <= 8; ++n)
      EXPECT_EQ(eml::homomorphisms(AbGroup::finite({m}), AbGroup::finite({n})).size(), std::gcd(m, n));
}

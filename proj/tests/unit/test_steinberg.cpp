#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "steinlab/steinberg.hpp"

using namespace steinlab;
using la::Field;
using la::Matrix;
using meataxe::AlgebraModule;
using sym::Partition;

namespace {

AlgebraModule natural(int n, std::uint32_t q, const Field& k) {
  AlgebraModule m(k, static_cast<std::size_t>(n));
  for (const auto& [name, g] : steinberg::group_generators(n, Field::of_order(q)))
    m.add_generator(name, g.embed(k));
  return m;
}

// Regular module of GL_n(F_q) over k, from the multiplication table of the group.
AlgebraModule regular(int n, std::uint32_t q, const Field& k) {
  const Field fq = Field::of_order(q);
  const auto elems = steinberg::group_elements(n, fq);
  AlgebraModule m(k, elems.size());
  for (const auto& [name, g] : steinberg::group_generators(n, fq)) {
    std::vector<int> perm;
    for (const auto& x : elems)
      perm.push_back(static_cast<int>(std::find(elems.begin(), elems.end(), g * x) - elems.begin()));
    m.add_generator(name, oracle::permutation_matrix(k, perm));
  }
  return m;
}

}  // namespace

TEST(Generators, GenerateTheGroup) {
  for (auto [n, q] : {std::pair{1, 4u}, {2, 2u}, {2, 3u}, {3, 2u}}) {
    const Field fq = Field::of_order(q);
    const auto elems = steinberg::group_elements(n, fq);
    std::uint64_t order = 1, qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    for (std::uint64_t qi = 1; qi < qn; qi *= q) order *= qn - qi;
    EXPECT_EQ(elems.size(), order);
    EXPECT_EQ(regular(n, q, Field::gf(2)).dim(), order);
    EXPECT_EQ(meataxe::spin(regular(n, q, Field::gf(2)), Matrix::identity(Field::gf(2), order).row(0)).dim(), order);
  }
}

TEST(Build, Examples) {
  const Field f4 = Field::gf(2, 2);
  const auto nat = steinberg::build(Partition{1, 0}, 2, 2, f4);
  EXPECT_TRUE(meataxe::are_isomorphic(nat.module, natural(2, 2, f4)));
  const auto cube = steinberg::build(Partition{3}, 1, 4, f4);
  ASSERT_EQ(cube.module.dim(), 1u);
  const Matrix w = steinberg::group_generators(1, f4).front().second;
  EXPECT_EQ(cube.module.action("d"), w * w * w);
  EXPECT_TRUE(cube.module.action("d").is_identity());
  EXPECT_EQ(steinberg::build(Partition{2}, 1, 4, f4).module.action("d"), w * w);
  EXPECT_EQ(steinberg::build(Partition{1}, 1, 4, f4).module.action("d"), w);
  const auto triv = steinberg::build(Partition{0, 0}, 2, 3, steinberg::splitting_field(2, 3));
  ASSERT_EQ(triv.module.dim(), 1u);
  for (const auto& g : triv.module.generators()) EXPECT_TRUE(g.action.is_identity());
  EXPECT_THROW(steinberg::build(Partition{4}, 1, 4, f4), Error);
}

TEST(Build, DimensionIsProductOfDigits) {
  for (auto [n, q] : {std::pair{1, 4u}, {2, 2u}, {2, 3u}, {2, 4u}, {3, 2u}}) {
    const Field k = steinberg::splitting_field(n, q);
    for (const auto& l : steinberg::class_parameters(n, q)) {
      const auto d = steinberg::build(l, n, q, k);
      std::size_t prod = 1;
      for (auto x : d.digit_dims) prod *= x;
      EXPECT_EQ(d.module.dim(), prod) << l.to_string();
      EXPECT_EQ(d.digits.size(), d.digit_dims.size());
    }
  }
}

TEST(ClassParameters, CountMatchesSemisimpleClasses) {
  for (auto [n, q] : {std::pair{1, 2u}, {1, 5u}, {2, 2u}, {2, 3u}, {2, 4u}, {3, 2u}, {3, 3u}}) {
    const auto ps = steinberg::class_parameters(n, q);
    EXPECT_EQ(ps.size(), oracle::semisimple_class_count(n, q)) << n << " " << q;
    EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
    for (const auto& l : ps) EXPECT_LE(l[static_cast<std::size_t>(n - 1)], static_cast<int>(q) - 2);
  }
  EXPECT_EQ(steinberg::class_parameters(2, 2), (std::vector<Partition>{Partition{0, 0}, Partition{1, 0}}));
}

TEST(PRegularClasses, MatchSemisimpleCount) {
  for (auto [n, q] : {std::pair{1, 4u}, {2, 2u}, {2, 3u}, {3, 2u}})
    EXPECT_EQ(static_cast<std::uint64_t>(steinberg::p_regular_class_count(n, q)), oracle::semisimple_class_count(n, q));
}

TEST(Classify, SmallCases) {
  for (auto [n, q] : {std::pair{1, 2u}, {1, 3u}, {1, 4u}, {1, 5u}, {1, 7u}, {1, 8u}, {1, 9u}, {2, 2u}, {3, 2u}}) {
    const auto c = steinberg::classify(n, q);
    EXPECT_TRUE(c.consistent()) << n << " " << q;
    EXPECT_EQ(static_cast<std::uint64_t>(c.class_count), oracle::semisimple_class_count(n, q));
    EXPECT_EQ(c.entries.size(), steinberg::class_parameters(n, q).size());
    for (const auto& e : c.entries) {
      EXPECT_TRUE(e.simple);
      EXPECT_TRUE(e.absolutely_simple);
    }
    for (std::size_t i = 0; i < c.entries.size(); ++i)
      for (std::size_t j = i + 1; j < c.entries.size(); ++j)
        EXPECT_FALSE(meataxe::are_isomorphic(c.entries[i].datum.module, c.entries[j].datum.module));
  }
  EXPECT_EQ(steinberg::classify(1, 4).class_count, 3);
}

TEST(Classify, OutsideCapsThrows) {
  for (auto [n, q] : {std::pair{2, 3u}, {2, 5u}, {3, 3u}, {4, 2u}, {1, 11u}}) {
    try {
      steinberg::classify(n, q);
      ADD_FAILURE() << n << " " << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), Error::Kind::CapExceeded);
    }
  }
}

TEST(Classify, MatchesRegularModuleDecomposition) {
  // GL_2(F_2) is S_3; its group algebra over F_4 has a trivial and a 2-dimensional simple
  const Field f4 = Field::gf(2, 2);
  const auto c = steinberg::classify(2, 2, f4);
  const auto types = meataxe::composition_types(regular(2, 2, f4));
  ASSERT_EQ(types.size(), static_cast<std::size_t>(c.class_count));
  std::multiset<std::size_t> dims;
  for (const auto& t : types) dims.insert(t.module.dim());
  EXPECT_EQ(dims, (std::multiset<std::size_t>{1, 2}));
  for (const auto& e : c.entries) {
    const auto hits = std::count_if(types.begin(), types.end(),
                                    [&](const auto& t) { return meataxe::are_isomorphic(t.module, e.datum.module); });
    EXPECT_EQ(hits, 1) << e.datum.lambda.to_string();
  }
  // in characteristic 2 the trivial module occurs twice, as does the projective 2-dimensional simple
  for (const auto& t : types) EXPECT_EQ(t.multiplicity, 2);
}

TEST(Classify, RegularModuleOfGL1F4) {
  const Field f4 = Field::gf(2, 2);
  const auto c = steinberg::classify(1, 4, f4);
  const auto types = meataxe::composition_types(regular(1, 4, f4));
  ASSERT_EQ(types.size(), 3u);
  for (const auto& e : c.entries)
    EXPECT_EQ(std::count_if(types.begin(), types.end(),
                            [&](const auto& t) { return meataxe::are_isomorphic(t.module, e.datum.module); }),
              1);
}

TEST(Classify, SeedIndependent) {
  const auto a = steinberg::classify(3, 2, std::nullopt, 1), b = steinberg::classify(3, 2, std::nullopt, 77);
  EXPECT_EQ(steinberg::report_tsv(a), steinberg::report_tsv(b));
}

TEST(Report, Format) {
  const auto tsv = steinberg::report_tsv(steinberg::classify(2, 2));
  std::istringstream in(tsv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "lambda\tdigits\tdim\tsimple\tclass");
  for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), '\t'), 4);
}

TEST(Uniqueness, Examples) {
  const auto v = steinberg::uniqueness_check(Partition{1, 1}, Partition{0, 0}, 2, 2);
  EXPECT_TRUE(v.isomorphic);
  EXPECT_TRUE(v.det_shift);
  EXPECT_EQ(v.relation(), "det^(p-1) shift");
  const auto w = steinberg::uniqueness_check(Partition{3}, Partition{0}, 1, 4);
  EXPECT_TRUE(w.isomorphic);
  EXPECT_TRUE(w.consistent());
  const auto x = steinberg::uniqueness_check(Partition{1, 0}, Partition{0, 0}, 2, 2);
  EXPECT_FALSE(x.isomorphic);
  EXPECT_EQ(x.relation(), "not isomorphic");
  const auto y = steinberg::uniqueness_check(Partition{1, 0}, Partition{1, 0}, 2, 3);
  EXPECT_TRUE(y.equal);
}

TEST(Uniqueness, DetShiftClosure) {
  for (std::uint32_t p : {2u, 3u})
    for (const auto& l : steinberg::class_parameters(2, p)) {
      if (l[1] != 0) continue;
      const int s = static_cast<int>(p) - 1;
      const Partition shifted{l[0] + s, s};
      const auto v = steinberg::uniqueness_check(shifted, l, 2, p);
      EXPECT_TRUE(v.isomorphic) << l.to_string();
      EXPECT_TRUE(v.det_shift);
      EXPECT_TRUE(v.consistent());
    }
}

TEST(Uniqueness, DistinctParametersWithinClassListAreNotIsomorphic) {
  const auto ps = steinberg::class_parameters(2, 4);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const auto v = steinberg::uniqueness_check(ps[i], ps[j], 2, 4);
      EXPECT_FALSE(v.isomorphic);
      EXPECT_TRUE(v.consistent());
    }
}

TEST(Product, RoundTrip) {
  const Field f4 = Field::gf(2, 2);
  const auto a = steinberg::build(Partition{1, 0}, 2, 2, f4).module;
  const auto b = steinberg::build(Partition{1}, 1, 4, f4).module;
  const auto m = steinberg::outer_tensor(a, b);
  EXPECT_EQ(m.dim(), 2u);
  const auto f = steinberg::product_decompose(m, 3);
  EXPECT_TRUE(meataxe::are_isomorphic(f.first, a));
  EXPECT_TRUE(meataxe::are_isomorphic(f.second, b));
  const auto c = steinberg::build(Partition{1, 0}, 2, 2, f4).module;
  const auto f2 = steinberg::product_decompose(steinberg::outer_tensor(a, c));
  EXPECT_EQ(f2.first.dim() * f2.second.dim(), 4u);
  EXPECT_TRUE(meataxe::are_isomorphic(f2.second, c));
}

TEST(Product, SteinbergTimesTrivial) {
  const Field f4 = Field::gf(2, 2);
  const auto st = steinberg::build(Partition{1, 0}, 2, 2, f4).module;
  AlgebraModule triv(f4, 1);
  triv.add_generator("d", Matrix::identity(f4, 1));
  const auto f = steinberg::product_decompose(steinberg::outer_tensor(st, triv));
  EXPECT_EQ(f.first.dim(), 2u);
  EXPECT_EQ(f.second.dim(), 1u);
  EXPECT_TRUE(meataxe::are_isomorphic(f.first, st));
}

TEST(Product, CharactersOfUnitGroupsSplit) {
  // A = F_2 x F_3, n = 1, over F_7: GL_1(A) is Z/2 and the character is trivial times sign
  const Field f7 = Field::gf(7);
  AlgebraModule a(f7, 1), b(f7, 1);
  a.add_generator("d", Matrix::identity(f7, 1));
  b.add_generator("d", Matrix::from_ints(f7, 1, 1, {-1}));
  const auto f = steinberg::product_decompose(steinberg::outer_tensor(a, b));
  EXPECT_EQ(f.first.action("d"), a.action("d"));
  EXPECT_EQ(f.second.action("d"), b.action("d"));
}

TEST(Product, RejectsNonSimpleAndForeignGenerators) {
  const Field f4 = Field::gf(2, 2);
  const auto a = steinberg::build(Partition{1, 0}, 2, 2, f4).module;
  EXPECT_THROW(steinberg::product_decompose(a), Error);
  AlgebraModule two(f4, 2);
  two.add_generator("1:x", Matrix::identity(f4, 2));
  EXPECT_THROW(steinberg::product_decompose(two), Error);
}

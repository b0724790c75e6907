#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steinlab/json_io.hpp"
#include "steinlab/steinberg.hpp"

using namespace steinlab;
using io::Json;
using la::Field;
using la::Matrix;

namespace {

std::vector<Field> fields() {
  return {Field::rationals(), Field::gf(2), Field::gf(3), Field::gf(7), Field::gf(2, 2), Field::gf(3, 2), Field::gf(2, 4)};
}

}  // namespace

TEST(Field, RoundTrip) {
  for (const auto& k : fields()) {
    EXPECT_EQ(io::field_from_json(io::to_json(k)), k);
    EXPECT_EQ(io::field_from_json(Json(k.name())), k);
    EXPECT_EQ(io::field_from_json(Json::parse(io::to_json(k).dump())), k);
  }
  EXPECT_EQ(io::to_json(Field::gf(3, 2)), (Json{{"p", 3}, {"e", 2}}));
  EXPECT_EQ(io::to_json(Field::rationals())["p"], 0);
}

TEST(Field, RejectsGarbage) {
  EXPECT_THROW(io::field_from_json(Json{{"p", 4}, {"e", 1}}), Error);
  EXPECT_THROW(io::field_from_json(Json("F_6")), Error);
  EXPECT_ANY_THROW(io::field_from_json(Json::array()));
}

TEST(Matrix, RoundTrip) {
  for (const auto& k : fields())
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Matrix m = oracle::random_matrix(k, 1 + s % 3, 1 + (s + 1) % 4, s);
      const Json j = io::to_json(m);
      EXPECT_EQ(io::matrix_from_json(j), m);
      EXPECT_EQ(io::matrix_from_json(Json::parse(j.dump()), k), m);
      EXPECT_EQ(j["rows"], m.rows());
      EXPECT_EQ(j["cols"], m.cols());
    }
  EXPECT_EQ(io::matrix_from_json(io::to_json(Matrix(Field::gf(2), 0, 3))).cols(), 3u);
}

TEST(Matrix, Encoding) {
  const Matrix q = Matrix::from_ints(Field::rationals(), 1, 2, {-3, 1}).scaled(la::Scalar::from_rational(la::Rational(1, 2)));
  const Json j = io::to_json(q);
  EXPECT_EQ(j["entries"][0], "-3/2");
  EXPECT_EQ(j["entries"][1], "1/2");
  EXPECT_EQ(io::matrix_from_json(j), q);
}

TEST(Matrix, RejectsWrongFieldOrShape) {
  const Json j = io::to_json(Matrix::identity(Field::gf(3), 2));
  EXPECT_THROW(io::matrix_from_json(j, Field::gf(5)), Error);
  Json bad = j;
  bad["rows"] = 3;
  EXPECT_ANY_THROW(io::matrix_from_json(bad));
}

TEST(Partition, RoundTrip) {
  for (int d = 0; d <= 6; ++d)
    for (const auto& p : sym::partitions_of(d)) EXPECT_EQ(io::partition_from_json(io::to_json(p)), p);
  EXPECT_EQ(io::partition_from_json(Json::parse("[2,1,0]")), (sym::Partition{2, 1, 0}));
  EXPECT_THROW(io::partition_from_json(Json::parse("[1,2]")), Error);
}

TEST(Module, RoundTrip) {
  const Field f4 = Field::gf(2, 2);
  const auto mods = {steinberg::build(sym::Partition{1, 0}, 2, 2, f4).module,
                     sym::specht_module(sym::Partition{2, 1}, Field::rationals()).as_module(),
                     schur::socle_simple(sym::Partition{2, 1}, 2, Field::gf(2)).module()};
  for (const auto& m : mods) {
    const auto back = io::module_from_json(Json::parse(io::to_json(m).dump()));
    EXPECT_EQ(back.field(), m.field());
    EXPECT_EQ(back.dim(), m.dim());
    EXPECT_EQ(back.names(), m.names());
    for (const auto& g : m.generators()) {
      EXPECT_EQ(back.action(g.name), g.action);
      EXPECT_EQ(back.generators()[&g - m.generators().data()].element.has_value(), g.element.has_value());
    }
    EXPECT_TRUE(meataxe::are_isomorphic(back, m));
  }
}

TEST(GLRep, Shape) {
  const auto rep = schur::schur_value(sym::Partition{2}, 2, Field::gf(3));
  const Json j = io::to_json(rep);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["dim"], 3);
  EXPECT_EQ(io::field_from_json(j["field"]), Field::gf(3));
  for (const auto& g : j["generators"]) EXPECT_EQ(io::matrix_from_json(g["matrix"]).rows(), 3u);
}

TEST(Table, RoundTrip) {
  const auto a = ring::FiniteRing::galois(2);
  for (const auto& f : {functor::grassmannian1(a, Field::gf(3), 3), functor::projective(a, Field::gf(3), 2)}) {
    const auto t = functor::tabulate(f);
    const auto back = io::table_from_json(Json::parse(io::to_json(t).dump()));
    EXPECT_EQ(back.ring.name(), t.ring.name());
    EXPECT_EQ(back.field, t.field);
    EXPECT_EQ(back.max_rank, t.max_rank);
    EXPECT_EQ(back.dims, t.dims);
    EXPECT_EQ(back.actions, t.actions);
    EXPECT_EQ(functor::from_table(back).dims(), f.dims());
  }
}

TEST(Ideal, Shape) {
  const auto z6 = ring::FiniteRing::cyclic(6);
  const auto f = functor::tensor_functors(
      functor::lambda1(z6, Field::gf(2, 2), 3),
      functor::intermediate_extension_functor(functor::character_module(z6, Field::gf(2, 2), 3, 1), 3));
  const Json j = io::to_json(functor::unipotence_ideal(f, 1).ideal);
  EXPECT_EQ(j["size"], 2);
  EXPECT_EQ(j["quotient_size"], 3);
  EXPECT_EQ(j["ring"], z6.name());
}

#include "steinlab/json_io.hpp"

namespace steinlab::io {

using la::Field;
using la::Matrix;

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Error::Kind::Parse, std::string("missing JSON member '") + key + "'");
  return j.at(key);
}

la::Scalar scalar_from_json(const Json& j, const Field& k) {
  if (k.is_finite()) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(k.degree()))
      fail(Error::Kind::Parse, "finite-field entries must be coefficient vectors of length " + std::to_string(k.degree()));
    std::vector<int> coeffs;
    for (const auto& c : j) {
      if (!c.is_number_integer() || c.get<int>() < 0 || c.get<int>() >= k.characteristic())
        fail(Error::Kind::Parse, "bad prime-field coefficient");
      coeffs.push_back(c.get<int>());
    }
    return la::Scalar::from_code(k, k.from_coefficients(coeffs));
  }
  if (j.is_number_integer()) return la::Scalar::from_int(k, j.get<long long>());
  if (!j.is_string()) fail(Error::Kind::Parse, "rational entries must be \"num/den\" strings");
  la::Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0) fail(Error::Kind::Parse, "bad rational '" + j.get<std::string>() + "'");
  if (q.get_den() == 0) fail(Error::Kind::Parse, "zero denominator");
  q.canonicalize();
  return la::Scalar::from_rational(q);
}

}  // namespace

Json to_json(const Field& k) { return {{"p", k.characteristic()}, {"e", k.degree()}}; }

Field field_from_json(const Json& j) {
  if (j.is_string()) return Field::parse(j.get<std::string>());
  const int p = member(j, "p").get<int>(), e = member(j, "e").get<int>();
  if (p == 0) return Field::rationals();
  if (!Field::supported(p, e)) fail(Error::Kind::Parse, "unsupported field p=" + std::to_string(p) + " e=" + std::to_string(e));
  return Field::gf(p, e);
}

Json to_json(const Matrix& m) {
  const Field& k = m.field();
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (k.is_finite()) {
        entries.push_back(k.coefficients(m.code(i, j)));
      } else {
        auto q = m.at(i, j).rational();
        entries.push_back(q.get_num().get_str() + "/" + q.get_den().get_str());
      }
    }
  return {{"field", to_json(k)}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const Json& j) {
  const Field k = field_from_json(member(j, "field"));
  const auto rows = member(j, "rows").get<std::size_t>(), cols = member(j, "cols").get<std::size_t>();
  const Json& entries = member(j, "entries");
  if (!entries.is_array() || entries.size() != rows * cols) fail(Error::Kind::Parse, "entry count does not match rows x cols");
  Matrix m(k, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, scalar_from_json(entries[i * cols + c], k));
  return m;
}

Matrix matrix_from_json(const Json& j, const Field& k) {
  Matrix m = matrix_from_json(j);
  if (!(m.field() == k)) fail(Error::Kind::FieldMismatch, "matrix over " + m.field().name() + ", expected " + k.name());
  return m;
}

Json to_json(const sym::Partition& p) { return p.parts(); }

sym::Partition partition_from_json(const Json& j) {
  if (!j.is_array()) fail(Error::Kind::Parse, "partition must be an array");
  try {
    return sym::Partition(j.get<std::vector<int>>());
  } catch (const nlohmann::json::exception&) {
    fail(Error::Kind::Parse, "partition parts must be integers");
  }
}

Json to_json(const meataxe::AlgebraModule& m) {
  Json gens = Json::array();
  for (const auto& g : m.generators()) {
    Json entry = {{"name", g.name}, {"matrix", to_json(g.action)}};
    if (g.element) entry["element"] = to_json(*g.element);
    gens.push_back(std::move(entry));
  }
  return {{"field", m.field().name()}, {"dim", m.dim()}, {"generators", gens}};
}

meataxe::AlgebraModule module_from_json(const Json& j) {
  const Field k = Field::parse(member(j, "field").get<std::string>());
  const auto dim = member(j, "dim").get<std::size_t>();
  meataxe::AlgebraModule m(k, dim);
  for (const auto& g : member(j, "generators")) {
    Matrix a = matrix_from_json(member(g, "matrix"), k);
    if (a.rows() != dim || a.cols() != dim) fail(Error::Kind::Parse, "generator matrix has the wrong size");
    std::optional<Matrix> element;
    if (g.contains("element")) element = matrix_from_json(g.at("element"));
    m.add_generator(member(g, "name").get<std::string>(), std::move(a), std::move(element));
  }
  return m;
}

Json to_json(const schur::GLRep& rep) {
  Json j = to_json(rep.module());
  j["n"] = rep.rank();
  return j;
}

Json to_json(const functor::MorphismTable& t) {
  Json actions = Json::object();
  for (const auto& [name, m] : t.actions) actions[name] = to_json(m);
  return {{"ring", t.ring.name()}, {"field", t.field.name()}, {"N", t.max_rank}, {"dims", t.dims}, {"actions", actions}};
}

functor::MorphismTable table_from_json(const Json& j) {
  functor::MorphismTable t{ring::FiniteRing::parse(member(j, "ring").get<std::string>()),
                           Field::parse(member(j, "field").get<std::string>()), member(j, "N").get<int>(),
                           member(j, "dims").get<std::vector<std::size_t>>(), {}};
  if (t.dims.size() != static_cast<std::size_t>(t.max_rank) + 1) fail(Error::Kind::Parse, "dims must list ranks 0..N");
  for (const auto& [name, m] : member(j, "actions").items()) {
    Matrix a = matrix_from_json(m, t.field);
    t.actions.emplace(name, std::move(a));
  }
  for (const auto& [name, g] : functor::generating_morphisms(t.ring, t.max_rank)) {
    auto it = t.actions.find(name);
    if (it == t.actions.end()) continue;
    if (it->second.rows() != t.dims[g.rows()] || it->second.cols() != t.dims[g.cols()])
      fail(Error::Kind::Parse, "action " + name + " has the wrong size");
  }
  return t;
}

Json to_json(const ring::RingIdeal& ideal) {
  return {{"ring", ideal.ring.name()}, {"ideal", ideal.to_string()}, {"size", ideal.elements.size()},
          {"quotient_size", ideal.quotient_size()}};
}

}  // namespace steinlab::io

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "steinlab/cli.hpp"
#include "steinlab/emlpoly.hpp"
#include "steinlab/exactla.hpp"
#include "steinlab/finring.hpp"
#include "steinlab/functorcat.hpp"
#include "steinlab/json_io.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/schurfun.hpp"
#include "steinlab/steinberg.hpp"
#include "steinlab/symgrp.hpp"

namespace steinlab::cli {

namespace {

using la::Field;
using la::Matrix;
using sym::Partition;

// Parameter access with string coercion, so argv strings and manifest JSON
// values are accepted alike.
class Params {
 public:
  explicit Params(const Json& j) : j_(j) {
    if (!j_.is_object()) fail(Error::Kind::Parse, "job parameters must be a JSON object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const Json& raw(const std::string& key) const {
    if (!has(key)) fail(Error::Kind::Parse, "missing parameter --" + key);
    return j_.at(key);
  }

  std::string str(const std::string& key) const {
    const Json& v = raw(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  std::string str(const std::string& key, const std::string& fallback) const { return has(key) ? str(key) : fallback; }

  long long integer(const std::string& key) const {
    const Json& v = raw(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_string()) {
      try {
        std::size_t used = 0;
        const long long x = std::stoll(v.get<std::string>(), &used);
        if (used == v.get<std::string>().size()) return x;
      } catch (const std::exception&) {
      }
    }
    fail(Error::Kind::Parse, "parameter --" + key + " must be an integer");
  }
  long long integer(const std::string& key, long long fallback) const { return has(key) ? integer(key) : fallback; }

  bool flag(const std::string& key) const {
    if (!has(key)) return false;
    const Json& v = raw(key);
    if (v.is_boolean()) return v.get<bool>();
    const std::string s = str(key);
    return s == "true" || s == "1" || s == "yes";
  }

  /// A JSON value given inline or as a string holding JSON.
  Json json(const std::string& key) const {
    const Json& v = raw(key);
    if (!v.is_string()) return v;
    try {
      return Json::parse(v.get<std::string>());
    } catch (const nlohmann::json::exception&) {
      fail(Error::Kind::Parse, "parameter --" + key + " is not valid JSON");
    }
  }

  /// A JSON document given inline or as a path to a file.
  Json document(const std::string& key) const {
    const Json& v = raw(key);
    if (!v.is_string()) return v;
    const std::string s = v.get<std::string>();
    if (!s.empty() && (s[0] == '{' || s[0] == '[')) return json(key);
    std::ifstream in(s);
    if (!in) fail(Error::Kind::Parse, "cannot open " + s);
    try {
      return Json::parse(in);
    } catch (const nlohmann::json::exception&) {
      fail(Error::Kind::Parse, s + " is not valid JSON");
    }
  }

  Partition partition(const std::string& key) const {
    const Json& v = raw(key);
    if (v.is_array()) return io::partition_from_json(v);
    std::string s = str(key);
    for (char& c : s)
      if (c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(' ') == std::string::npos) continue;
      try {
        parts.push_back(std::stoi(item));
      } catch (const std::exception&) {
        fail(Error::Kind::Parse, "bad partition '" + str(key) + "'");
      }
    }
    return Partition(parts);
  }

  std::vector<long long> integers(const std::string& key) const {
    const Json v = raw(key).is_string() && raw(key).get<std::string>().find('[') == std::string::npos
                       ? Json::parse("[" + str(key) + "]")
                       : json(key);
    if (!v.is_array()) fail(Error::Kind::Parse, "parameter --" + key + " must be a list");
    std::vector<long long> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) fail(Error::Kind::Parse, "parameter --" + key + " must list integers");
      out.push_back(x.get<long long>());
    }
    return out;
  }

  Field field(const std::string& key) const { return Field::parse(str(key)); }
  Field field(const std::string& key, const std::string& fallback) const { return Field::parse(str(key, fallback)); }
  ring::FiniteRing ring(const std::string& key) const { return ring::FiniteRing::parse(str(key)); }

 private:
  const Json& j_;
};

int to_int(long long x, const char* what) {
  if (x < 0 || x > 1'000'000) fail(Error::Kind::Precondition, std::string(what) + " out of range");
  return static_cast<int>(x);
}

schur::Caps schur_caps(const Globals& g) { return {g.cap_dim, 6}; }
functor::Caps functor_caps(const Globals& g) { return {g.cap_dim, g.cap_hom}; }
meataxe::SimplicityOptions simplicity(const Globals& g) {
  meataxe::SimplicityOptions o;
  o.seed = g.seed;
  return o;
}

Json table(std::vector<std::string> columns, Json rows) { return {{"columns", std::move(columns)}, {"rows", std::move(rows)}}; }

std::string scalar_text(const la::Scalar& s) {
  if (!s.field().is_finite()) return s.rational().get_str();
  return std::to_string(s.code());
}

// ---------------------------------------------------------------------------
// partition / ring

Json partition_conj(const Params& p, const Globals&) {
  const auto lambda = p.partition("partition");
  return {{"partition", io::to_json(lambda.trimmed())}, {"conjugate", io::to_json(sym::conjugate(lambda))}};
}

Json partition_restricted(const Params& p, const Globals&) {
  const auto lambda = p.partition("partition");
  const int q = to_int(p.integer("p"), "p");
  return {{"partition", io::to_json(lambda)}, {"p", q}, {"restricted", sym::is_p_restricted(lambda, q)},
          {"regular", sym::is_p_regular(lambda, q)}};
}

Json partition_digits(const Params& p, const Globals&) {
  const auto lambda = p.partition("partition");
  const int prime = to_int(p.integer("p"), "p"), r = to_int(p.integer("r", 1), "r");
  Json digits = Json::array();
  for (const auto& d : sym::digit_decomposition(lambda, prime, r)) digits.push_back(io::to_json(d));
  return {{"partition", io::to_json(lambda)}, {"p", prime}, {"r", r}, {"digits", digits}};
}

Json ring_homs(const Params& p, const Globals&) {
  const auto a = p.ring("ring");
  const auto k = p.field("field");
  Json homs = Json::array();
  for (const auto& h : ring::ring_homs(a, k)) homs.push_back({{"component", h.component}, {"values", h.values}});
  return {{"ring", a.name()}, {"field", k.name()}, {"count", homs.size()}, {"homs", homs}};
}

Json ring_ideals(const Params& p, const Globals&) {
  const auto a = p.ring("ring");
  Json rows = Json::array();
  std::optional<Field> k;
  if (p.has("field")) k = p.field("field");
  for (const auto& ideal : ring::all_ideals(a)) {
    Json row = {ideal.to_string(), ideal.elements.size(), ideal.quotient_size()};
    if (k) row.push_back(k->is_rational() || ideal.quotient_size() % static_cast<std::uint32_t>(k->characteristic()) != 0);
    rows.push_back(row);
  }
  std::vector<std::string> cols = {"ideal", "size", "quotient"};
  if (k) cols.push_back("cotrivial");
  Json out = table(cols, rows);
  out["ring"] = a.name();
  return out;
}

Json ring_idempotents(const Params& p, const Globals&) {
  const auto a = p.ring("ring");
  Json rows = Json::array();
  for (const auto& e : ring::primary_idempotents(a)) rows.push_back({e.prime, a.to_string(e.idempotent)});
  Json out = table({"prime", "idempotent"}, rows);
  out["ring"] = a.name();
  return out;
}

// ---------------------------------------------------------------------------
// meataxe

Json meataxe_simple(const Params& p, const Globals& g) {
  const auto m = io::module_from_json(p.document("module"));
  return {{"dim", m.dim()}, {"simple", meataxe::is_simple(m, simplicity(g))}};
}

Json meataxe_end(const Params& p, const Globals&) {
  const auto m = io::module_from_json(p.document("module"));
  return {{"dim", m.dim()}, {"end_dim", meataxe::end_dim(m)}};
}

Json meataxe_iso(const Params& p, const Globals& g) {
  const auto m = io::module_from_json(p.document("module"));
  const auto n = io::module_from_json(p.document("other"));
  const auto iso = meataxe::find_isomorphism(m, n, simplicity(g));
  Json out = {{"isomorphic", iso.has_value()}};
  if (iso) out["intertwiner"] = io::to_json(*iso);
  return out;
}

Json meataxe_tensor(const Params& p, const Globals&) {
  return io::to_json(meataxe::tensor(io::module_from_json(p.document("module")), io::module_from_json(p.document("other"))));
}

Json meataxe_twist(const Params& p, const Globals&) {
  return io::to_json(meataxe::frobenius_twist(io::module_from_json(p.document("module")), to_int(p.integer("i"), "i")));
}

// ---------------------------------------------------------------------------
// schur / elementary

Json schur_eval(const Params& p, const Globals& g) {
  return io::to_json(schur::schur_value(p.partition("partition"), to_int(p.integer("n"), "n"), p.field("field", "Q"),
                                        schur_caps(g)));
}

Json schur_socle(const Params& p, const Globals& g) {
  return io::to_json(schur::socle_simple(p.partition("partition"), to_int(p.integer("n"), "n"), p.field("field", "Q"),
                                         schur_caps(g)));
}

Json schur_weight(const Params& p, const Globals& g) {
  const auto lambda = p.partition("partition");
  const int n = to_int(p.integer("n"), "n");
  const auto k = p.field("field", "Q");
  const std::string of = p.str("of", "socle");
  if (of != "socle" && of != "schur") fail(Error::Kind::Parse, "--of must be socle or schur");
  const auto rep = of == "socle" ? schur::socle_simple(lambda, n, k, schur_caps(g)) : schur::schur_value(lambda, n, k, schur_caps(g));
  Json rows = Json::array();
  for (const auto& w : schur::weights(rep)) rows.push_back({Json(w.weight).dump(), w.multiplicity});
  Json out = table({"weight", "multiplicity"}, rows);
  out["dim"] = rep.dim();
  if (rep.dim()) out["highest"] = schur::highest_weight(rep);
  return out;
}

Json schur_dettwist(const Params& p, const Globals& g) {
  const auto r = schur::det_twist_check(p.partition("partition"), to_int(p.integer("n"), "n"), p.field("field"), schur_caps(g));
  return {{"det_shift_isomorphic", r.det_shift_isomorphic}, {"delta_isomorphic", r.delta_isomorphic}, {"holds", r.holds()}};
}

Json elementary_eval(const Params& p, const Globals& g) {
  const auto lambda = p.partition("partition");
  const auto k = p.field("field", "Q");
  const std::string kind = p.str("module", "simple");
  sym::SymModule m;
  if (kind == "simple")
    m = sym::simple_module(lambda, k);
  else if (kind == "specht")
    m = sym::specht_module(lambda, k);
  else
    fail(Error::Kind::Parse, "--module must be simple or specht");
  return io::to_json(schur::elementary_value(m, to_int(p.integer("n"), "n"), schur_caps(g)));
}

// ---------------------------------------------------------------------------
// functor

functor::MonoidModule monoid_module(const std::string& spec, const ring::FiniteRing& a, const Field& k, int n) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto num = [&](std::size_t i) {
    try {
      return std::stoi(parts.at(i));
    } catch (const std::exception&) {
      fail(Error::Kind::Parse, "bad module spec '" + spec + "'");
    }
  };
  if (parts.size() == 1 && parts[0] == "delta") return functor::delta_module(a, n, k);
  if (parts.size() == 3 && parts[0] == "char") return functor::character_module(a, k, num(1), num(2));
  fail(Error::Kind::Parse, "module spec must be delta or char:r:order, got '" + spec + "'");
}

functor::FunctorRep build_functor(const std::string& expr, const ring::FiniteRing& a, const Field& k, int rank,
                                  const Globals& g) {
  const auto caps = functor_caps(g);
  std::vector<std::string> factors;
  std::stringstream ss(expr);
  for (std::string item; std::getline(ss, item, '*');) factors.push_back(item);
  if (factors.empty()) fail(Error::Kind::Parse, "empty functor expression");
  std::optional<functor::FunctorRep> out;
  for (const auto& f : factors) {
    const auto colon = f.find(':');
    const std::string head = f.substr(0, colon), tail = colon == std::string::npos ? "" : f.substr(colon + 1);
    auto arg = [&](int fallback) {
      if (tail.empty()) return fallback;
      try {
        return std::stoi(tail);
      } catch (const std::exception&) {
        fail(Error::Kind::Parse, "bad functor argument in '" + f + "'");
      }
    };
    functor::FunctorRep piece;
    if (head == "const")
      piece = functor::constant_functor(a, k, rank);
    else if (head == "lambda1")
      piece = functor::lambda1(a, k, rank, static_cast<std::size_t>(arg(0)));
    else if (head == "proj")
      piece = functor::projective(a, k, rank, arg(1), caps);
    else if (head == "gr1")
      piece = functor::grassmannian1(a, k, rank, caps);
    else if (head == "iext") {
      // iext:<module>[@support], e.g. iext:delta, iext:char:3:2, iext:delta@2
      std::string mod = tail.empty() ? "delta" : tail;
      int support = 1;
      if (const auto at = mod.find('@'); at != std::string::npos) {
        support = std::stoi(mod.substr(at + 1));
        mod = mod.substr(0, at);
      }
      piece = functor::intermediate_extension_functor(monoid_module(mod, a, k, support), rank, caps);
    } else if (head == "table") {
      std::ifstream in(tail);
      if (!in) fail(Error::Kind::Parse, "cannot open " + tail);
      piece = functor::from_table(io::table_from_json(Json::parse(in)), caps);
      if (!(piece.ring() == a) || !(piece.field() == k)) fail(Error::Kind::Precondition, "table is over a different ring or field");
    } else {
      fail(Error::Kind::Parse, "unknown functor '" + f + "' (const, lambda1, proj, gr1, iext, table)");
    }
    out = out ? functor::tensor_functors(*out, piece) : piece;
  }
  return *out;
}

struct FunctorJob {
  ring::FiniteRing ring;
  Field field;
  functor::FunctorRep f;
};

FunctorJob functor_job(const Params& p, const Globals& g, const char* key = "functor") {
  const auto a = p.ring("ring");
  const auto k = p.field("coeff");
  const int rank = to_int(p.integer("rank", 3), "rank");
  return {a, k, build_functor(p.str(key), a, k, rank, g)};
}

Json functor_crosseffect(const Params& p, const Globals& g) {
  const auto job = functor_job(p, g);
  Json rows = Json::array();
  for (int d = 0; d <= job.f.max_rank(); ++d) rows.push_back({d, job.f.dim(d), functor::cross_effect(job.f, d).dim()});
  Json out = table({"d", "dim F(A^d)", "dim cr_d"}, rows);
  out["identity_holds"] = functor::cross_effect_identity(job.f);
  return out;
}

Json functor_degree(const Params& p, const Globals& g) {
  const auto job = functor_job(p, g);
  const int cap = to_int(p.integer("cap", job.f.max_rank()), "cap");
  const auto d = functor::polynomial_degree(job.f, cap);
  Json out = {{"degree", d.to_string()}, {"rank", job.f.max_rank()}};
  out["polynomial"] = d.degree.has_value();
  return out;
}

Json functor_dimtable(const Params& p, const Globals& g) {
  const auto job = functor_job(p, g);
  const bool fit = !p.flag("no-fit");
  const auto prof = functor::dimension_profile(job.f, fit);
  Json rows = Json::array();
  for (std::size_t m = 0; m < prof.values.size(); ++m) rows.push_back({m, prof.values[m]});
  Json out = table({"rank", "dim"}, rows);
  out["values"] = prof.values;
  if (fit) {
    out["fit_found"] = prof.fit_found;
    out["fit"] = prof.fit_string();
  }
  return out;
}

Json functor_iext(const Params& p, const Globals& g) {
  const auto a = p.ring("ring");
  const auto k = p.field("coeff");
  const int rank = to_int(p.integer("rank", 3), "rank");
  const int support = to_int(p.integer("support", 1), "support");
  const auto m = monoid_module(p.str("module", "delta"), a, k, support);
  const auto f = functor::intermediate_extension_functor(m, rank, functor_caps(g));
  Json rows = Json::array();
  for (int r = 0; r <= rank; ++r) {
    Json simple = nullptr;
    if (r >= 1 && f.dim(r) > 0) simple = meataxe::is_simple(f.module(r), simplicity(g));
    rows.push_back({r, f.dim(r), simple});
  }
  Json out = table({"rank", "dim", "simple"}, rows);
  const auto primes = ring::prime_factors(a.size());
  if (primes.size() == 1) out["fit"] = functor::dimension_profile(f, true).fit_string();
  return out;
}

Json functor_ideal(const Params& p, const Globals& g) {
  const auto job = functor_job(p, g);
  const auto r = functor::unipotence_ideal(job.f, to_int(p.integer("support", 1), "support"));
  Json out = io::to_json(r.ideal);
  out["cotrivial"] = r.cotrivial;
  return out;
}

Json functor_tensor(const Params& p, const Globals& g) {
  const auto left = functor_job(p, g, "functor");
  const auto right = build_functor(p.str("other"), left.ring, left.field, left.f.max_rank(), g);
  const auto prod = functor::tensor_functors(left.f, right);
  return {{"dims", prod.dims()},
          {"degree", functor::polynomial_degree(prod, prod.max_rank()).to_string()},
          {"left_degree", functor::polynomial_degree(left.f, left.f.max_rank()).to_string()},
          {"right_degree", functor::polynomial_degree(right, right.max_rank()).to_string()}};
}

Json functor_simple(const Params& p, const Globals& g) {
  const auto job = functor_job(p, g);
  const int support = to_int(p.integer("support", 1), "support");
  std::optional<int> top;
  if (p.has("up-to")) top = to_int(p.integer("up-to"), "up-to");
  const bool simple = functor::simplicity_test(job.f, support, top, functor_caps(g));
  return {{"simple", simple}, {"support", support}, {"verified_up_to_rank", top.value_or(job.f.max_rank())}};
}

Json functor_table(const Params& p, const Globals& g) { return io::to_json(functor::tabulate(functor_job(p, g).f)); }

// ---------------------------------------------------------------------------
// emlpoly

eml::AbGroup parse_group(const std::string& spec, long long window) {
  if (spec == "Z") return eml::AbGroup::integers(window);
  if (spec == "0") return eml::AbGroup::finite({});
  std::vector<std::uint32_t> orders;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, 'x');) {
    if (item.rfind("Z/", 0) != 0) fail(Error::Kind::Parse, "group spec must look like Z/2xZ/4 or Z, got '" + spec + "'");
    try {
      orders.push_back(static_cast<std::uint32_t>(std::stoul(item.substr(2))));
    } catch (const std::exception&) {
      fail(Error::Kind::Parse, "bad group spec '" + spec + "'");
    }
  }
  return eml::AbGroup::finite(orders);
}

std::vector<la::Rational> parse_poly(const Params& p) {
  std::vector<la::Rational> out;
  std::stringstream ss(p.str("poly"));
  for (std::string item; std::getline(ss, item, ',');) {
    la::Rational q;
    if (q.set_str(item, 10) != 0) fail(Error::Kind::Parse, "bad polynomial coefficient '" + item + "'");
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

eml::AbMap poly_map(const std::vector<la::Rational>& coeffs, long long window) {
  const Field q = Field::rationals();
  return eml::AbMap(eml::AbGroup::integers(window), eml::Target::vectors(q), [coeffs, q](long long x) -> eml::Value {
    la::Rational v = 0, pw = 1;
    for (const auto& c : coeffs) {
      v += c * pw;
      pw *= la::Rational(static_cast<long>(x));
    }
    Matrix m(q, 1, 1);
    m.set(0, 0, la::Scalar::from_rational(v));
    return m;
  });
}

// Values in the field of a named map on a ring: "powK", "id", "indicator:a".
std::vector<std::uint32_t> named_ring_map(const std::string& name, const ring::FiniteRing& a, const Field& k) {
  std::vector<std::uint32_t> codes(a.size());
  if (name.rfind("indicator:", 0) == 0) {
    const auto at = static_cast<ring::Elem>(std::stoul(name.substr(10)));
    for (ring::Elem x = 0; x < a.size(); ++x) codes[x] = x == at ? 1 : 0;
    return codes;
  }
  long long power = 1;
  if (name.rfind("pow", 0) == 0)
    power = std::stoll(name.substr(3));
  else if (name != "id")
    fail(Error::Kind::Parse, "unknown map '" + name + "' (id, powK, indicator:a)");
  const bool same_field = a.components().size() == 1 && a.components()[0].kind == ring::Component::Kind::Galois &&
                          a.components()[0].field == k;
  std::optional<ring::RingHom> hom;
  if (!same_field) {
    const auto homs = ring::ring_homs(a, k);
    if (homs.empty()) fail(Error::Kind::Precondition, "no ring homomorphism " + a.name() + " -> " + k.name());
    hom = homs.front();
  }
  for (ring::Elem x = 0; x < a.size(); ++x) {
    ring::Elem y = a.one();
    for (long long i = 0; i < power; ++i) y = a.mul(y, x);
    codes[x] = same_field ? y : (*hom)(y);
  }
  return codes;
}

struct EmlInput {
  eml::AbMap map;
  std::optional<ring::FiniteRing> ring;
};

EmlInput eml_input(const Params& p) {
  const long long window = p.integer("window", 10);
  if (p.has("poly")) return {poly_map(parse_poly(p), window), std::nullopt};
  std::optional<ring::FiniteRing> a;
  eml::AbGroup source;
  if (p.has("ring")) {
    a = p.ring("ring");
    source = eml::AbGroup::of_ring(*a);
  } else {
    source = parse_group(p.str("group"), window);
  }
  if (p.has("target-group")) {
    const auto target = parse_group(p.str("target-group"), window);
    return {eml::AbMap::group_table(source, target, p.integers("table")), a};
  }
  const Field k = p.has("field") ? p.field("field")
                                 : (a && a->components().size() == 1 && a->components()[0].kind == ring::Component::Kind::Galois
                                        ? a->components()[0].field
                                        : Field::parse("missing --field"));
  std::vector<std::uint32_t> codes;
  if (p.has("table")) {
    for (long long c : p.integers("table")) {
      if (c < 0 || (k.is_finite() && static_cast<std::uint64_t>(c) >= k.order())) fail(Error::Kind::Parse, "table entry out of range");
      codes.push_back(static_cast<std::uint32_t>(c));
    }
  } else {
    if (!a) fail(Error::Kind::Parse, "--map needs --ring");
    codes = named_ring_map(p.str("map"), *a, k);
  }
  return {eml::AbMap::field_table(source, k, codes), a};
}

Json value_json(const eml::Value& v) {
  if (const auto* x = std::get_if<long long>(&v)) return *x;
  const auto& m = std::get<Matrix>(v);
  if (m.rows() == 1 && m.cols() == 1) return scalar_text(m.at(0, 0));
  return io::to_json(m);
}

Json emlpoly_degree(const Params& p, const Globals&) {
  const auto in = eml_input(p);
  const int cap = to_int(p.integer("cap", 6), "cap");
  const auto d = eml::eml_degree(in.map, cap);
  Json out = {{"degree", d ? std::to_string(*d) : "NotPolynomialUpTo(" + std::to_string(cap) + ")"}, {"source", in.map.source().name()}};
  if (in.map.source().is_integers()) out["window"] = in.map.source().window();
  return out;
}

Json emlpoly_deviate(const Params& p, const Globals&) {
  const auto in = eml_input(p);
  const auto args = p.integers("args");
  return {{"order", args.size()}, {"args", args}, {"value", value_json(eml::deviation(in.map, args))}};
}

Json emlpoly_homog(const Params& p, const Globals&) {
  const auto in = eml_input(p);
  const int cap = to_int(p.integer("cap", 6), "cap");
  Json rows = Json::array();
  for (const auto& part : eml::homogeneous_decomposition(in.map, cap)) rows.push_back({part.degree, value_json(part.map(1))});
  Json out = table({"degree", "value at 1"}, rows);
  out["window"] = in.map.source().window();
  return out;
}

Json emlpoly_factor(const Params& p, const Globals&) {
  const int cap = to_int(p.integer("cap", 6), "cap");
  if (p.has("poly")) {
    const auto map = poly_map(parse_poly(p), p.integer("window", 10));
    const int d = eml::factor_multiplicative_integers(map, cap);
    return {{"degree", d}, {"field", "Q"}, {"factors", Json(std::vector<std::string>(static_cast<std::size_t>(d), "Z->Q"))}};
  }
  const auto in = eml_input(p);
  if (!in.ring) fail(Error::Kind::Parse, "factor needs --ring");
  eml::MultiplicativeMap phi{*in.ring, in.map.target().field(), {}};
  for (ring::Elem x = 0; x < in.ring->size(); ++x) phi.values.push_back(std::get<Matrix>(in.map(x)).code(0, 0));
  const auto fac = eml::factor_multiplicative(phi, cap);
  Json factors = Json::array();
  for (const auto& h : fac.factors) factors.push_back({{"component", h.component}, {"values", h.values}});
  return {{"degree", fac.degree}, {"field", fac.field.name()}, {"count", fac.factors.size()}, {"factors", factors}};
}

Json emlpoly_linearize(const Params& p, const Globals&) {
  eml::ShortExactSequence s{parse_group(p.str("a"), 0), parse_group(p.str("b"), 0), parse_group(p.str("c"), 0), {}, {}};
  const auto k = p.field("field");
  if (p.has("u") && p.has("v")) {
    s.u = p.integers("u");
    s.v = p.integers("v");
  } else {
    for (const auto& u : eml::homomorphisms(s.a, s.b)) {
      for (const auto& v : eml::homomorphisms(s.b, s.c)) {
        eml::ShortExactSequence t{s.a, s.b, s.c, u, v};
        if (eml::is_short_exact(t)) {
          s = t;
          break;
        }
      }
      if (!s.u.empty() || s.a.size() == 0) break;
    }
    if (s.u.empty() && s.a.size() > 0) fail(Error::Kind::Precondition, "no short exact sequence with these groups");
  }
  const auto r = eml::linearization_exactness(s, k);
  return {{"u", s.u},
          {"v", s.v},
          {"alpha_rank", r.alpha_rank},
          {"kv_rank", r.kv_rank},
          {"right_exact", r.right_exact},
          {"ku_rank", r.ku_rank},
          {"beta_rank", r.beta_rank},
          {"left_exact", r.left_exact},
          {"exact", r.exact()}};
}

// ---------------------------------------------------------------------------
// steinberg

std::uint32_t q_of(const Params& p) {
  const long long q = p.integer("q");
  if (q < 2 || q > 1 << 16) fail(Error::Kind::Precondition, "q out of range");
  return static_cast<std::uint32_t>(q);
}

Json steinberg_classify(const Params& p, const Globals& g) {
  std::optional<Field> k;
  if (p.has("field")) k = p.field("field");
  const auto c = steinberg::classify(to_int(p.integer("n"), "n"), q_of(p), k, g.seed);
  Json rows = Json::array();
  for (const auto& e : c.entries) {
    std::string digits;
    for (std::size_t i = 0; i < e.datum.digits.size(); ++i) digits += (i ? ";" : "") + e.datum.digits[i].to_string();
    rows.push_back({e.datum.lambda.to_string(), digits, e.datum.module.dim(), e.simple ? "yes" : "no", e.class_id});
  }
  Json out = table({"lambda", "digits", "dim", "simple", "class"}, rows);
  out["field"] = c.field.name();
  out["class_count"] = c.class_count;
  out["oracle_count"] = c.oracle_count;
  out["consistent"] = c.consistent();
  return out;
}

Json steinberg_build(const Params& p, const Globals& g) {
  const int n = to_int(p.integer("n"), "n");
  const auto q = q_of(p);
  const Field k = p.has("field") ? p.field("field") : steinberg::splitting_field(n, q);
  const auto d = steinberg::build(p.partition("partition"), n, q, k, schur_caps(g));
  Json digits = Json::array();
  for (const auto& x : d.digits) digits.push_back(io::to_json(x));
  return {{"lambda", io::to_json(d.lambda)}, {"digits", digits}, {"digit_dims", d.digit_dims},
          {"simple", meataxe::is_simple(d.module, simplicity(g))}, {"module", io::to_json(d.module)}};
}

Json steinberg_unique(const Params& p, const Globals&) {
  std::optional<Field> k;
  if (p.has("field")) k = p.field("field");
  const auto v = steinberg::uniqueness_check(p.partition("partition"), p.partition("other"), to_int(p.integer("n"), "n"), q_of(p), k);
  return {{"isomorphic", v.isomorphic}, {"equal", v.equal}, {"det_shift", v.det_shift}, {"relation", v.relation()},
          {"consistent", v.consistent()}};
}

Json steinberg_product(const Params& p, const Globals& g) {
  const auto f = steinberg::product_decompose(io::module_from_json(p.document("module")), g.seed);
  return {{"first", io::to_json(f.first)}, {"second", io::to_json(f.second)}, {"dims", {f.first.dim(), f.second.dim()}}};
}

using Handler = std::function<Json(const Params&, const Globals&)>;

struct Entry {
  CommandSpec spec;
  Handler handler;
};

const std::vector<Entry>& registry() {
  static const std::vector<OptionSpec> functor_opts = {
      {"ring", "base ring, e.g. F_2, Z/6, Z/4xF_9", true},
      {"coeff", "coefficient field, e.g. F_3", true},
      {"rank", "truncation rank N (default 3)"},
      {"functor", "const | lambda1[:i] | proj[:r] | gr1 | iext:<module>[@n] | table:<file>, joined by '*'", true}};
  auto with = [](std::vector<OptionSpec> base, std::vector<OptionSpec> extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
  };
  static const std::vector<OptionSpec> eml_opts = {
      {"ring", "source ring (its additive group); a Galois ring also fixes the default field"},
      {"group", "source group, e.g. Z/2xZ/4 or Z"},
      {"field", "target field"},
      {"target-group", "target group (with --table)"},
      {"table", "values on the source elements, as a JSON array"},
      {"map", "named map on --ring: id, powK, indicator:a"},
      {"poly", "Z -> Q polynomial coefficients c0,c1,..."},
      {"window", "evaluation window for Z (default 10)"},
      {"cap", "degree cap (default 6)"}};
  static const std::vector<Entry> entries = {
      {{"partition", "conj", "conjugate partition", {{"partition", "e.g. 2,1", true}}}, partition_conj},
      {{"partition", "restricted", "p-restricted / p-regular tests", {{"partition", "", true}, {"p", "prime", true}}},
       partition_restricted},
      {{"partition", "digits", "p-adic digits of a q-restricted partition",
        {{"partition", "", true}, {"p", "prime", true}, {"r", "exponent (q = p^r)"}}},
       partition_digits},
      {{"ring", "homs", "ring homomorphisms to a field", {{"ring", "", true}, {"field", "", true}}}, ring_homs},
      {{"ring", "ideals", "ideals, with cotriviality over --field", {{"ring", "", true}, {"field", ""}}}, ring_ideals},
      {{"ring", "idempotents", "primary idempotents", {{"ring", "", true}}}, ring_idempotents},
      {{"meataxe", "simple", "simplicity test", {{"module", "module JSON (file or inline)", true}}}, meataxe_simple},
      {{"meataxe", "end", "endomorphism algebra dimension", {{"module", "", true}}}, meataxe_end},
      {{"meataxe", "iso", "isomorphism test", {{"module", "", true}, {"other", "", true}}}, meataxe_iso},
      {{"meataxe", "tensor", "tensor product", {{"module", "", true}, {"other", "", true}}}, meataxe_tensor},
      {{"meataxe", "twist", "Frobenius twist", {{"module", "", true}, {"i", "twist exponent", true}}}, meataxe_twist},
      {{"schur", "eval", "Schur functor value on K^n",
        {{"partition", "", true}, {"n", "rank", true}, {"field", "default Q"}}},
       schur_eval},
      {{"schur", "socle", "simple socle L_lambda(K^n)", {{"partition", "", true}, {"n", "", true}, {"field", "default Q"}}},
       schur_socle},
      {{"schur", "weight", "torus weights",
        {{"partition", "", true}, {"n", "", true}, {"field", "default Q"}, {"of", "socle (default) or schur"}}},
       schur_weight},
      {{"schur", "dettwist", "L_lambda = L_mu (x) det and L_lambda = L_lambda (x) delta",
        {{"partition", "", true}, {"n", "", true}, {"field", "", true}}},
       schur_dettwist},
      {{"elementary", "eval", "elementary functor value on K^n",
        {{"partition", "label of the symmetric group module", true},
         {"n", "", true},
         {"field", "default Q"},
         {"module", "simple (default) or specht"}}},
       elementary_eval},
      {{"functor", "crosseffect", "cross-effect dimensions", functor_opts}, functor_crosseffect},
      {{"functor", "degree", "polynomial degree", with(functor_opts, {{"cap", "default N"}})}, functor_degree},
      {{"functor", "dimtable", "dimension function and fit", with(functor_opts, {{"no-fit", "skip fitting"}})},
       functor_dimtable},
      {{"functor", "iext", "intermediate extension of a monoid module",
        {{"ring", "", true},
         {"coeff", "", true},
         {"rank", "default 3"},
         {"module", "delta (default) or char:r:order"},
         {"support", "rank n of the module (default 1)"}}},
       functor_iext},
      {{"functor", "ideal", "unipotence ideal", with(functor_opts, {{"support", "support rank (default 1)"}})}, functor_ideal},
      {{"functor", "tensor", "pointwise tensor product", with(functor_opts, {{"other", "second functor", true}})},
       functor_tensor},
      {{"functor", "simple", "simplicity via the intermediate extension",
        with(functor_opts, {{"support", "default 1"}, {"up-to", "highest rank checked (default N)"}})},
       functor_simple},
      {{"functor", "table", "generating-morphism table JSON", functor_opts}, functor_table},
      {{"emlpoly", "degree", "Eilenberg-Mac Lane degree", eml_opts}, emlpoly_degree},
      {{"emlpoly", "deviate", "deviation at given arguments", with(eml_opts, {{"args", "source elements", true}})},
       emlpoly_deviate},
      {{"emlpoly", "homog", "homogeneous decomposition of a Z -> Q map", eml_opts}, emlpoly_homog},
      {{"emlpoly", "factor", "factor a multiplicative map into ring homomorphisms", eml_opts}, emlpoly_factor},
      {{"emlpoly", "linearize", "exactness of the linearised sequences",
        {{"a", "", true}, {"b", "", true}, {"c", "", true}, {"field", "", true}, {"u", "A -> B table"}, {"v", "B -> C table"}}},
       emlpoly_linearize},
      {{"steinberg", "classify", "simple GL_n(F_q)-modules",
        {{"n", "", true}, {"q", "", true}, {"field", "default: splitting field"}}},
       steinberg_classify},
      {{"steinberg", "build", "tensor product of twisted digit simples",
        {{"partition", "", true}, {"n", "", true}, {"q", "", true}, {"field", ""}}},
       steinberg_build},
      {{"steinberg", "unique", "uniqueness clause check",
        {{"partition", "", true}, {"other", "", true}, {"n", "", true}, {"q", "", true}, {"field", ""}}},
       steinberg_unique},
      {{"steinberg", "product", "split a simple module of a product group",
        {{"module", "module JSON with generators named 1:... and 2:...", true}}},
       steinberg_product},
  };
  return entries;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = [] {
    std::vector<CommandSpec> out;
    for (const auto& e : registry()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

int exit_code(Error::Kind kind) {
  switch (kind) {
    case Error::Kind::Parse:
      return 1;
    case Error::Kind::Precondition:
    case Error::Kind::FieldMismatch:
      return 2;
    case Error::Kind::CapExceeded:
      return 3;
    case Error::Kind::Inconclusive:
    case Error::Kind::Defect:
      return 4;
  }
  return 4;
}

Report run(const JobSpec& job, const Globals& globals) {
  Report r;
  try {
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return e.spec.full_name() == job.command; });
    if (it == reg.end()) fail(Error::Kind::Parse, "unknown command '" + job.command + "'");
    const Params params(job.params);
    Globals local = globals;
    if (params.has("seed")) local.seed = static_cast<std::uint64_t>(params.integer("seed"));
    for (const auto& opt : it->spec.options)
      if (opt.required && !params.has(opt.name)) fail(Error::Kind::Parse, "missing parameter --" + opt.name);
    r.document = it->handler(params, local);
  } catch (const Error& e) {
    r.exit_code = exit_code(e.kind());
    r.error = e.what();
  } catch (const nlohmann::json::exception& e) {
    r.exit_code = 1;
    r.error = e.what();
  } catch (const std::invalid_argument& e) {
    r.exit_code = 1;
    r.error = e.what();
  } catch (const std::out_of_range& e) {
    r.exit_code = 1;
    r.error = e.what();
  }
  return r;
}

std::string render(const Report& report, const std::string& format) {
  if (report.exit_code != 0) return "error: " + report.error + "\n";
  const bool tabular = report.document.is_object() && report.document.contains("columns") && report.document.contains("rows");
  if (format == "json" || (format == "auto" && !tabular)) return report.document.dump(2) + "\n";
  if (format != "tsv" && format != "auto") return "error: unknown format '" + format + "'\n";
  auto cell = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  std::ostringstream out;
  const Json& d = report.document;
  if (d.is_object() && d.contains("columns") && d.contains("rows")) {
    bool first = true;
    for (const auto& c : d["columns"]) {
      out << (first ? "" : "\t") << cell(c);
      first = false;
    }
    out << '\n';
    for (const auto& row : d["rows"]) {
      first = true;
      for (const auto& c : row) {
        out << (first ? "" : "\t") << cell(c);
        first = false;
      }
      out << '\n';
    }
  }
  if (d.is_object()) {
    for (const auto& [key, value] : d.items())
      if (key != "columns" && key != "rows") out << key << '\t' << cell(value) << '\n';
  } else {
    out << cell(d) << '\n';
  }
  return out.str();
}

}  // namespace steinlab::cli

#include "steinlab/steinberg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace steinlab::steinberg {

using la::Field;
using la::Matrix;
using meataxe::AlgebraModule;
using sym::Partition;

namespace {

Field field_of_order(std::uint32_t q) {
  try {
    return Field::of_order(q);
  } catch (const Error&) {
    fail(Error::Kind::Precondition, std::to_string(q) + " is not a supported prime power");
  }
}

Partition padded_checked(const Partition& lambda, int n) {
  if (lambda.length() > n)
    fail(Error::Kind::Precondition, lambda.to_string() + " has more than " + std::to_string(n) + " parts");
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) parts[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)];
  return Partition(parts);
}

bool within_caps(int n, std::uint32_t q) {
  return (n == 2 && (q == 2 || q == 4)) || (n == 3 && q == 2) || (n == 1 && q <= 9);
}

std::string join_digits(const std::vector<Partition>& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) out += (i ? ";" : "") + digits[i].to_string();
  return out;
}

}  // namespace

std::vector<std::pair<std::string, Matrix>> group_generators(int n, const Field& fq) {
  auto gens = schur::monoid_generators(n, fq);
  std::erase_if(gens, [](const auto& g) { return g.first == "e"; });
  return gens;
}

Field splitting_field(int n, std::uint32_t q) {
  const Field fq = field_of_order(q);
  const int p = fq.characteristic();
  const auto largest_digit = static_cast<std::uint64_t>((p - 1) * n * (n + 1) / 2);
  return schur::field_larger_than(fq, largest_digit);
}

SteinbergDatum build(const Partition& lambda, int n, std::uint32_t q, const Field& k, const schur::Caps& caps) {
  if (n < 1) fail(Error::Kind::Precondition, "rank must be >= 1");
  const Field fq = field_of_order(q);
  if (!k.is_finite() || !k.has_subfield(fq)) fail(Error::Kind::Precondition, k.name() + " does not contain " + fq.name());
  const Partition full = padded_checked(lambda, n);
  if (!sym::is_p_restricted(full, static_cast<int>(q)))
    fail(Error::Kind::Precondition, lambda.to_string() + " is not " + std::to_string(q) + "-restricted");
  SteinbergDatum d;
  d.n = n;
  d.q = q;
  d.lambda = full;
  d.digits = sym::digit_decomposition(full, fq.characteristic(), fq.degree());
  std::vector<schur::GLRep> parts;
  std::size_t dim = 1;
  for (const auto& digit : d.digits) {
    parts.push_back(schur::socle_simple(digit, n, k, caps));
    d.digit_dims.push_back(parts.back().dim());
    dim *= parts.back().dim();
  }
  auto eval = [parts, k](const Matrix& g) {
    const Matrix h = g.field() == k ? g : g.embed(k);
    Matrix out = Matrix::identity(k, 1);
    for (std::size_t i = 0; i < parts.size(); ++i) out = la::kronecker(out, parts[i].act(h.frobenius(static_cast<int>(i))));
    return out;
  };
  d.module = AlgebraModule(k, dim);
  for (const auto& [name, g] : group_generators(n, fq)) d.module.add_generator(name, eval(g), g);
  d.module.set_evaluator(eval);
  return d;
}

std::vector<Partition> class_parameters(int n, std::uint32_t q) {
  if (n < 1 || q < 2) fail(Error::Kind::Precondition, "class_parameters needs n >= 1 and q >= 2");
  std::vector<Partition> out;
  std::vector<int> gaps(static_cast<std::size_t>(n - 1), 0);
  const int top = static_cast<int>(q) - 1;
  for (int last = 0; last <= top - 1; ++last) {
    std::fill(gaps.begin(), gaps.end(), 0);
    for (;;) {
      std::vector<int> parts(static_cast<std::size_t>(n));
      int acc = last;
      for (int j = n - 1; j >= 0; --j) {
        parts[static_cast<std::size_t>(j)] = acc;
        if (j > 0) acc += gaps[static_cast<std::size_t>(j - 1)];
      }
      out.emplace_back(parts);
      std::size_t i = 0;
      while (i < gaps.size() && gaps[i] == top) gaps[i++] = 0;
      if (i == gaps.size()) break;
      ++gaps[i];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Classification::consistent() const {
  for (const auto& e : entries)
    if (!e.simple || !e.absolutely_simple) return false;
  return class_count == static_cast<int>(entries.size()) && class_count == oracle_count;
}

Classification classify(int n, std::uint32_t q, std::optional<Field> k, std::uint64_t seed) {
  if (!within_caps(n, q))
    fail(Error::Kind::CapExceeded, "classification is limited to (n,q) in {(2,2),(2,4),(3,2),(1,q<=9)}");
  Classification c;
  c.n = n;
  c.q = q;
  c.field = k ? *k : splitting_field(n, q);
  meataxe::SimplicityOptions opt;
  opt.seed = seed;
  std::vector<std::size_t> reps;  // entry index of each class representative
  for (const auto& lambda : class_parameters(n, q)) {
    ClassEntry e{build(lambda, n, q, c.field), false, false, 0};
    e.simple = meataxe::is_simple(e.datum.module, opt);
    e.absolutely_simple = e.simple && meataxe::end_dim(e.datum.module) == 1;
    e.class_id = static_cast<int>(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const auto& other = c.entries[reps[r]].datum.module;
      if (other.dim() == e.datum.module.dim() && meataxe::are_isomorphic(other, e.datum.module, opt)) {
        e.class_id = static_cast<int>(r);
        break;
      }
    }
    if (e.class_id == static_cast<int>(reps.size())) reps.push_back(c.entries.size());
    c.entries.push_back(std::move(e));
  }
  c.class_count = static_cast<int>(reps.size());
  c.oracle_count = p_regular_class_count(n, q);
  return c;
}

std::string report_tsv(const Classification& c) {
  std::ostringstream out;
  out << "lambda\tdigits\tdim\tsimple\tclass\n";
  for (const auto& e : c.entries)
    out << e.datum.lambda.to_string() << '\t' << join_digits(e.datum.digits) << '\t' << e.datum.module.dim() << '\t'
        << (e.simple ? "yes" : "no") << '\t' << e.class_id << '\n';
  return out.str();
}

std::vector<Matrix> group_elements(int n, const Field& fq) {
  const auto un = static_cast<std::size_t>(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < un * un; ++i) {
    total *= fq.order();
    if (total > (1u << 20)) fail(Error::Kind::CapExceeded, "GL_n(F_q) too large to enumerate");
  }
  std::vector<Matrix> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint32_t> codes(un * un);
    auto x = idx;
    for (auto& c : codes) {
      c = static_cast<std::uint32_t>(x % fq.order());
      x /= fq.order();
    }
    Matrix m = Matrix::from_codes(fq, un, un, std::move(codes));
    if (!la::determinant(m).is_zero()) out.push_back(std::move(m));
  }
  return out;
}

int p_regular_class_count(int n, std::uint32_t q) {
  const Field fq = field_of_order(q);
  const auto elems = group_elements(n, fq);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i].codes(), i);
  std::vector<Matrix> inverses;
  for (const auto& g : elems) inverses.push_back(*la::inverse(g));
  const auto p = static_cast<std::uint64_t>(fq.characteristic());
  std::vector<bool> seen(elems.size(), false);
  int count = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    for (std::size_t j = 0; j < elems.size(); ++j) seen[index.at((elems[j] * elems[i] * inverses[j]).codes())] = true;
    std::uint64_t order = 1;
    for (Matrix x = elems[i]; !x.is_identity(); x = x * elems[i]) ++order;
    if (order % p != 0) ++count;
  }
  return count;
}

std::string UniquenessVerdict::relation() const {
  if (!isomorphic) return "not isomorphic";
  if (equal) return "equal";
  if (det_shift) return "det^(p-1) shift";
  return "unexplained";
}

UniquenessVerdict uniqueness_check(const Partition& lambda, const Partition& other, int n, std::uint32_t q,
                                   std::optional<Field> k) {
  const Field field = k ? *k : splitting_field(n, q);
  const auto a = build(lambda, n, q, field), b = build(other, n, q, field);
  UniquenessVerdict v;
  v.equal = a.lambda == b.lambda;
  v.isomorphic = a.module.dim() == b.module.dim() && meataxe::are_isomorphic(a.module, b.module);
  const int p = field.characteristic();
  for (int dir : {1, -1}) {
    bool all = true;
    for (std::size_t i = 0; i < a.digits.size() && all; ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(n) && all; ++j)
        all = b.digits[i][j] - a.digits[i][j] == dir * (p - 1);
    v.det_shift = v.det_shift || all;
  }
  return v;
}

AlgebraModule outer_tensor(const AlgebraModule& first, const AlgebraModule& second) {
  if (!(first.field() == second.field())) fail(Error::Kind::FieldMismatch, "outer_tensor: different fields");
  const Field& k = first.field();
  AlgebraModule out(k, first.dim() * second.dim());
  const Matrix i1 = Matrix::identity(k, first.dim()), i2 = Matrix::identity(k, second.dim());
  for (const auto& g : first.generators()) out.add_generator("1:" + g.name, la::kronecker(g.action, i2));
  for (const auto& g : second.generators()) out.add_generator("2:" + g.name, la::kronecker(i1, g.action));
  return out;
}

ProductFactors product_decompose(const AlgebraModule& m, std::uint64_t seed) {
  meataxe::SimplicityOptions opt;
  opt.seed = seed;
  if (!meataxe::is_simple(m, opt)) fail(Error::Kind::Precondition, "product_decompose: module is not simple");
  AlgebraModule r1(m.field(), m.dim()), r2(m.field(), m.dim());
  for (const auto& g : m.generators()) {
    if (g.name.rfind("1:", 0) == 0)
      r1.add_generator(g.name.substr(2), g.action);
    else if (g.name.rfind("2:", 0) == 0)
      r2.add_generator(g.name.substr(2), g.action);
    else
      fail(Error::Kind::Precondition, "generator " + g.name + " belongs to neither factor");
  }
  ProductFactors out{meataxe::composition_factors(r1, opt).front(), meataxe::composition_factors(r2, opt).front()};
  if (out.first.dim() * out.second.dim() != m.dim() || !meataxe::are_isomorphic(m, outer_tensor(out.first, out.second), opt))
    fail(Error::Kind::Defect, "module does not split as a tensor product of its restrictions");
  return out;
}

}  // namespace steinlab::steinberg

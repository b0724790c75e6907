#include "steinlab/functorcat.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace steinlab::functor {

using la::Field;
using la::Matrix;
using la::Subspace;
using ring::Elem;

namespace {

RingMatrix zero_padded(const RingMatrix& f, std::size_t rows, std::size_t cols) {
  RingMatrix out(rows, cols);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) out.set(i, j, f.at(i, j));
  return out;
}

RingMatrix inclusion(const FiniteRing& a, std::size_t from, std::size_t to) {
  RingMatrix m(to, from);
  for (std::size_t i = 0; i < std::min(from, to); ++i) m.set(i, i, a.one());
  return m;
}

RingMatrix random_matrix(const FiniteRing& a, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> pick(0, a.size() - 1);
  RingMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, pick(rng));
  return m;
}

// rows'[i][g * block + r] = rows[i][src[g] * block + r]
Matrix gather(const Matrix& rows, const std::vector<std::size_t>& src, std::size_t block) {
  const Field& k = rows.field();
  const std::size_t in_cols = rows.cols();
  const std::size_t out_cols = src.size() * block;
  Matrix out(k, rows.rows(), out_cols);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t g = 0; g < src.size(); ++g)
      for (std::size_t r = 0; r < block; ++r) {
        const std::size_t to = i * out_cols + g * block + r;
        const std::size_t from = i * in_cols + src[g] * block + r;
        if (k.is_finite())
          out.codes()[to] = rows.codes()[from];
        else
          out.rats()[to] = rows.rats()[from];
      }
  return out;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

ring::RingIdeal ideal_from_elements(const FiniteRing& a, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  for (Elem g : elems) {
    auto candidate = ring::ideal_generated(a, {g});
    if (candidate.elements == elems) return candidate;
  }
  return ring::ideal_generated(a, elems);
}

}  // namespace

// ---------------------------------------------------------------------------

FunctorRep::FunctorRep(FiniteRing a, Field k, int max_rank, std::vector<std::size_t> dims, Evaluator ev,
                       std::string name)
    : ring_(std::make_shared<const FiniteRing>(std::move(a))),
      field_(k),
      max_rank_(max_rank),
      dims_(std::move(dims)),
      eval_(std::move(ev)),
      name_(std::move(name)) {
  if (max_rank_ < 0) fail(Error::Kind::Precondition, "truncation rank must be >= 0");
  if (dims_.size() != static_cast<std::size_t>(max_rank_) + 1)
    fail(Error::Kind::Precondition, "need one dimension per rank 0..N");
}

std::size_t FunctorRep::dim(int m) const {
  if (m < 0 || m > max_rank_) fail(Error::Kind::Precondition, "rank " + std::to_string(m) + " beyond truncation");
  return dims_[static_cast<std::size_t>(m)];
}

Matrix FunctorRep::operator()(const RingMatrix& f) const {
  const int m = static_cast<int>(f.cols()), mt = static_cast<int>(f.rows());
  if (m > max_rank_ || mt > max_rank_)
    fail(Error::Kind::Precondition, name_ + " is only known up to rank " + std::to_string(max_rank_));
  Matrix out = eval_(f);
  if (out.rows() != dim(mt) || out.cols() != dim(m)) fail(Error::Kind::Defect, name_ + ": evaluation has the wrong shape");
  return out;
}

meataxe::AlgebraModule FunctorRep::module(int m) const {
  meataxe::AlgebraModule mod(field_, dim(m));
  const auto gens = ring::matrix_monoid_generators(*ring_, static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < gens.size(); ++i) mod.add_generator("g" + std::to_string(i), (*this)(gens[i]));
  return mod;
}

FunctorRep FunctorRep::truncated(int max_rank) const {
  if (max_rank > max_rank_) fail(Error::Kind::Precondition, "cannot raise the truncation rank");
  std::vector<std::size_t> d(dims_.begin(), dims_.begin() + max_rank + 1);
  return FunctorRep(*ring_, field_, max_rank, std::move(d), eval_, name_);
}

meataxe::AlgebraModule MonoidModule::as_module() const {
  meataxe::AlgebraModule mod(field, dim);
  const auto gens = ring::matrix_monoid_generators(ring, static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < gens.size(); ++i) mod.add_generator("g" + std::to_string(i), act(gens[i]));
  return mod;
}

Elem ring_determinant(const FiniteRing& a, const RingMatrix& m) {
  if (m.rows() != m.cols()) fail(Error::Kind::Precondition, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Elem det = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Elem term = a.one();
    for (std::size_t i = 0; i < n; ++i) term = a.mul(term, m.at(i, perm[i]));
    det = inversions % 2 ? a.sub(det, term) : a.add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

MonoidModule delta_module(const FiniteRing& a, int n, const Field& k) {
  MonoidModule m{a, n, k, 1, {}};
  m.act = [a, k](const RingMatrix& g) {
    Matrix r(k, 1, 1);
    r.set_int(0, 0, a.is_unit(ring_determinant(a, g)) ? 1 : 0);
    return r;
  };
  return m;
}

MonoidModule character_module(const FiniteRing& a, const Field& k, int r, int order) {
  if (r < 2 || ring::prime_factors(static_cast<std::uint64_t>(r)) != std::vector<int>{r})
    fail(Error::Kind::Precondition, "character modulus must be prime");
  if (order < 1 || (r - 1) % order != 0)
    fail(Error::Kind::Precondition, "character order must divide " + std::to_string(r - 1));
  const auto homs = ring::ring_homs(a, Field::gf(r));
  if (homs.empty()) fail(Error::Kind::Precondition, a.name() + " has no quotient Z/" + std::to_string(r));
  la::Scalar zeta = la::Scalar::one(k);
  if (k.is_finite()) {
    if ((k.order() - 1) % static_cast<std::uint32_t>(order) != 0)
      fail(Error::Kind::Precondition, k.name() + " has no element of order " + std::to_string(order));
    zeta = la::Scalar::from_code(k, k.exp((k.order() - 1) / static_cast<std::uint32_t>(order)));
  } else if (order == 2) {
    zeta = la::Scalar::from_int(k, -1);
  } else if (order != 1) {
    fail(Error::Kind::Precondition, "Q only has characters of order 1 and 2");
  }
  int root = 2;
  auto order_mod = [r](int x) {
    int o = 1;
    for (int y = x % r; y != 1; y = y * x % r) ++o;
    return o;
  };
  if (r > 2)
    while (order_mod(root) != r - 1) ++root;
  else
    root = 1;
  std::vector<int> dlog(static_cast<std::size_t>(r), -1);
  for (int j = 0, x = 1; j < r - 1; ++j, x = x * root % r) dlog[static_cast<std::size_t>(x)] = j;
  const ring::RingHom hom = homs.front();
  MonoidModule m{a, 1, k, 1, {}};
  m.act = [hom, k, zeta, dlog](const RingMatrix& g) {
    if (g.rows() != 1 || g.cols() != 1) fail(Error::Kind::Precondition, "character module has rank 1");
    const auto x = hom(g.at(0, 0));
    Matrix out(k, 1, 1);
    if (x != 0) out.set(0, 0, zeta.pow(dlog[x]));
    return out;
  };
  return m;
}

MonoidModule evaluation_module(const FunctorRep& f, int n) {
  MonoidModule m{f.ring(), n, f.field(), f.dim(n), {}};
  m.act = [f](const RingMatrix& g) { return f(g); };
  return m;
}

// ---------------------------------------------------------------------------
// Built-ins

FunctorRep constant_functor(const FiniteRing& a, const Field& k, int max_rank) {
  return FunctorRep(a, k, max_rank, std::vector<std::size_t>(static_cast<std::size_t>(max_rank) + 1, 1),
                    [k](const RingMatrix&) { return Matrix::identity(k, 1); }, "const");
}

FunctorRep lambda1(const FiniteRing& a, const Field& k, int max_rank, std::size_t hom_index) {
  const auto homs = ring::ring_homs(a, k);
  if (hom_index >= homs.size())
    fail(Error::Kind::Precondition, "no ring homomorphism " + a.name() + " -> " + k.name() + " with that index");
  std::vector<std::size_t> dims(static_cast<std::size_t>(max_rank) + 1);
  std::iota(dims.begin(), dims.end(), 0);
  const ring::RingHom hom = homs[hom_index];
  return FunctorRep(a, k, max_rank, std::move(dims), [hom](const RingMatrix& f) { return ring::apply(hom, f); },
                    "lambda1");
}

FunctorRep projective(const FiniteRing& a, const Field& k, int max_rank, int r, const Caps& caps) {
  if (r < 0) fail(Error::Kind::Precondition, "projective functor needs r >= 0");
  std::vector<std::size_t> dims;
  for (int m = 0; m <= max_rank; ++m)
    dims.push_back(static_cast<std::size_t>(
        ring::matrix_count(a, static_cast<std::size_t>(m), static_cast<std::size_t>(r), caps.max_dim)));
  const auto ur = static_cast<std::size_t>(r);
  auto ev = [a, k, ur, dims](const RingMatrix& f) {
    const std::size_t src = dims[f.cols()], dst = dims[f.rows()];
    Matrix out(k, dst, src);
    for (std::size_t h = 0; h < src; ++h) {
      const RingMatrix hm = ring::matrix_from_index(a, f.cols(), ur, h);
      out.set_int(ring::matrix_index(a, f.mul(a, hm)), h, 1);
    }
    return out;
  };
  return FunctorRep(a, k, max_rank, std::move(dims), ev, "proj");
}

FunctorRep grassmannian1(const FiniteRing& a, const Field& k, int max_rank, const Caps& caps) {
  std::vector<Elem> inverse(a.size(), 0);
  for (Elem x = 1; x < a.size(); ++x) {
    if (!a.is_unit(x)) fail(Error::Kind::Precondition, "the lines functor needs a field, not " + a.name());
    for (Elem y = 1; y < a.size(); ++y)
      if (a.mul(x, y) == a.one()) inverse[x] = y;
  }
  // lines[m]: normalised spanning vectors (first nonzero entry 1) of the lines of A^m.
  auto lines = std::make_shared<std::vector<std::map<std::vector<Elem>, std::size_t>>>();
  std::vector<std::size_t> dims;
  for (int m = 0; m <= max_rank; ++m) {
    const auto count = ring::matrix_count(a, static_cast<std::size_t>(m), 1, caps.max_hom);
    std::map<std::vector<Elem>, std::size_t> idx;
    for (std::uint64_t i = 1; i < count; ++i) {
      auto v = ring::matrix_from_index(a, static_cast<std::size_t>(m), 1, i).entries();
      const auto lead = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
      if (*lead == a.one()) idx.emplace(std::move(v), 0);
    }
    std::size_t c = 0;
    for (auto& [v, i] : idx) i = c++;
    if (c > caps.max_dim) fail(Error::Kind::CapExceeded, "too many lines");
    dims.push_back(c);
    lines->push_back(std::move(idx));
  }
  auto ev = [a, k, lines, inverse](const RingMatrix& f) {
    const auto& src = (*lines)[f.cols()];
    const auto& dst = (*lines)[f.rows()];
    Matrix out(k, dst.size(), src.size());
    for (const auto& [v, j] : src) {
      std::vector<Elem> w(f.rows(), 0);
      for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = 0; c < f.cols(); ++c) w[r] = a.add(w[r], a.mul(f.at(r, c), v[c]));
      const auto lead = std::find_if(w.begin(), w.end(), [](Elem x) { return x != 0; });
      if (lead == w.end()) continue;
      const Elem s = inverse[*lead];
      for (auto& x : w) x = a.mul(s, x);
      out.set_int(dst.at(w), j, 1);
    }
    return out;
  };
  return FunctorRep(a, k, max_rank, std::move(dims), ev, "gr1");
}

FunctorRep tensor_functors(const FunctorRep& f, const FunctorRep& g) {
  if (!(f.ring() == g.ring())) fail(Error::Kind::FieldMismatch, "tensor_functors: different base rings");
  if (!(f.field() == g.field())) fail(Error::Kind::FieldMismatch, "tensor_functors: different coefficient fields");
  const int n = std::min(f.max_rank(), g.max_rank());
  std::vector<std::size_t> dims;
  for (int m = 0; m <= n; ++m) dims.push_back(f.dim(m) * g.dim(m));
  return FunctorRep(f.ring(), f.field(), n, std::move(dims),
                    [f, g](const RingMatrix& h) { return la::kronecker(f(h), g(h)); },
                    f.name() + "*" + g.name());
}

// ---------------------------------------------------------------------------
// Intermediate extensions

namespace {

struct ExtensionContext {
  const MonoidModule& m;
  std::size_t n;
  std::unordered_map<std::uint64_t, Matrix> cache;

  const Matrix& act(const RingMatrix& e) {
    const auto key = ring::matrix_index(m.ring, e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, m.act(e)).first;
    return it->second;
  }

  // Rows phi(f, v_j) for j < dim M: g -> M(g f) v_j, g ranging over Hom(A^rank, A^n).
  Matrix phi(const RingMatrix& f, std::size_t functions) {
    const std::size_t rank = f.rows();
    Matrix out(m.field, m.dim, functions * m.dim);
    for (std::uint64_t gi = 0; gi < functions; ++gi) {
      const RingMatrix g = ring::matrix_from_index(m.ring, n, rank, gi);
      const Matrix& mg = act(g.mul(m.ring, f));
      for (std::size_t j = 0; j < m.dim; ++j)
        for (std::size_t r = 0; r < m.dim; ++r)
          if (!mg.is_zero_at(r, j)) out.set(j, gi * m.dim + r, mg.at(r, j));
    }
    return out;
  }
};

// For psi : A^m -> A^m', index in Hom(A^m, A^n) of g' psi, for every g' in Hom(A^m', A^n).
std::vector<std::size_t> precompose_map(const FiniteRing& a, std::size_t n, const RingMatrix& psi, std::uint64_t cap) {
  const auto count = ring::matrix_count(a, n, psi.rows(), cap);
  std::vector<std::size_t> out(count);
  for (std::uint64_t gi = 0; gi < count; ++gi)
    out[gi] = ring::matrix_index(a, ring::matrix_from_index(a, n, psi.rows(), gi).mul(a, psi));
  return out;
}

void check_module(const MonoidModule& m) {
  if (m.rank < 1) fail(Error::Kind::Precondition, "monoid module rank must be >= 1");
  if (!m.act) fail(Error::Kind::Precondition, "monoid module has no action");
}

}  // namespace

ExtensionValue intermediate_extension(const MonoidModule& m, int rank, const Caps& caps) {
  check_module(m);
  if (rank < 0) fail(Error::Kind::Precondition, "rank must be >= 0");
  const auto n = static_cast<std::size_t>(m.rank), r = static_cast<std::size_t>(rank);
  const auto functions = ring::matrix_count(m.ring, n, r, caps.max_hom);
  if (functions * m.dim > caps.max_hom) fail(Error::Kind::CapExceeded, "intermediate extension ambient exceeds cap");
  ExtensionContext ctx{m, n, {}};
  ExtensionValue out{rank, functions, Subspace(m.field, functions * m.dim)};
  if (m.dim == 0) return out;
  if (r < n) {
    // Every f : A^n -> A^r is the projection composed with an endomorphism of A^n.
    const Matrix rows = ctx.phi(inclusion(m.ring, n, r), functions);
    out.space = rows.is_zero() ? out.space : Subspace::span(rows);
    return out;
  }
  // Every f : A^n -> A^r is an endomorphism of A^r composed with the inclusion,
  // so the value is the End(A^r)-span of phi(inclusion, -).
  std::vector<std::vector<std::size_t>> gen_maps;
  for (const auto& g : ring::matrix_monoid_generators(m.ring, r)) gen_maps.push_back(precompose_map(m.ring, n, g, caps.max_hom));
  la::EchelonBuilder eb(m.field, functions * m.dim);
  std::vector<Matrix> todo;
  const Matrix seeds = ctx.phi(inclusion(m.ring, n, r), functions);
  for (std::size_t j = 0; j < seeds.rows(); ++j)
    if (eb.insert(seeds.row(j))) todo.push_back(seeds.row(j));
  while (!todo.empty()) {
    Matrix v = std::move(todo.back());
    todo.pop_back();
    for (const auto& map : gen_maps) {
      Matrix w = gather(v, map, m.dim);
      if (eb.insert(w)) todo.push_back(std::move(w));
    }
  }
  out.space = eb.subspace();
  return out;
}

ExtensionValue intermediate_extension_direct(const MonoidModule& m, int rank, const Caps& caps) {
  check_module(m);
  const auto n = static_cast<std::size_t>(m.rank), r = static_cast<std::size_t>(rank);
  const auto functions = ring::matrix_count(m.ring, n, r, caps.max_hom);
  const auto sources = ring::matrix_count(m.ring, r, n, caps.max_hom);
  if (functions * m.dim > caps.max_hom) fail(Error::Kind::CapExceeded, "intermediate extension ambient exceeds cap");
  ExtensionContext ctx{m, n, {}};
  la::EchelonBuilder eb(m.field, functions * m.dim);
  for (std::uint64_t fi = 0; fi < sources && !eb.full(); ++fi) {
    const Matrix rows = ctx.phi(ring::matrix_from_index(m.ring, r, n, fi), functions);
    for (std::size_t j = 0; j < rows.rows(); ++j) eb.insert(rows.row(j));
  }
  return ExtensionValue{rank, functions, eb.subspace()};
}

FunctorRep intermediate_extension_functor(const MonoidModule& m, int max_rank, const Caps& caps) {
  auto values = std::make_shared<std::vector<ExtensionValue>>();
  std::vector<std::size_t> dims;
  for (int r = 0; r <= max_rank; ++r) {
    values->push_back(intermediate_extension(m, r, caps));
    dims.push_back(values->back().space.dim());
  }
  const FiniteRing a = m.ring;
  const Field k = m.field;
  const auto n = static_cast<std::size_t>(m.rank);
  const std::size_t block = m.dim;
  const std::uint64_t cap = caps.max_hom;
  auto ev = [values, a, k, n, block, cap](const RingMatrix& psi) {
    const auto& src = (*values)[psi.cols()];
    const auto& dst = (*values)[psi.rows()];
    if (src.space.dim() == 0 || dst.space.dim() == 0) return Matrix(k, dst.space.dim(), src.space.dim());
    const Matrix moved = gather(src.space.basis(), precompose_map(a, n, psi, cap), block);
    if (!dst.space.contains_all(moved)) fail(Error::Kind::Defect, "intermediate extension is not functorial");
    return dst.space.coordinates(moved).transpose();
  };
  return FunctorRep(m.ring, m.field, max_rank, std::move(dims), ev, "iext");
}

// ---------------------------------------------------------------------------
// Cross-effects and degrees

Subspace cross_effect(const FunctorRep& f, int d) {
  if (d < 0 || d > f.max_rank())
    fail(Error::Kind::Precondition, "cross-effect of order " + std::to_string(d) + " beyond truncation rank");
  const std::size_t dim = f.dim(d);
  Subspace out = Subspace::full(f.field(), dim);
  if (d == 0 || dim == 0) return out;
  const auto ud = static_cast<std::size_t>(d);
  for (std::size_t i = 0; i < ud && out.dim(); ++i) {
    RingMatrix del(ud - 1, ud);
    for (std::size_t r = 0; r + 1 < ud; ++r) del.set(r, r < i ? r : r + 1, f.ring().one());
    out = out.intersect(la::kernel_basis(f(del)));
  }
  return out;
}

bool cross_effect_identity(const FunctorRep& f) {
  std::vector<std::size_t> cr;
  for (int d = 0; d <= f.max_rank(); ++d) cr.push_back(cross_effect(f, d).dim());
  for (int d = 1; d <= f.max_rank(); ++d) {
    std::uint64_t sum = 0;
    for (int s = 0; s <= d; ++s) sum += binomial(d, s) * cr[static_cast<std::size_t>(s)];
    if (sum != f.dim(d)) return false;
  }
  return true;
}

std::string DegreeResult::to_string() const {
  if (degree) return std::to_string(*degree);
  return "NotPolynomialUpTo(" + std::to_string(checked) + ")";
}

DegreeResult polynomial_degree(const FunctorRep& f, int cap) {
  if (cap < 0 || cap > f.max_rank()) fail(Error::Kind::Precondition, "degree cap must lie in 0..N");
  DegreeResult out;
  out.checked = cap;
  const int last = std::min(cap + 1, f.max_rank());
  const bool reduced = cross_effect(f, 0).dim() == 0;
  for (int k = 1; k <= last; ++k)
    if (cross_effect(f, k).dim() == 0) {
      out.degree = k == 1 && reduced ? -1 : k - 1;
      return out;
    }
  return out;
}

std::string DimensionProfile::fit_string() const {
  if (!fit_found) return "none";
  std::string out;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    la::Rational c = coefficients[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (!out.empty())
      out += neg ? "-" : "+";
    else if (neg)
      out += "-";
    const std::string mono = i == 0 ? "" : (i == 1 ? "X" : "X^" + std::to_string(i));
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

DimensionProfile dimension_profile(const FunctorRep& f, bool fit) {
  DimensionProfile out;
  out.values = f.dims();
  out.fit_requested = fit;
  if (!fit) return out;
  const auto primes = ring::prime_factors(f.ring().size());
  if (primes.size() != 1) fail(Error::Kind::Precondition, "dimension fitting needs a p-ring, got " + f.ring().name());
  out.prime = primes.front();
  const int n = f.max_rank();
  const Field q = Field::rationals();
  if (n == 0) {
    out.fit_found = true;
    out.coefficients = {la::Rational(static_cast<long>(out.values[0]))};
    return out;
  }
  // Interpolate through X = p^0 .. p^(N-1), then test X = p^N.
  const auto un = static_cast<std::size_t>(n);
  Matrix vander(q, un, un);
  Matrix rhs(q, un, 1);
  for (std::size_t i = 0; i < un; ++i) {
    la::Rational x = 1;
    for (std::size_t e = 0; e < i; ++e) x *= out.prime;
    la::Rational pw = 1;
    for (std::size_t j = 0; j < un; ++j, pw *= x) vander.set(i, j, la::Scalar::from_rational(pw));
    rhs.set(i, 0, la::Scalar::from_rational(la::Rational(static_cast<long>(out.values[i]))));
  }
  const Matrix coeffs = *la::inverse(vander) * rhs;
  la::Rational x = 1, value = 0, pw = 1;
  for (int e = 0; e < n; ++e) x *= out.prime;
  for (std::size_t j = 0; j < un; ++j, pw *= x) value += coeffs.at(j, 0).rational() * pw;
  if (value == la::Rational(static_cast<long>(out.values[un]))) {
    out.fit_found = true;
    for (std::size_t j = 0; j < un; ++j) out.coefficients.push_back(coeffs.at(j, 0).rational());
    while (out.coefficients.size() > 1 && out.coefficients.back() == 0) out.coefficients.pop_back();
  }
  return out;
}

UnipotenceResult unipotence_ideal(const FunctorRep& f, int support_rank) {
  if (support_rank < 0 || support_rank + 2 > f.max_rank())
    fail(Error::Kind::Precondition, "unipotence test needs rank n + 2 <= N");
  const FiniteRing& a = f.ring();
  const auto size = static_cast<std::size_t>(support_rank) + 2;
  std::vector<Elem> members;
  for (Elem x = 0; x < a.size(); ++x) {
    RingMatrix u = RingMatrix::identity(a, size);
    u.set(1, 0, x);
    if (la::is_unipotent(f(u))) members.push_back(x);
  }
  std::set<Elem> in(members.begin(), members.end());
  for (Elem x : members) {
    for (Elem y : members)
      if (!in.count(a.add(x, y))) fail(Error::Kind::Defect, "unipotence set is not closed under addition");
    for (Elem r = 0; r < a.size(); ++r)
      if (!in.count(a.mul(r, x))) fail(Error::Kind::Defect, "unipotence set is not closed under multiplication");
  }
  if (members.empty()) fail(Error::Kind::Defect, "unipotence set misses 0");
  UnipotenceResult out{ideal_from_elements(a, members), false};
  const auto quot = out.ideal.quotient_size();
  out.cotrivial = f.field().is_rational() || quot % static_cast<std::uint32_t>(f.field().characteristic()) != 0;
  return out;
}

bool simplicity_test(const FunctorRep& f, int support_rank, std::optional<int> max_rank, const Caps& caps) {
  const int top = max_rank.value_or(f.max_rank());
  if (support_rank < 0 || support_rank > f.max_rank() || top > f.max_rank())
    fail(Error::Kind::Precondition, "simplicity test ranks beyond truncation");
  if (f.dim(support_rank) == 0) return false;
  if (support_rank == 0) {
    if (f.dim(0) != 1) return false;
    for (int m = 1; m <= top; ++m) {
      if (f.dim(m) != 1)
        fail(Error::Kind::Inconclusive, "NotIntermediateExtension: dimensions differ at rank " + std::to_string(m));
      for (const auto& g : ring::matrix_monoid_generators(f.ring(), static_cast<std::size_t>(m)))
        if (!f(g).is_identity())
          fail(Error::Kind::Inconclusive, "NotIntermediateExtension: values differ at rank " + std::to_string(m));
    }
    return true;
  }
  if (!meataxe::is_simple(f.module(support_rank))) return false;
  const FunctorRep ext = intermediate_extension_functor(evaluation_module(f, support_rank), top, caps);
  for (int m = 0; m <= top; ++m) {
    if (ext.dim(m) != f.dim(m))
      fail(Error::Kind::Inconclusive, "NotIntermediateExtension: dimensions differ at rank " + std::to_string(m));
    if (m == 0 || f.dim(m) == 0) continue;
    if (!meataxe::are_isomorphic(f.module(m), ext.module(m)))
      fail(Error::Kind::Inconclusive, "NotIntermediateExtension: values differ at rank " + std::to_string(m));
  }
  return true;
}

bool functoriality_check(const FunctorRep& f, int samples, std::uint64_t seed) {
  const FiniteRing& a = f.ring();
  for (int m = 0; m <= f.max_rank(); ++m)
    if (!f(RingMatrix::identity(a, static_cast<std::size_t>(m))).is_identity()) return false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rank(0, f.max_rank());
  for (int s = 0; s < samples; ++s) {
    const auto m0 = static_cast<std::size_t>(rank(rng)), m1 = static_cast<std::size_t>(rank(rng)),
               m2 = static_cast<std::size_t>(rank(rng));
    const RingMatrix x = random_matrix(a, m1, m0, rng), y = random_matrix(a, m2, m1, rng);
    if (!(f(y.mul(a, x)) == f(y) * f(x))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tables

std::vector<std::pair<std::string, RingMatrix>> generating_morphisms(const FiniteRing& a, int max_rank) {
  std::vector<std::pair<std::string, RingMatrix>> out;
  for (int m = 1; m <= max_rank; ++m) {
    const auto gens = ring::matrix_monoid_generators(a, static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < gens.size(); ++i) out.emplace_back("end" + std::to_string(m) + "." + std::to_string(i), gens[i]);
  }
  for (int m = 0; m < max_rank; ++m) {
    const auto um = static_cast<std::size_t>(m);
    out.emplace_back("inc" + std::to_string(m), inclusion(a, um, um + 1));
    out.emplace_back("proj" + std::to_string(m), inclusion(a, um + 1, um));
  }
  return out;
}

MorphismTable tabulate(const FunctorRep& f) {
  MorphismTable t{f.ring(), f.field(), f.max_rank(), f.dims(), {}};
  for (const auto& [name, g] : generating_morphisms(f.ring(), f.max_rank())) t.actions.emplace(name, f(g));
  return t;
}

namespace {

// Breadth-first words for every element of M_r(A) over the standard generators.
struct WordIndex {
  std::once_flag once;
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::size_t>> parent;  // element -> (prefix, generator)
};

}  // namespace

FunctorRep from_table(const MorphismTable& t, const Caps& caps) {
  for (const auto& [name, g] : generating_morphisms(t.ring, t.max_rank))
    if (!t.actions.count(name)) fail(Error::Kind::Precondition, "table misses morphism " + name);
  auto words = std::make_shared<std::vector<WordIndex>>(static_cast<std::size_t>(t.max_rank) + 1);
  const FiniteRing a = t.ring;
  const Field k = t.field;
  const auto actions = t.actions;
  const auto dims = t.dims;
  const std::uint64_t cap = caps.max_hom;
  auto endo = [words, a, k, actions, dims, cap](const RingMatrix& e) {
    const std::size_t r = e.rows();
    const auto gens = ring::matrix_monoid_generators(a, r);
    auto& w = (*words)[r];
    std::call_once(w.once, [&] {
      const auto total = ring::matrix_count(a, r, r, cap);
      const RingMatrix id = RingMatrix::identity(a, r);
      const auto id_key = ring::matrix_index(a, id);
      w.parent.emplace(id_key, std::make_pair(id_key, gens.size()));
      std::vector<RingMatrix> frontier = {id};
      while (!frontier.empty()) {
        std::vector<RingMatrix> next;
        for (const auto& x : frontier)
          for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            RingMatrix y = x.mul(a, gens[gi]);
            if (w.parent.emplace(ring::matrix_index(a, y), std::make_pair(ring::matrix_index(a, x), gi)).second)
              next.push_back(std::move(y));
          }
        frontier = std::move(next);
      }
      if (w.parent.size() != total) fail(Error::Kind::Defect, "standard generators do not generate M_n(A)");
    });
    Matrix out = Matrix::identity(k, dims[r]);
    auto key = ring::matrix_index(a, e);
    for (;;) {
      const auto& [prev, gi] = w.parent.at(key);
      if (gi == gens.size()) break;
      out = actions.at("end" + std::to_string(r) + "." + std::to_string(gi)) * out;
      key = prev;
    }
    return out;
  };
  auto ev = [a, k, dims, actions, endo](const RingMatrix& f) {
    const std::size_t m = f.cols(), mt = f.rows(), top = std::max(m, mt);
    if (top == 0) return Matrix::identity(k, dims[0]);
    Matrix out = endo(zero_padded(f, top, top));
    for (std::size_t r = top; r > m; --r) out = out * actions.at("inc" + std::to_string(r - 1));
    for (std::size_t r = top; r > mt; --r) out = actions.at("proj" + std::to_string(r - 1)) * out;
    return out;
  };
  return FunctorRep(t.ring, t.field, t.max_rank, t.dims, ev, "table");
}

}  // namespace steinlab::functor

#include "steinlab/emlpoly.hpp"

#include <algorithm>
#include <set>

namespace steinlab::eml {

// ---------------------------------------------------------------------------
// AbGroup

AbGroup AbGroup::finite(std::vector<std::uint32_t> orders) {
  for (auto o : orders)
    if (o < 2) fail(Error::Kind::Precondition, "cyclic factor orders must be >= 2");
  AbGroup g;
  g.orders_ = std::move(orders);
  return g;
}

AbGroup AbGroup::integers(long long window) {
  if (window < 1) fail(Error::Kind::Precondition, "window must be positive");
  AbGroup g;
  g.integers_ = true;
  g.window_ = window;
  return g;
}

AbGroup AbGroup::of_ring(const ring::FiniteRing& a) {
  std::vector<std::uint32_t> orders;
  for (const auto& c : a.components()) {
    if (c.kind == ring::Component::Kind::Cyclic)
      orders.push_back(c.modulus);
    else
      for (int i = 0; i < c.field.degree(); ++i) orders.push_back(static_cast<std::uint32_t>(c.field.characteristic()));
  }
  return finite(std::move(orders));
}

std::uint64_t AbGroup::size() const {
  if (integers_) fail(Error::Kind::Precondition, "Z has no finite size");
  std::uint64_t n = 1;
  for (auto o : orders_) n *= o;
  return n;
}

std::vector<std::uint32_t> AbGroup::digits(long long a) const {
  std::vector<std::uint32_t> d(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    d[i] = static_cast<std::uint32_t>(a % orders_[i]);
    a /= orders_[i];
  }
  return d;
}

long long AbGroup::from_digits(const std::vector<std::uint32_t>& d) const {
  long long a = 0;
  for (std::size_t i = orders_.size(); i-- > 0;) a = a * orders_[i] + d[i];
  return a;
}

long long AbGroup::add(long long a, long long b) const {
  if (integers_) return a + b;
  long long r = 0, place = 1;
  for (auto o : orders_) {
    r += ((a % o + b % o) % o) * place;
    a /= o;
    b /= o;
    place *= o;
  }
  return r;
}

long long AbGroup::neg(long long a) const {
  if (integers_) return -a;
  long long r = 0, place = 1;
  for (auto o : orders_) {
    r += ((o - a % o) % o) * place;
    a /= o;
    place *= o;
  }
  return r;
}

long long AbGroup::scale(long long n, long long a) const {
  if (integers_) return n * a;
  long long r = 0, place = 1;
  for (auto o : orders_) {
    long long x = ((n % o) * (a % o)) % o;
    r += ((x + o) % o) * place;
    a /= o;
    place *= o;
  }
  return r;
}

bool AbGroup::contains(long long a) const {
  if (integers_) return a >= -window_ && a <= window_;
  return a >= 0 && static_cast<std::uint64_t>(a) < size();
}

std::vector<long long> AbGroup::elements() const {
  std::vector<long long> out;
  if (integers_) {
    for (long long x = -window_; x <= window_; ++x) out.push_back(x);
  } else {
    for (std::uint64_t x = 0; x < size(); ++x) out.push_back(static_cast<long long>(x));
  }
  return out;
}

std::vector<long long> AbGroup::generators() const {
  if (integers_) return {1};
  std::vector<long long> out;
  long long place = 1;
  for (auto o : orders_) {
    out.push_back(place);
    place *= o;
  }
  return out;
}

std::string AbGroup::name() const {
  if (integers_) return "Z[-" + std::to_string(window_) + "," + std::to_string(window_) + "]";
  if (orders_.empty()) return "0";
  std::string s;
  for (auto o : orders_) s += (s.empty() ? "" : "+") + ("Z/" + std::to_string(o));
  return s;
}

// ---------------------------------------------------------------------------
// Target

Target Target::group(AbGroup g) {
  if (g.is_integers()) fail(Error::Kind::Precondition, "group targets must be finite");
  Target t;
  t.group_ = std::move(g);
  return t;
}

Target Target::vectors(const la::Field& k, std::size_t dim) {
  Target t;
  t.field_ = k;
  t.dim_ = dim;
  return t;
}

Value Target::zero() const {
  if (is_group()) return 0LL;
  return la::Matrix(field_, 1, dim_);
}

Value Target::add(const Value& a, const Value& b) const {
  if (is_group()) return group_->add(std::get<long long>(a), std::get<long long>(b));
  return std::get<la::Matrix>(a) + std::get<la::Matrix>(b);
}

Value Target::neg(const Value& a) const {
  if (is_group()) return group_->neg(std::get<long long>(a));
  return std::get<la::Matrix>(a).scaled(la::Scalar::from_int(field_, -1));
}

Value Target::scale(long long n, const Value& a) const {
  if (is_group()) return group_->scale(n, std::get<long long>(a));
  return std::get<la::Matrix>(a).scaled(la::Scalar::from_int(field_, n));
}

bool Target::is_zero(const Value& a) const {
  if (is_group()) return std::get<long long>(a) == 0;
  return std::get<la::Matrix>(a).is_zero();
}

bool Target::equal(const Value& a, const Value& b) const { return is_zero(add(a, neg(b))); }

// ---------------------------------------------------------------------------
// AbMap

AbMap::AbMap(AbGroup source, Target target, Eval eval)
    : source_(std::move(source)), target_(std::move(target)), eval_(std::move(eval)) {}

AbMap AbMap::group_table(const AbGroup& source, const AbGroup& target, std::vector<long long> table) {
  if (table.size() != source.size()) fail(Error::Kind::Precondition, "value table size mismatch");
  for (auto v : table)
    if (!target.contains(v)) fail(Error::Kind::Precondition, "value outside target group");
  return AbMap(source, Target::group(target), [t = std::move(table)](long long x) -> Value { return t[static_cast<std::size_t>(x)]; });
}

AbMap AbMap::field_table(const AbGroup& source, const la::Field& k, std::vector<std::uint32_t> codes) {
  if (codes.size() != source.size()) fail(Error::Kind::Precondition, "value table size mismatch");
  return AbMap(source, Target::vectors(k, 1), [k, t = std::move(codes)](long long x) -> Value {
    return la::Matrix::from_codes(k, 1, 1, {t[static_cast<std::size_t>(x)]});
  });
}

Value AbMap::operator()(long long x) const {
  if (!source_.contains(x)) fail(Error::Kind::Precondition, "argument " + std::to_string(x) + " outside " + source_.name());
  return eval_(x);
}

// ---------------------------------------------------------------------------

Value deviation(const AbMap& f, const std::vector<long long>& args) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  const std::size_t d = args.size();
  if (d > 30) fail(Error::Kind::Precondition, "deviation order too large");
  Value acc = tgt.zero();
  for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
    long long s = 0;
    int bits = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) {
        s = src.add(s, args[i]);
        ++bits;
      }
    if (!src.contains(s)) fail(Error::Kind::Precondition, "window overflow evaluating deviation");
    Value v = f(s);
    acc = ((d - static_cast<std::size_t>(bits)) % 2 == 0) ? tgt.add(acc, v) : tgt.add(acc, tgt.neg(v));
  }
  return acc;
}

namespace {

// Calls visit on every nondecreasing sequence of length n drawn from pool.
template <class Visit>
bool for_each_multiset(const std::vector<long long>& pool, std::size_t n, Visit&& visit) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<long long> args(n);
  if (pool.empty()) return n == 0 ? visit(args) : true;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) args[i] = pool[idx[i]];
    if (!visit(args)) return false;
    std::size_t i = n;
    while (i > 0 && idx[i - 1] + 1 == pool.size()) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[i - 1];
  }
}

bool deviation_vanishes(const AbMap& f, std::size_t n) {
  const auto& src = f.source();
  std::vector<long long> pool;
  if (src.is_integers()) {
    long long r = src.window() / static_cast<long long>(n);
    if (r < 1) fail(Error::Kind::Precondition, "window too small for deviation order " + std::to_string(n));
    for (long long x = -r; x <= r; ++x)
      if (x != 0) pool.push_back(x);
  } else {
    for (long long x : src.elements())
      if (x != 0) pool.push_back(x);
  }
  // Deviations are symmetric and vanish as soon as one argument is 0.
  return for_each_multiset(pool, n, [&](const std::vector<long long>& args) {
    return f.target().is_zero(deviation(f, args));
  });
}

}  // namespace

std::optional<int> eml_degree(const AbMap& f, int cap) {
  if (cap < 0) fail(Error::Kind::Precondition, "cap must be >= 0");
  for (int d = 0; d <= cap; ++d)
    if (deviation_vanishes(f, static_cast<std::size_t>(d + 1))) return d;
  return std::nullopt;
}

std::vector<HomogeneousPart> homogeneous_decomposition(const AbMap& f, int cap) {
  const auto& tgt = f.target();
  if (tgt.is_group() || !tgt.field().is_rational())
    fail(Error::Kind::Precondition, "homogeneous decomposition needs a uniquely divisible (Q-vector) target");
  auto deg = eml_degree(f, cap);
  if (!deg) fail(Error::Kind::Precondition, "map is not polynomial of degree <= " + std::to_string(cap));
  const int d = *deg;
  const la::Field q = la::Field::rationals();
  la::Matrix vander(q, static_cast<std::size_t>(d + 1), static_cast<std::size_t>(d + 1));
  for (int lam = 0; lam <= d; ++lam)
    for (int k = 0; k <= d; ++k) vander.set(lam, k, la::Scalar::from_int(q, lam).pow(k));
  la::Matrix vinv = *la::inverse(vander);

  AbGroup src = f.source();
  if (src.is_integers() && d > 0) src = AbGroup::integers(std::max(1LL, src.window() / d));
  std::vector<HomogeneousPart> parts;
  for (int k = 0; k <= d; ++k) {
    std::vector<la::Scalar> coeffs;
    for (int lam = 0; lam <= d; ++lam) coeffs.push_back(vinv.at(k, lam));
    AbMap part(src, tgt, [f, coeffs, tgt](long long u) -> Value {
      la::Matrix acc = std::get<la::Matrix>(tgt.zero());
      for (std::size_t lam = 0; lam < coeffs.size(); ++lam) {
        if (coeffs[lam].is_zero()) continue;
        acc.axpy(coeffs[lam], std::get<la::Matrix>(f(f.source().scale(static_cast<long long>(lam), u))));
      }
      return acc;
    });
    bool nonzero = false;
    for (long long u : src.elements())
      if (!tgt.is_zero(part(u))) {
        nonzero = true;
        break;
      }
    if (nonzero) parts.push_back({k, std::move(part)});
  }
  return parts;
}

// ---------------------------------------------------------------------------

AbMap MultiplicativeMap::as_map() const { return AbMap::field_table(AbGroup::of_ring(ring), field, values); }

namespace {

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Multisets (as nondecreasing index lists) of homs whose pointwise product is target.
void search_products(const std::vector<ring::RingHom>& homs, const la::Field& k, const std::vector<std::uint32_t>& target,
                     std::size_t size, std::size_t start, std::vector<std::uint32_t>& partial,
                     std::vector<std::size_t>& chosen, std::vector<std::vector<std::size_t>>& found, std::size_t limit) {
  if (found.size() >= limit) return;
  if (chosen.size() == size) {
    if (partial == target) found.push_back(chosen);
    return;
  }
  for (std::size_t h = start; h < homs.size(); ++h) {
    std::vector<std::uint32_t> next(partial.size());
    for (std::size_t x = 0; x < partial.size(); ++x) next[x] = k.mul(partial[x], homs[h].values[x]);
    chosen.push_back(h);
    search_products(homs, k, target, size, h, next, chosen, found, limit);
    chosen.pop_back();
    if (found.size() >= limit) return;
  }
}

std::vector<std::vector<std::size_t>> products_equal(const std::vector<ring::RingHom>& homs, const la::Field& k,
                                                     const std::vector<std::uint32_t>& target, std::size_t size,
                                                     std::size_t limit) {
  std::vector<std::uint32_t> ones(target.size(), 1);
  std::vector<std::size_t> chosen;
  std::vector<std::vector<std::size_t>> found;
  search_products(homs, k, target, size, 0, ones, chosen, found, limit);
  return found;
}

}  // namespace

Factorization factor_multiplicative(const MultiplicativeMap& phi, int cap) {
  const auto& a = phi.ring;
  const auto& k = phi.field;
  if (!k.is_finite()) fail(Error::Kind::Precondition, "factor_multiplicative: target must be a finite field");
  if (phi.values.size() != a.size()) fail(Error::Kind::Precondition, "value table size mismatch");
  if (phi.values[a.one()] != 1) fail(Error::Kind::Precondition, "not multiplicative: phi(1) != 1");
  for (ring::Elem x = 0; x < a.size(); ++x)
    for (ring::Elem y = 0; y < a.size(); ++y)
      if (phi.values[a.mul(x, y)] != k.mul(phi.values[x], phi.values[y]))
        fail(Error::Kind::Precondition, "not multiplicative at (" + a.to_string(x) + ", " + a.to_string(y) + ")");
  auto deg = eml_degree(phi.as_map(), cap);
  if (!deg) fail(Error::Kind::Precondition, "not polynomial of degree <= " + std::to_string(cap));
  const int d = *deg;
  if (d == 0) return Factorization{0, k, {}};

  const long long bound = factorial(d);
  for (long long s = 1; s <= bound; ++s) {
    const int e = k.degree() * static_cast<int>(s);
    if (!la::Field::supported(k.characteristic(), e))
      fail(Error::Kind::CapExceeded, "factorisation needs an extension beyond the supported fields");
    la::Field l = k.extension(static_cast<int>(s));
    auto homs = ring_homs(a, l);
    std::vector<std::uint32_t> target(a.size());
    for (ring::Elem x = 0; x < a.size(); ++x) target[x] = l.embed(k, phi.values[x]);
    auto hits = products_equal(homs, l, target, static_cast<std::size_t>(d), 1);
    if (hits.empty()) continue;
    // With at most d factors the factorisation is unique up to order.
    std::size_t total = 0;
    for (int r = 1; r <= d; ++r) total += products_equal(homs, l, target, static_cast<std::size_t>(r), 2).size();
    if (total != 1) fail(Error::Kind::Defect, "factorisation with at most d factors is not unique");
    Factorization out{d, l, {}};
    for (auto h : hits.front()) out.factors.push_back(homs[h]);
    return out;
  }
  fail(Error::Kind::Defect, "no factorisation within extension degree d!");
}

int factor_multiplicative_integers(const AbMap& phi, int cap) {
  const auto& src = phi.source();
  const auto& tgt = phi.target();
  if (!src.is_integers() || tgt.is_group() || !tgt.field().is_rational() || tgt.dim() != 1)
    fail(Error::Kind::Precondition, "expected a map from Z to Q");
  auto scalar = [&](long long x) { return std::get<la::Matrix>(phi(x)).at(0, 0); };
  const la::Field q = la::Field::rationals();
  if (!scalar(1).is_one()) fail(Error::Kind::Precondition, "not multiplicative: phi(1) != 1");
  const long long w = src.window();
  for (long long x = -w; x <= w; ++x)
    for (long long y = -w; y <= w; ++y)
      if (x * y >= -w && x * y <= w && !(scalar(x * y) == scalar(x) * scalar(y)))
        fail(Error::Kind::Precondition, "not multiplicative on the window");
  auto deg = eml_degree(phi, cap);
  if (!deg) fail(Error::Kind::Precondition, "not polynomial of degree <= " + std::to_string(cap));
  for (long long x = -w; x <= w; ++x)
    if (!(scalar(x) == la::Scalar::from_int(q, x).pow(*deg)))
      fail(Error::Kind::Defect, "multiplicative polynomial map on Z is not a power of the inclusion");
  return *deg;
}

// ---------------------------------------------------------------------------

bool is_homomorphism(const AbGroup& src, const AbGroup& dst, const std::vector<long long>& table) {
  if (table.size() != src.size()) return false;
  for (long long x : src.elements())
    for (long long y : src.elements())
      if (table[static_cast<std::size_t>(src.add(x, y))] != dst.add(table[static_cast<std::size_t>(x)], table[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

std::vector<std::vector<long long>> homomorphisms(const AbGroup& src, const AbGroup& dst) {
  const auto gens = src.generators();
  std::vector<std::vector<long long>> candidates;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<long long> c;
    for (long long y : dst.elements())
      if (dst.scale(src.orders()[i], y) == 0) c.push_back(y);
    candidates.push_back(std::move(c));
  }
  std::vector<std::vector<long long>> out;
  std::vector<std::size_t> pick(gens.size(), 0);
  while (true) {
    std::vector<long long> table(src.size());
    for (long long x : src.elements()) {
      auto dig = src.digits(x);
      long long img = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) img = dst.add(img, dst.scale(dig[i], candidates[i][pick[i]]));
      table[static_cast<std::size_t>(x)] = img;
    }
    out.push_back(std::move(table));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

bool is_short_exact(const ShortExactSequence& s) {
  if (!is_homomorphism(s.a, s.b, s.u) || !is_homomorphism(s.b, s.c, s.v)) return false;
  std::set<long long> image_u(s.u.begin(), s.u.end());
  std::set<long long> image_v(s.v.begin(), s.v.end());
  if (image_u.size() != s.a.size() || image_v.size() != s.c.size()) return false;
  std::set<long long> kernel_v;
  for (long long y : s.b.elements())
    if (s.v[static_cast<std::size_t>(y)] == 0) kernel_v.insert(y);
  return kernel_v == image_u;
}

LinearizationReport linearization_exactness(const ShortExactSequence& s, const la::Field& k) {
  if (!is_short_exact(s)) fail(Error::Kind::Precondition, "input sequence is not short exact");
  LinearizationReport rep;
  rep.input_exact = true;
  const std::size_t na = s.a.size(), nb = s.b.size(), nc = s.c.size();
  const la::Scalar one = la::Scalar::one(k);

  la::Matrix alpha(k, nb, nb * na);
  for (std::size_t z = 0; z < na; ++z)
    for (std::size_t y = 0; y < nb; ++y) {
      std::size_t col = y + nb * z;
      auto shifted = static_cast<std::size_t>(s.b.add(static_cast<long long>(y), s.u[z]));
      alpha.set(shifted, col, alpha.at(shifted, col) + one);
      alpha.set(y, col, alpha.at(y, col) - one);
    }
  la::Matrix kv(k, nc, nb);
  for (std::size_t y = 0; y < nb; ++y) kv.set(static_cast<std::size_t>(s.v[y]), y, one);
  rep.alpha_rank = la::rank(alpha);
  rep.kv_rank = la::rank(kv);
  rep.right_composite_zero = (kv * alpha).is_zero();
  rep.right_exact = rep.right_composite_zero && rep.kv_rank == nc && rep.alpha_rank == nb - rep.kv_rank;

  la::Matrix ku(k, nb, na);
  for (std::size_t x = 0; x < na; ++x) ku.set(static_cast<std::size_t>(s.u[x]), x, one);
  la::Matrix beta(k, nb * nc, nb);
  for (std::size_t y = 0; y < nb; ++y) {
    std::size_t with_v = y + nb * static_cast<std::size_t>(s.v[y]);
    beta.set(with_v, y, beta.at(with_v, y) + one);
    beta.set(y, y, beta.at(y, y) - one);
  }
  rep.ku_rank = la::rank(ku);
  rep.beta_rank = la::rank(beta);
  rep.left_composite_zero = (beta * ku).is_zero();
  rep.left_exact = rep.left_composite_zero && rep.ku_rank == na && rep.beta_rank == nb - rep.ku_rank;
  return rep;
}

}  // namespace steinlab::eml

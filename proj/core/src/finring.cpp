#include "steinlab/finring.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace steinlab::ring {

namespace {

constexpr std::uint32_t kTableLimit = 256;
constexpr std::uint64_t kMaxRingSize = 1u << 20;

std::uint32_t parse_uint(std::string_view s, std::string_view whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 9)
    fail(Error::Kind::Parse, "bad ring spec '" + std::string(whole) + "'");
  return static_cast<std::uint32_t>(std::stoul(std::string(s)));
}

std::uint32_t modinv(std::uint32_t a, std::uint32_t m) {
  long long t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) fail(Error::Kind::Defect, "modinv of a non-unit");
  return static_cast<std::uint32_t>(((t % m) + m) % m);
}

}  // namespace

std::vector<int> prime_factors(std::uint64_t n) {
  std::vector<int> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(static_cast<int>(p));
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

// ---------------------------------------------------------------------------

Component Component::cyclic(std::uint32_t m) {
  if (m < 2) fail(Error::Kind::Precondition, "Z/m needs m >= 2");
  Component c;
  c.kind = Kind::Cyclic;
  c.modulus = m;
  return c;
}

Component Component::galois(int p, int e) {
  Component c;
  c.kind = Kind::Galois;
  c.field = la::Field::gf(p, e);
  c.modulus = c.field.order();
  return c;
}

std::uint32_t Component::characteristic() const {
  return kind == Kind::Cyclic ? modulus : static_cast<std::uint32_t>(field.characteristic());
}

std::string Component::name() const {
  return kind == Kind::Cyclic ? "Z/" + std::to_string(modulus) : field.name();
}

FiniteRing::FiniteRing(std::vector<Component> components) {
  if (components.empty()) fail(Error::Kind::Precondition, "a ring needs at least one component");
  auto d = std::make_shared<Data>();
  d->components = std::move(components);
  std::uint64_t size = 1;
  for (const auto& c : d->components) {
    d->radix.push_back(static_cast<std::uint32_t>(size));
    d->one += static_cast<Elem>(size);
    size *= c.size();
    if (size > kMaxRingSize) fail(Error::Kind::CapExceeded, "ring too large");
  }
  d->size = static_cast<std::uint32_t>(size);
  data_ = d;
  if (d->size <= kTableLimit) {
    const auto n = d->size;
    d->add_table.resize(static_cast<std::size_t>(n) * n);
    d->mul_table.resize(static_cast<std::size_t>(n) * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        d->add_table[a * n + b] = add_slow(a, b);
        d->mul_table[a * n + b] = mul_slow(a, b);
      }
  }
}

FiniteRing FiniteRing::parse(std::string_view spec) {
  std::vector<Component> comps;
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('x', start);
    if (end == std::string::npos) end = s.size();
    std::string_view tok(s.data() + start, end - start);
    if (tok.rfind("Z/", 0) == 0) {
      comps.push_back(Component::cyclic(parse_uint(tok.substr(2), spec)));
    } else if (!tok.empty() && (tok[0] == 'F' || tok.rfind("GF", 0) == 0)) {
      la::Field f = la::Field::parse(tok);
      if (!f.is_finite()) fail(Error::Kind::Parse, "bad ring component '" + std::string(tok) + "'");
      comps.push_back(Component::galois(f.characteristic(), f.degree()));
    } else {
      fail(Error::Kind::Parse, "bad ring spec '" + std::string(spec) + "'");
    }
    start = end + 1;
  }
  return FiniteRing(std::move(comps));
}

std::string FiniteRing::name() const {
  std::string out;
  for (const auto& c : components()) out += (out.empty() ? "" : "x") + c.name();
  return out;
}

std::uint32_t FiniteRing::characteristic() const {
  std::uint32_t l = 1;
  for (const auto& c : components()) l = std::lcm(l, c.characteristic());
  return l;
}

std::uint32_t FiniteRing::component_value(Elem a, std::size_t i) const {
  return (a / data_->radix[i]) % data_->components[i].size();
}

std::vector<std::uint32_t> FiniteRing::values(Elem a) const {
  std::vector<std::uint32_t> v(components().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = component_value(a, i);
  return v;
}

Elem FiniteRing::make(const std::vector<std::uint32_t>& vals) const {
  if (vals.size() != components().size()) fail(Error::Kind::Precondition, "component count mismatch");
  Elem a = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] >= components()[i].size()) fail(Error::Kind::Precondition, "component value out of range");
    a += vals[i] * data_->radix[i];
  }
  return a;
}

Elem FiniteRing::from_int(long long v) const {
  std::vector<std::uint32_t> vals;
  for (const auto& c : components()) {
    if (c.kind == Component::Kind::Cyclic) {
      long long m = c.modulus;
      vals.push_back(static_cast<std::uint32_t>(((v % m) + m) % m));
    } else {
      vals.push_back(c.field.from_int(v));
    }
  }
  return make(vals);
}

Elem FiniteRing::add_slow(Elem a, Elem b) const {
  Elem r = 0;
  for (std::size_t i = 0; i < components().size(); ++i) {
    const auto& c = components()[i];
    auto x = component_value(a, i), y = component_value(b, i);
    std::uint32_t z = c.kind == Component::Kind::Cyclic ? (x + y) % c.modulus : c.field.add(x, y);
    r += z * data_->radix[i];
  }
  return r;
}

Elem FiniteRing::mul_slow(Elem a, Elem b) const {
  Elem r = 0;
  for (std::size_t i = 0; i < components().size(); ++i) {
    const auto& c = components()[i];
    auto x = component_value(a, i), y = component_value(b, i);
    std::uint32_t z = c.kind == Component::Kind::Cyclic
                          ? static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * y) % c.modulus)
                          : c.field.mul(x, y);
    r += z * data_->radix[i];
  }
  return r;
}

Elem FiniteRing::add(Elem a, Elem b) const {
  if (!data_->add_table.empty()) return data_->add_table[a * data_->size + b];
  return add_slow(a, b);
}

Elem FiniteRing::mul(Elem a, Elem b) const {
  if (!data_->mul_table.empty()) return data_->mul_table[a * data_->size + b];
  return mul_slow(a, b);
}

Elem FiniteRing::neg(Elem a) const {
  Elem r = 0;
  for (std::size_t i = 0; i < components().size(); ++i) {
    const auto& c = components()[i];
    auto x = component_value(a, i);
    std::uint32_t z = c.kind == Component::Kind::Cyclic ? (c.modulus - x) % c.modulus : c.field.neg(x);
    r += z * data_->radix[i];
  }
  return r;
}

bool FiniteRing::is_unit(Elem a) const {
  for (std::size_t i = 0; i < components().size(); ++i) {
    const auto& c = components()[i];
    auto x = component_value(a, i);
    if (c.kind == Component::Kind::Cyclic ? std::gcd(x, c.modulus) != 1 : x == 0) return false;
  }
  return true;
}

std::vector<Elem> FiniteRing::additive_generators() const {
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < components().size(); ++i) {
    const auto& c = components()[i];
    if (c.kind == Component::Kind::Cyclic) {
      gens.push_back(data_->radix[i]);
    } else {
      std::uint32_t place = 1;
      for (int k = 0; k < c.field.degree(); ++k, place *= static_cast<std::uint32_t>(c.field.characteristic()))
        gens.push_back(place * data_->radix[i]);
    }
  }
  return gens;
}

std::string FiniteRing::to_string(Elem a) const {
  if (components().size() == 1) return std::to_string(a);
  std::string out = "(";
  for (std::size_t i = 0; i < components().size(); ++i)
    out += (i ? "," : "") + std::to_string(component_value(a, i));
  return out + ")";
}

// ---------------------------------------------------------------------------

bool RingIdeal::contains(Elem a) const { return std::binary_search(elements.begin(), elements.end(), a); }

bool RingIdeal::contains(const RingIdeal& other) const {
  return std::includes(elements.begin(), elements.end(), other.elements.begin(), other.elements.end());
}

std::string RingIdeal::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < generators.size(); ++i) out += (i ? "," : "") + ring.to_string(generators[i]);
  return out + ")";
}

RingIdeal ideal_generated(const FiniteRing& a, const std::vector<Elem>& gens) {
  std::set<Elem> seeds;
  for (Elem g : gens)
    for (Elem r = 0; r < a.size(); ++r) seeds.insert(a.mul(r, g));
  std::set<Elem> span = {0};
  std::deque<Elem> todo = {0};
  while (!todo.empty()) {
    Elem x = todo.front();
    todo.pop_front();
    for (Elem s : seeds) {
      Elem y = a.add(x, s);
      if (span.insert(y).second) todo.push_back(y);
    }
  }
  return RingIdeal{a, gens, std::vector<Elem>(span.begin(), span.end())};
}

RingIdeal intersect(const RingIdeal& x, const RingIdeal& y) {
  std::vector<Elem> common;
  std::set_intersection(x.elements.begin(), x.elements.end(), y.elements.begin(), y.elements.end(),
                        std::back_inserter(common));
  RingIdeal out{x.ring, {}, common};
  for (Elem e : common)
    if (e != 0) out.generators.push_back(e);
  if (out.generators.empty()) out.generators.push_back(0);
  return out;
}

std::vector<RingIdeal> all_ideals(const FiniteRing& a) {
  // Ideals of a product are products of component ideals; each component is a
  // principal ideal ring, so record one generator value per component.
  std::vector<std::vector<std::uint32_t>> choices;
  for (const auto& c : a.components()) {
    std::vector<std::uint32_t> gens;
    if (c.kind == Component::Kind::Cyclic) {
      for (std::uint32_t d = 1; d <= c.modulus; ++d)
        if (c.modulus % d == 0) gens.push_back(d % c.modulus);
    } else {
      gens = {1, 0};
    }
    choices.push_back(gens);
  }
  std::vector<RingIdeal> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    std::vector<std::uint32_t> gvals(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i) gvals[i] = choices[i][pick[i]];
    out.push_back(ideal_generated(a, {a.make(gvals)}));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

std::vector<RingIdeal> cotrivial_ideals(const FiniteRing& a, const la::Field& k) {
  std::vector<RingIdeal> out;
  for (auto& ideal : all_ideals(a)) {
    std::uint32_t quot = ideal.quotient_size();
    if (k.is_rational() || quot % static_cast<std::uint32_t>(k.characteristic()) != 0) out.push_back(std::move(ideal));
  }
  std::stable_sort(out.begin(), out.end(), [](const RingIdeal& x, const RingIdeal& y) {
    if (x.quotient_size() != y.quotient_size()) return x.quotient_size() < y.quotient_size();
    return x.elements < y.elements;
  });
  return out;
}

std::vector<PrimaryIdempotent> primary_idempotents(const FiniteRing& a) {
  std::vector<PrimaryIdempotent> out;
  for (int p : prime_factors(a.size())) {
    std::vector<std::uint32_t> vals;
    for (const auto& c : a.components()) {
      if (c.kind == Component::Kind::Galois) {
        vals.push_back(c.field.characteristic() == p ? 1 : 0);
        continue;
      }
      std::uint32_t pk = 1, m = c.modulus;
      while (m % static_cast<std::uint32_t>(p) == 0) {
        m /= static_cast<std::uint32_t>(p);
        pk *= static_cast<std::uint32_t>(p);
      }
      if (pk == 1) {
        vals.push_back(0);
      } else if (m == 1) {
        vals.push_back(1 % c.modulus);
      } else {
        // e = 1 mod p^k, e = 0 mod m
        std::uint64_t e = static_cast<std::uint64_t>(m) * modinv(m % pk, pk);
        vals.push_back(static_cast<std::uint32_t>(e % c.modulus));
      }
    }
    out.push_back({p, a.make(vals)});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<RingHom> ring_homs(const FiniteRing& a, const la::Field& k) {
  std::vector<RingHom> out;
  if (!k.is_finite()) return out;
  const auto p = static_cast<std::uint32_t>(k.characteristic());
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    const auto& c = a.components()[i];
    std::vector<std::vector<std::uint32_t>> component_maps;  // indexed by component value
    if (c.kind == Component::Kind::Cyclic) {
      if (c.modulus % p != 0) continue;
      std::vector<std::uint32_t> m(c.modulus);
      for (std::uint32_t v = 0; v < c.modulus; ++v) m[v] = k.from_int(v);
      component_maps.push_back(std::move(m));
    } else {
      if (c.field.characteristic() != k.characteristic() || k.degree() % c.field.degree() != 0) continue;
      const auto& modulus = c.field.modulus();
      for (std::uint32_t r = 0; r < k.order(); ++r) {
        std::uint32_t acc = 0;
        for (std::size_t j = modulus.size(); j-- > 0;) acc = k.add(k.mul(acc, r), k.from_int(modulus[j]));
        if (acc != 0) continue;
        std::vector<std::uint32_t> m(c.modulus);
        for (std::uint32_t v = 0; v < c.modulus; ++v) {
          auto coeffs = c.field.coefficients(v);
          std::uint32_t img = 0;
          for (std::size_t j = coeffs.size(); j-- > 0;) img = k.add(k.mul(img, r), k.from_int(coeffs[j]));
          m[v] = img;
        }
        component_maps.push_back(std::move(m));
      }
    }
    for (auto& cm : component_maps) {
      RingHom h{a, k, i, std::vector<std::uint32_t>(a.size())};
      for (Elem x = 0; x < a.size(); ++x) h.values[x] = cm[a.component_value(x, i)];
      out.push_back(std::move(h));
    }
  }
  return out;
}

la::Matrix apply(const RingHom& h, const RingMatrix& m) {
  la::Matrix out(h.target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set_code(i, j, h(m.at(i, j)));
  return out;
}

// ---------------------------------------------------------------------------

RingMatrix::RingMatrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows * cols) fail(Error::Kind::Precondition, "RingMatrix: entry count mismatch");
}

RingMatrix RingMatrix::identity(const FiniteRing& a, std::size_t n) {
  RingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, a.one());
  return m;
}

RingMatrix RingMatrix::mul(const FiniteRing& a, const RingMatrix& o) const {
  if (cols_ != o.rows_) fail(Error::Kind::Precondition, "RingMatrix::mul: shape mismatch");
  RingMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      Elem x = at(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < o.cols_; ++k) r.e_[i * o.cols_ + k] = a.add(r.e_[i * o.cols_ + k], a.mul(x, o.at(j, k)));
    }
  return r;
}

RingMatrix RingMatrix::add(const FiniteRing& a, const RingMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Error::Kind::Precondition, "RingMatrix::add: shape mismatch");
  RingMatrix r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = a.add(e_[k], o.e_[k]);
  return r;
}

RingMatrix RingMatrix::direct_sum(const RingMatrix& x, const RingMatrix& y) {
  RingMatrix r(x.rows_ + y.rows_, x.cols_ + y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i)
    for (std::size_t j = 0; j < x.cols_; ++j) r.set(i, j, x.at(i, j));
  for (std::size_t i = 0; i < y.rows_; ++i)
    for (std::size_t j = 0; j < y.cols_; ++j) r.set(x.rows_ + i, x.cols_ + j, y.at(i, j));
  return r;
}

std::string RingMatrix::to_string(const FiniteRing& a) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << a.to_string(at(i, j));
  }
  os << "]";
  return os.str();
}

std::vector<RingMatrix> matrix_monoid_generators(const FiniteRing& a, std::size_t n) {
  if (n == 0) fail(Error::Kind::Precondition, "matrix_monoid_generators: n >= 1");
  std::vector<RingMatrix> gens;
  auto push = [&](RingMatrix m) {
    if (std::find(gens.begin(), gens.end(), m) == gens.end()) gens.push_back(std::move(m));
  };
  const RingMatrix id = RingMatrix::identity(a, n);
  push(id);
  if (n >= 2)
    for (Elem r : a.additive_generators()) {
      RingMatrix t = id;
      t.set(0, 1, r);
      push(t);
    }
  for (Elem r = 0; r < a.size(); ++r) {
    if (r == 0 || r == a.one()) continue;
    RingMatrix d = id;
    d.set(0, 0, r);
    push(d);
  }
  if (n >= 2) {
    RingMatrix swap(n, n), cycle(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      swap.set(i, i < 2 ? 1 - i : i, a.one());
      cycle.set((i + 1) % n, i, a.one());
    }
    push(swap);
    push(cycle);
  }
  RingMatrix idem = id;
  idem.set(n - 1, n - 1, 0);
  push(idem);
  return gens;
}

std::uint64_t matrix_count(const FiniteRing& a, std::size_t rows, std::size_t cols, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < rows * cols; ++k) {
    count *= a.size();
    if (count > cap)
      fail(Error::Kind::CapExceeded, "more than " + std::to_string(cap) + " matrices of shape " + std::to_string(rows) +
                                         "x" + std::to_string(cols) + " over " + a.name());
  }
  return count;
}

RingMatrix matrix_from_index(const FiniteRing& a, std::size_t rows, std::size_t cols, std::uint64_t index) {
  RingMatrix m(rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    m.set(k / cols, k % cols, static_cast<Elem>(index % a.size()));
    index /= a.size();
  }
  return m;
}

std::uint64_t matrix_index(const FiniteRing& a, const RingMatrix& m) {
  std::uint64_t idx = 0;
  const auto& e = m.entries();
  for (std::size_t k = e.size(); k-- > 0;) idx = idx * a.size() + e[k];
  return idx;
}

std::vector<RingMatrix> all_matrices(const FiniteRing& a, std::size_t rows, std::size_t cols, std::uint64_t cap) {
  const std::uint64_t count = matrix_count(a, rows, cols, cap);
  std::vector<RingMatrix> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(matrix_from_index(a, rows, cols, i));
  return out;
}

std::vector<RingMatrix> monoid_closure(const FiniteRing& a, const std::vector<RingMatrix>& gens, std::size_t cap) {
  if (gens.empty()) return {};
  std::set<RingMatrix> seen;
  std::deque<RingMatrix> todo;
  auto id = RingMatrix::identity(a, gens.front().rows());
  seen.insert(id);
  todo.push_back(id);
  while (!todo.empty()) {
    RingMatrix x = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      RingMatrix y = x.mul(a, g);
      if (seen.insert(y).second) {
        if (seen.size() > cap) fail(Error::Kind::CapExceeded, "monoid closure exceeds cap");
        todo.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace steinlab::ring

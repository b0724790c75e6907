#include "steinlab/exactla.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace steinlab::la {

namespace {

using detail::FieldData;

// Conway polynomials, coefficients from the constant term up, monic.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}}, {{3, 1}, {1, 1}},          {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}}, {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 1}, {4, 1}},          {{7, 2}, {3, 6, 1}},       {{7, 3}, {4, 0, 6, 1}},
      {{7, 4}, {3, 4, 5, 0, 1}},
  };
  return table;
}

std::uint32_t ipow(std::uint32_t b, int e) {
  std::uint32_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<int> digits(std::uint32_t code, int p, int e) {
  std::vector<int> c(static_cast<std::size_t>(e));
  for (int i = 0; i < e; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint32_t>(p));
    code /= static_cast<std::uint32_t>(p);
  }
  return c;
}

std::uint32_t undigits(const std::vector<int>& c, int p) {
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(c[i]);
  return code;
}

std::unique_ptr<FieldData> build_finite(int p, int e) {
  auto f = std::make_unique<FieldData>();
  f->p = p;
  f->e = e;
  f->q = ipow(static_cast<std::uint32_t>(p), e);
  f->modulus = conway_table().at({p, e});
  f->name = "F_" + std::to_string(f->q);
  const std::uint32_t q = f->q;

  f->neg_table.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    auto c = digits(a, p, e);
    for (auto& x : c) x = (p - x) % p;
    f->neg_table[a] = undigits(c, p);
  }

  // Powers of x. The Conway polynomial is primitive, so x has order q-1;
  // hitting every nonzero element exactly once also certifies irreducibility.
  f->log_table.assign(q, -1);
  f->exp_table.assign(2 * (q - 1), 0);
  std::vector<int> cur(static_cast<std::size_t>(e), 0);
  cur[0] = 1;
  if (e == 1) {
    // x = -f_0 is the primitive root represented by the degree-one Conway polynomial.
    cur[0] = (p - f->modulus[0]) % p;
  }
  std::vector<int> gen = cur;
  std::vector<int> acc(static_cast<std::size_t>(e), 0);
  acc[0] = 1;
  for (std::uint32_t k = 0; k < q - 1; ++k) {
    std::uint32_t code = undigits(acc, p);
    if (f->log_table[code] != -1 || code == 0)
      fail(Error::Kind::Defect, "built-in modulus for " + f->name + " is not primitive");
    f->log_table[code] = static_cast<std::int32_t>(k);
    f->exp_table[k] = code;
    f->exp_table[k + q - 1] = code;
    // acc *= generator
    if (e == 1) {
      acc[0] = (acc[0] * gen[0]) % p;
    } else {
      int top = acc[static_cast<std::size_t>(e - 1)];
      for (int i = e - 1; i > 0; --i) acc[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i - 1)];
      acc[0] = 0;
      for (int i = 0; i < e; ++i)
        acc[static_cast<std::size_t>(i)] =
            ((acc[static_cast<std::size_t>(i)] - top * f->modulus[static_cast<std::size_t>(i)]) % p + p) % p;
    }
  }
  if (undigits(acc, p) != 1) fail(Error::Kind::Defect, "multiplicative order mismatch in " + f->name);

  if (p != 2 && e > 1 && q <= 1024) {
    f->add_table.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      auto ca = digits(a, p, e);
      for (std::uint32_t b = 0; b < q; ++b) {
        auto cb = digits(b, p, e);
        std::vector<int> s(static_cast<std::size_t>(e));
        for (int i = 0; i < e; ++i)
          s[static_cast<std::size_t>(i)] = (ca[static_cast<std::size_t>(i)] + cb[static_cast<std::size_t>(i)]) % p;
        f->add_table[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint16_t>(undigits(s, p));
      }
    }
  }
  return f;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<FieldData>> fields;
  FieldData rationals;

  Registry() {
    rationals.p = 0;
    rationals.e = 1;
    rationals.q = 0;
    rationals.modulus = {0, 1};
    rationals.name = "Q";
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

Field::Field() : d_(&registry().rationals) {}

Field Field::rationals() { return Field(&registry().rationals); }

bool Field::supported(int p, int e) { return conway_table().count({p, e}) != 0; }

Field Field::gf(int p, int e) {
  if (!supported(p, e))
    fail(Error::Kind::Precondition,
         "unsupported field F_" + std::to_string(p) + "^" + std::to_string(e) + " (need p in {2,3,5,7}, e <= 4)");
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.fields.find({p, e});
  if (it == reg.fields.end()) it = reg.fields.emplace(std::make_pair(p, e), build_finite(p, e)).first;
  return Field(it->second.get());
}

Field Field::of_order(std::uint32_t q) {
  if (q == 0) return rationals();
  for (int p : {2, 3, 5, 7}) {
    std::uint32_t x = 1;
    for (int e = 1; e <= 4; ++e) {
      x *= static_cast<std::uint32_t>(p);
      if (x == q) return gf(p, e);
    }
  }
  fail(Error::Kind::Precondition, "no supported field of order " + std::to_string(q));
}

Field Field::parse(std::string_view spec) {
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s == "Q" || s == "QQ") return rationals();
  std::string digits_part;
  if (s.rfind("F_", 0) == 0)
    digits_part = s.substr(2);
  else if (s.rfind("GF(", 0) == 0 && s.back() == ')')
    digits_part = s.substr(3, s.size() - 4);
  else if (!s.empty() && s[0] == 'F')
    digits_part = s.substr(1);
  if (digits_part.empty() || !std::all_of(digits_part.begin(), digits_part.end(), ::isdigit))
    fail(Error::Kind::Parse, "cannot parse field '" + s + "'");
  return of_order(static_cast<std::uint32_t>(std::stoul(digits_part)));
}

std::uint32_t Field::add_slow(std::uint32_t a, std::uint32_t b) const {
  const auto p = static_cast<std::uint32_t>(d_->p);
  std::uint32_t r = 0, mult = 1;
  for (int i = 0; i < d_->e; ++i) {
    r += ((a % p + b % p) % p) * mult;
    a /= p;
    b /= p;
    mult *= p;
  }
  return r;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) fail(Error::Kind::Precondition, "division by zero in " + name());
  const std::uint32_t n = d_->q - 1;
  return d_->exp_table[(n - static_cast<std::uint32_t>(d_->log_table[a])) % n];
}

std::uint32_t Field::exp(long long k) const {
  const long long n = d_->q - 1;
  long long r = ((k % n) + n) % n;
  return d_->exp_table[static_cast<std::size_t>(r)];
}

int Field::log(std::uint32_t a) const {
  if (a == 0) fail(Error::Kind::Precondition, "log of zero");
  return d_->log_table[a];
}

std::uint32_t Field::pow(std::uint32_t a, long long k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) fail(Error::Kind::Precondition, "negative power of zero");
    return 0;
  }
  return exp(static_cast<long long>(d_->log_table[a]) * k);
}

std::uint32_t Field::frobenius(std::uint32_t a, int k) const {
  if (a == 0) return 0;
  const long long n = d_->q - 1;
  long long pk = 1;
  for (int i = 0; i < ((k % d_->e) + d_->e) % d_->e; ++i) pk = (pk * d_->p) % n;
  return exp(static_cast<long long>(d_->log_table[a]) * pk);
}

std::uint32_t Field::from_int(long long v) const {
  if (!is_finite()) fail(Error::Kind::Precondition, "from_int on Q codes");
  long long p = d_->p;
  return static_cast<std::uint32_t>(((v % p) + p) % p);
}

std::vector<int> Field::coefficients(std::uint32_t code) const { return digits(code, d_->p, d_->e); }

std::uint32_t Field::from_coefficients(std::span<const int> coeffs) const {
  std::vector<int> c(static_cast<std::size_t>(d_->e), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i >= c.size()) {
      if (coeffs[i] % d_->p != 0) fail(Error::Kind::Parse, "too many coefficients for " + name());
      continue;
    }
    c[i] = ((coeffs[i] % d_->p) + d_->p) % d_->p;
  }
  return undigits(c, d_->p);
}

bool Field::has_subfield(const Field& sub) const {
  if (sub.d_ == d_) return true;
  if (!is_finite() || !sub.is_finite()) return false;
  return sub.characteristic() == characteristic() && degree() % sub.degree() == 0;
}

std::uint32_t Field::embed(const Field& sub, std::uint32_t code) const {
  if (sub.d_ == d_) return code;
  if (!has_subfield(sub)) fail(Error::Kind::FieldMismatch, sub.name() + " is not a subfield of " + name());
  if (code == 0) return 0;
  if (sub.degree() == 1) return code;
  // Conway compatibility: the primitive element of F_{p^e1} maps to x^((q-1)/(q1-1)).
  const long long ratio = static_cast<long long>(order() - 1) / static_cast<long long>(sub.order() - 1);
  return exp(static_cast<long long>(sub.log(code)) * ratio);
}

Field Field::extension(int s) const {
  if (!is_finite()) fail(Error::Kind::Precondition, "no finite extensions of Q");
  return gf(characteristic(), degree() * s);
}

Field Field::prime_field() const { return is_finite() ? gf(characteristic(), 1) : rationals(); }

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const Field& f) : field_(f) {
  if (f.is_finite())
    value_ = std::uint32_t{0};
  else
    value_ = Rational(0);
}

Scalar Scalar::from_int(const Field& f, long long v) {
  Scalar s(f);
  if (f.is_finite())
    s.value_ = f.from_int(v);
  else
    s.value_ = Rational(static_cast<long>(v));
  return s;
}

Scalar Scalar::from_code(const Field& f, std::uint32_t code) {
  if (!f.is_finite() || code >= f.order()) fail(Error::Kind::Precondition, "bad element code for " + f.name());
  Scalar s(f);
  s.value_ = code;
  return s;
}

Scalar Scalar::from_rational(const Rational& q) {
  Scalar s(Field::rationals());
  Rational c = q;
  c.canonicalize();
  s.value_ = c;
  return s;
}

bool Scalar::is_zero() const {
  if (field_.is_finite()) return std::get<std::uint32_t>(value_) == 0;
  return std::get<Rational>(value_) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_finite()) return std::get<std::uint32_t>(value_) == 1;
  return std::get<Rational>(value_) == 1;
}

std::uint32_t Scalar::code() const {
  if (!field_.is_finite()) fail(Error::Kind::Precondition, "code() on a rational scalar");
  return std::get<std::uint32_t>(value_);
}

const Rational& Scalar::rational() const {
  if (field_.is_finite()) fail(Error::Kind::Precondition, "rational() on a finite-field scalar");
  return std::get<Rational>(value_);
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_))
    fail(Error::Kind::FieldMismatch, "scalar field mismatch: " + field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  if (field_.is_finite())
    r.value_ = field_.add(code(), o.code());
  else
    r.value_ = Rational(rational() + o.rational());
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  if (field_.is_finite())
    r.value_ = field_.sub(code(), o.code());
  else
    r.value_ = Rational(rational() - o.rational());
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  if (field_.is_finite())
    r.value_ = field_.mul(code(), o.code());
  else
    r.value_ = Rational(rational() * o.rational());
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (field_.is_finite())
    r.value_ = field_.neg(code());
  else
    r.value_ = Rational(-rational());
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Error::Kind::Precondition, "inverse of zero");
  Scalar r(field_);
  if (field_.is_finite())
    r.value_ = field_.inv(code());
  else
    r.value_ = Rational(1 / rational());
  return r;
}

Scalar Scalar::pow(long long k) const {
  if (field_.is_finite()) return from_code(field_, field_.pow(code(), k));
  if (k < 0) return inverse().pow(-k);
  Rational acc(1), base = rational();
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return from_rational(acc);
}

bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

std::string Scalar::to_string() const {
  if (field_.is_finite()) return std::to_string(code());
  return rational().get_str();
}

// ---------------------------------------------------------------------------
// Kernels

namespace {

struct FiniteOps {
  Field f;
  using T = std::uint32_t;
  static T zero() { return 0; }
  static T one() { return 1; }
  static bool is_zero(T a) { return a == 0; }
  T add(T a, T b) const { return f.add(a, b); }
  T sub(T a, T b) const { return f.sub(a, b); }
  T mul(T a, T b) const { return f.mul(a, b); }
  T neg(T a) const { return f.neg(a); }
  T inv(T a) const { return f.inv(a); }
  // x += c*y over a contiguous range
  void axpy(T c, const T* y, T* x, std::size_t n) const {
    if (c == 0) return;
    if (f.characteristic() == 2) {
      if (c == 1) {
        for (std::size_t j = 0; j < n; ++j) x[j] ^= y[j];
      } else {
        for (std::size_t j = 0; j < n; ++j) x[j] ^= f.mul(c, y[j]);
      }
      return;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) x[j] = f.add(x[j], f.mul(c, y[j]));
  }
};

struct RationalOps {
  using T = Rational;
  static T zero() { return T(0); }
  static T one() { return T(1); }
  static bool is_zero(const T& a) { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
  void axpy(const T& c, const T* y, T* x, std::size_t n) const {
    if (c == 0) return;
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) x[j] += c * y[j];
  }
};

template <class Ops>
void rref_impl(const Ops& ops, std::vector<typename Ops::T>& a, std::size_t rows, std::size_t cols,
               std::vector<std::size_t>& pivots) {
  using T = typename Ops::T;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!ops.is_zero(a[i * cols + c])) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    T pinv = ops.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], pinv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || ops.is_zero(a[i * cols + c])) continue;
      T factor = ops.neg(a[i * cols + c]);
      ops.axpy(factor, &a[r * cols + c], &a[i * cols + c], cols - c);
    }
    pivots.push_back(c);
    ++r;
  }
}

template <class Ops>
void matmul_impl(const Ops& ops, const std::vector<typename Ops::T>& a, const std::vector<typename Ops::T>& b,
                 std::vector<typename Ops::T>& c, std::size_t n, std::size_t m, std::size_t k) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& aij = a[i * m + j];
      if (ops.is_zero(aij)) continue;
      ops.axpy(aij, &b[j * k], &c[i * k], k);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
  if (f.is_finite())
    fin_.assign(rows * cols, 0);
  else
    rat_.assign(rows * cols, Rational(0));
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
  return m;
}

Matrix Matrix::from_ints(const Field& f, std::size_t rows, std::size_t cols, std::span<const long long> values) {
  if (values.size() != rows * cols) fail(Error::Kind::Precondition, "from_ints: entry count mismatch");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set_int(i, j, values[i * cols + j]);
  return m;
}

Matrix Matrix::from_ints(const Field& f, std::size_t rows, std::size_t cols, std::initializer_list<long long> values) {
  std::vector<long long> v(values);
  return from_ints(f, rows, cols, std::span<const long long>(v));
}

Matrix Matrix::from_codes(const Field& f, std::size_t rows, std::size_t cols, std::vector<std::uint32_t> codes) {
  if (!f.is_finite()) fail(Error::Kind::Precondition, "from_codes over Q");
  if (codes.size() != rows * cols) fail(Error::Kind::Precondition, "from_codes: entry count mismatch");
  for (auto c : codes)
    if (c >= f.order()) fail(Error::Kind::Precondition, "from_codes: code out of range");
  Matrix m(f, rows, cols);
  m.fin_ = std::move(codes);
  return m;
}

Matrix Matrix::from_scalars(const Field& f, std::size_t rows, std::size_t cols, std::span<const Scalar> values) {
  if (values.size() != rows * cols) fail(Error::Kind::Precondition, "from_scalars: entry count mismatch");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, values[i * cols + j]);
  return m;
}

Matrix Matrix::unit_row(const Field& f, std::size_t n, std::size_t i) {
  Matrix m(f, 1, n);
  m.set_int(0, i, 1);
  return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  if (field_.is_finite()) return Scalar::from_code(field_, fin_[i * cols_ + j]);
  return Scalar::from_rational(rat_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (!(v.field() == field_)) fail(Error::Kind::FieldMismatch, "set: scalar over " + v.field().name() + " into " + field_.name());
  if (field_.is_finite())
    fin_[i * cols_ + j] = v.code();
  else
    rat_[i * cols_ + j] = v.rational();
}

void Matrix::set_int(std::size_t i, std::size_t j, long long v) {
  if (field_.is_finite())
    fin_[i * cols_ + j] = field_.from_int(v);
  else
    rat_[i * cols_ + j] = Rational(static_cast<long>(v));
}

bool Matrix::is_zero_at(std::size_t i, std::size_t j) const {
  return field_.is_finite() ? fin_[i * cols_ + j] == 0 : rat_[i * cols_ + j] == 0;
}

void Matrix::check_same(const Matrix& o, const char* op) const {
  if (!(field_ == o.field_))
    fail(Error::Kind::FieldMismatch, std::string(op) + ": field mismatch " + field_.name() + " vs " + o.field_.name());
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same(o, "multiply");
  if (cols_ != o.rows_) fail(Error::Kind::Precondition, "multiply: shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  if (field_.is_finite())
    matmul_impl(FiniteOps{field_}, fin_, o.fin_, r.fin_, rows_, cols_, o.cols_);
  else
    matmul_impl(RationalOps{}, rat_, o.rat_, r.rat_, rows_, cols_, o.cols_);
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  r.axpy(Scalar::one(field_), o);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  r.axpy(-Scalar::one(field_), o);
  return r;
}

void Matrix::axpy(const Scalar& s, const Matrix& o) {
  check_same(o, "axpy");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Error::Kind::Precondition, "axpy: shape mismatch");
  if (field_.is_finite())
    FiniteOps{field_}.axpy(s.code(), o.fin_.data(), fin_.data(), fin_.size());
  else
    RationalOps{}.axpy(s.rational(), o.rat_.data(), rat_.data(), rat_.size());
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r(field_, rows_, cols_);
  r.axpy(s, *this);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_finite())
        t.fin_[j * rows_ + i] = fin_[i * cols_ + j];
      else
        t.rat_[j * rows_ + i] = rat_[i * cols_ + j];
    }
  return t;
}

Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix r(field_, idx.size(), cols_);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_finite())
        r.fin_[a * cols_ + j] = fin_[idx[a] * cols_ + j];
      else
        r.rat_[a * cols_ + j] = rat_[idx[a] * cols_ + j];
    }
  return r;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (field_.is_finite())
        r.fin_[i * idx.size() + b] = fin_[i * cols_ + idx[b]];
      else
        r.rat_[i * idx.size() + b] = rat_[i * cols_ + idx[b]];
    }
  return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(Error::Kind::Precondition, "block out of range");
  Matrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      if (field_.is_finite())
        r.fin_[i * nc + j] = fin_[(r0 + i) * cols_ + c0 + j];
      else
        r.rat_[i * nc + j] = rat_[(r0 + i) * cols_ + c0 + j];
    }
  return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ == 0) return b;
  if (b.rows_ == 0) return a;
  a.check_same(b, "vstack");
  if (a.cols_ != b.cols_) fail(Error::Kind::Precondition, "vstack: column mismatch");
  Matrix r = a;
  r.rows_ += b.rows_;
  r.fin_.insert(r.fin_.end(), b.fin_.begin(), b.fin_.end());
  r.rat_.insert(r.rat_.end(), b.rat_.begin(), b.rat_.end());
  return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) { return vstack(a.transpose(), b.transpose()).transpose(); }

void Matrix::append_row(const Matrix& r) {
  if (rows_ == 0 && cols_ == 0) {
    *this = r;
    return;
  }
  *this = vstack(*this, r);
}

bool Matrix::is_zero() const {
  if (field_.is_finite()) return std::all_of(fin_.begin(), fin_.end(), [](auto c) { return c == 0; });
  return std::all_of(rat_.begin(), rat_.end(), [](const Rational& c) { return c == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      bool want_one = i == j;
      if (field_.is_finite()) {
        if (fin_[i * cols_ + j] != (want_one ? 1u : 0u)) return false;
      } else if (rat_[i * cols_ + j] != (want_one ? 1 : 0)) {
        return false;
      }
    }
  return true;
}

Matrix Matrix::embed(const Field& super) const {
  if (super == field_) return *this;
  if (!super.has_subfield(field_)) fail(Error::Kind::FieldMismatch, field_.name() + " does not embed in " + super.name());
  Matrix r(super, rows_, cols_);
  for (std::size_t k = 0; k < fin_.size(); ++k) r.fin_[k] = super.embed(field_, fin_[k]);
  return r;
}

Matrix Matrix::frobenius(int k) const {
  if (!field_.is_finite()) return *this;
  Matrix r = *this;
  for (auto& c : r.fin_) c = field_.frobenius(c, k);
  return r;
}

std::optional<Matrix> Matrix::restrict_to(const Field& sub) const {
  if (sub == field_) return *this;
  if (!field_.has_subfield(sub)) return std::nullopt;
  std::map<std::uint32_t, std::uint32_t> back;
  for (std::uint32_t c = 0; c < sub.order(); ++c) back[field_.embed(sub, c)] = c;
  Matrix r(sub, rows_, cols_);
  for (std::size_t k = 0; k < fin_.size(); ++k) {
    auto it = back.find(fin_[k]);
    if (it == back.end()) return std::nullopt;
    r.fin_[k] = it->second;
  }
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.fin_ == b.fin_ && a.rat_ == b.rat_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Free functions

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}};
  if (m.field().is_finite())
    rref_impl(FiniteOps{m.field()}, res.form.codes(), m.rows(), m.cols(), res.pivots);
  else
    rref_impl(RationalOps{}, res.form.rats(), m.rows(), m.cols(), res.pivots);
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  auto [r, piv] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  Matrix basis(f, 0, m.cols());
  std::vector<Matrix> rows;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Matrix v(f, 1, m.cols());
    v.set_int(0, free, 1);
    for (std::size_t i = 0; i < piv.size(); ++i) v.set(0, piv[i], -r.at(i, free));
    basis.append_row(v);
  }
  if (basis.rows() == 0) return Subspace(f, m.cols());
  return Subspace::span(basis);
}

Subspace image_basis(const Matrix& m) {
  if (m.cols() == 0) return Subspace(m.field(), m.rows());
  return Subspace::span(m.transpose());
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) fail(Error::Kind::FieldMismatch, "kronecker: field mismatch");
  const Field& f = a.field();
  Matrix r(f, a.rows() * b.rows(), a.cols() * b.cols());
  const std::size_t rc = r.cols();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.is_zero_at(i, j)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          std::size_t row = i * b.rows() + k, col = j * b.cols() + l;
          if (f.is_finite())
            r.codes()[row * rc + col] = f.mul(a.code(i, j), b.code(k, l));
          else
            r.rats()[row * rc + col] = a.rats()[i * a.cols() + j] * b.rats()[k * b.cols() + l];
        }
    }
  return r;
}

Matrix kronecker_power(const Matrix& a, int d) {
  Matrix r = Matrix::identity(a.field(), 1);
  for (int i = 0; i < d; ++i) r = kronecker(r, a);
  return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) fail(Error::Kind::FieldMismatch, "direct_sum: field mismatch");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b.at(i, j));
  return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  auto [r, piv] = rref(Matrix::hstack(m, Matrix::identity(m.field(), n)));
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  return r.block(0, n, n, n);
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) fail(Error::Kind::Precondition, "determinant of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Matrix a = m;
  Scalar det = Scalar::one(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (!a.is_zero_at(i, c)) {
        sel = i;
        break;
      }
    if (sel == n) return Scalar(f);
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) {
        Scalar t = a.at(sel, j);
        a.set(sel, j, a.at(c, j));
        a.set(c, j, t);
      }
      det = -det;
    }
    Scalar piv = a.at(c, c);
    det = det * piv;
    Scalar pinv = piv.inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.is_zero_at(i, c)) continue;
      Scalar factor = a.at(i, c) * pinv;
      for (std::size_t j = c; j < n; ++j) a.set(i, j, a.at(i, j) - factor * a.at(c, j));
    }
  }
  return det;
}

Matrix power(const Matrix& m, unsigned long long k) {
  Matrix result = Matrix::identity(m.field(), m.rows());
  Matrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool is_unipotent(const Matrix& m) {
  if (!m.is_square()) return false;
  Matrix nil = m - Matrix::identity(m.field(), m.rows());
  return power(nil, m.rows()).is_zero();
}

Matrix apply(const Matrix& a, const Matrix& rows) { return rows * a.transpose(); }

Matrix restrict_action(const Matrix& action, const Subspace& sub) {
  Matrix images = apply(action, sub.basis());
  if (!sub.contains_all(images)) fail(Error::Kind::Defect, "restrict_action: subspace is not invariant");
  return sub.coordinates(images).transpose();
}

Matrix quotient_action(const Matrix& action, const Subspace& sub) {
  const Field& f = action.field();
  const std::size_t n = action.rows();
  std::vector<bool> is_pivot(n, false);
  for (auto c : sub.pivots()) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix q(f, free.size(), free.size());
  Matrix at = action.transpose();  // row c of at = image of e_c
  for (std::size_t j = 0; j < free.size(); ++j) {
    Matrix w = at.row(free[j]);
    for (std::size_t i = 0; i < sub.dim(); ++i) {
      Scalar c = w.at(0, sub.pivots()[i]);
      if (!c.is_zero()) w.axpy(-c, sub.basis().row(i));
    }
    for (std::size_t i = 0; i < free.size(); ++i) q.set(i, j, w.at(0, free[i]));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(const Field& f, std::size_t ambient) : ambient_(ambient), basis_(f, 0, ambient) {}

Subspace Subspace::span(const Matrix& rows) {
  auto [r, piv] = rref(rows);
  Subspace s(rows.field(), rows.cols());
  std::vector<std::size_t> keep(piv.size());
  std::iota(keep.begin(), keep.end(), 0);
  s.basis_ = r.select_rows(keep);
  s.pivots_ = std::move(piv);
  return s;
}

Subspace Subspace::full(const Field& f, std::size_t n) { return span(Matrix::identity(f, n)); }

bool Subspace::contains(const Matrix& v) const {
  if (v.cols() != ambient_ || v.rows() != 1) fail(Error::Kind::Precondition, "contains: expects a row vector");
  Matrix w = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    Scalar c = w.at(0, pivots_[i]);
    if (!c.is_zero()) w.axpy(-c, basis_.row(i));
  }
  return w.is_zero();
}

bool Subspace::contains_all(const Matrix& rows) const {
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!contains(rows.row(i))) return false;
  return true;
}

Matrix Subspace::coordinates(const Matrix& rows) const { return rows.select_cols(pivots_); }

Subspace Subspace::operator+(const Subspace& o) const {
  if (dim() == 0) return o;
  if (o.dim() == 0) return *this;
  return span(Matrix::vstack(basis_, o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (dim() == 0 || o.dim() == 0) return Subspace(field(), ambient_);
  Matrix stacked = Matrix::vstack(basis_, o.basis_);
  Subspace rel = kernel_basis(stacked.transpose());
  if (rel.dim() == 0) return Subspace(field(), ambient_);
  std::vector<std::size_t> first(dim());
  std::iota(first.begin(), first.end(), 0);
  Matrix coeffs = rel.basis().select_cols(first);
  return span(coeffs * basis_);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
}

// ---------------------------------------------------------------------------
// EchelonBuilder

EchelonBuilder::EchelonBuilder(const Field& f, std::size_t n) : field_(f), n_(n) {}

Matrix EchelonBuilder::reduce(const Matrix& v) const {
  Matrix w = v;
  if (field_.is_finite()) {
    FiniteOps ops{field_};
    auto& wc = w.codes();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto c = wc[pivots_[i]];
      if (c == 0) continue;
      ops.axpy(field_.neg(c), rows_[i].codes().data(), wc.data(), n_);
    }
  } else {
    RationalOps ops;
    auto& wr = w.rats();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rational c = wr[pivots_[i]];
      if (c == 0) continue;
      ops.axpy(Rational(-c), rows_[i].rats().data(), wr.data(), n_);
    }
  }
  return w;
}

bool EchelonBuilder::insert(const Matrix& v) {
  if (v.cols() != n_ || v.rows() != 1) fail(Error::Kind::Precondition, "EchelonBuilder: expects a row vector");
  Matrix w = reduce(v);
  for (std::size_t c = 0; c < n_; ++c) {
    if (w.is_zero_at(0, c)) continue;
    w = w.scaled(w.at(0, c).inverse());
    rows_.push_back(std::move(w));
    pivots_.push_back(c);
    return true;
  }
  return false;
}

Subspace EchelonBuilder::subspace() const {
  if (rows_.empty()) return Subspace(field_, n_);
  Matrix m(field_, 0, n_);
  for (const auto& r : rows_) m.append_row(r);
  return Subspace::span(m);
}

}  // namespace steinlab::la

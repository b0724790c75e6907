#pragma once

// Exact dense linear algebra over F_{p^e} (p in {2,3,5,7}, e <= 4) and Q.
//
// A Field is a cheap handle to an immutable, process-wide field descriptor,
// so two handles compare equal exactly when they name the same field.
// Finite-field elements are encoded as integers: the code of
// c_0 + c_1 x + ... + c_{e-1} x^{e-1} is sum c_i p^i, where x is the class
// of the indeterminate modulo the field's Conway polynomial.
//
// Vectors are row matrices. Matrices act on column vectors, so the image of
// the row vector v under A is (A v^T)^T; apply() computes exactly that.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "steinlab/error.hpp"

namespace steinlab::la {

using Rational = mpq_class;

namespace detail {

struct FieldData {
  int p = 0;  // 0 for Q
  int e = 1;
  std::uint32_t q = 0;  // 0 for Q
  std::vector<int> modulus;
  std::vector<std::uint32_t> exp_table;  // 2(q-1) entries, powers of the primitive element
  std::vector<std::int32_t> log_table;   // log_table[0] = -1
  std::vector<std::uint16_t> add_table;  // q*q entries, only for odd p, e > 1, small q
  std::vector<std::uint32_t> neg_table;
  std::string name;
};

}  // namespace detail

class Field {
 public:
  /// The rationals.
  Field();

  static Field rationals();
  /// F_{p^e}; throws Precondition unless (p, e) is in the built-in table.
  static Field gf(int p, int e = 1);
  /// q = p^e, or 0 for Q.
  static Field of_order(std::uint32_t q);
  /// Accepts "Q", "F_9", "F9", "GF(9)".
  static Field parse(std::string_view spec);
  static bool supported(int p, int e);

  int characteristic() const { return d_->p; }
  int degree() const { return d_->e; }
  std::uint32_t order() const { return d_->q; }
  bool is_finite() const { return d_->p != 0; }
  bool is_rational() const { return d_->p == 0; }
  const std::vector<int>& modulus() const { return d_->modulus; }
  const std::string& name() const { return d_->name; }

  // --- finite-field arithmetic on codes -----------------------------------
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const auto* f = d_;
    if (f->p == 2) return a ^ b;
    if (f->e == 1) {
      std::uint32_t s = a + b;
      return s >= f->q ? s - f->q : s;
    }
    if (!f->add_table.empty()) return f->add_table[a * f->q + b];
    return add_slow(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const { return d_->p == 2 ? a : d_->neg_table[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return d_->exp_table[d_->log_table[a] + d_->log_table[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, long long k) const;
  /// a^(p^k).
  std::uint32_t frobenius(std::uint32_t a, int k = 1) const;
  std::uint32_t from_int(long long v) const;
  std::uint32_t primitive_element() const { return d_->exp_table[1]; }
  std::uint32_t exp(long long k) const;
  /// Discrete log base the primitive element; a must be nonzero.
  int log(std::uint32_t a) const;
  std::vector<int> coefficients(std::uint32_t code) const;
  std::uint32_t from_coefficients(std::span<const int> coeffs) const;

  // --- subfields and extensions -------------------------------------------
  bool has_subfield(const Field& sub) const;
  /// Image of a code of `sub` under the canonical embedding sub -> *this.
  std::uint32_t embed(const Field& sub, std::uint32_t code) const;
  /// The extension of degree s over this field (finite fields only).
  Field extension(int s) const;
  /// Prime subfield.
  Field prime_field() const;

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

  const detail::FieldData* data() const { return d_; }

 private:
  explicit Field(const detail::FieldData* d) : d_(d) {}
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;

  const detail::FieldData* d_;
};

class Scalar {
 public:
  Scalar() : field_(Field::rationals()), value_(Rational(0)) {}
  explicit Scalar(const Field& f);  // zero of f

  static Scalar from_int(const Field& f, long long v);
  static Scalar from_code(const Field& f, std::uint32_t code);
  static Scalar from_rational(const Rational& q);
  static Scalar one(const Field& f) { return from_int(f, 1); }

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint32_t code() const;
  const Rational& rational() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(long long k) const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Finite fields: the code in decimal. Q: "num/den" (or "num" when integral).
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  Field field_;
  std::variant<std::uint32_t, Rational> value_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols,
                          std::span<const long long> values);
  static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols,
                          std::initializer_list<long long> values);
  static Matrix from_codes(const Field& f, std::size_t rows, std::size_t cols,
                           std::vector<std::uint32_t> codes);
  static Matrix from_scalars(const Field& f, std::size_t rows, std::size_t cols,
                             std::span<const Scalar> values);
  /// Row vector with a single 1 at position i.
  static Matrix unit_row(const Field& f, std::size_t n, std::size_t i);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void set_int(std::size_t i, std::size_t j, long long v);
  bool is_zero_at(std::size_t i, std::size_t j) const;

  // Raw access. codes() is only populated over finite fields, rats() only over Q.
  std::uint32_t code(std::size_t i, std::size_t j) const { return fin_[i * cols_ + j]; }
  void set_code(std::size_t i, std::size_t j, std::uint32_t c) { fin_[i * cols_ + j] = c; }
  const std::vector<std::uint32_t>& codes() const { return fin_; }
  std::vector<std::uint32_t>& codes() { return fin_; }
  const std::vector<Rational>& rats() const { return rat_; }
  std::vector<Rational>& rats() { return rat_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  /// this += s * o, in place.
  void axpy(const Scalar& s, const Matrix& o);

  Matrix row(std::size_t i) const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  void append_row(const Matrix& r);

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  /// Entrywise image under the canonical embedding field() -> super.
  Matrix embed(const Field& super) const;
  /// Entrywise x -> x^(p^k).
  Matrix frobenius(int k) const;
  /// If every entry lies in the subfield `sub`, the same matrix over `sub`.
  std::optional<Matrix> restrict_to(const Field& sub) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  void check_same(const Matrix& o, const char* op) const;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> fin_;
  std::vector<Rational> rat_;
};

/// A subspace of K^n, stored as the reduced row echelon basis of its rows.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, std::size_t ambient);  // the zero subspace

  static Subspace span(const Matrix& rows);
  static Subspace full(const Field& f, std::size_t n);

  const Field& field() const { return basis_.field(); }
  std::size_t dim() const { return pivots_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return pivots_.empty(); }
  bool is_full() const { return pivots_.size() == ambient_; }

  bool contains(const Matrix& row_vector) const;
  bool contains_all(const Matrix& rows) const;
  /// Coordinates (as rows) of vectors known to lie in the subspace, w.r.t. basis().
  Matrix coordinates(const Matrix& rows) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Incremental semi-echelon basis; the workhorse behind spinning.
class EchelonBuilder {
 public:
  EchelonBuilder(const Field& f, std::size_t n);

  /// Reduces v (a row) and, if a nonzero remainder is left, stores it.
  bool insert(const Matrix& v);
  Matrix reduce(const Matrix& v) const;
  std::size_t size() const { return pivots_.size(); }
  std::size_t ambient_dim() const { return n_; }
  bool full() const { return pivots_.size() == n_; }
  /// Stored (normalised, semi-echelon) rows.
  const std::vector<Matrix>& rows() const { return rows_; }
  Subspace subspace() const;

 private:
  Field field_;
  std::size_t n_;
  std::vector<Matrix> rows_;
  std::vector<std::size_t> pivots_;
};

struct RrefResult {
  Matrix form;
  std::vector<std::size_t> pivots;
};

/// Unique reduced row echelon form together with pivot columns.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// {v : m v^T = 0}.
Subspace kernel_basis(const Matrix& m);
/// Column space of m, as a subspace of K^rows.
Subspace image_basis(const Matrix& m);
/// Kronecker product with lexicographic basis order: (a⊗b)(e_i⊗e_k) = a e_i ⊗ b e_k,
/// where e_i⊗e_k has index i*dim(b) + k.
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix kronecker_power(const Matrix& a, int d);
Matrix direct_sum(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);
Matrix power(const Matrix& m, unsigned long long k);
/// (m - 1)^dim == 0.
bool is_unipotent(const Matrix& m);
/// Rows of v mapped by the column action of a: returns (a v^T)^T.
Matrix apply(const Matrix& a, const Matrix& rows);

/// Matrix of the restriction of `action` (acting on column vectors of K^n)
/// to an invariant subspace, in the subspace's echelon basis. Throws Defect
/// when the subspace is not invariant.
Matrix restrict_action(const Matrix& action, const Subspace& sub);
/// Induced action on K^n / sub, in the basis of unit vectors at non-pivot columns.
Matrix quotient_action(const Matrix& action, const Subspace& sub);

}  // namespace steinlab::la

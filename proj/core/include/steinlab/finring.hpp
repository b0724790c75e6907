#pragma once

// Finite commutative rings presented as products Z/m_1 x ... x F_{p^e} x ...
//
// Elements are indices in [0, size()). The index is mixed radix over the
// components, first component least significant; a Galois component uses the
// field's element code. Index arithmetic therefore matches the additive group
// Z/m_1 x ... x (Z/p)^e x ... digit for digit.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "steinlab/exactla.hpp"

namespace steinlab::ring {

using Elem = std::uint32_t;

struct Component {
  enum class Kind { Cyclic, Galois };
  Kind kind = Kind::Cyclic;
  std::uint32_t modulus = 2;  // m for Z/m; q for F_q
  la::Field field;            // meaningful for Galois components

  static Component cyclic(std::uint32_t m);
  static Component galois(int p, int e);
  std::uint32_t size() const { return modulus; }
  /// Additive exponent of the component.
  std::uint32_t characteristic() const;
  std::string name() const;
  friend bool operator==(const Component& a, const Component& b) {
    return a.kind == b.kind && a.modulus == b.modulus;
  }
};

class FiniteRing {
 public:
  explicit FiniteRing(std::vector<Component> components);
  static FiniteRing cyclic(std::uint32_t m) { return FiniteRing({Component::cyclic(m)}); }
  static FiniteRing galois(int p, int e = 1) { return FiniteRing({Component::galois(p, e)}); }
  /// "Z/6", "F_4", "Z/4xF_9".
  static FiniteRing parse(std::string_view spec);

  const std::vector<Component>& components() const { return data_->components; }
  std::uint32_t size() const { return data_->size; }
  std::string name() const;
  /// Additive exponent of the ring (lcm of component characteristics).
  std::uint32_t characteristic() const;

  Elem zero() const { return 0; }
  Elem one() const { return data_->one; }
  Elem from_int(long long v) const;
  Elem make(const std::vector<std::uint32_t>& values) const;
  std::uint32_t component_value(Elem a, std::size_t i) const;
  std::vector<std::uint32_t> values(Elem a) const;

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  bool is_unit(Elem a) const;
  bool is_idempotent(Elem a) const { return mul(a, a) == a; }

  /// Generators of the additive group.
  std::vector<Elem> additive_generators() const;
  std::string to_string(Elem a) const;

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.data_ == b.data_ || a.components() == b.components();
  }

 private:
  struct Data {
    std::vector<Component> components;
    std::vector<std::uint32_t> radix;  // place value of each component
    std::uint32_t size = 1;
    Elem one = 0;
    std::vector<Elem> add_table, mul_table;  // filled for small rings
  };
  Elem add_slow(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;

  std::shared_ptr<const Data> data_;
};

/// An ideal, materialised as its sorted element list.
struct RingIdeal {
  FiniteRing ring;
  std::vector<Elem> generators;
  std::vector<Elem> elements;

  std::uint32_t quotient_size() const { return ring.size() / static_cast<std::uint32_t>(elements.size()); }
  bool contains(Elem a) const;
  bool contains(const RingIdeal& other) const;
  std::string to_string() const;
};

/// A unital ring homomorphism from a finite ring to a finite field.
struct RingHom {
  FiniteRing source;
  la::Field target;
  std::size_t component = 0;  // the component it factors through
  std::vector<std::uint32_t> values;  // target code of every source element

  std::uint32_t operator()(Elem a) const { return values[a]; }
  friend bool operator==(const RingHom& a, const RingHom& b) {
    return a.source == b.source && a.target == b.target && a.values == b.values;
  }
};

/// Dense matrix with entries in a finite ring, acting on column vectors.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  RingMatrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries);
  static RingMatrix identity(const FiniteRing& a, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Elem v) { e_[i * cols_ + j] = v; }
  const std::vector<Elem>& entries() const { return e_; }

  RingMatrix mul(const FiniteRing& a, const RingMatrix& o) const;
  RingMatrix add(const FiniteRing& a, const RingMatrix& o) const;
  static RingMatrix direct_sum(const RingMatrix& x, const RingMatrix& y);
  std::string to_string(const FiniteRing& a) const;

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) = default;
  friend bool operator<(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.e_ < b.e_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> e_;
};

std::vector<RingHom> ring_homs(const FiniteRing& a, const la::Field& k);
/// Entrywise image of a ring matrix under a homomorphism.
la::Matrix apply(const RingHom& h, const RingMatrix& m);

std::vector<RingIdeal> all_ideals(const FiniteRing& a);
/// Ideals I with |A/I| invertible in k, ordered by quotient size.
std::vector<RingIdeal> cotrivial_ideals(const FiniteRing& a, const la::Field& k);
/// The ideal generated by a set of elements (closure by brute force).
RingIdeal ideal_generated(const FiniteRing& a, const std::vector<Elem>& gens);
RingIdeal intersect(const RingIdeal& x, const RingIdeal& y);

struct PrimaryIdempotent {
  int prime;
  Elem idempotent;
};
std::vector<PrimaryIdempotent> primary_idempotents(const FiniteRing& a);

/// Generators of the multiplicative monoid M_n(A).
std::vector<RingMatrix> matrix_monoid_generators(const FiniteRing& a, std::size_t n);
/// Number of rows x cols matrices, or CapExceeded when above cap.
std::uint64_t matrix_count(const FiniteRing& a, std::size_t rows, std::size_t cols, std::uint64_t cap);
/// The matrix with the given enumeration index (entry 0 least significant).
RingMatrix matrix_from_index(const FiniteRing& a, std::size_t rows, std::size_t cols, std::uint64_t index);
std::uint64_t matrix_index(const FiniteRing& a, const RingMatrix& m);
std::vector<RingMatrix> all_matrices(const FiniteRing& a, std::size_t rows, std::size_t cols, std::uint64_t cap);
/// Closure of the generators (and the identity) under multiplication.
std::vector<RingMatrix> monoid_closure(const FiniteRing& a, const std::vector<RingMatrix>& gens, std::size_t cap);

std::vector<int> prime_factors(std::uint64_t n);

}  // namespace steinlab::ring

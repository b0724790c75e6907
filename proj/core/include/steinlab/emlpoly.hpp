#pragma once

// Polynomial maps between abelian groups in the sense of Eilenberg and
// Mac Lane: deviations, degrees, homogeneous parts, factorisation of
// multiplicative maps on finite rings, and the linearised exact sequences.

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "steinlab/exactla.hpp"
#include "steinlab/finring.hpp"

namespace steinlab::eml {

/// A finite abelian group Z/o_1 x ... x Z/o_r, or Z seen through a window
/// [-W, W]. Finite-group elements are mixed-radix indices (first factor least
/// significant); elements of Z are themselves.
class AbGroup {
 public:
  AbGroup() = default;
  static AbGroup finite(std::vector<std::uint32_t> orders);
  static AbGroup integers(long long window);
  /// Additive group of a finite ring, with matching element indices.
  static AbGroup of_ring(const ring::FiniteRing& a);

  bool is_integers() const { return integers_; }
  long long window() const { return window_; }
  const std::vector<std::uint32_t>& orders() const { return orders_; }
  /// Number of elements (finite groups only).
  std::uint64_t size() const;

  long long add(long long a, long long b) const;
  long long neg(long long a) const;
  long long sub(long long a, long long b) const { return add(a, neg(b)); }
  long long scale(long long n, long long a) const;
  bool contains(long long a) const;
  /// Finite: all elements. Z: the window.
  std::vector<long long> elements() const;
  /// Unit vectors of the factors (finite groups).
  std::vector<long long> generators() const;
  std::vector<std::uint32_t> digits(long long a) const;
  long long from_digits(const std::vector<std::uint32_t>& d) const;
  std::string name() const;

  friend bool operator==(const AbGroup& a, const AbGroup& b) = default;

 private:
  bool integers_ = false;
  long long window_ = 0;
  std::vector<std::uint32_t> orders_;
};

/// Target of a map: a finite abelian group, or the vector space K^dim.
class Target {
 public:
  using Value = std::variant<long long, la::Matrix>;

  static Target group(AbGroup g);
  static Target vectors(const la::Field& k, std::size_t dim = 1);

  bool is_group() const { return group_.has_value(); }
  const AbGroup& as_group() const { return *group_; }
  const la::Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }

  Value zero() const;
  Value add(const Value& a, const Value& b) const;
  Value neg(const Value& a) const;
  Value scale(long long n, const Value& a) const;
  bool is_zero(const Value& a) const;
  bool equal(const Value& a, const Value& b) const;

 private:
  std::optional<AbGroup> group_;
  la::Field field_;
  std::size_t dim_ = 1;
};

using Value = Target::Value;

class AbMap {
 public:
  using Eval = std::function<Value(long long)>;

  AbMap(AbGroup source, Target target, Eval eval);
  /// Finite source, group target; table indexed by source element.
  static AbMap group_table(const AbGroup& source, const AbGroup& target, std::vector<long long> table);
  /// Finite source, one-dimensional field target given by element codes.
  static AbMap field_table(const AbGroup& source, const la::Field& k, std::vector<std::uint32_t> codes);

  const AbGroup& source() const { return source_; }
  const Target& target() const { return target_; }
  Value operator()(long long x) const;

 private:
  AbGroup source_;
  Target target_;
  Eval eval_;
};

/// The alternating sum over subsets I of the arguments of (-1)^(d-|I|) f(sum_I).
Value deviation(const AbMap& f, const std::vector<long long>& args);

/// Least d <= cap with vanishing (d+1)-st deviation; nullopt means not
/// polynomial of degree <= cap (on the window, for Z sources).
std::optional<int> eml_degree(const AbMap& f, int cap);

struct HomogeneousPart {
  int degree;
  AbMap map;
};
/// Nonzero homogeneous parts of a polynomial map to a Q-vector space.
/// For Z sources each part lives on the window shrunk by the degree.
std::vector<HomogeneousPart> homogeneous_decomposition(const AbMap& f, int cap);

/// A multiplicative map from a finite ring to a finite field.
struct MultiplicativeMap {
  ring::FiniteRing ring;
  la::Field field;
  std::vector<std::uint32_t> values;

  AbMap as_map() const;
};

struct Factorization {
  int degree = 0;
  la::Field field;                  // the extension where the factors live
  std::vector<ring::RingHom> factors;
};

/// Writes phi as a pointwise product of ring homomorphisms into the first
/// extension (degrees 1, 2, ...) of the target where this is possible.
/// Throws Precondition for non-multiplicative or non-polynomial input and
/// Defect if the factorisation with at most `degree` factors is not unique.
Factorization factor_multiplicative(const MultiplicativeMap& phi, int cap);

/// Z -> Q: verifies phi multiplicative on the window and returns d with
/// phi(x) = x^d, i.e. the number of copies of the inclusion Z -> Q.
int factor_multiplicative_integers(const AbMap& phi, int cap);

/// 0 -> A --u--> B --v--> C -> 0 given by value tables.
struct ShortExactSequence {
  AbGroup a, b, c;
  std::vector<long long> u, v;
};

struct LinearizationReport {
  bool input_exact = false;
  // k[B (+) A] --alpha--> k[B] --k[v]--> k[C] -> 0
  std::size_t alpha_rank = 0;
  std::size_t kv_rank = 0;
  bool right_composite_zero = false;
  bool right_exact = false;
  // 0 -> k[A] --k[u]--> k[B] --beta--> k[B (+) C]
  std::size_t ku_rank = 0;
  std::size_t beta_rank = 0;
  bool left_composite_zero = false;
  bool left_exact = false;

  bool exact() const { return input_exact && right_exact && left_exact; }
};

bool is_homomorphism(const AbGroup& src, const AbGroup& dst, const std::vector<long long>& table);
/// All homomorphisms between finite groups, as value tables.
std::vector<std::vector<long long>> homomorphisms(const AbGroup& src, const AbGroup& dst);
bool is_short_exact(const ShortExactSequence& s);
/// Throws Precondition if the input is not exact.
LinearizationReport linearization_exactness(const ShortExactSequence& s, const la::Field& k);

}  // namespace steinlab::eml

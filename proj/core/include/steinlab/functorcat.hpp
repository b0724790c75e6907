#pragma once

// Functors from free modules over a finite commutative ring A to K-vector
// spaces, truncated at rank N: F is known on A^0, ..., A^N and on every
// A-linear map between them. A map A^m -> A^m' is an m' x m RingMatrix.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "steinlab/exactla.hpp"
#include "steinlab/finring.hpp"
#include "steinlab/modtools.hpp"

namespace steinlab::functor {

using ring::FiniteRing;
using ring::RingMatrix;

class FunctorRep {
 public:
  using Evaluator = std::function<la::Matrix(const RingMatrix&)>;

  FunctorRep() = default;
  FunctorRep(FiniteRing a, la::Field k, int max_rank, std::vector<std::size_t> dims, Evaluator ev,
             std::string name = "F");

  const FiniteRing& ring() const { return *ring_; }
  const la::Field& field() const { return field_; }
  int max_rank() const { return max_rank_; }
  std::size_t dim(int m) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::string& name() const { return name_; }

  /// F(f) for f : A^m -> A^m', a dim(m') x dim(m) matrix.
  la::Matrix operator()(const RingMatrix& f) const;
  /// F(A^m) as a module over the standard generators of M_m(A).
  meataxe::AlgebraModule module(int m) const;
  FunctorRep truncated(int max_rank) const;

 private:
  std::shared_ptr<const FiniteRing> ring_;
  la::Field field_;
  int max_rank_ = 0;
  std::vector<std::size_t> dims_;
  Evaluator eval_;
  std::string name_;
};

/// A representation of the multiplicative monoid M_n(A).
struct MonoidModule {
  FiniteRing ring;
  int rank = 1;
  la::Field field;
  std::size_t dim = 0;
  std::function<la::Matrix(const RingMatrix&)> act;

  meataxe::AlgebraModule as_module() const;
};

/// 1 on invertible matrices, 0 elsewhere.
MonoidModule delta_module(const FiniteRing& a, int n, const la::Field& k);
/// Rank one: a -> chi(a mod r) where chi has the given order on (Z/r)^x and
/// vanishes on non-units; r must be prime and divide the additive exponent of A.
MonoidModule character_module(const FiniteRing& a, const la::Field& k, int r, int order);
/// F(A^n) with its End(A^n)-action.
MonoidModule evaluation_module(const FunctorRep& f, int n);

/// Determinant over a commutative ring.
ring::Elem ring_determinant(const FiniteRing& a, const RingMatrix& m);

struct Caps {
  std::size_t max_dim = 4096;
  std::uint64_t max_hom = 1u << 17;
};

// Built-in functors.
FunctorRep constant_functor(const FiniteRing& a, const la::Field& k, int max_rank);
/// K (x)_A - along the hom_index-th ring homomorphism A -> K.
FunctorRep lambda1(const FiniteRing& a, const la::Field& k, int max_rank, std::size_t hom_index = 0);
/// K[Hom_A(A^r, -)].
FunctorRep projective(const FiniteRing& a, const la::Field& k, int max_rank, int r = 1, const Caps& caps = {});
/// K[lines]; A must be a field.
FunctorRep grassmannian1(const FiniteRing& a, const la::Field& k, int max_rank, const Caps& caps = {});
FunctorRep tensor_functors(const FunctorRep& f, const FunctorRep& g);

/// Value of the intermediate extension of M at A^m, as the subspace of
/// M-valued functions on Hom_A(A^m, A^n) spanned by g -> M(g f) v.
struct ExtensionValue {
  int rank = 0;
  std::size_t function_count = 0;  // |Hom_A(A^m, A^n)|
  la::Subspace space;               // inside K^{function_count * dim M}
};
ExtensionValue intermediate_extension(const MonoidModule& m, int rank, const Caps& caps = {});
/// The same value computed from all of Hom_A(A^n, A^m) instead of one generator.
ExtensionValue intermediate_extension_direct(const MonoidModule& m, int rank, const Caps& caps = {});
FunctorRep intermediate_extension_functor(const MonoidModule& m, int max_rank, const Caps& caps = {});

/// cr_d F(A, ..., A) inside F(A^d).
la::Subspace cross_effect(const FunctorRep& f, int d);
/// dim F(A^d) = sum_s C(d, s) dim cr_s for every 1 <= d <= N.
bool cross_effect_identity(const FunctorRep& f);

struct DegreeResult {
  std::optional<int> degree;  // nullopt: not polynomial up to `checked`
  int checked = 0;
  std::string to_string() const;
};
DegreeResult polynomial_degree(const FunctorRep& f, int cap);

struct DimensionProfile {
  std::vector<std::size_t> values;
  bool fit_requested = false;
  bool fit_found = false;
  int prime = 0;
  std::vector<la::Rational> coefficients;  // f(X) = sum c_i X^i, when found
  std::string fit_string() const;
};
DimensionProfile dimension_profile(const FunctorRep& f, bool fit = true);

struct UnipotenceResult {
  ring::RingIdeal ideal;
  bool cotrivial = false;
};
/// I = {a : F(u[a] (+) id_{A^n}) is unipotent}, u[a] = [[1, 0], [a, 1]].
UnipotenceResult unipotence_ideal(const FunctorRep& f, int support_rank);

/// F(A^n) simple over K[M_n(A)], with F(A^m) = T(F(A^n))(A^m) checked for
/// every m <= max_rank (default: F's truncation rank). Throws Inconclusive
/// when that identity fails.
bool simplicity_test(const FunctorRep& f, int support_rank, std::optional<int> max_rank = std::nullopt,
                     const Caps& caps = {});

/// F(g f) = F(g) F(f) on random composable pairs, and F(id) = id.
bool functoriality_check(const FunctorRep& f, int samples, std::uint64_t seed);

/// Generating morphisms: standard generators of each M_m(A), plus the
/// inclusions A^m -> A^{m+1} and projections A^{m+1} -> A^m.
struct MorphismTable {
  FiniteRing ring;
  la::Field field;
  int max_rank = 0;
  std::vector<std::size_t> dims;
  std::map<std::string, la::Matrix> actions;
};
MorphismTable tabulate(const FunctorRep& f);
std::vector<std::pair<std::string, RingMatrix>> generating_morphisms(const FiniteRing& a, int max_rank);
/// Rebuilds a functor from its generating table by word evaluation.
FunctorRep from_table(const MorphismTable& t, const Caps& caps = {});

}  // namespace steinlab::functor

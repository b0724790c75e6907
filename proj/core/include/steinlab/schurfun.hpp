#pragma once

// Elementary functors and Schur functors evaluated on K^n, as representations
// of the multiplicative monoid M_n(K).
//
// Tensor words e_{i_1} (x) ... (x) e_{i_d} are indexed lexicographically with
// the first factor most significant, matching la::kronecker_power.

#include <cstdint>
#include <map>
#include <vector>

#include "steinlab/exactla.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/symgrp.hpp"

namespace steinlab::schur {

/// A polynomial functor V -> F(V) that can be evaluated on any matrix,
/// over any field: either V^{(x)d} (x) K^m with trivial action on the second
/// factor, or S^lambda = S^{lambda_1} (x) S^{lambda_2} (x) ...
class Ambient {
 public:
  Ambient() = default;
  static Ambient tensor_power(int n, int d, std::size_t multiplicity = 1);
  static Ambient symmetric_blocks(int n, const sym::Partition& lambda);

  int rank() const { return n_; }
  int degree() const { return d_; }
  std::size_t dim() const;
  /// F(g) for an n x n matrix g, over g's field.
  la::Matrix act(const la::Matrix& g) const;

  // Symmetric-block helpers (basis of S^lambda: tuples of sorted row blocks).
  std::size_t block_index(const std::vector<int>& word) const;
  const std::vector<std::vector<int>>& block_words() const { return reps_; }

 private:
  bool symmetric_ = false;
  int n_ = 0, d_ = 0;
  std::size_t mult_ = 1;
  std::vector<int> blocks_;
  std::vector<std::vector<int>> reps_;            // one sorted word per basis element
  std::map<std::vector<int>, std::size_t> index_;  // sorted word -> basis index
};

/// A subrepresentation of an ambient functor evaluated on K^n.
class GLRep {
 public:
  GLRep() = default;
  GLRep(Ambient ambient, la::Field k, la::Subspace sub);

  int rank() const { return ambient_.rank(); }
  int degree() const { return ambient_.degree(); }
  const la::Field& field() const { return field_; }
  std::size_t dim() const { return sub_.dim(); }
  const Ambient& ambient() const { return ambient_; }
  const la::Subspace& subspace() const { return sub_; }

  /// Action of g (over field() or a subfield) in the subspace basis.
  la::Matrix act(const la::Matrix& g) const;
  /// The module over the standard generators of M_n(field()), with evaluator.
  meataxe::AlgebraModule module() const;
  /// The same representation over an extension of field().
  GLRep extend(const la::Field& super) const;

 private:
  Ambient ambient_;
  la::Field field_;
  la::Subspace sub_;
};

/// Standard monoid generators of M_n(K): "t" = I + E_12, "d" = diag(w,1,...,1)
/// with w primitive (2 over Q), "s" = (1 2), "c" = n-cycle, "e" = diag(1,...,1,0).
std::vector<std::pair<std::string, la::Matrix>> monoid_generators(int n, const la::Field& k);
/// One-dimensional modules on given generators.
meataxe::AlgebraModule det_module(const std::vector<std::pair<std::string, la::Matrix>>& gens, const la::Field& k,
                                  int power = 1);
meataxe::AlgebraModule invertibility_module(const std::vector<std::pair<std::string, la::Matrix>>& gens,
                                            const la::Field& k);

struct Caps {
  std::size_t max_dim = 4096;
  int max_degree = 6;
};

GLRep elementary_value(const sym::SymModule& m, int n, const Caps& caps = {});
GLRep schur_value(const sym::Partition& lambda, int n, const la::Field& k, const Caps& caps = {});
/// L_lambda(K^n), the socle of the Schur functor, for p-restricted lambda.
GLRep socle_simple(const sym::Partition& lambda, int n, const la::Field& k, const Caps& caps = {});

using WeightVector = std::vector<int>;
struct WeightSpace {
  WeightVector weight;
  std::size_t multiplicity;
};
/// All torus weights with multiplicities, in decreasing lexicographic order.
std::vector<WeightSpace> weights(const GLRep& rep);
WeightVector highest_weight(const GLRep& rep);

struct DetTwistReport {
  bool det_shift_isomorphic = false;   // L_lambda = L_mu (x) det
  bool delta_isomorphic = false;       // L_lambda = L_lambda (x) delta
  bool holds() const { return det_shift_isomorphic && delta_isomorphic; }
};
DetTwistReport det_twist_check(const sym::Partition& lambda, int n, const la::Field& k, const Caps& caps = {});

/// The smallest extension of k with more than `bound` elements (k itself if large enough).
la::Field field_larger_than(const la::Field& k, std::uint64_t bound);

}  // namespace steinlab::schur

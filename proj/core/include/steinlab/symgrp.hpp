#pragma once

// Partitions and symmetric group modules. Permutations act on {0, ..., d-1};
// composition is (s t)(i) = s(t(i)) and modules are left modules.

#include <string>
#include <vector>

#include "steinlab/exactla.hpp"
#include "steinlab/modtools.hpp"

namespace steinlab::sym {

using Permutation = std::vector<int>;

Permutation compose(const Permutation& s, const Permutation& t);
Permutation inverse(const Permutation& s);
int sign(const Permutation& s);
/// All permutations of {0..d-1} in lexicographic order.
std::vector<Permutation> all_permutations(int d);
/// The transposition (1 2) and the long cycle i -> i+1 (identities for d < 2).
Permutation transposition_generator(int d);
Permutation cycle_generator(int d);

/// Weakly decreasing nonnegative parts. Trailing zeros are kept, so a
/// partition can be padded to a fixed number of rows.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  /// Number of nonzero parts.
  int length() const;
  int size() const;
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  Partition trimmed() const;
  Partition padded(std::size_t n) const;
  std::string to_string() const;

  friend bool operator==(const Partition& a, const Partition& b) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) = default;

 private:
  std::vector<int> parts_;
};

Partition conjugate(const Partition& p);
/// Consecutive differences (with a trailing 0 appended) all below p.
bool is_p_restricted(const Partition& lambda, int p);
/// No nonzero part repeated p or more times.
bool is_p_regular(const Partition& lambda, int p);
/// lambda = sum_i p^i lambda^i with every lambda^i p-restricted; lambda must
/// be p^r-restricted. Digits keep the length of lambda.
std::vector<Partition> digit_decomposition(const Partition& lambda, int p, int r);
/// Partitions of d, in decreasing lexicographic order.
std::vector<Partition> partitions_of(int d);
/// Partitions of d with at most n nonzero parts.
std::vector<Partition> partitions_of(int d, int n);

/// A K[S_d]-module on the generators "s" = (1 2) and "c" = (1 2 ... d).
struct SymModule {
  int degree = 0;
  la::Field field;
  std::size_t dim = 0;
  la::Matrix transposition;
  la::Matrix cycle;

  meataxe::AlgebraModule as_module() const;
};

/// rho(sigma) for every permutation, indexed like all_permutations(degree).
std::vector<la::Matrix> all_actions(const SymModule& m);

struct Tableau {
  std::vector<std::vector<int>> rows;
};
/// Standard Young tableaux of a shape (entries 0..d-1), ordered by row reading word.
std::vector<Tableau> standard_tableaux(const Partition& lambda);

SymModule specht_module(const Partition& lambda, const la::Field& k, int cap = 6);
/// D^lambda: the Specht module modulo the radical of its invariant form.
SymModule simple_module(const Partition& lambda, const la::Field& k, int cap = 6);

}  // namespace steinlab::sym

#pragma once

// Meataxe-style tools for modules over group or monoid algebras given by
// named generator matrices acting on column vectors.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steinlab/exactla.hpp"

namespace steinlab::meataxe {

struct Generator {
  std::string name;
  la::Matrix action;
  /// The monoid element the generator stands for (e.g. a matrix of GL_n(F_q)),
  /// when known; required by frobenius_twist.
  std::optional<la::Matrix> element;
};

class AlgebraModule {
 public:
  /// Maps a monoid element (as a matrix) to its action.
  using Evaluator = std::function<la::Matrix(const la::Matrix&)>;

  AlgebraModule() = default;
  AlgebraModule(const la::Field& k, std::size_t dim) : field_(k), dim_(dim) {}

  const la::Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::vector<std::string> names() const;
  const Generator& generator(const std::string& name) const;
  const la::Matrix& action(const std::string& name) const { return generator(name).action; }

  void add_generator(std::string name, la::Matrix action, std::optional<la::Matrix> element = std::nullopt);
  void set_evaluator(Evaluator ev) { eval_ = std::move(ev); }
  bool has_evaluator() const { return static_cast<bool>(eval_); }
  const Evaluator& evaluator() const { return eval_; }
  la::Matrix evaluate(const la::Matrix& element) const;

  /// The same representation seen through a different set of generators,
  /// each given by its monoid element; needs an evaluator.
  AlgebraModule restrict_to(const std::vector<std::pair<std::string, la::Matrix>>& elements) const;

 private:
  la::Field field_;
  std::size_t dim_ = 0;
  std::vector<Generator> gens_;
  Evaluator eval_;
};

struct SimplicityOptions {
  std::uint64_t seed = 0;
  /// Exhaustive projective-point search when |K|^dim is at most this.
  std::uint64_t exhaustive_cap = 4096;
  int norton_attempts = 24;
};

/// Submodule spanned by the seed rows.
la::Subspace spin(const AlgebraModule& m, const la::Matrix& seeds);
/// A proper nonzero submodule, or nullopt when the module is simple.
std::optional<la::Subspace> find_proper_submodule(const AlgebraModule& m, const SimplicityOptions& opt = {});
bool is_simple(const AlgebraModule& m, const SimplicityOptions& opt = {});
/// Submodule search by brute force: spins of all projective points.
std::optional<la::Subspace> exhaustive_proper_submodule(const AlgebraModule& m);
/// Dimension of the span of all products of generators (the enveloping algebra).
std::size_t enveloping_dim(const AlgebraModule& m);

/// Basis of Hom_A(m, n) as dim(n) x dim(m) matrices.
std::vector<la::Matrix> hom_space(const AlgebraModule& m, const AlgebraModule& n);
std::size_t end_dim(const AlgebraModule& m);
std::optional<la::Matrix> find_isomorphism(const AlgebraModule& m, const AlgebraModule& n,
                                           const SimplicityOptions& opt = {});
bool are_isomorphic(const AlgebraModule& m, const AlgebraModule& n, const SimplicityOptions& opt = {});

AlgebraModule submodule(const AlgebraModule& m, const la::Subspace& s);
AlgebraModule quotient(const AlgebraModule& m, const la::Subspace& s);
AlgebraModule tensor(const AlgebraModule& m, const AlgebraModule& n);
AlgebraModule direct_sum(const AlgebraModule& m, const AlgebraModule& n);
/// rho'(g) = rho(g^(p^i)), entrywise on the generator elements.
AlgebraModule frobenius_twist(const AlgebraModule& m, int i);
/// Same module over an extension field.
AlgebraModule extend_scalars(const AlgebraModule& m, const la::Field& super);

std::vector<AlgebraModule> composition_factors(const AlgebraModule& m, const SimplicityOptions& opt = {});
struct FactorType {
  AlgebraModule module;
  int multiplicity;
};
/// Composition factors grouped by isomorphism type, in order of first appearance.
std::vector<FactorType> composition_types(const AlgebraModule& m, const SimplicityOptions& opt = {});
/// Sum of all simple submodules.
la::Subspace socle(const AlgebraModule& m, const SimplicityOptions& opt = {});

}  // namespace steinlab::meataxe

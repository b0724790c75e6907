#pragma once

// Simple modules of GL_n(F_q) as tensor products of Frobenius twists of
// p-restricted simples L_lambda(K^n).

#include <optional>
#include <string>
#include <vector>

#include "steinlab/exactla.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/schurfun.hpp"
#include "steinlab/symgrp.hpp"

namespace steinlab::steinberg {

/// Generators of GL_n(F_q): "t" = I + E_12, "d" = diag(w,1,...,1), "s" = (1 2),
/// "c" = n-cycle (only "d" when n = 1).
std::vector<std::pair<std::string, la::Matrix>> group_generators(int n, const la::Field& fq);
/// A field containing F_q large enough for every q-restricted digit of rank n.
la::Field splitting_field(int n, std::uint32_t q);

struct SteinbergDatum {
  int n = 0;
  std::uint32_t q = 0;
  sym::Partition lambda;
  std::vector<sym::Partition> digits;
  std::vector<std::size_t> digit_dims;
  meataxe::AlgebraModule module;
};

SteinbergDatum build(const sym::Partition& lambda, int n, std::uint32_t q, const la::Field& k,
                     const schur::Caps& caps = {});

struct ClassEntry {
  SteinbergDatum datum;
  bool simple = false;
  bool absolutely_simple = false;
  int class_id = 0;
};
struct Classification {
  int n = 0;
  std::uint32_t q = 0;
  la::Field field;
  std::vector<ClassEntry> entries;
  int class_count = 0;
  int oracle_count = 0;
  bool consistent() const;
};
/// Candidates: q-restricted lambda with at most n parts and lambda_n <= q - 2,
/// in increasing lexicographic order.
std::vector<sym::Partition> class_parameters(int n, std::uint32_t q);
Classification classify(int n, std::uint32_t q, std::optional<la::Field> k = std::nullopt,
                        std::uint64_t seed = 0);
/// Tab-separated: lambda, digits, dim, simple, class id.
std::string report_tsv(const Classification& c);

/// Number of conjugacy classes of GL_n(F_q) of order prime to p, by brute force.
int p_regular_class_count(int n, std::uint32_t q);
/// All elements of GL_n(F_q), for small n and q.
std::vector<la::Matrix> group_elements(int n, const la::Field& fq);

struct UniquenessVerdict {
  bool isomorphic = false;
  bool equal = false;
  bool det_shift = false;  // digits differ by (p-1, ..., p-1) in every position, in one direction
  std::string relation() const;
  bool consistent() const { return !isomorphic || equal || det_shift; }
};
UniquenessVerdict uniqueness_check(const sym::Partition& lambda, const sym::Partition& other, int n, std::uint32_t q,
                                   std::optional<la::Field> k = std::nullopt);

/// A module of a product group G_1 x G_2 given on generators named "1:..."
/// (acting through G_1) and "2:..." (through G_2).
meataxe::AlgebraModule outer_tensor(const meataxe::AlgebraModule& first, const meataxe::AlgebraModule& second);
struct ProductFactors {
  meataxe::AlgebraModule first;
  meataxe::AlgebraModule second;
};
/// Splits a simple module of G_1 x G_2 as first (x) second.
ProductFactors product_decompose(const meataxe::AlgebraModule& m, std::uint64_t seed = 0);

}  // namespace steinlab::steinberg

#pragma once

// Independent reference computations used to cross-check the library.
// Nothing here calls the routine it is meant to check.

#include <cstdint>
#include <set>
#include <vector>

#include "steinlab/exactla.hpp"
#include "steinlab/finring.hpp"
#include "steinlab/modtools.hpp"
#include "steinlab/symgrp.hpp"

namespace oracle {

using steinlab::la::Field;
using steinlab::la::Matrix;

/// Semistandard tableaux of shape lambda with entries 1..n, by enumeration.
std::uint64_t ssyt_count(const std::vector<int>& lambda, int n);
/// Hook-content formula for the same number.
std::uint64_t hook_content(const std::vector<int>& lambda, int n);
/// Standard tableaux count by the hook length formula.
std::uint64_t hook_length(const std::vector<int>& lambda);
std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);

/// Lines in F_p^m.
std::uint64_t projective_points(std::uint64_t p, int m);
/// Monic degree-n polynomials over F_q with nonzero constant term, which
/// index the semisimple conjugacy classes of GL_n(F_q).
std::uint64_t semisimple_class_count(int n, std::uint64_t q);

/// All ring homomorphisms A -> k: additive maps fixed by images of the
/// additive generators, kept when unital and multiplicative.
std::vector<std::vector<std::uint32_t>> ring_homs(const steinlab::ring::FiniteRing& a, const Field& k);
/// All ideals as sorted element sets, by closing under one element at a time.
std::set<std::vector<std::uint32_t>> ideals(const steinlab::ring::FiniteRing& a);

/// Permutation matrix of sigma acting on K^d by e_i -> e_sigma(i).
Matrix permutation_matrix(const Field& k, const std::vector<int>& sigma);
/// Regular module of a finite group given by its Cayley table over generators.
steinlab::meataxe::AlgebraModule regular_module(const Field& k, const std::vector<std::vector<int>>& generator_perms);

/// Simplicity by brute force: every nonzero vector generates the whole
/// module (small modules only).
bool brute_force_simple(const steinlab::meataxe::AlgebraModule& m);

/// Random matrix with a fixed seed.
Matrix random_matrix(const Field& k, std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace oracle
